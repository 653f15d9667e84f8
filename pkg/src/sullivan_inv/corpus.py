"""The bundled corpus of model files."""

from __future__ import annotations

from importlib import resources

from .modelfile import ModelFile, parse_model

ORDER = (
    "s2",
    "s2xs2",
    "cp3",
    "pure_k3",
    "s3",
    "mixed_a",
    "mixed_b",
    "mixed_c",
    "heisenberg",
    "poly_x2",
)


def corpus_files() -> dict:
    root = resources.files("sullivan_inv") / "corpus"
    return {stem: parse_model((root / f"{stem}.model").read_text(encoding="utf-8"), stem) for stem in ORDER}


def corpus_models() -> dict:
    return {stem: mf.to_model() for stem, mf in corpus_files().items()}


def load(stem: str) -> ModelFile:
    return corpus_files()[stem]
