"""Sullivan algebras (Lambda V, d): validation, word-length parts, pure model."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from .algebra import Derivation, FreeAlgebra, Generator, Polynomial, parse_polynomial


class InvalidModelError(ValueError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class SullivanModel:
    name: str
    generators: tuple
    differential: tuple

    def __post_init__(self):
        if len(self.generators) != len(self.differential):
            raise ValueError("one differential value per generator required")

    @classmethod
    def build(
        cls,
        name: str,
        generators: Sequence[tuple],
        differential: Mapping[str, Union[str, Polynomial]] = None,
    ) -> "SullivanModel":
        """Convenience constructor: ``build("S2", [("x", 2), ("y", 3)], {"y": "x^2"})``."""
        gens = tuple(Generator(n, d) for n, d in generators)
        alg = FreeAlgebra(gens)
        differential = dict(differential or {})
        unknown = set(differential) - set(alg.names)
        if unknown:
            raise ValueError(f"differential given for unknown generators {sorted(unknown)}")
        values = []
        for g in gens:
            v = differential.get(g.name, alg.zero())
            if isinstance(v, str):
                v = parse_polynomial(alg, v)
            values.append(v)
        return cls(name, gens, tuple(values))

    @cached_property
    def algebra(self) -> FreeAlgebra:
        return FreeAlgebra(self.generators)

    @cached_property
    def d(self) -> Derivation:
        return Derivation(self.algebra, self.differential)

    def dgen(self, name: str) -> Polynomial:
        return self.differential[self.algebra.index[name]]

    def with_differential(self, values: Sequence[Polynomial], name: Optional[str] = None) -> "SullivanModel":
        return SullivanModel(name or self.name, self.generators, tuple(values))

    @property
    def even(self) -> tuple:
        return tuple(g for g in self.generators if not g.odd)

    @property
    def odd(self) -> tuple:
        return tuple(g for g in self.generators if g.odd)

    @property
    def m(self) -> int:
        """dim V^odd"""
        return len(self.odd)

    @property
    def n(self) -> int:
        """dim V^even"""
        return len(self.even)

    @property
    def max_degree(self) -> int:
        return max(self.algebra.degrees, default=0)

    def __str__(self):
        gens = ", ".join(f"{g.name}{g.degree}" for g in self.generators)
        ds = "; ".join(f"d{g.name} = {v}" for g, v in zip(self.generators, self.differential) if v)
        return f"{self.name}: Lambda({gens}){'; ' + ds if ds else ''}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple = ()

    def raise_if_invalid(self):
        if not self.valid:
            raise InvalidModelError(self.violations)


@dataclass(frozen=True)
class WordDecomposition:
    k: int
    parts: Mapping = field(default_factory=dict)

    def part(self, i: int) -> tuple:
        return self.parts[i]


def validate(model: SullivanModel) -> ValidationReport:
    """Check degrees, minimality and d^2 = 0; every violation is listed."""
    bad = []
    alg = model.algebra
    for g, v in zip(model.generators, model.differential):
        if g.degree < 2:
            bad.append(f"generator {g.name} has degree {g.degree} < 2")
        if v.algebra != alg:
            bad.append(f"d{g.name} lives in a different algebra")
            continue
        if not v:
            continue
        degs = v.degrees()
        if degs != {g.degree + 1}:
            bad.append(f"d{g.name} = {v} is not homogeneous of degree {g.degree + 1}")
        low = v.min_word_length()
        if low < 2:
            bad.append(f"minimality: d{g.name} = {v} has a word-length-{low} term")
    if any("different algebra" in b for b in bad):
        return ValidationReport(False, tuple(bad))
    d = model.d
    for g, v in zip(model.generators, model.differential):
        dd = d(v)
        if dd:
            bad.append(f"d^2 {g.name} = {dd} != 0")
    return ValidationReport(not bad, tuple(bad))


def extend_derivation(model: SullivanModel, element: Polynomial) -> Polynomial:
    return model.d(element)


def extract_k(model: SullivanModel) -> WordDecomposition:
    """Lowest word-length part of d.  For d = 0 the convention k = 2 is used."""
    alg = model.algebra
    parts: dict = {}
    for idx, v in enumerate(model.differential):
        for i, comp in v.word_components():
            parts.setdefault(i, [alg.zero()] * alg.ngens)[idx] = comp
    if not parts:
        return WordDecomposition(2, {})
    k = min(parts)
    return WordDecomposition(k, {i: tuple(p) for i, p in sorted(parts.items())})


def dk_model(model: SullivanModel) -> SullivanModel:
    """(Lambda V, d_k)."""
    wd = extract_k(model)
    if len(wd.parts) <= 1:
        return model
    return model.with_differential(wd.parts[wd.k], name=f"{model.name}[d_{wd.k}]")


def _in_even_subalgebra(alg: FreeAlgebra, m) -> bool:
    return not any(e for e, o in zip(m, alg.odd) if o)


def pure_model(model: SullivanModel) -> SullivanModel:
    alg = model.algebra
    values = []
    for g, v in zip(model.generators, model.differential):
        if not g.odd:
            values.append(alg.zero())
        else:
            values.append(Polynomial(alg, {m: c for m, c in v.terms.items() if _in_even_subalgebra(alg, m)}))
    out = model.with_differential(values, name=model.name if is_pure(model) else f"{model.name}[pure]")
    assert all(not out.d(v) for v in out.differential), "pure part of a differential must square to zero"
    return out


def is_pure(model: SullivanModel) -> bool:
    alg = model.algebra
    for g, v in zip(model.generators, model.differential):
        if not g.odd and v:
            return False
        if g.odd and not all(_in_even_subalgebra(alg, m) for m in v.terms):
            return False
    return True


def is_homogeneous(model: SullivanModel) -> bool:
    return len(extract_k(model).parts) <= 1
