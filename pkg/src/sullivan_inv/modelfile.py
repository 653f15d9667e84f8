"""
Plain-text model files.

    # comment
    name S2
    gen x 2
    gen y 3
    d y = x^2
    option cap 8
    expect r 1

Lines are processed in order; ``d`` lines may only mention generators that
were declared before them.  Errors carry a 1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import FreeAlgebra, Generator, PolynomialParseError, format_polynomial, parse_polynomial
from .model import SullivanModel

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_LINE = re.compile(r"(?P<kw>\S+)(?P<rest>.*)")


class ModelFileError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def _value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return text


@dataclass
class ModelFile:
    name: str
    generators: list = field(default_factory=list)  # (name, degree)
    differential: dict = field(default_factory=dict)  # name -> polynomial text
    options: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)

    def to_model(self) -> SullivanModel:
        return SullivanModel.build(self.name, self.generators, self.differential)

    def serialize(self) -> str:
        lines = [f"name {self.name}"]
        lines += [f"gen {n} {d}" for n, d in self.generators]
        lines += [f"d {n} = {self.differential[n]}" for n, _ in self.generators if n in self.differential]
        lines += [f"option {k} {v}" for k, v in self.options.items()]
        lines += [f"expect {k} {v}" for k, v in self.expect.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_model(cls, model: SullivanModel, options=None, expect=None) -> "ModelFile":
        return cls(
            model.name,
            [(g.name, g.degree) for g in model.generators],
            {g.name: format_polynomial(v) for g, v in zip(model.generators, model.differential) if v},
            dict(options or {}),
            dict(expect or {}),
        )


def parse_model(text: str, default_name: str = "model") -> ModelFile:
    mf = ModelFile(default_name)
    gens: list = []
    seen_name = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        mt = _LINE.match(stripped)
        kw, rest = mt.group("kw"), mt.group("rest")
        rest_col = indent + len(kw) + 1
        args = rest.split()

        def err(msg, col=indent + 1):
            raise ModelFileError(msg, lineno, col)

        def col_of(token, start=0):
            return body.index(token, indent + len(kw) + start) + 1

        if kw == "name":
            if len(args) != 1:
                err("expected 'name <identifier>'")
            if seen_name:
                err("name given twice")
            mf.name = args[0]
            seen_name = True
        elif kw == "gen":
            if len(args) != 2:
                err("expected 'gen <name> <degree>'")
            gname, gdeg = args
            if not _NAME.fullmatch(gname):
                err(f"bad generator name {gname!r}", col_of(gname))
            if any(g == gname for g, _ in gens):
                err(f"duplicate generator {gname!r}", col_of(gname))
            if not re.fullmatch(r"-?\d+", gdeg):
                err(f"degree must be an integer, got {gdeg!r}", col_of(gdeg, len(gname)))
            deg = int(gdeg)
            if deg < 2:
                err(f"generator {gname} has degree {deg}; degree >= 2 required", col_of(gdeg, len(gname)))
            gens.append((gname, deg))
        elif kw == "d":
            m = re.match(r"\s*(?P<g>\S+)\s*=(?P<poly>.*)", rest)
            if m is None:
                err("expected 'd <name> = <polynomial>'")
            gname = m.group("g")
            if gname not in {g for g, _ in gens}:
                err(f"unknown generator {gname!r}", rest_col + m.start("g"))
            if gname in mf.differential:
                err(f"differential of {gname} given twice", rest_col + m.start("g"))
            poly = m.group("poly")
            alg = FreeAlgebra([Generator(n, d) for n, d in gens])
            try:
                parse_polynomial(alg, poly)
            except PolynomialParseError as exc:
                err(exc.reason, rest_col + m.start("poly") + exc.column - 1)
            mf.differential[gname] = poly.strip()
        elif kw in ("option", "expect"):
            if len(args) != 2:
                err(f"expected '{kw} <key> <value>'")
            target = mf.options if kw == "option" else mf.expect
            target[args[0]] = _value(args[1])
        else:
            err(f"unknown keyword {kw!r}")
    mf.generators = gens
    if not gens:
        raise ModelFileError("no generators declared", 1, 1)
    return mf


def load_model_file(path) -> ModelFile:
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), default_name=path.stem)
