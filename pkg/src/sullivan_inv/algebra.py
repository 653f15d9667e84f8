"""
Free graded-commutative algebras with exact rational coefficients.

A :class:`FreeAlgebra` is generated by a finite ordered list of homogeneous
generators.  Odd generators are exterior, even generators are polynomial or,
when flagged ``divided``, divided-power generators (``g^[a] g^[b] =
binom(a+b, a) g^[a+b]``).  The same machinery therefore serves both the
Sullivan algebra ``Lambda V`` and its acyclic closure ``Lambda V (x) Gamma(sV)``.

A monomial is a tuple of exponents in generator order; the product it stands
for is the ordered product of the generator powers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

Monomial = tuple
Number = Union[int, Fraction]


class ModelMismatchError(ValueError):
    """Operands live in different algebras."""


class PolynomialParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column
        self.reason = message


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    divided: bool = False

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator {self.name} must have positive degree")
        if self.divided and self.degree % 2:
            raise ValueError("divided powers only make sense on even generators")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    monomials: tuple

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.monomials)}


def monomial_key(m: Monomial):
    """Sort key: lexicographic in generator order, higher powers first."""
    return tuple(-e for e in m)


class FreeAlgebra:
    """The free graded-commutative algebra on ``generators``.

    ``counted`` marks the generators contributing to word length; by default
    all of them.
    """

    def __init__(self, generators: Sequence[Generator], counted: Optional[Sequence[bool]] = None):
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.degrees = tuple(g.degree for g in self.generators)
        self.odd = tuple(g.odd for g in self.generators)
        self.divided = tuple(g.divided for g in self.generators)
        self.counted = tuple(counted) if counted is not None else (True,) * len(self.generators)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.ngens = len(self.generators)
        self._key = (self.generators, self.counted)
        self._odd_idx = tuple(i for i, o in enumerate(self.odd) if o)

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inner = ", ".join(f"{g.name}{g.degree}" for g in self.generators)
        return f"FreeAlgebra({inner})"

    # -- monomials -------------------------------------------------------

    @property
    def unit(self) -> Monomial:
        return (0,) * self.ngens

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def word_length(self, m: Monomial) -> int:
        return sum(e for e, c in zip(m, self.counted) if c)

    def is_odd(self, m: Monomial) -> bool:
        return self.degree(m) % 2 == 1

    def mul_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        """Product of two monomials as ``(coefficient, monomial)``; coefficient 0 if it vanishes."""
        coef = 1
        out = []
        for i in range(self.ngens):
            ea, eb = a[i], b[i]
            if self.odd[i] and ea and eb:
                return 0, self.unit
            if self.divided[i] and ea and eb:
                coef *= comb(ea + eb, ea)
            out.append(ea + eb)
        # Koszul sign: move every odd factor of b left past the odd factors of a with larger index
        swaps = 0
        odd_idx = self._odd_idx
        for j in odd_idx:
            if b[j]:
                for i in odd_idx:
                    if i > j and a[i]:
                        swaps += 1
        if swaps % 2:
            coef = -coef
        return coef, tuple(out)

    def monomials(self, degree: int, min_length: int = 0, max_length: Optional[int] = None) -> tuple:
        return _enumerate(self.degrees, self.odd, self.counted, degree, min_length, max_length)

    def basis(self, degree: int) -> GradedBasis:
        if degree < 0:
            return GradedBasis(degree, ())
        return GradedBasis(degree, self.monomials(degree))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e, div in zip(self.names, m, self.divided):
            if not e:
                continue
            if div:
                parts.append(f"{name}^[{e}]" if e > 1 else name)
            else:
                parts.append(f"{name}^{e}" if e > 1 else name)
        return "*".join(parts) if parts else "1"

    # -- elements --------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.unit: Fraction(1)})

    def gen(self, name: str) -> "Polynomial":
        m = [0] * self.ngens
        m[self.index[name]] = 1
        return Polynomial(self, {tuple(m): Fraction(1)})

    def monomial(self, m: Monomial, coef: Number = 1) -> "Polynomial":
        return Polynomial(self, {tuple(m): Fraction(coef)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


@lru_cache(maxsize=None)
def _enumerate(degrees, odd, counted, degree, min_length, max_length) -> tuple:
    n = len(degrees)
    out = []
    exps = [0] * n

    def rec(i, remaining, length):
        if i == n:
            if remaining == 0 and length >= min_length:
                out.append(tuple(exps))
            return
        d = degrees[i]
        top = 1 if odd[i] else remaining // d
        for e in range(top, -1, -1):
            if e * d > remaining:
                continue
            nl = length + (e if counted[i] else 0)
            if max_length is not None and nl > max_length:
                continue
            exps[i] = e
            rec(i + 1, remaining - e * d, nl)
        exps[i] = 0

    if degree >= 0:
        rec(0, degree, 0)
    out.sort(key=monomial_key)
    return tuple(out)


class Polynomial:
    """An element of a :class:`FreeAlgebra`: sparse map monomial -> nonzero rational."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Monomial, Number]):
        self.algebra = algebra
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}
        self._hash = None

    # -- structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one() * other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def degrees(self) -> set:
        return {self.algebra.degree(m) for m in self.terms}

    @property
    def degree(self) -> Optional[int]:
        """Degree if homogeneous; ``None`` for zero or mixed elements."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def word_lengths(self) -> set:
        return {self.algebra.word_length(m) for m in self.terms}

    def min_word_length(self) -> Optional[int]:
        wl = self.word_lengths()
        return min(wl) if wl else None

    def word_components(self) -> list:
        comps: dict = {}
        for m, c in self.terms.items():
            comps.setdefault(self.algebra.word_length(m), {})[m] = c
        return [(i, Polynomial(self.algebra, comps[i])) for i in sorted(comps)]

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.algebra != other.algebra:
            raise ModelMismatchError("polynomials over different generator sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one() * other
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.algebra, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Graded-commutative product."""
    p._check(q)
    alg = p.algebra
    terms: dict = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            s, m = alg.mul_monomials(a, b)
            if s:
                terms[m] = terms.get(m, 0) + s * ca * cb
    return Polynomial(alg, terms)


def basis(algebra: FreeAlgebra, degree: int) -> GradedBasis:
    return algebra.basis(degree)


def word_components(p: Polynomial) -> list:
    return p.word_components()


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    alg = p.algebra
    out = []
    for m in sorted(p.terms, key=lambda m: (alg.degree(m), monomial_key(m))):
        c = p.terms[m]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = alg.format_monomial(m)
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\]])|(?P<bad>\S))")


def parse_polynomial(algebra: FreeAlgebra, text: str) -> Polynomial:
    """Parse ``3/2 x^2*y - z`` style input.

    Terms are separated by ``+``/``-``; inside a term, factors (rational
    numbers, generator names with optional ``^k``) multiply left to right,
    ``*`` being optional.  Divided-power generators accept ``g^[k]``.
    Raises :class:`PolynomialParseError` with a 1-based column.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group("bad"):
            raise PolynomialParseError(f"unexpected character {mt.group('bad')!r}", mt.start("bad") + 1)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind) + 1))
        pos = mt.end()
    tokens.append(("end", "", len(text) + 1))

    i = 0
    total = algebra.zero()
    sign = 1
    expect_term = True
    term = None
    while True:
        kind, val, col = tokens[i]
        if kind == "end":
            if expect_term:
                raise PolynomialParseError("expected a term", col)
            total = total + term * sign
            return total
        if kind == "op" and val in "+-":
            if not expect_term:
                total = total + term * sign
                term = None
                sign = 1
                expect_term = True
            if val == "-":
                sign = -sign
            i += 1
            continue
        # a factor
        if kind == "num":
            factor = algebra.one() * Fraction(val)
            i += 1
        elif kind == "name":
            if val not in algebra.index:
                raise PolynomialParseError(f"unknown generator {val!r}", col)
            gi = algebra.index[val]
            i += 1
            power = 1
            if tokens[i][0] == "op" and tokens[i][1] == "^":
                i += 1
                bracket = tokens[i][0] == "op" and tokens[i][1] == "["
                if bracket:
                    i += 1
                k2, v2, c2 = tokens[i]
                if k2 != "num" or "/" in v2:
                    raise PolynomialParseError("exponent must be a nonnegative integer", c2)
                power = int(v2)
                i += 1
                if bracket:
                    if not (tokens[i][0] == "op" and tokens[i][1] == "]"):
                        raise PolynomialParseError("missing ']'", tokens[i][2])
                    if not algebra.divided[gi]:
                        raise PolynomialParseError(f"{val} is not a divided-power generator", col)
                    i += 1
            m = [0] * algebra.ngens
            if algebra.divided[gi]:
                m[gi] = power
                factor = algebra.monomial(tuple(m))
            else:
                m[gi] = 1
                factor = algebra.monomial(tuple(m)) ** power
        elif kind == "op" and val == "*":
            if expect_term:
                raise PolynomialParseError("'*' without left operand", col)
            expect_term = True
            i += 1
            continue
        else:
            raise PolynomialParseError(f"unexpected {val!r}", col)
        term = factor if term is None else term * factor
        expect_term = False


class Derivation:
    """Degree-one derivation determined by its values on generators.

    Leibniz rule ``D(ab) = D(a) b + (-1)^|a| a D(b)``; on divided powers
    ``D(g^[e]) = D(g) g^[e-1]``.  Values on monomials are memoized.
    """

    def __init__(self, algebra: FreeAlgebra, images: Sequence[Polynomial]):
        if len(images) != algebra.ngens:
            raise ValueError("need one image per generator")
        for im in images:
            if im.algebra != algebra:
                raise ModelMismatchError("derivation images in a different algebra")
        self.algebra = algebra
        self.images = tuple(images)
        self._memo: dict = {}

    def on_monomial(self, m: Monomial) -> dict:
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        alg = self.algebra
        out: dict = {}
        n = alg.ngens
        prefix_deg = 0
        for i in range(n):
            e = m[i]
            if not e:
                continue
            prefix = m[:i] + (0,) * (n - i)
            suffix = (0,) * (i + 1) + m[i + 1:]
            rest = [0] * n
            if alg.odd[i]:
                scale = 1
            elif alg.divided[i]:
                scale = 1
                rest[i] = e - 1
            else:
                scale = e
                rest[i] = e - 1
            rest = tuple(rest)
            if prefix_deg % 2:
                scale = -scale
            for t, c in self.images[i].terms.items():
                # prefix * (D(g) * rest) * suffix
                s1, a = alg.mul_monomials(t, rest)
                if not s1:
                    continue
                s2, b = alg.mul_monomials(prefix, a)
                if not s2:
                    continue
                s3, r = alg.mul_monomials(b, suffix)
                if not s3:
                    continue
                out[r] = out.get(r, 0) + scale * s1 * s2 * s3 * c
            prefix_deg += e * alg.degrees[i]
        out = {k: v for k, v in out.items() if v}
        self._memo[m] = out
        return out

    def __call__(self, p: Polynomial) -> Polynomial:
        if p.algebra != self.algebra:
            raise ModelMismatchError("element not in the derivation's algebra")
        terms: dict = {}
        for m, c in p.terms.items():
            for r, v in self.on_monomial(m).items():
                terms[r] = terms.get(r, 0) + c * v
        return Polynomial(self.algebra, terms)
