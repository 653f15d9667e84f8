"""
The complex Hom_{Lambda V}(Lambda V (x) Gamma(sV), Lambda V), its filtration
by word length of values, Ext, the evaluation map and the invariant r.

A Lambda V-linear map is determined by its values on the Gamma(sV) basis, so a
degree-n element is a finite table ``gamma -> f(gamma)`` with ``f(gamma)`` in
``(Lambda V)^{|gamma| + n}``.  Gamma monomials are truncated at degree ``cap``;
``D`` lowers Gamma degree, so the truncated maps form a quotient complex.

Signs: ``f(lambda u) = (-1)^{|f||lambda|} lambda f(u)`` and
``Df = d o f + (-1)^{|f|+1} f o D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import Polynomial
from .closure import AcyclicClosure, build
from .homology import (
    CohomologyClass,
    certify_ellipticity,
    fundamental_class,
    formal_dimension_candidate,
    is_exact,
    to_vector,
    degree_slice,
)
from .linalg import Echelon, kernel, solve
from .model import SullivanModel

INFINITY = math.inf


class TruncationError(ValueError):
    def __init__(self, message: str, required_cap: int):
        super().__init__(f"{message} (needs cap >= {required_cap})")
        self.required_cap = required_cap


class UndeterminedError(RuntimeError):
    """Truncated computation did not stabilize; the answer is not certified."""


class NotCocycleError(ValueError):
    pass


class HomComplex:
    def __init__(self, closure: AcyclicClosure, cap: Optional[int] = None):
        self.closure = closure
        self.model = closure.model
        self.cap = closure.cap if cap is None else cap
        self.gammas = closure.gamma_basis(self.cap)
        self.gamma_index = {g: i for i, g in enumerate(self.gammas)}
        self.gamma_degrees = [closure.gamma_degree(g) for g in self.gammas]
        self.unit_index = self.gamma_index[(0,) * closure.nv]
        alg = self.model.algebra
        # D(gamma_j) = sum c * lambda * gamma_k ; stored by k for the transpose action on maps
        self.D_terms = []
        self.incoming: list = [[] for _ in self.gammas]
        for j, g in enumerate(self.gammas):
            terms = []
            for g2, lam in closure.D_gamma(g).items():
                k = self.gamma_index.get(g2)
                if k is None:
                    raise AssertionError("D raised Gamma degree")
                for mono, c in lam.items():
                    terms.append((k, mono, Fraction(c)))
                    self.incoming[k].append((j, mono, Fraction(c), alg.degree(mono)))
            self.D_terms.append(terms)
        self._coords: dict = {}
        self._images: dict = {}

    # -- coordinates -------------------------------------------------------

    def coords(self, n: int) -> tuple:
        hit = self._coords.get(n)
        if hit is None:
            alg = self.model.algebra
            out = []
            for j, deg in enumerate(self.gamma_degrees):
                for mono in alg.monomials(deg + n) if deg + n >= 0 else ():
                    out.append((j, mono))
            index = {c: i for i, c in enumerate(out)}
            levels = tuple(alg.word_length(mono) for _, mono in out)
            hit = (tuple(out), index, levels)
            self._coords[n] = hit
        return hit

    def dim(self, n: int) -> int:
        return len(self.coords(n)[0])

    def levels(self, n: int) -> tuple:
        return self.coords(n)[2]

    def images(self, n: int) -> tuple:
        """Images of the coordinate basis of degree n under the differential."""
        hit = self._images.get(n)
        if hit is not None:
            return hit
        alg = self.model.algebra
        d = self.model.d
        src, _, _ = self.coords(n)
        _, tgt, _ = self.coords(n + 1)
        outer = -1 if (n + 1) % 2 else 1
        out = []
        for j, mono in src:
            vec: dict = {}
            for r, c in d.on_monomial(mono).items():
                key = tgt[(j, r)]
                vec[key] = vec.get(key, 0) + c
            for j2, lam, c, lam_deg in self.incoming[j]:
                s, r = alg.mul_monomials(lam, mono)
                if not s:
                    continue
                sign = outer * (-1 if (n * lam_deg) % 2 else 1) * s
                key = tgt[(j2, r)]
                vec[key] = vec.get(key, 0) + sign * c
            out.append({k: _plain(v) for k, v in vec.items() if v})
        out = tuple(out)
        self._images[n] = out
        return out

    # -- elements ----------------------------------------------------------

    def element(self, n: int, values: dict) -> "HomElement":
        return HomElement(self, n, {tuple(g): p for g, p in values.items() if p})

    def from_vector(self, n: int, vec: dict) -> "HomElement":
        src, _, _ = self.coords(n)
        alg = self.model.algebra
        vals: dict = {}
        for i, c in vec.items():
            j, mono = src[i]
            vals.setdefault(self.gammas[j], {})[mono] = Fraction(c)
        return HomElement(self, n, {g: Polynomial(alg, t) for g, t in vals.items()})

    def cocycles(self, n: int) -> list:
        return kernel(self.images(n))

    def coboundaries(self, n: int) -> list:
        return [b for b in self.images(n - 1) if b]

    def boundary_echelon(self, n: int, key=None) -> Echelon:
        ech = Echelon(key=key)
        for b in self.coboundaries(n):
            ech.add(b)
        return ech

    def cohomology(self, n: int) -> list:
        ech = self.boundary_echelon(n)
        return [z for z in self.cocycles(n) if ech.add(z) is None]


def _plain(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True)
class HomElement:
    complex: HomComplex = field(repr=False, compare=False)
    degree: int
    values: dict

    def value(self, gamma: tuple) -> Polynomial:
        gamma = tuple(gamma)
        if gamma not in self.complex.gamma_index:
            needed = self.complex.closure.gamma_degree(gamma)
            raise TruncationError(f"value on {self.complex.closure.format_gamma(gamma)} is beyond the truncation", needed)
        return self.values.get(gamma, self.complex.model.algebra.zero())

    def at_unit(self) -> Polynomial:
        return self.value((0,) * self.complex.closure.nv)

    def to_vector(self) -> dict:
        _, index, _ = self.complex.coords(self.degree)
        hc = self.complex
        out = {}
        for g, p in self.values.items():
            j = hc.gamma_index[g]
            for mono, c in p.terms.items():
                out[index[(j, mono)]] = c
        return out

    def __add__(self, other: "HomElement") -> "HomElement":
        assert self.degree == other.degree
        vals = dict(self.values)
        for g, p in other.values.items():
            vals[g] = vals[g] + p if g in vals else p
        return HomElement(self.complex, self.degree, {g: p for g, p in vals.items() if p})

    def __mul__(self, scalar) -> "HomElement":
        return HomElement(self.complex, self.degree, {g: p * Fraction(scalar) for g, p in self.values.items() if scalar})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1

    def is_zero(self) -> bool:
        return not self.values

    def describe(self) -> str:
        cl = self.complex.closure
        parts = [f"{cl.format_gamma(g)} -> {p}" for g, p in sorted(self.values.items(), key=lambda t: self.complex.gamma_index[t[0]])]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class ExtClass:
    representative: HomElement
    degree: int
    bidegree: Optional[tuple] = None


def hom_differential(f: HomElement) -> HomElement:
    """``d o f + (-1)^{|f|+1} f o D`` evaluated on every Gamma basis element in the truncation."""
    hc = f.complex
    alg = hc.model.algebra
    d = hc.model.d
    n = f.degree
    outer = -1 if (n + 1) % 2 else 1
    out = {}
    for j, g in enumerate(hc.gammas):
        acc = d(f.values[g]) if g in f.values else alg.zero()
        for k, lam, c in hc.D_terms[j]:
            fk = f.values.get(hc.gammas[k])
            if not fk:
                continue
            sign = outer * (-1 if (n * alg.degree(lam)) % 2 else 1)
            acc = acc + alg.monomial(lam, c * sign) * fk
        if acc:
            out[g] = acc
    return HomElement(hc, n + 1, out)


def filtration_level(f: HomElement):
    """Largest p with every value in Lambda^{>=p} V; infinity for the zero map."""
    lows = [p.min_word_length() for p in f.values.values() if p]
    return min(lows) if lows else INFINITY


def evaluation(f: HomElement) -> CohomologyClass:
    if not hom_differential(f).is_zero():
        raise NotCocycleError("evaluation is only defined on cocycles")
    return CohomologyClass(f.degree, f.at_unit())


def augmentation_dual(hc: HomComplex) -> HomElement:
    """The degree-0 map sending 1 to 1 and every other Gamma basis element to 0."""
    return hc.element(0, {(0,) * hc.closure.nv: hc.model.algebra.one()})


@lru_cache(maxsize=None)
def hom_complex(model: SullivanModel, cap: int) -> HomComplex:
    return HomComplex(build(model, cap), cap)


def default_ext_cap(model: SullivanModel) -> int:
    return max(formal_dimension_candidate(model), 0) + model.max_degree + 2


def ext_cohomology(model: SullivanModel, closure: Optional[AcyclicClosure], n: int, cap: Optional[int] = None) -> list:
    if closure is None:
        hc = hom_complex(model, cap if cap is not None else default_ext_cap(model))
    else:
        hc = HomComplex(closure, cap)
    return [ExtClass(hc.from_vector(n, z), n) for z in hc.cohomology(n)]


def ext_window(model: SullivanModel, cap: int) -> range:
    """Degrees where the truncated complex is trusted to compute Ext."""
    N = formal_dimension_candidate(model)
    w = model.max_degree
    return range(max(N - w, N - cap + 1), N + w + 1)


@dataclass(frozen=True)
class GorensteinResult:
    gorenstein: Optional[bool]
    degree: Optional[int]
    bidegree: Optional[tuple]
    dims: dict
    cap: int


def gorenstein_check(model: SullivanModel, cap: Optional[int] = None) -> GorensteinResult:
    """Is Ext 1-dimensional in the trusted window?  Returns the unique (p, q) when it is."""
    cap = default_ext_cap(model) if cap is None else cap
    hc = hom_complex(model, cap)
    dims = {n: len(hc.cohomology(n)) for n in ext_window(model, cap)}
    nz = [n for n, v in dims.items() if v]
    if len(nz) == 1 and dims[nz[0]] == 1:
        n = nz[0]
        p = filtration_sup(hc, n, hc.cohomology(n)[0])
        return GorensteinResult(True, n, (p, n - p), dims, cap)
    return GorensteinResult(False, None, None, dims, cap)


def filtration_sup(hc: HomComplex, n: int, vec: dict) -> int:
    """max over h of the filtration level of ``vec + D h``.

    Coboundaries are put in echelon form with pivots on the lowest word
    lengths; the fully reduced vector then has the largest attainable
    minimal word length.
    """
    levels = hc.levels(n)
    ech = hc.boundary_echelon(n, key=lambda c: (levels[c], c))
    red, _ = ech.reduce(_int(vec))
    if not red:
        raise ValueError("vector is a coboundary")
    return min(levels[c] for c in red)


def filtration_sup_descending(hc: HomComplex, n: int, vec: dict) -> int:
    """Same quantity by descending linear solves: largest p with vec in F^p + B."""
    levels = hc.levels(n)
    bounds = hc.coboundaries(n)
    for p in range(max(levels, default=0), -1, -1):
        keep = lambda c: levels[c] < p  # noqa: E731
        ech = Echelon()
        for b in bounds:
            ech.add({c: v for c, v in b.items() if keep(c)})
        if ech.contains({c: v for c, v in vec.items() if keep(c)}):
            return p
    return 0


def _int(vec: dict) -> dict:
    from .linalg import to_integer

    return to_integer(vec)[0]


def ext_generator(model: SullivanModel, cap: Optional[int] = None) -> ExtClass:
    """The Ext generator in degree N, normalized so evaluation is the fundamental class when elliptic."""
    cap = default_ext_cap(model) if cap is None else cap
    hc = hom_complex(model, cap)
    N = formal_dimension_candidate(model)
    classes = hc.cohomology(N)
    if len(classes) != 1:
        raise UndeterminedError(f"Ext^{N} has dimension {len(classes)} at cap {cap}")
    omega = hc.from_vector(N, classes[0])
    cert = certify_ellipticity(model)
    if cert.elliptic:
        fc = fundamental_class(model, N)
        val = omega.at_unit()
        basis = degree_slice(model, N).basis
        bounds = [b for b in degree_slice(model, N - 1).images if b]
        sol = solve(bounds + [to_vector(fc.representative, basis)], to_vector(val, basis))
        lam = sol.get(len(bounds), 0) if sol is not None else 0
        if lam:
            omega = omega * (1 / Fraction(lam))
    p = filtration_sup(hc, N, omega.to_vector())
    return ExtClass(omega, N, (p, N - p))


def r_at_cap(model: SullivanModel, cap: int) -> int:
    gen = ext_generator(model, cap)
    return gen.bidegree[0]


def r_invariant_computed(model: SullivanModel, cap: Optional[int] = None) -> int:
    """sup{p : the Ext generator has a cocycle representative in F^p}, checked stable from cap to cap + 2."""
    cap = default_ext_cap(model) if cap is None else cap
    a = r_at_cap(model, cap)
    b = r_at_cap(model, cap + 2)
    if a != b:
        raise UndeterminedError(f"r changes from {a} to {b} between caps {cap} and {cap + 2}")
    return a
