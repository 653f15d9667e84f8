"""
The acyclic closure (Lambda V (x) Gamma(sV), D) of a Sullivan algebra.

``sv`` has degree ``|v| - 1``; suspensions of even generators are exterior,
suspensions of odd generators carry divided powers.  Monomials of the closure
algebra list the V exponents first and the sV exponents after them, so a
monomial reads ``lambda * gamma`` with ``lambda`` in Lambda V and ``gamma`` in
Gamma(sV).  Only the V generators count towards word length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import Derivation, FreeAlgebra, Generator, Polynomial
from .linalg import kernel, rank, solve
from .model import SullivanModel, is_homogeneous, is_pure


class UnsupportedError(ValueError):
    pass


class SuspendedGenerator(Generator):
    pass


def suspended(g: Generator, taken: set) -> Generator:
    name = "s" + g.name
    while name in taken:
        name = "s" + name
    degree = g.degree - 1
    return Generator(name, degree, divided=(degree % 2 == 0))


@lru_cache(maxsize=None)
def closure_algebra(model: SullivanModel) -> FreeAlgebra:
    taken = set(model.algebra.names)
    sgens = []
    for g in model.generators:
        sg = suspended(g, taken)
        taken.add(sg.name)
        sgens.append(sg)
    gens = list(model.generators) + sgens
    nv = len(model.generators)
    return FreeAlgebra(gens, counted=[True] * nv + [False] * nv)


def embed(model: SullivanModel, p: Polynomial) -> Polynomial:
    alg = closure_algebra(model)
    pad = (0,) * len(model.generators)
    return Polynomial(alg, {m + pad: c for m, c in p.terms.items()})


def split(model: SullivanModel, m: tuple) -> tuple[tuple, tuple]:
    nv = len(model.generators)
    return m[:nv], m[nv:]


def suspend_s(model: SullivanModel, poly: Polynomial) -> Polynomial:
    """Averaged suspension of a word-homogeneous polynomial in the even generators.

    Each monomial ``x_{j_1} ... x_{j_k}`` goes to ``1/k`` times the sum over
    positions of the word with that factor replaced by its suspension.
    """
    alg = model.algebra
    if poly.algebra != alg:
        raise UnsupportedError("polynomial not in the model's algebra")
    lengths = poly.word_lengths()
    if len(lengths) > 1:
        raise UnsupportedError("s is only defined here on word-homogeneous input")
    if any(e and o for m in poly.terms for e, o in zip(m, alg.odd)):
        raise UnsupportedError("s is only defined here on the even subalgebra")
    calg = closure_algebra(model)
    nv = alg.ngens
    terms: dict = {}
    for m, c in poly.terms.items():
        k = alg.word_length(m)
        for i, e in enumerate(m):
            if not e:
                continue
            lam = list(m)
            lam[i] -= 1
            gam = [0] * nv
            gam[i] = 1
            key = tuple(lam) + tuple(gam)
            terms[key] = terms.get(key, 0) + Fraction(e, k) * c
    return Polynomial(calg, terms)


@dataclass
class AcyclicClosure:
    model: SullivanModel
    cap: int
    algebra: FreeAlgebra
    suspension_values: tuple
    method: str

    def __post_init__(self):
        d_images = [embed(self.model, v) for v in self.model.differential]
        self.D = Derivation(self.algebra, d_images + list(self.suspension_values))
        self._gamma_cache: dict = {}

    @property
    def nv(self) -> int:
        return len(self.model.generators)

    def D_sv(self, name: str) -> Polynomial:
        return self.suspension_values[self.model.algebra.index[name]]

    def gamma_basis(self, max_degree: Optional[int] = None) -> tuple:
        """Gamma(sV) monomials (as sV exponent tuples) of degree <= max_degree, by degree."""
        if max_degree is None:
            max_degree = self.cap
        hit = self._gamma_cache.get(max_degree)
        if hit is not None:
            return hit
        nv = self.nv
        unit = (0,) * nv
        out = []
        for deg in range(max_degree + 1):
            for m in self.algebra.monomials(deg, max_length=0):
                out.append(m[nv:])
        out = tuple(out)
        self._gamma_cache[max_degree] = out
        return out

    def gamma_degree(self, gam: tuple) -> int:
        return sum(e * d for e, d in zip(gam, self.algebra.degrees[self.nv:]))

    def format_gamma(self, gam: tuple) -> str:
        return self.algebra.format_monomial((0,) * self.nv + tuple(gam))

    def D_gamma(self, gam: tuple) -> dict:
        """D of a Gamma monomial, as ``{gamma': {lambda: coef}}``."""
        m = (0,) * self.nv + tuple(gam)
        out: dict = {}
        for r, c in self.D.on_monomial(m).items():
            lam, g2 = r[: self.nv], r[self.nv:]
            out.setdefault(g2, {})[lam] = c
        return out


def _sorted_indices(model: SullivanModel) -> list:
    return sorted(range(len(model.generators)), key=lambda i: model.generators[i].degree)


def _dsquared_zero(alg: FreeAlgebra, images: list, idx: int) -> bool:
    D = Derivation(alg, images)
    return not D(images[idx])


def build(model: SullivanModel, cap: Optional[int] = None, method: str = "auto") -> AcyclicClosure:
    """Construct D on every suspended generator.

    ``method``: ``"formula"`` uses ``D(sy) = y - s(dy)`` (pure, word-homogeneous
    models only), ``"inductive"`` solves ``D(c) = dv`` for a correction
    ``c`` in ``Lambda^+ V (x) Gamma^+`` generator by generator, ``"auto"``
    picks the formula whenever it applies.
    """
    if cap is None:
        from .homology import formal_dimension_candidate

        cap = max(formal_dimension_candidate(model), 0) + model.max_degree + 2
    alg = closure_algebra(model)
    nv = len(model.generators)
    formula_ok = is_pure(model) and is_homogeneous(model)
    if method == "auto":
        method = "formula" if formula_ok else "inductive"
    if method == "formula" and not formula_ok:
        raise UnsupportedError("the closed suspension formula needs a pure word-homogeneous differential")

    images = [embed(model, v) for v in model.differential] + [alg.zero()] * nv
    for i in _sorted_indices(model):
        v = model.generators[i]
        vv = embed(model, model.algebra.gen(v.name))
        dv = model.differential[i]
        if not dv:
            images[nv + i] = vv
            continue
        if method == "formula":
            s = suspend_s(model, dv)
            images[nv + i] = vv - s
            if not _dsquared_zero(alg, images, nv + i):
                images[nv + i] = vv + s
                if not _dsquared_zero(alg, images, nv + i):
                    raise AssertionError(f"no sign makes D^2(s{v.name}) vanish")
            continue
        images[nv + i] = vv - _correction(model, alg, images, embed(model, dv), v.degree)
        assert _dsquared_zero(alg, images, nv + i), f"correction for s{v.name} failed"
    return AcyclicClosure(model, cap, alg, tuple(images[nv:]), method)


def _correction(model, alg, images, target: Polynomial, degree: int) -> Polynomial:
    """Solve D(c) = target with c in (Lambda^+ V (x) Gamma^+(sV))^degree."""
    nv = len(model.generators)
    D = Derivation(alg, images)
    cands = [
        m
        for m in alg.monomials(degree)
        if any(m[:nv]) and any(m[nv:])
    ]
    rows = alg.monomials(degree + 1)
    pos = {m: i for i, m in enumerate(rows)}
    cols = [{pos[r]: c for r, c in D.on_monomial(m).items()} for m in cands]
    tvec = {pos[m]: c for m, c in target.terms.items()}
    sol = solve(cols, tvec)
    if sol is None:
        raise AssertionError("no correction term exists; the partial closure is not acyclic here")
    return Polynomial(alg, {cands[j]: c for j, c in sol.items()})


def dsquared_violations(closure: AcyclicClosure, max_degree: int) -> list:
    D = closure.D
    bad = []
    for deg in range(max_degree + 1):
        for m in closure.algebra.monomials(deg):
            if D(D(closure.algebra.monomial(m))):
                bad.append(m)
    return bad


def homology_dims(closure: AcyclicClosure, max_degree: int) -> list:
    """Dimensions of H^n(Lambda V (x) Gamma(sV), D) for n <= max_degree."""
    alg = closure.algebra
    D = closure.D

    def images(n):
        src = alg.monomials(n)
        tgt = {m: i for i, m in enumerate(alg.monomials(n + 1))}
        return src, [{tgt[r]: c for r, c in D.on_monomial(m).items()} for m in src]

    dims = []
    prev_rank = 0
    for n in range(max_degree + 1):
        src, ims = images(n)
        r = rank(ims)
        dims.append(len(src) - r - prev_rank)
        prev_rank = r
    return dims


def verify_acyclic(closure: AcyclicClosure, cap: Optional[int] = None) -> bool:
    """True iff D^2 = 0 through degree cap + 1, H^0 = Q and H^n = 0 for 1 <= n <= cap."""
    if cap is None:
        cap = closure.cap
    if dsquared_violations(closure, cap + 1):
        return False
    dims = homology_dims(closure, cap)
    return dims[0] == 1 and not any(dims[1:])
