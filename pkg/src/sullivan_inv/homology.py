"""Cohomology of (Lambda V, d) degree by degree, ellipticity and the fundamental class."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import FreeAlgebra, Polynomial
from .linalg import Echelon, kernel, rank
from .model import SullivanModel, is_pure

CERTIFIED_ELLIPTIC = "certified-elliptic"
CERTIFIED_NONELLIPTIC = "certified-nonelliptic"
UNDETERMINED = "undetermined"


class NotPoincareError(ValueError):
    pass


class CapRequiredError(ValueError):
    """Raised when a non-elliptic computation is attempted without an explicit degree cap."""


@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    basis: tuple
    target: tuple
    images: tuple

    def matrix(self) -> list:
        """Dense matrix of d with rows indexed by ``target`` and columns by ``basis``."""
        rows = [[Fraction(0)] * len(self.basis) for _ in self.target]
        for j, im in enumerate(self.images):
            for i, v in im.items():
                rows[i][j] = v
        return rows


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: Polynomial
    word_floor: Optional[int] = None


@dataclass(frozen=True)
class EllipticityCertificate:
    status: str
    formal_dimension: int
    evidence: str
    heuristic: bool = False

    @property
    def elliptic(self) -> bool:
        return self.status == CERTIFIED_ELLIPTIC


@lru_cache(maxsize=None)
def degree_slice(model: SullivanModel, n: int) -> DegreeSlice:
    alg = model.algebra
    src = alg.monomials(n) if n >= 0 else ()
    tgt = alg.monomials(n + 1) if n + 1 >= 0 else ()
    pos = {m: i for i, m in enumerate(tgt)}
    d = model.d
    images = []
    for m in src:
        images.append({pos[r]: Fraction(c) for r, c in d.on_monomial(m).items()})
    return DegreeSlice(n, tuple(src), tuple(tgt), tuple(images))


def to_vector(p: Polynomial, monomials: tuple) -> dict:
    pos = {m: i for i, m in enumerate(monomials)}
    return {pos[m]: c for m, c in p.terms.items()}


def to_polynomial(alg: FreeAlgebra, vec: dict, monomials: tuple) -> Polynomial:
    return Polynomial(alg, {monomials[i]: Fraction(c) for i, c in vec.items()})


@lru_cache(maxsize=None)
def cocycles(model: SullivanModel, n: int) -> tuple:
    return tuple(kernel(degree_slice(model, n).images))


@lru_cache(maxsize=None)
def coboundaries(model: SullivanModel, n: int) -> tuple:
    return tuple(im for im in degree_slice(model, n - 1).images if im)


@lru_cache(maxsize=None)
def cohomology_dim(model: SullivanModel, n: int) -> int:
    if n < 0:
        return 0
    sl = degree_slice(model, n)
    return len(sl.basis) - rank(sl.images) - rank(coboundaries(model, n))


def cohomology_dims(model: SullivanModel, max_degree: int) -> list:
    return [cohomology_dim(model, n) for n in range(max_degree + 1)]


def boundary_echelon(model: SullivanModel, n: int) -> Echelon:
    ech = Echelon()
    for b in coboundaries(model, n):
        ech.add(b)
    return ech


@lru_cache(maxsize=None)
def cohomology_basis(model: SullivanModel, n: int) -> tuple:
    if n < 0:
        return ()
    basis = degree_slice(model, n).basis
    ech = boundary_echelon(model, n)
    out = []
    for z in cocycles(model, n):
        if ech.add(z) is None:
            out.append(CohomologyClass(n, to_polynomial(model.algebra, z, basis)))
    return tuple(out)


def is_exact(model: SullivanModel, p: Polynomial) -> bool:
    if not p:
        return True
    n = p.degree
    if n is None:
        raise ValueError("exactness is only decided for homogeneous elements")
    return boundary_echelon(model, n).contains(to_vector(p, degree_slice(model, n).basis))


def is_cocycle(model: SullivanModel, p: Polynomial) -> bool:
    return not model.d(p)


def are_cohomologous(model: SullivanModel, a: Polynomial, b: Polynomial) -> bool:
    return is_exact(model, a - b)


def formal_dimension_candidate(model: SullivanModel) -> int:
    return sum(g.degree for g in model.odd) - sum(g.degree - 1 for g in model.even)


def even_quotient_dims(model: SullivanModel, max_degree: int) -> list:
    """dim of (Lambda V^even / (d y_1, ..., d y_m)) in degrees 0..max_degree (pure models)."""
    alg = model.algebra
    even_idx = [i for i, o in enumerate(alg.odd) if not o]
    ev = FreeAlgebra([alg.generators[i] for i in even_idx])
    rels = []
    for g, v in zip(model.generators, model.differential):
        if g.odd and v:
            rels.append({tuple(m[i] for i in even_idx): c for m, c in v.terms.items()})
    dims = []
    for t in range(max_degree + 1):
        mons = ev.monomials(t)
        pos = {m: i for i, m in enumerate(mons)}
        span = []
        for rel in rels:
            rd = ev.degree(next(iter(rel)))
            for mu in ev.monomials(t - rd) if t >= rd else ():
                vec = {}
                for m, c in rel.items():
                    s, r = ev.mul_monomials(mu, m)
                    vec[pos[r]] = vec.get(pos[r], 0) + s * c
                span.append({k: v for k, v in vec.items() if v})
        dims.append(len(mons) - rank(span))
    return dims


def _top_window_ok(model: SullivanModel, N: int) -> tuple[bool, str]:
    w = model.max_degree
    if cohomology_dim(model, N) != 1:
        return False, f"dim H^{N} = {cohomology_dim(model, N)}"
    for i in range(N + 1, N + w + 1):
        if cohomology_dim(model, i):
            return False, f"H^{i} != 0 above N = {N}"
    return True, f"dim H^{N} = 1 and H^i = 0 for {N} < i <= {N + w}"


@lru_cache(maxsize=None)
def certify_ellipticity(model: SullivanModel) -> EllipticityCertificate:
    N = formal_dimension_candidate(model)
    if model.n == 0:
        ok, top = _top_window_ok(model, N)
        status = CERTIFIED_ELLIPTIC if ok else UNDETERMINED
        return EllipticityCertificate(status, N, f"no even generators: Lambda V is finite-dimensional; {top}")
    if not is_pure(model):
        if N <= 0:
            return EllipticityCertificate(UNDETERMINED, N, "formal dimension candidate <= 0", True)
        ok, why = _top_window_ok(model, N)
        status = CERTIFIED_ELLIPTIC if ok else UNDETERMINED
        return EllipticityCertificate(status, N, f"heuristic window check: {why}", True)

    n_even = model.n
    if model.m < n_even:
        return EllipticityCertificate(
            CERTIFIED_NONELLIPTIC, N, f"{model.m} relations in {n_even} even variables: quotient has positive Krull dimension"
        )
    else:
        w = max(g.degree for g in model.even)
        bound = sum(g.degree + 1 for g in model.odd) + 2 * w
        dims = even_quotient_dims(model, bound)
        start = None
        run = 0
        for t, dim in enumerate(dims):
            run = run + 1 if dim == 0 else 0
            if run == w:
                start = t - w + 1
                break
        if start is None:
            return EllipticityCertificate(UNDETERMINED, N, f"even quotient nonzero somewhere in every window up to degree {bound}")
        status, why = CERTIFIED_ELLIPTIC, f"even quotient vanishes in degrees {start}..{start + w - 1}"
    ok, top = _top_window_ok(model, N)
    if not ok:
        # cannot happen for a finite-dimensional pure model; surfaced rather than hidden
        return EllipticityCertificate(UNDETERMINED, N, f"{why}, but {top}")
    return EllipticityCertificate(status, N, f"{why}; {top}")


def default_cap(model: SullivanModel) -> int:
    cert = certify_ellipticity(model)
    if not cert.elliptic:
        raise CapRequiredError(f"{model.name} is not certified elliptic; pass an explicit degree cap")
    return 2 * cert.formal_dimension + 2


def fundamental_class(model: SullivanModel, N: Optional[int] = None) -> CohomologyClass:
    if N is None:
        N = formal_dimension_candidate(model)
    classes = cohomology_basis(model, N)
    if len(classes) != 1:
        raise NotPoincareError(f"dim H^{N} = {len(classes)}, expected 1")
    return classes[0]


def max_wordlength_representative(model: SullivanModel, cls: CohomologyClass) -> int:
    """Largest p such that the class has a representative in Lambda^{>=p} V."""
    alg = model.algebra
    n = cls.degree
    basis = degree_slice(model, n).basis
    wl = [alg.word_length(m) for m in basis]
    rep = to_vector(cls.representative, basis)
    if not rep:
        raise ValueError("the zero class has no word-length floor")
    bounds = coboundaries(model, n)
    for p in range(max(wl, default=0), -1, -1):
        low = lambda c: wl[c] < p  # noqa: E731
        ech = Echelon()
        for b in bounds:
            ech.add({c: v for c, v in b.items() if low(c)})
        if ech.contains({c: v for c, v in rep.items() if low(c)}):
            return p
    return 0


def with_floor(model: SullivanModel, cls: CohomologyClass) -> CohomologyClass:
    if cls.word_floor is not None:
        return cls
    return replace(cls, word_floor=max_wordlength_representative(model, cls))


def euler_bookkeeping(model: SullivanModel, max_degree: int) -> tuple[int, int, int]:
    """Return ``(chi_chain, chi_cohomology, boundary_term)`` with chi_chain = chi_cohomology + boundary_term.

    Truncating at ``max_degree`` leaves the rank of d out of the top degree
    unaccounted for; that is the boundary term.
    """
    chain = sum((-1) ** n * len(degree_slice(model, n).basis) for n in range(max_degree + 1))
    coh = sum((-1) ** n * cohomology_dim(model, n) for n in range(max_degree + 1))
    top = (-1) ** max_degree * rank(degree_slice(model, max_degree).images)
    return chain, coh, top
