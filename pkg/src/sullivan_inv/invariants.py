"""e0 and r by several routes, the closed pure formula, and the category lower-bound report."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .ext import UndeterminedError, gorenstein_check, r_invariant_computed
from .homology import (
    CapRequiredError,
    NotPoincareError,
    certify_ellipticity,
    cohomology_dim,
    degree_slice,
    fundamental_class,
    formal_dimension_candidate,
    max_wordlength_representative,
)
from .linalg import kernel, rank
from .model import SullivanModel, dk_model, extract_k, is_homogeneous, is_pure
from .spectral import e0_from_ss, r_from_ss

INFINITY = math.inf


class RefusedError(ValueError):
    """Precondition of an invariant is not met (non-pure, not Poincare, no cap)."""


def _quotient_cohomology_dim(model: SullivanModel, n: int, floor: int) -> int:
    """dim H^n of Lambda V / Lambda^{>=floor} V."""
    alg = model.algebra

    def slice_(deg):
        sl = degree_slice(model, deg)
        keep = [i for i, m in enumerate(sl.basis) if alg.word_length(m) < floor]
        tgt_keep = {i for i, m in enumerate(sl.target) if alg.word_length(m) < floor}
        return keep, [{t: c for t, c in sl.images[i].items() if t in tgt_keep} for i in keep]

    keep, ims = slice_(n)
    z = len(keep) - rank(ims)
    b = rank(slice_(n - 1)[1]) if n > 0 else 0
    return z - b


def _projection_injective(model: SullivanModel, n: int, floor: int) -> bool:
    """Is H^n(Lambda V) -> H^n(Lambda V / Lambda^{>=floor} V) injective?

    A cocycle maps to zero iff it is cohomologous to something in
    Lambda^{>=floor}; equivalently the kernel is the image of
    H^n(Lambda^{>=floor}) modulo boundaries.  Computed as
    dim H^n - rank of the induced map.
    """
    from .homology import cohomology_basis, coboundaries, to_vector

    classes = cohomology_basis(model, n)
    if not classes:
        return True
    alg = model.algebra
    basis = degree_slice(model, n).basis
    low = [i for i, m in enumerate(basis) if alg.word_length(m) < floor]
    lowset = set(low)
    proj = lambda v: {c: x for c, x in v.items() if c in lowset}  # noqa: E731
    bounds = [proj(b) for b in coboundaries(model, n)]
    base = rank(bounds)
    vecs = [proj(to_vector(c.representative, basis)) for c in classes]
    return rank(bounds + vecs) - base == len(classes)


def toomer_e0_projection(model: SullivanModel, cap: Optional[int] = None):
    """Smallest n with p_n : Lambda V -> Lambda V / Lambda^{>n} V injective in cohomology (degrees <= cap)."""
    cert = certify_ellipticity(model)
    if cap is None:
        if not cert.elliptic:
            raise CapRequiredError(f"{model.name} is not certified elliptic; pass an explicit cap")
        cap = cert.formal_dimension
    degrees = [i for i in range(1, cap + 1) if cohomology_dim(model, i)]
    top = max((model.algebra.word_length(m) for i in degrees for m in degree_slice(model, i).basis), default=0)
    for n in range(0, top + 1):
        if all(_projection_injective(model, i, n + 1) for i in degrees):
            return n
    return INFINITY


def toomer_e0_fundamental(model: SullivanModel) -> int:
    cert = certify_ellipticity(model)
    if not cert.elliptic:
        raise NotPoincareError(f"{model.name} is not certified elliptic")
    return max_wordlength_representative(model, fundamental_class(model, cert.formal_dimension))


@dataclass(frozen=True)
class FormulaValue:
    value: int
    convention_dependent: bool = False


def r_formula_pure(model: SullivanModel) -> FormulaValue:
    """m + (k - 2)(n - 1) for pure models; n = 0 falls back on the k = 2 convention."""
    if not is_pure(model):
        raise RefusedError("closed formula only applies to pure models")
    k = extract_k(model).k
    m, n = model.m, model.n
    if n == 0:
        return FormulaValue(m, True)
    return FormulaValue(m + (k - 2) * (n - 1), not any(model.differential))


def r_via_dk(model: SullivanModel, cap: Optional[int] = None) -> int:
    return r_invariant_computed(dk_model(model), cap)


def gj_bound(model: SullivanModel) -> int:
    return model.m + model.n * (extract_k(model).k - 2)


def ghorbal_jessup_check(model: SullivanModel, e0: Optional[int] = None) -> int:
    """Margin e0 - (m + n(k - 2)); raises if negative."""
    if not certify_ellipticity(model).elliptic:
        raise RefusedError(f"{model.name} is not certified elliptic")
    if e0 is None:
        e0 = toomer_e0_fundamental(model)
    margin = e0 - gj_bound(model)
    if margin < 0:
        raise AssertionError(f"e0 = {e0} below m + n(k-2) = {gj_bound(model)}")
    return margin


@dataclass
class InvariantReport:
    model: str
    k: int
    m: int
    n: int
    N: int
    ellipticity: str
    ellipticity_heuristic: bool
    pure: bool
    homogeneous: bool
    e0_projection: Optional[int] = None
    e0_fundamental: Optional[int] = None
    e0_ss: Optional[int] = None
    r_formula: Optional[int] = None
    r_formula_convention: bool = False
    r_computed: Optional[int] = None
    r_ss: Optional[int] = None
    r_dk: Optional[int] = None
    gj_bound: Optional[int] = None
    gorenstein_bidegree: Optional[list] = None
    question_bound: Optional[int] = None
    cat0_equals_e0: bool = False
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def undetermined(self) -> bool:
        return self.r_computed is None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdicts"] = dict(sorted(self.verdicts.items()))
        return d


def _verdict(ok) -> str:
    if ok is None:
        return "n/a"
    return "pass" if ok else "FAIL"


def cat_lower_bound_report(model: SullivanModel, cap: Optional[int] = None) -> InvariantReport:
    cert = certify_ellipticity(model)
    k = extract_k(model).k
    rep = InvariantReport(
        model=model.name,
        k=k,
        m=model.m,
        n=model.n,
        N=formal_dimension_candidate(model),
        ellipticity=cert.status,
        ellipticity_heuristic=cert.heuristic,
        pure=is_pure(model),
        homogeneous=is_homogeneous(model),
    )
    if cert.elliptic:
        rep.e0_fundamental = toomer_e0_fundamental(model)
        rep.e0_projection = toomer_e0_projection(model)
        rep.e0_ss = e0_from_ss(model)
        rep.gj_bound = gj_bound(model)
        rep.cat0_equals_e0 = True
    else:
        rep.notes.append("e0 not computed: model is not certified elliptic")
    if rep.pure:
        f = r_formula_pure(model)
        rep.r_formula, rep.r_formula_convention = f.value, f.convention_dependent
        if f.convention_dependent:
            rep.notes.append("closed formula value relies on the k = 2 convention for d = 0")
    else:
        rep.question_bound = model.m + (model.n - 1) * (k - 2)
    try:
        g = gorenstein_check(model, cap)
        rep.gorenstein_bidegree = list(g.bidegree) if g.gorenstein else None
        rep.r_computed = r_invariant_computed(model, cap)
        rep.r_ss = r_from_ss(model, cap)
        rep.r_dk = rep.r_computed if dk_model(model) is model else r_via_dk(model, cap)
    except UndeterminedError as exc:
        rep.notes.append(f"undetermined: {exc}")

    v = rep.verdicts
    r = rep.r_computed
    if cert.elliptic:
        v["e0_consistent"] = _verdict(rep.e0_projection == rep.e0_fundamental == rep.e0_ss)
        v["gj_bound"] = _verdict(rep.e0_fundamental >= rep.gj_bound)
        v["r_le_e0"] = _verdict(None if r is None else r <= rep.e0_fundamental)
    v["gorenstein"] = _verdict(rep.gorenstein_bidegree is not None)
    v["r_routes_agree"] = _verdict(None if r is None else r == rep.r_ss == rep.r_dk)
    if rep.pure:
        v["r_formula"] = _verdict(None if r is None else r == rep.r_formula)
    return rep
