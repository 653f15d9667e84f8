"""
Pages of the spectral sequence of a filtered cochain complex, computed from
the general term

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}),
    Z_r^p = {x in F^p : dx in F^{p+r}},

in each total degree.  Two filtered complexes are provided: (Lambda V, d) with
the word-length filtration, and the Hom complex with the filtration by word
length of values.  Entries are keyed by (p, total degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .ext import HomComplex, UndeterminedError, default_ext_cap, ext_window, hom_complex
from .homology import cohomology_dim, degree_slice, formal_dimension_candidate
from .linalg import kernel, rank
from .model import SullivanModel


class FilteredComplex:
    """Finite-dimensional slices with a level per basis vector; d never lowers the level."""

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def levels(self, n: int) -> tuple:
        raise NotImplementedError

    def images(self, n: int) -> tuple:
        raise NotImplementedError


class WordLengthComplex(FilteredComplex):
    def __init__(self, model: SullivanModel):
        self.model = model

    def dim(self, n):
        return len(degree_slice(self.model, n).basis) if n >= 0 else 0

    def levels(self, n):
        if n < 0:
            return ()
        alg = self.model.algebra
        return tuple(alg.word_length(m) for m in degree_slice(self.model, n).basis)

    def images(self, n):
        return degree_slice(self.model, n).images if n >= 0 else ()


class HomFiltered(FilteredComplex):
    def __init__(self, hc: HomComplex):
        self.hc = hc

    def dim(self, n):
        return self.hc.dim(n)

    def levels(self, n):
        return self.hc.levels(n)

    def images(self, n):
        return self.hc.images(n)


@dataclass(frozen=True)
class SpectralPage:
    page: int
    entries: dict  # (p, total degree) -> dim
    out_ranks: dict = field(default_factory=dict)  # (p, total degree) -> rank of d_r leaving it

    def dim(self, p: int, n: int) -> int:
        return self.entries.get((p, n), 0)

    def total(self, n: int) -> int:
        return sum(v for (p, m), v in self.entries.items() if m == n)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_dict(self) -> dict:
        return {
            "page": self.page,
            "entries": [[p, n, v] for (p, n), v in sorted(self.entries.items()) if v],
            "differential_ranks": [[p, n, v] for (p, n), v in sorted(self.out_ranks.items()) if v],
        }


class PageCalculator:
    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self._z: dict = {}

    def top(self, n: int) -> int:
        return max(self.fc.levels(n), default=0)

    def Z(self, n: int, p: int, r: int) -> tuple:
        """Basis of Z_r^p = {x in F^p : dx in F^{p+r}} in degree n; F^p for r <= 0."""
        lo = max(p, 0)
        hi = min(p + r, max(self.fc.levels(n + 1), default=0) + 1)
        if hi <= lo:
            # d preserves the filtration, so the condition is empty
            hi = lo
        key = (n, lo, hi)
        hit = self._z.get(key)
        if hit is not None:
            return hit
        lev = self.fc.levels(n)
        cols = [i for i, l in enumerate(lev) if l >= lo]
        if hi == lo:
            out = tuple({i: 1} for i in cols)
        else:
            lev1 = self.fc.levels(n + 1)
            ims = self.fc.images(n)
            restricted = [{t: c for t, c in ims[i].items() if lev1[t] < hi} for i in cols]
            out = tuple({cols[j]: c for j, c in z.items()} for z in kernel(restricted))
        self._z[key] = out
        return out

    def boundary(self, n: int, vecs) -> list:
        """Apply d (degree n-1 -> n) to vectors of degree n-1."""
        ims = self.fc.images(n - 1)
        out = []
        for v in vecs:
            acc: dict = {}
            for i, c in v.items():
                for t, e in ims[i].items():
                    acc[t] = acc.get(t, 0) + c * e
            out.append({t: e for t, e in acc.items() if e})
        return out

    def dim(self, n: int, p: int, r: int) -> int:
        if p > self.top(n):
            return 0
        z = self.Z(n, p, r)
        if not z:
            return 0
        denom = list(self.Z(n, p + 1, r - 1))
        if self.fc.dim(n - 1):
            denom += self.boundary(n, self.Z(n - 1, p - r + 1, r - 1))
        return len(z) - rank(denom)

    def out_rank(self, n: int, p: int, r: int) -> int:
        """rank of d_r : E_r^p -> E_r^{p+r} in total degree n."""
        if p > self.top(n):
            return 0
        return len(self.Z(n, p, r)) - rank(list(self.Z(n, p, r + 1)) + list(self.Z(n, p + 1, r - 1)))

    def page(self, r: int, degrees) -> SpectralPage:
        entries, ranks = {}, {}
        for n in degrees:
            for p in range(0, self.top(n) + 1):
                entries[(p, n)] = self.dim(n, p, r)
                ranks[(p, n)] = self.out_rank(n, p, r)
        return SpectralPage(r, entries, ranks)

    def infinity_page_index(self, degrees) -> int:
        return max((self.top(n) + 2 for n in degrees), default=1) + 1

    def infinity(self, degrees) -> SpectralPage:
        """E_infinity^p = F^p H / F^{p+1} H, which is what the general term gives for r large."""
        entries = {}
        r_inf = self.infinity_page_index(degrees)
        for n in degrees:
            top = self.top(n)
            cocycles = self.Z(n, 0, r_inf)
            bounds = [b for b in self.fc.images(n - 1) if b] if self.fc.dim(n - 1) else []
            base = rank(bounds)
            h = len(cocycles) - base
            filt = []
            for p in range(0, top + 2):
                if h == 0 or p > top:
                    filt.append(0)
                elif p == 0:
                    filt.append(h)
                else:
                    filt.append(rank(bounds + list(self.Z(n, p, r_inf))) - base)
            for p in range(0, top + 1):
                entries[(p, n)] = filt[p] - filt[p + 1]
        return SpectralPage(r_inf, entries, {})


@lru_cache(maxsize=None)
def _mm_calc(model: SullivanModel) -> PageCalculator:
    return PageCalculator(WordLengthComplex(model))


def default_ss_degree(model: SullivanModel) -> int:
    return 2 * max(formal_dimension_candidate(model), 0) + 2


def mm_page(model: SullivanModel, r: int, max_degree: Optional[int] = None) -> SpectralPage:
    """Page r of the word-length spectral sequence in total degrees 0..max_degree."""
    if max_degree is None:
        max_degree = default_ss_degree(model)
    calc = _mm_calc(model)
    return calc.page(r, range(max_degree + 1))


def mm_infinity(model: SullivanModel, max_degree: Optional[int] = None) -> SpectralPage:
    if max_degree is None:
        max_degree = default_ss_degree(model)
    return _mm_calc(model).infinity(range(max_degree + 1))


def _ext_calc(model: SullivanModel, cap: int) -> PageCalculator:
    return _ext_calc_cached(model, cap)


@lru_cache(maxsize=None)
def _ext_calc_cached(model, cap):
    return PageCalculator(HomFiltered(hom_complex(model, cap)))


def ext_page(model: SullivanModel, r: int, cap: Optional[int] = None, degrees=None) -> SpectralPage:
    """Page r of the spectral sequence of the filtered Hom complex, in the trusted degree window."""
    cap = default_ext_cap(model) if cap is None else cap
    if degrees is None:
        degrees = ext_window(model, cap)
    return _ext_calc(model, cap).page(r, degrees)


def ext_infinity(model: SullivanModel, cap: Optional[int] = None, degrees=None) -> SpectralPage:
    cap = default_ext_cap(model) if cap is None else cap
    if degrees is None:
        degrees = ext_window(model, cap)
    return _ext_calc(model, cap).infinity(degrees)


def e0_from_ss(model: SullivanModel, cap: Optional[int] = None) -> int:
    """sup{p : E_infinity^{p,*} != 0} over total degrees <= cap (N suffices for elliptic models)."""
    if cap is None:
        cap = max(formal_dimension_candidate(model), 0)
    page = mm_infinity(model, cap)
    ps = [p for (p, n), v in page.entries.items() if v]
    return max(ps, default=0)


def r_from_ss(model: SullivanModel, cap: Optional[int] = None) -> int:
    """sup{p : E_infinity^{p,*} != 0} for the Hom filtration, checked stable from cap to cap + 2."""
    cap = default_ext_cap(model) if cap is None else cap
    vals = []
    for c in (cap, cap + 2):
        page = ext_infinity(model, c, degrees=ext_window(model, cap))
        ps = [p for (p, n), v in page.entries.items() if v]
        if not ps:
            raise UndeterminedError(f"no nonzero E_infinity entry at cap {c}")
        vals.append(max(ps))
    if vals[0] != vals[1]:
        raise UndeterminedError(f"r from the spectral sequence changes from {vals[0]} to {vals[1]}")
    return vals[0]


def convergence_defects(model: SullivanModel, max_degree: int) -> dict:
    """{n: (sum_p dim E_inf^{p,n-p}, dim H^n)} for the degrees where they differ."""
    page = mm_infinity(model, max_degree)
    out = {}
    for n in range(max_degree + 1):
        a, b = page.total(n), cohomology_dim(model, n)
        if a != b:
            out[n] = (a, b)
    return out
