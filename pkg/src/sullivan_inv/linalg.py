"""
Exact sparse linear algebra over the rationals.

Vectors are ``dict`` objects mapping a column index to a nonzero number
(``int`` or ``Fraction``).  Internally every vector is scaled to a primitive
integer vector and elimination is fraction-free: reducing ``v`` by a row ``r``
with pivot ``a`` at column ``c`` replaces ``v`` by ``a*v - v[c]*r`` and divides
out the content.  Spans, kernels and ranks are unaffected by the scaling.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Optional, Sequence

Vector = dict

_TARGET = object()


def to_integer(vec: Vector) -> tuple[dict, int]:
    """Return ``(w, s)`` with ``w = s * vec`` a primitive integer vector."""
    if not vec:
        return {}, 1
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    w = {c: int(v * den) for c, v in vec.items() if v}
    g = 0
    for v in w.values():
        g = gcd(g, v)
    if g > 1:
        w = {c: v // g for c, v in w.items()}
    return w, Fraction(den, g) if g > 1 else den


def _content(vec: dict, combo: Optional[dict]) -> int:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    if combo:
        for v in combo.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


class Echelon:
    """Incremental row echelon form.

    Each stored row has a pivot column which no other stored row's pivot
    equals; the pivot of a new row is its smallest column under ``key``.
    With ``track=True`` every row remembers which linear combination of the
    inserted vectors produced it, which is what kernels and solves need.
    """

    def __init__(self, key: Optional[Callable[[Hashable], object]] = None, track: bool = False):
        self.key = key
        self.track = track
        self.rows: dict = {}
        self.combos: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _lead(self, cols: Iterable):
        if self.key is None:
            return min(cols)
        return min(cols, key=self.key)

    def reduce(self, vec: dict, combo: Optional[dict] = None) -> tuple[dict, Optional[dict]]:
        """Eliminate all pivot columns from an integer vector."""
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        rows = self.rows
        while True:
            hits = [c for c in vec if c in rows]
            if not hits:
                return vec, combo
            c = self._lead(hits)
            row = rows[c]
            a = row[c]
            b = vec[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            if ma != 1:
                for k in vec:
                    vec[k] *= ma
            for k, v in row.items():
                nv = vec.get(k, 0) - mb * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            if combo is not None:
                if ma != 1:
                    for k in combo:
                        combo[k] *= ma
                for k, v in self.combos[c].items():
                    nv = combo.get(k, 0) - mb * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
            g = _content(vec, combo)
            if g > 1:
                vec = {k: v // g for k, v in vec.items()}
                if combo is not None:
                    combo = {k: v // g for k, v in combo.items()}

    def add(self, vec: Vector, label: Hashable = None) -> Optional[dict]:
        """Insert a vector.

        Returns ``None`` if it was independent of the stored rows, otherwise
        the dependency found (a combination of labels, only when tracking).
        For untracked echelons a dependent vector returns ``{}``.
        """
        w, _ = to_integer(vec)
        combo = {label: 1} if self.track else None
        if self.track and not w:
            return combo
        w, combo = self.reduce(w, combo)
        if not w:
            return combo if self.track else {}
        c = self._lead(w)
        if w[c] < 0:
            w = {k: -v for k, v in w.items()}
            if combo is not None:
                combo = {k: -v for k, v in combo.items()}
        self.rows[c] = w
        if self.track:
            self.combos[c] = combo
        return None

    def contains(self, vec: Vector) -> bool:
        w, _ = to_integer(vec)
        w, _ = self.reduce(w)
        return not w


def rank(vectors: Iterable[Vector], key=None) -> int:
    ech = Echelon(key=key)
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(images: Sequence[Vector], key=None) -> list[dict]:
    """Basis of ``{c : sum_i c_i images[i] = 0}`` as integer vectors over ``range(len(images))``."""
    ech = Echelon(key=key, track=True)
    scales = []
    out = []
    for i, v in enumerate(images):
        w, s = to_integer(v)
        scales.append(s)
        dep = ech.add(w, label=i)
        if dep is not None:
            out.append(to_integer({j: c * scales[j] for j, c in dep.items()})[0])
    return out


def solve(vectors: Sequence[Vector], target: Vector, key=None) -> Optional[dict]:
    """Return rational ``c`` with ``sum_i c[i] vectors[i] == target``, or ``None``."""
    ech = Echelon(key=key, track=True)
    scales = []
    for i, v in enumerate(vectors):
        w, s = to_integer(v)
        scales.append(s)
        ech.add(w, label=i)
    t, ts = to_integer(target)
    if not t:
        return {}
    red, combo = ech.reduce(t, {_TARGET: 1})
    if red:
        return None
    alpha = combo.pop(_TARGET)
    # alpha * t = -sum combo_i * w_i,  t = ts * target, w_i = s_i * v_i
    return {i: Fraction(-c) * scales[i] / (alpha * ts) for i, c in combo.items() if c}


def project(vec: Vector, keep: Callable[[Hashable], bool]) -> dict:
    return {c: v for c, v in vec.items() if keep(c)}
