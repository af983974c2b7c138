"""Brute-force verifiers for the main algorithms on small instances.

These deliberately work from the definitions (exhaustive enumeration over a
coefficient box) rather than reusing the production algorithms, so that the
test suite can play the two against each other.  numpy is used only to make
the enumeration fast; every comparison is integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import PreconditionError, TheoremViolationError
from .graph import Cycle, DualGraph, cycle

_CHUNK = 1 << 18


@dataclass(frozen=True)
class SearchBound:
    max_coeff: int = 6
    max_vertices: int = 12
    max_candidates: int = 20_000_000

    def __post_init__(self):
        if self.max_coeff < 1 or self.max_vertices < 1:
            raise PreconditionError("search bounds must be positive")


def default_bound(z: Cycle) -> SearchBound:
    top = max((c for _, c in z.coeffs), default=1)
    return SearchBound(max_coeff=2 * top + 2)


def _guard(g: DualGraph, ranges: list[int], bound: SearchBound) -> int:
    if len(g.vertices) > bound.max_vertices:
        raise PreconditionError(
            f"graph has {len(g.vertices)} vertices, oracle bound allows {bound.max_vertices}"
        )
    total = 1
    for r in ranges:
        total *= r
    if total > bound.max_candidates:
        raise PreconditionError(
            f"{total} candidates exceed the oracle search bound {bound.max_candidates}"
        )
    return total


def _boxes(ranges: list[int], offsets: Optional[list[int]] = None) -> Iterator[np.ndarray]:
    """Yield chunks of the integer box prod(range(r_i)) (+ offsets) as arrays."""
    r = len(ranges)
    total = 1
    for n in ranges:
        total *= n
    strides = [1] * r
    for i in range(r - 2, -1, -1):
        strides[i] = strides[i + 1] * ranges[i + 1]
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, r), dtype=np.int64)
        for i in range(r):
            out[:, i] = (idx // strides[i]) % ranges[i]
            if offsets is not None:
                out[:, i] += offsets[i]
        yield out


def enumerate_max_Y(
    z: Cycle, c: Cycle, bound: Optional[SearchBound] = None
) -> Optional[Cycle]:
    """Definition-level search for the maximal cycle Y with 0 <= Y <= Z,
    -Y^2 + K.Y = 0, Z - Y anti-nef, and Z - Y of degree zero on supp C.

    Returns the coefficient-wise maximum among the admissible candidates, or
    None when no unique maximum exists (a theorem violation on valid input).
    """
    g = z.graph
    if bound is None:
        bound = default_bound(z)
    if not z.is_effective or not z.is_integral:
        raise PreconditionError("oracle needs an effective integral Z")
    zv = np.array(z.vector(), dtype=np.int64)
    ranges = [min(int(v), bound.max_coeff) + 1 for v in zv]
    _guard(g, ranges, bound)
    m = np.array(g.matrix(), dtype=np.int64)
    kappa = np.array([v.kappa for v in g.vertices], dtype=np.int64)
    supp_c = [g._index[vid] for vid in c.support] if not c.is_zero else []
    best = None
    for ys in _boxes(ranges):
        ym = ys @ m
        quad = (ym * ys).sum(axis=1)
        smooth = (-quad + ys @ kappa) == 0
        rows = (zv - ys) @ m
        antinef = (rows <= 0).all(axis=1)
        keep = smooth & antinef
        if supp_c:
            keep &= (rows[:, supp_c] == 0).all(axis=1)
        keep |= (ys == 0).all(axis=1)  # Y = 0 is always admissible
        kept = ys[keep]
        if kept.size:
            cand = kept.max(axis=0)
            best = cand if best is None else np.maximum(best, cand)
    # if the admissible set has a maximum it equals the coefficient-wise max,
    # so admissibility of that vector decides uniqueness
    if best is None:
        return None
    y = cycle(g, dict(zip(g.ids, (int(v) for v in best))))
    if _admissible(z, y, c):
        return y
    return None


def _admissible(z: Cycle, y: Cycle, c: Cycle) -> bool:
    from .lattice import is_antinef, k_dot, pair, row_pairing

    if y.is_zero:
        return True
    if not (z - y).is_effective:
        return False
    if -pair(y, y) + k_dot(y) != 0:
        return False
    if not is_antinef(z - y):
        return False
    return all(row_pairing(z - y, vid) == 0 for vid in c.support)


def fundamental_cycle_bruteforce(g: DualGraph, bound: SearchBound) -> Cycle:
    """Pointwise-minimal nonzero anti-nef cycle by exhaustive search.

    If any anti-nef cycle exists within the box, the true fundamental cycle
    lies below it, hence inside the box, so the pointwise minimum over the
    admissible set is exact whenever the search finds anything at all.
    """
    ranges = [bound.max_coeff + 1] * len(g.vertices)
    _guard(g, ranges, bound)
    m = np.array(g.matrix(), dtype=np.int64)
    best = None
    for ys in _boxes(ranges):
        keep = ((ys @ m) <= 0).all(axis=1) & (ys != 0).any(axis=1)
        kept = ys[keep]
        if kept.size:
            low = kept.min(axis=0)
            best = low if best is None else np.minimum(best, low)
    if best is None:
        raise PreconditionError(
            f"no anti-nef cycle with coefficients <= {bound.max_coeff}; raise the bound"
        )
    z = cycle(g, dict(zip(g.ids, (int(v) for v in best))))
    rows = np.array(z.vector(), dtype=np.int64) @ m
    if (rows > 0).any() or z.is_zero:
        raise TheoremViolationError(
            "pointwise minimum of anti-nef candidates is not anti-nef"
        )
    return z


def negdef_bruteforce(g: DualGraph, bound: SearchBound) -> bool:
    """Check W.W < 0 for every nonzero W with |coefficients| <= max_coeff."""
    b = bound.max_coeff
    ranges = [2 * b + 1] * len(g.vertices)
    _guard(g, ranges, bound)
    m = np.array(g.matrix(), dtype=np.int64)
    offsets = [-b] * len(g.vertices)
    for ws in _boxes(ranges, offsets):
        quad = ((ws @ m) * ws).sum(axis=1)
        nonzero = (ws != 0).any(axis=1)
        if (quad[nonzero] >= 0).any():
            return False
    return True
