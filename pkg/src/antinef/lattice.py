"""Intersection pairing, fundamental and canonical cycles, numerical formulas.

All operations are pure functions over immutable graphs and cycles, and all
arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .errors import PreconditionError, TheoremViolationError
from .graph import Coeff, Cycle, DualGraph, cycle, det_bareiss, unit_cycle

# generous cap on Laufer-loop increments; only reachable on non-negative-definite input
_CLOSURE_STEP_CAP = 1_000_000


def pair(w: Cycle, v: Cycle) -> Coeff:
    """Intersection number W.V under the graph's bilinear form."""
    if w.graph != v.graph:
        raise PreconditionError(
            f"cycles live on different graphs ({w.graph.name!r} vs {v.graph.name!r})"
        )
    g = w.graph
    total: Coeff = 0
    for vid, c in w.coeffs:
        total += c * g.vertex(vid).self_int * v.coeff(vid)
    for a, b, m in g.edges:
        total += m * (w.coeff(a) * v.coeff(b) + w.coeff(b) * v.coeff(a))
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def row_pairing(z: Cycle, vid: str) -> Coeff:
    """Z.E_i for a single vertex, without building a unit cycle."""
    g = z.graph
    total: Coeff = z.coeff(vid) * g.vertex(vid).self_int
    for other, m in g.adjacency[vid]:
        total += m * z.coeff(other)
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def k_dot(w: Cycle) -> Coeff:
    """K.W = sum of coefficients weighted by canonical degrees."""
    total: Coeff = 0
    for vid, c in w.coeffs:
        total += c * w.graph.vertex(vid).kappa
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def canonical_cycle(g: DualGraph) -> Cycle:
    """The unique rational cycle z with z.E_i = -kappa_i for every vertex.

    Solved by Cramer's rule with fraction-free integer determinants; the
    intersection matrix is invertible on a negative-definite graph.
    """
    m = g.matrix()
    n = len(m)
    rhs = [-v.kappa for v in g.vertices]
    den = det_bareiss(m)
    if den == 0:
        raise PreconditionError(f"graph {g.name!r} has singular intersection matrix")
    coeffs = {}
    for i in range(n):
        col = [row[:] for row in m]
        for r in range(n):
            col[r][i] = rhs[r]
        coeffs[g.ids[i]] = Fraction(det_bareiss(col), den)
    return cycle(g, coeffs)


def is_numerically_gorenstein(g: DualGraph) -> bool:
    return canonical_cycle(g).is_integral


def arithmetic_genus(z: Cycle) -> Coeff:
    """p_a(Z) = (Z^2 + K.Z)/2 + 1."""
    val = Fraction(pair(z, z) + k_dot(z), 2) + 1
    return int(val) if val.denominator == 1 else val


def is_antinef(z: Cycle) -> bool:
    """True iff Z.E_i <= 0 for every vertex."""
    return all(row_pairing(z, vid) <= 0 for vid in z.graph.ids)


def antinef_closure(d: Cycle, on_step: Optional[Callable[[str, int], None]] = None) -> Cycle:
    """Least anti-nef cycle >= D (Laufer-style fixup).

    While some vertex has Z.E_i > 0 the coefficient there is incremented;
    vertices are visited in ascending id order for reproducible traces, but
    the least fixed point is order-independent.
    """
    if d.is_zero or not d.is_effective:
        raise PreconditionError("antinef_closure needs an effective nonzero cycle")
    if not d.is_integral:
        raise PreconditionError("antinef_closure needs an integral cycle")
    g = d.graph
    coeffs = {vid: d.coeff(vid) for vid in g.ids}
    steps = 0
    dirty = True
    while dirty:
        dirty = False
        for vid in g.ids:
            row = coeffs[vid] * g.vertex(vid).self_int
            for other, m in g.adjacency[vid]:
                row += m * coeffs[other]
            if row > 0:
                coeffs[vid] += 1
                steps += 1
                if on_step is not None:
                    on_step(vid, coeffs[vid])
                if steps > _CLOSURE_STEP_CAP:
                    raise PreconditionError(
                        "Laufer loop did not terminate; graph is probably not negative definite"
                    )
                dirty = True
    return cycle(g, coeffs)


def fundamental_cycle(g: DualGraph, start: Optional[str] = None,
                      on_step: Optional[Callable[[str, int], None]] = None) -> Cycle:
    """Minimal nonzero anti-nef effective cycle (Artin's fundamental cycle).

    Computed as the anti-nef closure of a single vertex; the result does not
    depend on the starting vertex.
    """
    if start is None:
        start = g.ids[0]
    return antinef_closure(unit_cycle(g, start), on_step=on_step)


def is_rational(g: DualGraph) -> bool:
    """Artin's criterion: p_a of the fundamental cycle vanishes."""
    return arithmetic_genus(fundamental_cycle(g)) == 0


def multiplicity(z: Cycle) -> int:
    """e(I_Z) = -Z^2 for an anti-nef cycle Z > 0."""
    _require_antinef_positive(z, "multiplicity")
    return -pair(z, z)


def colength(z: Cycle, pg: int = 0, h1: int = 0) -> int:
    """Riemann-Roch colength: -(Z^2 + K.Z)/2 + pg - h1.

    For rational graphs callers pass pg = h1 = 0; for numerically-p_g ideals
    pg = h1 and the analytic terms cancel.
    """
    _require_antinef_positive(z, "colength")
    if not (0 <= h1 <= pg):
        raise PreconditionError(f"need 0 <= h1 <= pg, got h1={h1}, pg={pg}")
    val = Fraction(-(pair(z, z) + k_dot(z)), 2) + pg - h1
    if val.denominator != 1:
        raise TheoremViolationError(f"colength of {z} is not an integer: {val}")
    n = int(val)
    if n <= 0:
        raise PreconditionError(
            f"colength formula gave {n} <= 0 for Z > 0; analytic inputs are inconsistent"
        )
    return n


def epsilon(pg: int, h1_z: int, h1_zp: int, h1_sum: int) -> int:
    """Product defect: pg - h1(-Z) - h1(-Z') + h1(-Z-Z'); always in [0, pg]."""
    for name, h in (("h1_Z", h1_z), ("h1_Z'", h1_zp), ("h1_Z+Z'", h1_sum)):
        if h < 0 or h > pg:
            raise PreconditionError(f"{name}={h} outside [0, pg={pg}]")
    val = pg - h1_z - h1_zp + h1_sum
    if val < 0 or val > pg:
        raise PreconditionError(
            f"epsilon = {val} outside [0, pg={pg}]; the h^1 inputs are inconsistent"
        )
    return val


def contracts_to_smooth(d: Cycle) -> bool:
    """True iff -D^2 + K.D = 0, i.e. supp D contracts to a nonsingular point
    (vacuously true for D = 0)."""
    if not d.is_effective:
        raise PreconditionError("contracts_to_smooth needs an effective cycle")
    return -pair(d, d) + k_dot(d) == 0


def _require_antinef_positive(z: Cycle, op: str) -> None:
    if z.is_zero or not z.is_effective:
        raise PreconditionError(f"{op} needs Z > 0")
    if not z.is_integral:
        raise PreconditionError(f"{op} needs an integral cycle")
    if not is_antinef(z):
        raise PreconditionError(f"{op} needs an anti-nef cycle; {z} is not")
