"""Integrally closed m-primary ideals as anti-nef cycles: products, colon
ideals, core, goodness, good closures, and the graded-cone model.

A minimal reduction is never materialized; every colon/core output is
computed at the cycle level via the contraction-sequence description
(contract rational (-1)-curves disjoint from the cohomological cycle, read
off the total transforms F_i and b_i = -Z.F_i, take Y = sum of min(1,b_i)
F_i, then Q:I = I_{Z-Y} and core(I) = I_{2Z-Y}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .birational import Tower, TowerStep, associated_pg_cycle, contract, transport_cohom
from .errors import InputError, PreconditionError, TheoremViolationError
from .graph import Cycle, DualGraph, cycle, dual_graph, unit_cycle, validate_graph, zero_cycle
from .lattice import (
    canonical_cycle,
    colength,
    contracts_to_smooth,
    epsilon,
    is_antinef,
    is_numerically_gorenstein,
    is_rational,
    multiplicity,
    pair,
    row_pairing,
)


@dataclass(frozen=True)
class SingularityModel:
    """A validated base graph at the minimal resolution plus the analytic
    inputs the lattice cannot infer (pg, Gorenstein flag, cohomological
    cycle)."""

    base: DualGraph
    rational: bool
    pg: int
    gorenstein: bool
    c_base: Cycle


def singularity_model(
    base: DualGraph,
    pg: Optional[int] = None,
    gorenstein: bool = False,
    c_base: Optional[Cycle] = None,
) -> SingularityModel:
    report = validate_graph(base)
    if not report.ok:
        raise PreconditionError(
            f"base graph {base.name!r} is invalid: " + "; ".join(report.failures)
        )
    for v in base.vertices:
        if v.self_int == -1 and v.kappa == -1:
            raise PreconditionError(
                f"base graph is not a minimal resolution: {v.id!r} is a rational (-1)-curve"
            )
    rational = is_rational(base)
    if rational:
        if pg not in (None, 0):
            raise PreconditionError(f"rational base forces pg = 0, got {pg}")
        pg = 0
        if c_base is not None and not c_base.is_zero:
            raise PreconditionError("rational base forces a zero cohomological cycle")
        c_base = zero_cycle(base)
    else:
        if pg is None or pg <= 0:
            raise PreconditionError("non-rational base needs caller-supplied pg > 0")
        if gorenstein:
            zk = canonical_cycle(base)
            if not zk.is_integral:
                raise PreconditionError(
                    "gorenstein flag needs an integral canonical cycle"
                )
            if c_base is None:
                c_base = zk
            elif c_base != zk:
                raise PreconditionError(
                    "on a minimal Gorenstein resolution the cohomological cycle is the canonical cycle"
                )
        if c_base is None:
            raise PreconditionError(
                "non-rational non-Gorenstein base needs a caller-supplied cohomological cycle"
            )
        if c_base.is_zero or not c_base.is_effective or not c_base.is_integral:
            raise PreconditionError("cohomological cycle must be effective, integral and nonzero")
        if c_base.graph != base:
            raise PreconditionError("cohomological cycle must live on the base graph")
    return SingularityModel(base=base, rational=rational, pg=pg, gorenstein=gorenstein, c_base=c_base)


@dataclass(frozen=True)
class IdealRep:
    """An integrally closed m-primary ideal: an anti-nef cycle at a tower
    level, with the cohomological cycle transported alongside."""

    model: SingularityModel
    tower: Tower
    level: int
    z: Cycle
    h1: int
    pg_numeric: bool
    c: Cycle


def represent(
    model: SingularityModel,
    tower: Tower,
    level: int,
    z: Cycle,
    h1: Optional[int] = None,
) -> IdealRep:
    if tower.levels[0] != model.base:
        raise PreconditionError("tower must sit over the model's base graph")
    g = tower.graph(level)
    if z.graph != g:
        raise PreconditionError(f"cycle lives on {z.graph.name!r}, not tower level {level}")
    if z.is_zero or not z.is_effective or not z.is_integral:
        raise PreconditionError("an ideal needs an integral cycle Z > 0")
    if not is_antinef(z):
        raise PreconditionError(f"{z} is not anti-nef")
    c = transport_cohom(tower, model.c_base)[level]
    numeric = _pg_numeric(z, c)
    if model.rational:
        if h1 not in (None, 0):
            raise PreconditionError("rational models force h1 = 0")
        h1 = 0
    elif numeric:
        if h1 not in (None, model.pg):
            raise PreconditionError(
                f"a numerically-p_g cycle has h1 = pg = {model.pg}, got {h1}"
            )
        h1 = model.pg
    else:
        if h1 is None:
            raise PreconditionError(
                "non-p_g cycle on a non-rational model needs caller-supplied h1"
            )
        if not 0 <= h1 <= model.pg:
            raise PreconditionError(f"need 0 <= h1 <= pg, got h1={h1}")
    return IdealRep(model=model, tower=tower, level=level, z=z, h1=h1, pg_numeric=numeric, c=c)


def _pg_numeric(z: Cycle, c: Cycle) -> bool:
    return all(row_pairing(z, vid) == 0 for vid in c.support)


def is_pg_numeric(ideal: IdealRep) -> bool:
    """Degree-zero test on the cohomological cycle's support (the numerical
    half of the p_g-cycle criterion; exact on rational models)."""
    return ideal.pg_numeric


def product(i1: IdealRep, i2: IdealRep) -> IdealRep:
    """I_Z . I_Z' = I_{Z+Z'}; valid when at least one factor is p_g-numeric."""
    if i1.model != i2.model or i1.tower != i2.tower:
        raise PreconditionError("product needs ideals on the same model and tower")
    if not (i1.pg_numeric or i2.pg_numeric):
        raise PreconditionError(
            "product needs at least one numerically-p_g factor; the cycle sum may "
            "not represent the product ideal otherwise"
        )
    level = max(i1.level, i2.level)
    z1 = i1.tower.pullback(i1.z, i1.level, level)
    z2 = i2.tower.pullback(i2.z, i2.level, level)
    h1 = i2.h1 if i1.pg_numeric else i1.h1
    return represent(i1.model, i1.tower, level, z1 + z2, h1=h1)


@dataclass(frozen=True)
class CoreReport:
    y: Cycle
    colon_cycle: Cycle
    core_cycle: Cycle
    b: tuple[int, ...]
    iterations_to_good: int
    good: bool
    colength_ideal: int
    colength_colon: int
    colength_core: int
    contraction_tower: Tower
    good_cycle: Cycle  # pushforward of Z to the bottom of the contraction tower


def _contract_disjoint_minus_one_curves(g: DualGraph, c: Cycle, trace=None):
    """Contract, in ascending-id scans, every rational (-1)-curve disjoint
    from the cohomological cycle.  Returns (graphs, steps, contracted ids, c')
    with graphs[0] = g top-down and c' the cycle on the final graph."""
    graphs = [g]
    steps: list[TowerStep] = []
    names: list[str] = []
    cur = g
    while True:
        for v in cur.vertices:
            if (
                v.self_int == -1
                and v.kappa == -1
                and c.coeff(v.id) == 0
                and row_pairing(c, v.id) == 0
            ):
                cur, step = contract(cur, v.id)
                c = c.restricted_to(cur)
                graphs.append(cur)
                steps.append(step)
                names.append(v.id)
                if trace is not None:
                    trace(f"contract {v.id!r}")
                break
        else:
            return graphs, steps, names, c


def colon_and_core(ideal: IdealRep, trace=None) -> CoreReport:
    """Compute Q:I and core(I) for a numerically-p_g ideal.

    Any failure of the construction's guarantees (Z - Y not anti-nef, Y not
    contracting to a smooth point, negative b_i) is raised as a theorem
    violation rather than silently corrected.
    """
    if not ideal.pg_numeric:
        raise PreconditionError("colon_and_core needs a numerically-p_g ideal")
    g = ideal.tower.graph(ideal.level)
    z = ideal.z
    graphs, steps, names, _ = _contract_disjoint_minus_one_curves(g, ideal.c, trace=trace)
    n = len(steps)
    # rebuild the contraction sequence as a tower, bottom = most contracted
    local = Tower.from_steps(graphs[-1], tuple(reversed(steps)))
    if local.top != g:
        raise TheoremViolationError("contraction sequence did not replay to the input graph")
    b: list[int] = []
    y = zero_cycle(g)
    for i, vid in enumerate(names):
        # curve i was contracted from graphs[i], which sits at local level n - i
        f_i = local.pullback(unit_cycle(local.graph(n - i), vid), n - i, n)
        b_i = -pair(z, f_i)
        if b_i < 0:
            raise TheoremViolationError(
                f"b_{i + 1} = {b_i} < 0 for contracted curve {vid!r}"
            )
        b.append(b_i)
        if b_i > 0:
            y = y + f_i
    if not y.is_zero:
        if not contracts_to_smooth(y):
            raise TheoremViolationError(f"Y = {y} does not contract to a smooth point")
    colon = z - y
    if not colon.is_effective or not is_antinef(colon):
        raise TheoremViolationError(f"Z - Y = {colon} is not an effective anti-nef cycle")
    if not _pg_numeric(colon, ideal.c):
        raise TheoremViolationError(f"Z - Y = {colon} is not numerically p_g")
    core = 2 * z - y
    pg = ideal.model.pg
    return CoreReport(
        y=y,
        colon_cycle=colon,
        core_cycle=core,
        b=tuple(b),
        iterations_to_good=max(b, default=0),
        good=y.is_zero,
        colength_ideal=colength(z, pg, pg),
        colength_colon=colength(colon, pg, pg),
        colength_core=colength(core, pg, pg),
        contraction_tower=local,
        good_cycle=z.restricted_to(graphs[-1]),
    )


def is_good(ideal: IdealRep) -> bool:
    """Minimal-representation criterion: after contracting (-1)-curves with
    Z.E = 0, every remaining rational (-1)-curve must meet the cohomological
    cycle."""
    if not ideal.pg_numeric:
        raise PreconditionError("is_good needs a numerically-p_g ideal")
    g = ideal.tower.graph(ideal.level)
    z, c = ideal.z, ideal.c
    while True:
        for v in g.vertices:
            if v.self_int == -1 and v.kappa == -1 and row_pairing(z, v.id) == 0:
                g, _ = contract(g, v.id)
                z = z.restricted_to(g)
                c = c.restricted_to(g)
                break
        else:
            break
    for v in g.vertices:
        if v.self_int == -1 and v.kappa == -1:
            if c.coeff(v.id) == 0 and row_pairing(c, v.id) == 0:
                return False
    return True


def good_gorenstein_crosscheck(ideal: IdealRep) -> bool:
    """Gorenstein criterion: good iff the multiplicity is twice the colength."""
    if not ideal.model.gorenstein:
        raise PreconditionError("this criterion needs a Gorenstein model")
    if not ideal.pg_numeric:
        raise PreconditionError("this criterion needs a numerically-p_g (hence stable) ideal")
    pg = ideal.model.pg
    return multiplicity(ideal.z) == 2 * colength(ideal.z, pg, pg)


def _same_lattice(g1: DualGraph, g2: DualGraph) -> bool:
    return set(g1.vertices) == set(g2.vertices) and set(g1.edges) == set(g2.edges)


def good_closure(ideal: IdealRep) -> IdealRep:
    """The minimal good ideal containing I: push Z to the level where every
    remaining (-1)-curve meets the cohomological cycle."""
    report = colon_and_core(ideal)
    local = report.contraction_tower
    # extend the contraction all the way down to the model base so the
    # result lives on a tower over the base
    cur = local.graph(0)
    lower_steps: list[TowerStep] = []
    while True:
        for v in cur.vertices:
            if v.self_int == -1 and v.kappa == -1:
                cur, step = contract(cur, v.id)
                lower_steps.append(step)
                break
        else:
            break
    if not _same_lattice(cur, ideal.model.base):
        raise TheoremViolationError(
            "contracting all (-1)-curves did not reach the model base"
        )
    full = Tower.from_steps(ideal.model.base, tuple(reversed(lower_steps)) + local.steps)
    level = len(lower_steps)
    z = cycle(full.graph(level), report.good_cycle.as_dict())
    result = represent(ideal.model, full, level, z)
    if not is_good(result):
        raise TheoremViolationError("good closure is not good")
    return result


def includes(i1: IdealRep, i2: IdealRep) -> bool:
    """True iff the ideal of i1 is contained in the ideal of i2
    (cycle domination Z1 >= Z2 on a common level)."""
    if i1.model != i2.model or i1.tower != i2.tower:
        raise PreconditionError("containment needs ideals on the same model and tower")
    level = max(i1.level, i2.level)
    z1 = i1.tower.pullback(i1.z, i1.level, level)
    z2 = i2.tower.pullback(i2.z, i2.level, level)
    return z1.dominates(z2)


def core_monotone_check(i1: IdealRep, i2: IdealRep) -> bool:
    """For p_g-numeric ideals I2 <= I1, check that colon and core containments
    follow; a False return on valid inputs is a theorem violation."""
    if not (i1.pg_numeric and i2.pg_numeric):
        raise PreconditionError("monotonicity check needs numerically-p_g ideals")
    if not includes(i2, i1):
        raise PreconditionError("expected I2 contained in I1 (Z2 >= Z1)")
    r1 = colon_and_core(i1)
    r2 = colon_and_core(i2)
    level = max(i1.level, i2.level)
    t = i1.tower
    colon1 = t.pullback(r1.colon_cycle, i1.level, level)
    colon2 = t.pullback(r2.colon_cycle, i2.level, level)
    core1 = t.pullback(r1.core_cycle, i1.level, level)
    core2 = t.pullback(r2.core_cycle, i2.level, level)
    return colon2.dominates(colon1) and core2.dominates(core1)


def stability_defect(
    ideal: IdealRep, h1_z: Optional[int] = None, h1_2z: Optional[int] = None
) -> int:
    """Length of I^2 / QI: epsilon(pg, h1(-Z), h1(-Z), h1(-2Z))."""
    pg = ideal.model.pg
    if h1_z is None:
        h1_z = ideal.h1
    if h1_2z is None:
        if ideal.pg_numeric or ideal.model.rational:
            h1_2z = ideal.h1
        else:
            raise PreconditionError("non-p_g ideal needs caller-supplied h1(-2Z)")
    return epsilon(pg, h1_z, h1_z, h1_2z)


@dataclass(frozen=True)
class ConeStats:
    colength: int
    colength_expected: int
    mu: int
    mu_expected: int
    mult_gap: int
    mult_gap_expected: int

    @property
    def colength_ok(self) -> bool:
        return self.colength == self.colength_expected

    @property
    def mu_ok(self) -> bool:
        return self.mu == self.mu_expected

    @property
    def mult_gap_ok(self) -> bool:
        return self.mult_gap == self.mult_gap_expected

    @property
    def all_ok(self) -> bool:
        return self.colength_ok and self.mu_ok and self.mult_gap_ok


def cone_model(e: int, g: int, a: int, pg: Optional[int] = None):
    """Graded cone over a genus-g curve with a degree-e polarization and
    a-invariant a: builds the one-vertex base, runs the associated-p_g-cycle
    procedure on the maximal ideal, and checks the closed formulas
    l = e+g-1, mu = e+1, e(I) - e(m) = (a+1)e.

    Returns (model, ideal, stats).
    """
    if e < 1 or g < 0 or a < 0:
        raise PreconditionError("cone model needs e >= 1, g >= 0, a >= 0")
    if a * e != 2 * g - 2:
        raise PreconditionError(
            f"inconsistent cone parameters: a*e = {a * e} but deg K_C = {2 * g - 2}"
        )
    if pg is None:
        pg = g
    base = dual_graph(f"cone({e},{g},{a})", [("E", -e, 2 * g - 2 + e)])
    c_base = (a + 1) * unit_cycle(base, "E")
    model = singularity_model(base, pg=pg, gorenstein=True)
    if model.c_base != c_base:
        raise TheoremViolationError("canonical cycle of the cone base is not (a+1)E")
    m_cycle = unit_cycle(base, "E")
    tower, z = associated_pg_cycle(Tower.base(base), m_cycle, [("E", e)], model.c_base)
    ideal = represent(model, tower, tower.height, z)
    stats = ConeStats(
        colength=colength(z, pg, pg),
        colength_expected=e + g - 1,
        mu=-pair(m_cycle, m_cycle) + 1,
        mu_expected=e + 1,
        mult_gap=multiplicity(z) - e,
        mult_gap_expected=(a + 1) * e,
    )
    return model, ideal, stats
