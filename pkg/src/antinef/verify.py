"""Acceptance suite: every release criterion as an executable check.

Each check returns a :class:`CheckResult`; ``run_all`` powers both the CLI
``corpus verify`` table and the pytest acceptance module.  All comparisons
are exact; random sampling is deterministic for a given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterator, Optional

from . import corpus
from .birational import Tower, edge_point, free_point, relative_canonical
from .errors import LatticeError
from .graph import Cycle, DualGraph, cycle, unit_cycle
from .ideals import (
    IdealRep,
    SingularityModel,
    colon_and_core,
    cone_model,
    core_monotone_check,
    good_gorenstein_crosscheck,
    is_good,
    represent,
    singularity_model,
    stability_defect,
)
from .lattice import (
    antinef_closure,
    arithmetic_genus,
    canonical_cycle,
    colength,
    contracts_to_smooth,
    fundamental_cycle,
    is_antinef,
    is_rational,
    k_dot,
    multiplicity,
    pair,
    row_pairing,
)
from .oracle import SearchBound, enumerate_max_Y, fundamental_cycle_bruteforce

DEFAULT_SEED = 244
DEFAULT_SAMPLES = 200


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


class _Failure(Exception):
    pass


def _fail(msg: str):
    raise _Failure(msg)


def _check(fn: Callable[..., str]) -> Callable[..., CheckResult]:
    def run(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> CheckResult:
        try:
            detail = fn(seed=seed, samples=samples)
            return CheckResult(fn.__name__.lstrip("_"), True, detail)
        except (_Failure, LatticeError) as exc:
            return CheckResult(fn.__name__.lstrip("_"), False, str(exc))

    run.__name__ = fn.__name__.lstrip("_")
    return run


# --- random instance generation ------------------------------------------


_RATIONAL_BASES = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "HJ(5,2)", "HJ(7,3)", "HJ(12,5)"]


def _random_tower(rng: random.Random, base: DualGraph, max_depth: int = 3) -> Tower:
    t = Tower.base(base)
    for k in range(rng.randint(0, max_depth)):
        g = t.top
        new_id = f"X{k + 1}"
        if g.edges and rng.random() < 0.4:
            a, b, _ = rng.choice(g.edges)
            t = t.blow_up(edge_point(a, b, new_id))
        else:
            t = t.blow_up(free_point(rng.choice(g.ids), new_id))
    return t


def _random_antinef(rng: random.Random, g: DualGraph, max_coeff: int = 6) -> Cycle:
    for _ in range(40):
        seeds = rng.sample(g.ids, k=rng.randint(1, min(2, len(g.ids))))
        d = cycle(g, {vid: rng.randint(1, 2) for vid in seeds})
        z = antinef_closure(d)
        if rng.random() < 0.3 and all(2 * c <= max_coeff for _, c in z.coeffs):
            z = 2 * z
        if all(c <= max_coeff for _, c in z.coeffs):
            box = 1
            for _, c in z.coeffs:
                box *= c + 1
            if box <= 200_000:
                return z
    return fundamental_cycle(g)


def _random_instances(
    rng: random.Random, count: int, gorenstein_only: bool = False
) -> Iterator[tuple[SingularityModel, IdealRep]]:
    bases = _RATIONAL_BASES
    if gorenstein_only:
        bases = [n for n in bases if not n.startswith("HJ")]
    made = 0
    while made < count:
        name = rng.choice(bases)
        base = corpus.get(name).graph
        gorenstein = all(v.kappa == 0 for v in base.vertices)
        model = singularity_model(base, gorenstein=gorenstein)
        t = _random_tower(rng, base)
        level = t.height
        z = _random_antinef(rng, t.graph(level))
        yield model, represent(model, t, level, z)
        made += 1


def _ex244_instances() -> list[IdealRep]:
    entry = corpus.get("ex244blown")
    t = entry.tower
    model = singularity_model(t.levels[0], pg=1, gorenstein=True)
    z = entry.cycles["Z"]
    out = [represent(model, t, 4, z), represent(model, t, 4, 2 * z)]
    # one level deeper: blow up a free point on a (-1)-curve
    t2 = t.blow_up(free_point("E1", "F1"))
    out.append(represent(model, t2, 5, t2.pullback(z, 4, 5)))
    return out


def _iterate_colon(ideal: IdealRep, cap: int = 64) -> tuple[int, IdealRep]:
    cur = ideal
    for n in range(cap):
        rep = colon_and_core(cur)
        if rep.good:
            return n, cur
        cur = represent(cur.model, cur.tower, cur.level, rep.colon_cycle)
    _fail(f"colon iteration did not stabilize within {cap} steps")


# --- the criteria ---------------------------------------------------------


@_check
def _ex244_reproduction(seed: int, samples: int) -> str:
    """Criterion 1: the elliptic double point worked example, number for number."""
    entry = corpus.get("ex244blown")
    t = entry.tower
    base = t.levels[0]
    model = singularity_model(base, pg=1, gorenstein=True)
    z = entry.cycles["Z"]
    if not is_antinef(z):
        _fail("Z = 2E0 + 3*sum(Ei) is not anti-nef")
    if k_dot(z) != 0:
        _fail(f"K.Z = {k_dot(z)} != 0")
    ideal = represent(model, t, 4, z)
    if multiplicity(z) != 12:
        _fail(f"e(I_Z) = {multiplicity(z)} != 12")
    if colength(z, 1, 1) != 6:
        _fail(f"l(A/I_Z) = {colength(z, 1, 1)} != 6")
    m3 = 3 * unit_cycle(base, "E0")
    if colength(m3, 1, 0) != 7:
        _fail(f"l(A/m^3-bar) = {colength(m3, 1, 0)} != 7")
    if not is_good(ideal):
        _fail("I_Z should be good")
    rep = colon_and_core(ideal)
    if rep.core_cycle != 2 * z:
        _fail(f"core(I_Z) = {rep.core_cycle} != 2Z")
    m2 = represent(model, t, 0, 2 * unit_cycle(base, "E0"), h1=0)
    if m2.pg_numeric:
        _fail("m^2-bar should not be numerically p_g")
    defect = stability_defect(m2, 0, 0)
    if defect != 1:
        _fail(f"stability defect of m^2-bar = {defect} != 1 = pg")
    if not is_rational(corpus.get("A1").graph) or is_rational(base):
        _fail("rationality flags wrong on A1 / ex244min")
    return "all worked-example quantities for ex244 match"


@_check
def _rationality_classification(seed: int, samples: int) -> str:
    """Criterion 2: ADE and cyclic-quotient graphs are rational, the elliptic
    example is not; cross-checked against p_a of the brute-forced Z_f."""
    names = [f"A{i}" for i in range(1, 10)]
    names += [f"D{i}" for i in range(4, 9)]
    names += ["E6", "E7", "E8"]
    names += [f"HJ({n},{q})" for n in range(2, 13) for q in range(1, n) if gcd(n, q) == 1]
    checked = 0
    for name in names:
        g = corpus.get(name).graph
        if not is_rational(g):
            _fail(f"{name} should be rational")
        zf = fundamental_cycle(g)
        top = max(c for _, c in zf.coeffs)
        oracle_zf = fundamental_cycle_bruteforce(g, SearchBound(max_coeff=top))
        if oracle_zf != zf:
            _fail(f"{name}: oracle fundamental cycle {oracle_zf} != {zf}")
        if arithmetic_genus(oracle_zf) != 0:
            _fail(f"{name}: p_a(Z_f) = {arithmetic_genus(oracle_zf)} != 0")
        checked += 1
    g = corpus.get("ex244min").graph
    if is_rational(g):
        _fail("ex244min should not be rational")
    zf = fundamental_cycle_bruteforce(g, SearchBound(max_coeff=2))
    if arithmetic_genus(zf) != 1:
        _fail(f"ex244min: p_a(Z_f) = {arithmetic_genus(zf)} != 1")
    return f"{checked} rational graphs classified, ex244min excluded"


@_check
def _colon_core_vs_oracle(seed: int, samples: int) -> str:
    """Criterion 3: Y from the contraction-sequence algorithm equals the
    exhaustively enumerated maximal Y, and core = 2Z - Y."""
    rng = random.Random(seed)
    n = 0
    for model, ideal in _random_instances(rng, samples):
        rep = colon_and_core(ideal)
        y = enumerate_max_Y(ideal.z, ideal.c)
        if y is None:
            _fail(f"oracle found no unique maximal Y for {ideal.z}")
        if y != rep.y:
            _fail(f"Y mismatch on {ideal.z.graph.name}: algorithm {rep.y}, oracle {y}")
        if rep.core_cycle != 2 * ideal.z - rep.y:
            _fail(f"core != 2Z - Y for {ideal.z}")
        n += 1
    return f"{n} random instances agree with the oracle"


@_check
def _core_monotonicity(seed: int, samples: int) -> str:
    """Criterion 4: nested ideals have nested colons and cores."""
    rng = random.Random(seed + 1)
    n = 0
    for model, i1 in _random_instances(rng, samples):
        extra = _random_antinef(rng, i1.z.graph)
        i2 = represent(model, i1.tower, i1.level, i1.z + extra)
        if not core_monotone_check(i1, i2):
            _fail(f"monotonicity violated for {i1.z} <= {i2.z} on {i1.z.graph.name}")
        n += 1
    return f"{n} nested pairs satisfy colon/core monotonicity"


@_check
def _gorenstein_good_agreement(seed: int, samples: int) -> str:
    """Criterion 5: on Gorenstein models the multiplicity/colength criterion
    agrees with the (-1)-curve criterion."""
    rng = random.Random(seed + 2)
    n = 0
    for model, ideal in _random_instances(rng, samples, gorenstein_only=True):
        if is_good(ideal) != good_gorenstein_crosscheck(ideal):
            _fail(f"good criteria disagree on {ideal.z.graph.name}: {ideal.z}")
        n += 1
    for ideal in _ex244_instances():
        if is_good(ideal) != good_gorenstein_crosscheck(ideal):
            _fail(f"good criteria disagree on ex244 instance {ideal.z}")
        n += 1
    return f"{n} Gorenstein instances agree"


@_check
def _colon_iteration_count(seed: int, samples: int) -> str:
    """Criterion 6: iterating the colon reaches the good closure in exactly
    max(b_i) steps; the three-vertex chain takes exactly two."""
    a1 = corpus.get("A1").graph
    model = singularity_model(a1, gorenstein=True)
    t = Tower.base(a1).blow_up(free_point("E1", "C1")).blow_up(free_point("C1", "C2"))
    z = cycle(t.top, {"E1": 2, "C1": 4, "C2": 5})
    ideal = represent(model, t, 2, z)
    rep = colon_and_core(ideal)
    if rep.iterations_to_good != 2:
        _fail(f"chain model: max b_i = {rep.iterations_to_good} != 2")
    steps, fixed = _iterate_colon(ideal)
    if steps != 2:
        _fail(f"chain model stabilized in {steps} != 2 colon iterations")
    if fixed.z != cycle(t.top, {"E1": 2, "C1": 2, "C2": 2}):
        _fail(f"chain model good closure {fixed.z} != (2,2,2)")
    rng = random.Random(seed + 3)
    n = 0
    for model, ideal in _random_instances(rng, samples):
        rep = colon_and_core(ideal)
        steps, _ = _iterate_colon(ideal)
        if steps != rep.iterations_to_good:
            _fail(
                f"{ideal.z.graph.name}: {steps} iterations, predicted {rep.iterations_to_good}"
            )
        n += 1
    return f"chain model exact; {n} instances stabilize in max(b_i) steps"


@_check
def _cone_formulas(seed: int, samples: int) -> str:
    """Criterion 7: the graded-cone colength, embedding dimension and
    multiplicity-gap formulas."""
    for e, g, a in [(2, 2, 1), (3, 4, 2), (2, 1, 0)]:
        _, _, stats = cone_model(e, g, a)
        if not stats.all_ok:
            _fail(f"cone({e},{g},{a}) stats {stats} disagree with the closed formulas")
    return "cone(2,2,1), cone(3,4,2), cone(2,1,0) all match"


@_check
def _birational_invariants(seed: int, samples: int) -> str:
    """Criterion 8: projection formula, pushforward-of-pullback, relative
    canonical smoothness, p_a invariance."""
    rng = random.Random(seed + 4)
    n = 0
    for model, ideal in _random_instances(rng, samples):
        t = ideal.tower
        base = t.levels[0]
        w = _random_antinef(rng, base)
        v = cycle(base, {vid: rng.randint(0, 3) for vid in base.ids})
        wt = t.pullback(w, 0, t.height)
        vt = t.pullback(v, 0, t.height)
        if pair(wt, vt) != pair(w, v):
            _fail(f"projection formula fails on {base.name}")
        if t.pushforward(wt, t.height, 0) != w:
            _fail(f"pushforward of pullback is not the identity on {base.name}")
        if arithmetic_genus(wt) != arithmetic_genus(w):
            _fail(f"p_a not pullback-invariant on {base.name}")
        if t.height > 0:
            k = relative_canonical(t)
            if not contracts_to_smooth(k):
                _fail(f"relative canonical cycle on {base.name} not smooth-contractible")
            if pair(k, wt) != 0:
                _fail(f"relative canonical cycle pairs nontrivially with a pullback")
        n += 1
    return f"{n} towers satisfy all birational invariants"


@_check
def _lattice_properties(seed: int, samples: int) -> str:
    """Criterion 9: closure minimality vs enumeration, start-independence of
    the fundamental cycle, canonical-cycle residuals."""
    rng = random.Random(seed + 5)
    small = [corpus.get(n).graph for n in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "HJ(5,2)", "HJ(7,3)", "HJ(11,4)"]]
    for g in small:
        zf = fundamental_cycle(g)
        for start in g.ids:
            if fundamental_cycle(g, start=start) != zf:
                _fail(f"fundamental cycle of {g.name} depends on the starting vertex")
        zk = canonical_cycle(g)
        for vid in g.ids:
            if row_pairing(zk, vid) + g.vertex(vid).kappa != 0:
                _fail(f"canonical cycle residual nonzero at {vid} on {g.name}")
        for _ in range(20):
            d = cycle(g, {vid: rng.randint(0, 3) for vid in g.ids})
            if d.is_zero:
                d = unit_cycle(g, rng.choice(g.ids))
            z = antinef_closure(d)
            if not is_antinef(z) or not z.dominates(d):
                _fail(f"closure of {d} on {g.name} broken")
            if antinef_closure(z) != z:
                _fail(f"closure not idempotent on {g.name}")
            # exhaustive minimality: no anti-nef cycle >= d is smaller anywhere
            if _enumerated_closure(g, d) != z:
                _fail(f"closure of {d} on {g.name} disagrees with enumeration")
    return f"{len(small)} graphs pass closure/fundamental/canonical properties"


def _enumerated_closure(g: DualGraph, d: Cycle, bound: int = 8) -> Optional[Cycle]:
    """Pointwise minimum of all nonzero anti-nef cycles >= d with every
    coefficient <= ``bound``; exhaustive cross-check for ``antinef_closure``."""
    import numpy as np

    m = np.array(g.matrix(), dtype=np.int64)
    lows = [max(d.coeff(v), 0) for v in g.ids]
    grids = np.meshgrid(*[np.arange(lo, bound + 1) for lo in lows], indexing="ij")
    cand = np.stack([a.ravel() for a in grids], axis=1)
    cand = cand[cand.sum(axis=1) > 0]
    keep = cand[(cand @ m <= 0).all(axis=1)]
    if keep.shape[0] == 0:
        return None
    best = keep.min(axis=0)
    return cycle(g, {vid: int(c) for vid, c in zip(g.ids, best)})


CRITERIA: dict[str, Callable[..., CheckResult]] = {
    "1 ex244 reproduction": _ex244_reproduction,
    "2 rationality classification": _rationality_classification,
    "3 colon/core vs oracle": _colon_core_vs_oracle,
    "4 core monotonicity": _core_monotonicity,
    "5 Gorenstein good agreement": _gorenstein_good_agreement,
    "6 colon iteration count": _colon_iteration_count,
    "7 cone formulas": _cone_formulas,
    "8 birational invariants": _birational_invariants,
    "9 lattice properties": _lattice_properties,
}


def run_all(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> list[CheckResult]:
    return [fn(seed=seed, samples=samples) for fn in CRITERIA.values()]
