"""Blow-ups, contractions, towers, and cycle transport between levels.

A tower is a bottom-up chain of dual graphs in which each level adds one
exceptional curve.  Blow-ups extend a tower upward; contracting a rational
(-1)-curve produces the lower graph together with the step that rebuilds the
upper one, so contraction sequences become towers read in reverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, PreconditionError, TheoremViolationError
from .graph import Cycle, DualGraph, Vertex, cycle, dual_graph, unit_cycle, validate_graph, zero_cycle
from .lattice import is_antinef, pair, row_pairing


@dataclass(frozen=True)
class BlowupCenter:
    """A point to blow up: on one curve (free) or on an intersection of two."""

    new_id: str
    at: tuple[str, ...]

    @property
    def is_free(self) -> bool:
        return len(self.at) == 1


def free_point(vid: str, new_id: str) -> BlowupCenter:
    return BlowupCenter(new_id=new_id, at=(vid,))


def edge_point(a: str, b: str, new_id: str) -> BlowupCenter:
    if a == b:
        raise InputError("edge point needs two distinct curves")
    return BlowupCenter(new_id=new_id, at=(a, b))


@dataclass(frozen=True)
class TowerStep:
    """One level of a tower: a new (-1, kappa -1) curve and its attachments.

    ``attach`` lists (existing vertex, multiplicity); blow-ups always attach
    with multiplicity 1, inverse contractions may attach with more.
    """

    new_id: str
    attach: tuple[tuple[str, int], ...]


def apply_step(g: DualGraph, step: TowerStep) -> DualGraph:
    """Insert the step's exceptional curve into g (upward surgery)."""
    for vid, m in step.attach:
        if not g.has_vertex(vid):
            raise InputError(f"step attaches to unknown vertex {vid!r}")
        if m < 1:
            raise InputError("attach multiplicities must be >= 1")
    if g.has_vertex(step.new_id):
        raise InputError(f"vertex id {step.new_id!r} already exists on {g.name!r}")
    att = dict(step.attach)
    verts: list[Vertex] = []
    for v in g.vertices:
        m = att.get(v.id, 0)
        verts.append(Vertex(v.id, v.self_int - m * m, v.kappa + m))
    verts.append(Vertex(step.new_id, -1, -1))
    edges: dict[tuple[str, str], int] = {}
    for a, b, m in g.edges:
        edges[(a, b)] = m
    pairs = list(step.attach)
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            (u, mu), (v, mv) = pairs[i], pairs[j]
            key = (u, v) if u < v else (v, u)
            have = edges.get(key, 0)
            if have < mu * mv:
                raise PreconditionError(
                    f"cannot blow up: edge {key} has multiplicity {have} < {mu * mv}"
                )
            edges[key] = have - mu * mv
    for vid, m in step.attach:
        key = (vid, step.new_id) if vid < step.new_id else (step.new_id, vid)
        edges[key] = edges.get(key, 0) + m
    elist = [(a, b, m) for (a, b), m in edges.items() if m > 0]
    return dual_graph(g.name, verts, elist)


def blowup(g: DualGraph, center: BlowupCenter) -> tuple[DualGraph, TowerStep]:
    """Blow up a free point on one curve or the intersection point of two."""
    for vid in center.at:
        if not g.has_vertex(vid):
            raise InputError(f"blow-up center names unknown vertex {vid!r}")
    if not center.is_free and g.edge_mult(*center.at) < 1:
        raise PreconditionError(
            f"no edge between {center.at[0]!r} and {center.at[1]!r} to blow up"
        )
    step = TowerStep(new_id=center.new_id, attach=tuple((vid, 1) for vid in center.at))
    return apply_step(g, step), step


def contract(g: DualGraph, vid: str) -> tuple[DualGraph, TowerStep]:
    """Contract a rational (-1)-curve; returns the lower graph and the
    step that rebuilds g from it."""
    v = g.vertex(vid)
    if v.self_int != -1 or v.kappa != -1:
        raise PreconditionError(
            f"{vid!r} is not a rational (-1)-curve (self {v.self_int}, kappa {v.kappa})"
        )
    if len(g.vertices) == 1:
        raise PreconditionError("cannot contract the last curve of a graph")
    attach = tuple(g.adjacency[vid])
    verts = []
    for w in g.vertices:
        if w.id == vid:
            continue
        m = dict(attach).get(w.id, 0)
        verts.append(Vertex(w.id, w.self_int + m * m, w.kappa - m))
    edges: dict[tuple[str, str], int] = {}
    for a, b, m in g.edges:
        if vid in (a, b):
            continue
        edges[(a, b)] = m
    for i in range(len(attach)):
        for j in range(i + 1, len(attach)):
            (u, mu), (w, mw) = attach[i], attach[j]
            key = (u, w) if u < w else (w, u)
            edges[key] = edges.get(key, 0) + mu * mw
    lower = dual_graph(g.name, verts, [(a, b, m) for (a, b), m in edges.items()])
    return lower, TowerStep(new_id=vid, attach=attach)


@dataclass(frozen=True)
class Tower:
    """Chain of graphs; level 0 is the bottom (most contracted) graph and
    levels[k+1] = apply_step(levels[k], steps[k])."""

    levels: tuple[DualGraph, ...]
    steps: tuple[TowerStep, ...]

    @classmethod
    def base(cls, g: DualGraph) -> "Tower":
        return cls(levels=(g,), steps=())

    @classmethod
    def from_steps(cls, base: DualGraph, steps: Iterable[TowerStep]) -> "Tower":
        levels = [base]
        steps = tuple(steps)
        for s in steps:
            levels.append(apply_step(levels[-1], s))
        return cls(levels=tuple(levels), steps=steps)

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> DualGraph:
        return self.levels[-1]

    def graph(self, level: int) -> DualGraph:
        if not 0 <= level < len(self.levels):
            raise InputError(f"tower has levels 0..{self.height}, not {level}")
        return self.levels[level]

    def blow_up(self, center: BlowupCenter) -> "Tower":
        new_graph, step = blowup(self.top, center)
        return Tower(levels=self.levels + (new_graph,), steps=self.steps + (step,))

    def pullback(self, w: Cycle, from_level: int, to_level: int) -> Cycle:
        """Total transform: the unique lift pairing to zero with every
        exceptional curve inserted between the two levels."""
        self._check_cycle(w, from_level)
        if to_level < from_level:
            raise PreconditionError("pullback goes to a level >= its source")
        self.graph(to_level)
        coeffs = dict(w.coeffs)
        for k in range(from_level, to_level):
            step = self.steps[k]
            lift = sum(m * coeffs.get(vid, 0) for vid, m in step.attach)
            if lift != 0:
                coeffs[step.new_id] = lift
        return cycle(self.graph(to_level), coeffs)

    def pushforward(self, w: Cycle, from_level: int, to_level: int) -> Cycle:
        """Restrict coefficients to the curves surviving at the lower level."""
        self._check_cycle(w, from_level)
        if to_level > from_level:
            raise PreconditionError("pushforward goes to a level <= its source")
        return w.restricted_to(self.graph(to_level))

    def _check_cycle(self, w: Cycle, level: int) -> None:
        if w.graph != self.graph(level):
            raise PreconditionError(
                f"cycle lives on {w.graph.name!r}, not on tower level {level}"
            )


def relative_canonical(t: Tower, top_level: Optional[int] = None, bottom_level: int = 0) -> Cycle:
    """K_{top/bottom}: sum of the total transforms of every exceptional curve
    inserted between the two levels.  Always contracts to a smooth point."""
    if top_level is None:
        top_level = t.height
    top = t.graph(top_level)
    k = zero_cycle(top)
    for j in range(bottom_level, top_level):
        k = k + t.pullback(unit_cycle(t.graph(j + 1), t.steps[j].new_id), j + 1, top_level)
    if not k.is_zero and (-pair(k, k) + sum(c * top.vertex(v).kappa for v, c in k.coeffs)) != 0:
        raise TheoremViolationError("relative canonical cycle fails -K^2 + K.K_X = 0")
    return k


def transport_cohom(t: Tower, c_base: Cycle, trace=None) -> tuple[Cycle, ...]:
    """Transport the cohomological cycle from the bottom level to every level.

    Per step: if the center touches the support of C, the new curve is
    removed from the total transform (C' = g*C - E_new); otherwise C pulls
    back unchanged.  A center on two crossing curves counts as 'on supp C'
    when either endpoint carries a positive coefficient.
    """
    if not c_base.is_effective:
        raise PreconditionError("cohomological cycle must be effective")
    if c_base.graph != t.levels[0]:
        raise PreconditionError("cohomological cycle must live on the tower's bottom level")
    track = [c_base]
    for k, step in enumerate(t.steps):
        c = track[-1]
        lifted = t.pullback(c, k, k + 1)
        on_supp = any(c.coeff(vid) > 0 for vid, _ in step.attach)
        nxt = lifted - unit_cycle(t.graph(k + 1), step.new_id) if on_supp else lifted
        if not nxt.is_effective:
            raise PreconditionError(
                f"cohomological cycle turned negative at level {k + 1}; inconsistent input"
            )
        if trace is not None:
            trace(f"level {k + 1}: C = {nxt}" + ("  (center on supp C)" if on_supp else ""))
        track.append(nxt)
    return tuple(track)


def _fresh_id(taken, stem: str = "P") -> str:
    n = 1
    while f"{stem}{n}" in taken:
        n += 1
    return f"{stem}{n}"


def associated_pg_cycle(
    t0: Tower,
    z: Cycle,
    branches: Sequence[tuple[str, int]],
    c_base: Cycle,
    trace=None,
) -> tuple[Tower, Cycle]:
    """Blow up along the branches of a function divisor until none meets the
    cohomological cycle; returns the extended tower and the transported
    anti-nef cycle.

    ``branches`` lists, per vertex of the tower's top graph, how many
    transverse branches of the strict transform pass through it.  They must
    balance the pairing: branches on E_i = -Z.E_i for every vertex.
    """
    top = t0.height
    g = t0.graph(top)
    if z.graph != g:
        raise PreconditionError("cycle must live on the tower's top level")
    if not is_antinef(z):
        raise PreconditionError("associated_pg_cycle needs an anti-nef cycle")
    counts: dict[str, int] = {}
    for vid, n in branches:
        if not g.has_vertex(vid):
            raise InputError(f"branch record names unknown vertex {vid!r}")
        if n < 0:
            raise InputError("branch counts must be >= 0")
        counts[vid] = counts.get(vid, 0) + n
    for vid in g.ids:
        want = -row_pairing(z, vid)
        if counts.get(vid, 0) != want:
            raise PreconditionError(
                f"branch balance fails on {vid!r}: {counts.get(vid, 0)} branches, "
                f"-Z.E = {want}"
            )
    live = [vid for vid, n in counts.items() for _ in range(n)]
    track = transport_cohom(t0, c_base)
    c = track[-1]
    t = t0
    while True:
        for i, vid in enumerate(live):
            if c.coeff(vid) > 0:
                break
        else:
            return t, z
        new_id = _fresh_id(set(t.top.ids) | {b for b in live})
        t = t.blow_up(free_point(vid, new_id))
        lvl = t.height
        z = t.pullback(z, lvl - 1, lvl) + unit_cycle(t.top, new_id)
        c = t.pullback(c, lvl - 1, lvl) - unit_cycle(t.top, new_id)
        if not c.is_effective:
            raise TheoremViolationError("cohomological cycle turned negative during blow-up")
        live[i] = new_id
        if trace is not None:
            trace(f"blow up {vid!r} -> {new_id!r}: Z = {z}, C = {c}")
