"""Weighted dual graphs and exact cycle arithmetic.

A dual graph records the exceptional curves of a resolution of a normal
surface singularity: one vertex per irreducible curve, weighted by its
self-intersection and its canonical degree kappa = K.E, with edges giving
the pairwise intersection numbers.  Everything is exact: coefficients are
arbitrary-precision integers or ``fractions.Fraction``; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

from .errors import InputError, PreconditionError

Coeff = Union[int, Fraction]


@dataclass(frozen=True)
class Vertex:
    id: str
    self_int: int
    kappa: int


@dataclass(frozen=True)
class DualGraph:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str, int], ...]

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v.id: k for k, v in enumerate(self.vertices)}

    def has_vertex(self, vid: str) -> bool:
        return vid in self._index

    def vertex(self, vid: str) -> Vertex:
        try:
            return self.vertices[self._index[vid]]
        except KeyError:
            raise InputError(f"graph {self.name!r} has no vertex {vid!r}") from None

    @cached_property
    def adjacency(self) -> dict[str, tuple[tuple[str, int], ...]]:
        adj: dict[str, list[tuple[str, int]]] = {v.id: [] for v in self.vertices}
        for a, b, m in self.edges:
            adj[a].append((b, m))
            adj[b].append((a, m))
        return {vid: tuple(nb) for vid, nb in adj.items()}

    def edge_mult(self, a: str, b: str) -> int:
        key = (a, b) if a < b else (b, a)
        for u, v, m in self.edges:
            if (u, v) == key:
                return m
        return 0

    def matrix(self) -> list[list[int]]:
        """Intersection matrix in vertex order."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for k, v in enumerate(self.vertices):
            m[k][k] = v.self_int
        for a, b, mult in self.edges:
            i, j = self._index[a], self._index[b]
            m[i][j] = m[j][i] = mult
        return m

    def __repr__(self) -> str:  # keep pytest diffs readable
        vs = ", ".join(f"{v.id}({v.self_int},{v.kappa})" for v in self.vertices)
        return f"DualGraph({self.name}: {vs})"


def dual_graph(
    name: str,
    vertices: Iterable[tuple[str, int, int] | Vertex],
    edges: Iterable[tuple[str, str] | tuple[str, str, int]] = (),
) -> DualGraph:
    """Build a graph, normalizing edges; structural problems raise InputError.

    Mathematical invariants (negative definiteness, connectivity, adjunction)
    are checked by :func:`validate_graph`, never here, so that invalid graphs
    can be constructed and reported on.
    """
    vs: list[Vertex] = []
    for v in vertices:
        vs.append(v if isinstance(v, Vertex) else Vertex(str(v[0]), int(v[1]), int(v[2])))
    if not vs:
        raise InputError("a dual graph needs at least one vertex")
    seen = set()
    for v in vs:
        if v.id in seen:
            raise InputError(f"duplicate vertex id {v.id!r}")
        seen.add(v.id)
    merged: dict[tuple[str, str], int] = {}
    for e in edges:
        a, b = str(e[0]), str(e[1])
        m = int(e[2]) if len(e) > 2 else 1
        if a not in seen or b not in seen:
            raise InputError(f"edge ({a!r},{b!r}) references an unknown vertex")
        if a == b:
            raise InputError(f"self-loop on {a!r} is not allowed")
        if m < 1:
            raise InputError(f"edge ({a!r},{b!r}) has multiplicity {m} < 1")
        key = (a, b) if a < b else (b, a)
        merged[key] = merged.get(key, 0) + m
    # canonical order: rebuilding the same graph by a different route
    # (e.g. contracting and re-inserting a curve) must compare equal
    vs.sort(key=lambda v: v.id)
    etup = tuple((a, b, m) for (a, b), m in sorted(merged.items()))
    return DualGraph(name=name, vertices=tuple(vs), edges=etup)


@dataclass(frozen=True)
class Cycle:
    """Exact coefficient vector on the vertices of a dual graph.

    Coefficients are integers or Fractions in lowest terms; integral values
    are stored as int.  Absent vertices have coefficient 0.  Immutable; all
    arithmetic returns fresh cycles.
    """

    graph: DualGraph
    coeffs: tuple[tuple[str, Coeff], ...]

    @cached_property
    def _map(self) -> dict[str, Coeff]:
        return dict(self.coeffs)

    def coeff(self, vid: str) -> Coeff:
        if not self.graph.has_vertex(vid):
            raise InputError(f"graph {self.graph.name!r} has no vertex {vid!r}")
        return self._map.get(vid, 0)

    def as_dict(self) -> dict[str, Coeff]:
        return dict(self.coeffs)

    def vector(self) -> list[Coeff]:
        return [self._map.get(vid, 0) for vid in self.graph.ids]

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(vid for vid, _ in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for _, c in self.coeffs)

    def _binop(self, other: "Cycle", sign: int) -> "Cycle":
        if self.graph != other.graph:
            raise _graph_mismatch(self.graph, other.graph)
        data = dict(self._map)
        for vid, c in other.coeffs:
            data[vid] = data.get(vid, 0) + sign * c
        return cycle(self.graph, data)

    def __add__(self, other: "Cycle") -> "Cycle":
        return self._binop(other, 1)

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self._binop(other, -1)

    def __mul__(self, scalar: Coeff) -> "Cycle":
        return cycle(self.graph, {vid: scalar * c for vid, c in self.coeffs})

    __rmul__ = __mul__

    def __neg__(self) -> "Cycle":
        return self * -1

    def dominates(self, other: "Cycle") -> bool:
        """Coefficient-wise self >= other."""
        if self.graph != other.graph:
            raise _graph_mismatch(self.graph, other.graph)
        keys = set(self._map) | set(other._map)
        return all(self._map.get(k, 0) >= other._map.get(k, 0) for k in keys)

    def restricted_to(self, target: DualGraph) -> "Cycle":
        """Drop coefficients on vertices absent from *target*."""
        return cycle(target, {vid: c for vid, c in self.coeffs if target.has_vertex(vid)})

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{c}*{vid}" for vid, c in self.coeffs)


def _graph_mismatch(g1: DualGraph, g2: DualGraph) -> PreconditionError:
    return PreconditionError(f"cycles live on different graphs ({g1.name!r} vs {g2.name!r})")


def cycle(graph: DualGraph, data: Mapping[str, Coeff] | Iterable[tuple[str, Coeff]] = ()) -> Cycle:
    items = data.items() if isinstance(data, Mapping) else data
    acc: dict[str, Coeff] = {}
    for vid, c in items:
        if not graph.has_vertex(vid):
            raise InputError(f"cycle names unknown vertex {vid!r} on graph {graph.name!r}")
        if isinstance(c, Fraction):
            c = int(c) if c.denominator == 1 else c
        elif not isinstance(c, int):
            raise InputError(f"coefficient for {vid!r} must be an integer or Fraction, got {type(c).__name__}")
        acc[vid] = acc.get(vid, 0) + c
    order = graph._index
    return Cycle(graph=graph, coeffs=tuple(sorted(((v, c) for v, c in acc.items() if c != 0), key=lambda it: order[it[0]])))


def zero_cycle(graph: DualGraph) -> Cycle:
    return Cycle(graph=graph, coeffs=())


def unit_cycle(graph: DualGraph, vid: str) -> Cycle:
    return cycle(graph, {vid: 1})


# --- validation ----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    symmetric: bool
    connected: bool
    negative_definite: bool
    adjunction_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.symmetric and self.connected and self.negative_definite and self.adjunction_ok


def det_bareiss(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_negative_definite(m: list[list[int]]) -> bool:
    """Sylvester test on -M with exact integer determinants."""
    n = len(m)
    neg = [[-m[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        sub = [row[:k] for row in neg[:k]]
        if det_bareiss(sub) <= 0:
            return False
    return True


def validate_graph(g: DualGraph) -> ValidationReport:
    """Check every DualGraph invariant; reports findings, never throws."""
    failures: list[str] = []

    # symmetry holds by construction (edges are unordered pairs)
    symmetric = True

    reach = {g.vertices[0].id}
    frontier = [g.vertices[0].id]
    while frontier:
        nxt = frontier.pop()
        for other, _ in g.adjacency[nxt]:
            if other not in reach:
                reach.add(other)
                frontier.append(other)
    connected = len(reach) == len(g.vertices)
    if not connected:
        missing = sorted(set(g.ids) - reach)
        failures.append(f"graph is not connected (unreachable: {', '.join(missing)})")

    negative_definite = is_negative_definite(g.matrix())
    if not negative_definite:
        failures.append("intersection matrix is not negative definite")

    adjunction_ok = True
    for v in g.vertices:
        s = v.self_int + v.kappa
        if s % 2 != 0 or s < -2:
            adjunction_ok = False
            failures.append(
                f"vertex {v.id!r} violates adjunction: self_int + kappa = {s} must be even and >= -2"
            )
    return ValidationReport(
        symmetric=symmetric,
        connected=connected,
        negative_definite=negative_definite,
        adjunction_ok=adjunction_ok,
        failures=tuple(failures),
    )
