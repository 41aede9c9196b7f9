"""Gadget constructions that turn the orientation problem into matching.

Two steps.  eliminate_degree_one absorbs every degree-1 vertex into an
attached 4-cycle, leaving a graph whose non-isolated vertices all have
degree at least 2.  build_gprime then expands that core into the gadget
graph: every edge becomes a two-edge path through a fresh connector
vertex, and every vertex becomes a gadget of port and inner vertices
whose matchings encode the vertex's light/heavy state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, VertexWeights

__all__ = [
    "CycleAugmentedGraph",
    "CycleGadget",
    "ReducedGraph",
    "build_gprime",
    "eliminate_degree_one",
    "quotient_Q",
    "strip_isolated",
]


@dataclass(frozen=True)
class CycleGadget:
    """One 4-cycle attached at a former degree-1 vertex.

    The cycle is anchor - ring[0] - ring[1] - ring[2] - anchor, and
    edge_ids lists its four edges in that ring order.
    """

    anchor: int
    ring: tuple[int, int, int]
    edge_ids: tuple[int, int, int, int]


@dataclass(frozen=True)
class CycleAugmentedGraph:
    """Result of the degree-1 preprocessing step.

    Original vertices and edges keep their ids; added ring vertices and
    cycle edges are appended after them, grouped per gadget.
    """

    graph: Graph
    added_cycles: tuple[CycleGadget, ...]
    original_edge_ids: tuple[int, ...]

    @property
    def original_vertex_count(self) -> int:
        return self.graph.n - 3 * len(self.added_cycles)


def eliminate_degree_one(g: Graph) -> CycleAugmentedGraph:
    """Attaches a 4-cycle at every degree-1 vertex.

    Afterwards every non-isolated vertex has degree at least 2: former
    degree-1 vertices now have degree 3, the three ring vertices of each
    cycle have degree 2, and nothing else changes.  Isolated vertices
    pass through untouched.
    """
    ones = [v for v in range(g.n) if g.degree(v) == 1]
    edges = list(g.edges)
    cycles = []
    base = g.n
    for t, v in enumerate(ones):
        r0, r1, r2 = base + 3 * t, base + 3 * t + 1, base + 3 * t + 2
        first = len(edges)
        edges.extend([(v, r0), (r0, r1), (r1, r2), (v, r2)])
        cycles.append(CycleGadget(v, (r0, r1, r2), (first, first + 1, first + 2, first + 3)))
    graph = Graph(g.n + 3 * len(ones), tuple(edges))
    return CycleAugmentedGraph(graph, tuple(cycles), tuple(range(g.m)))


def strip_isolated(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Removes degree-0 vertices, relabeling the rest contiguously.

    Edge indices and their order are unchanged.  Returns the smaller
    graph and the tuple mapping new vertex ids back to old ones.
    """
    kept = tuple(v for v in range(g.n) if g.degree(v) > 0)
    new_id = {v: i for i, v in enumerate(kept)}
    edges = tuple((new_id[u], new_id[v]) for u, v in g.edges)
    return Graph(len(kept), edges), kept


@dataclass(frozen=True)
class ReducedGraph:
    """The gadget graph plus the bookkeeping tying it back to the core.

    Vertex layout of gprime: for core edge e the port at the lower
    endpoint is 3e, the connector is 3e+1, and the port at the higher
    endpoint is 3e+2; the inner vertices of each core vertex follow from
    3m onward, in vertex order.  Edge layout: the two connecting edges
    of core edge e are 2e (lower side) and 2e+1 (higher side); then per
    core vertex its inner-to-port edges, inner-major, then its parity
    edge.

    For core vertex v the gadget consists of the d(v) ports of its
    incident edges, its d(v)-2 inner vertices joined to every port, and
    one parity edge joining the ports of its two smallest incident edge
    ids.  side_edges[v] lists the v-side connecting edges, one per
    incident core edge, in adjacency order.
    """

    core: Graph
    gprime: Graph
    connector: tuple[int, ...]
    ports: tuple[tuple[int, int], ...]
    connecting_edges: tuple[tuple[int, int], ...]
    inner: tuple[tuple[int, ...], ...]
    gadget_edge_ids: tuple[tuple[int, ...], ...]
    parity_edge: tuple[int, ...]
    side_edges: tuple[tuple[int, ...], ...]
    edge_weights: tuple[int, ...]
    edge_owner: tuple[int, ...]

    def port_at(self, v: int, e: int) -> int:
        """The port of core edge e on core vertex v's side."""
        u, w = self.core.edges[e]
        if v == u:
            return self.ports[e][0]
        if v == w:
            return self.ports[e][1]
        raise ValueError(f"vertex {v} is not an endpoint of core edge {e}")

    def gadget_bucket(self, v: int) -> tuple[int, ...]:
        """All gprime edge ids owned by v: gadget edges plus side edges."""
        return self.gadget_edge_ids[v] + (self.parity_edge[v],) + self.side_edges[v]


def build_gprime(core: Graph, weights: VertexWeights | None = None) -> ReducedGraph:
    """Builds the gadget graph for a core of minimum degree 2.

    The result has 5m - 2n vertices and sum(d(v)^2 - d(v) + 1) edges.
    With weights given, every edge owned by vertex v (its gadget edges
    and its side connecting edges) carries v's cost in integer units;
    without weights every edge weighs 1.
    """
    for v in range(core.n):
        if core.degree(v) < 2:
            raise ValueError(
                f"vertex {v} has degree {core.degree(v)}; the gadget construction "
                "needs minimum degree 2 (preprocess with eliminate_degree_one and "
                "strip_isolated first)"
            )
    if weights is not None and len(weights) != core.n:
        raise ValueError(f"weights cover {len(weights)} vertices, core has {core.n}")
    n, m = core.n, core.m
    connector = tuple(3 * e + 1 for e in range(m))
    ports = tuple((3 * e, 3 * e + 2) for e in range(m))
    inner: list[tuple[int, ...]] = []
    nxt = 3 * m
    for v in range(n):
        d = core.degree(v)
        inner.append(tuple(range(nxt, nxt + d - 2)))
        nxt += d - 2

    def unit(v: int) -> int:
        return weights.unit(v) if weights is not None else 1

    def port_at(v: int, e: int) -> int:
        u, w = core.edges[e]
        return ports[e][0] if v == u else ports[e][1]

    gp_edges: list[tuple[int, int]] = []
    wts: list[int] = []
    owner: list[int] = []
    for e, (u, w) in enumerate(core.edges):
        gp_edges.append((ports[e][0], connector[e]))
        wts.append(unit(u))
        owner.append(u)
        gp_edges.append((connector[e], ports[e][1]))
        wts.append(unit(w))
        owner.append(w)
    connecting_edges = tuple((2 * e, 2 * e + 1) for e in range(m))
    gadget_edge_ids: list[tuple[int, ...]] = []
    parity: list[int] = []
    for v in range(n):
        ids = []
        for i in inner[v]:
            for e in core.adjacency[v]:
                ids.append(len(gp_edges))
                gp_edges.append((i, port_at(v, e)))
                wts.append(unit(v))
                owner.append(v)
        gadget_edge_ids.append(tuple(ids))
        # parity edge between the ports of the two smallest incident edge ids
        e0, e1 = core.adjacency[v][0], core.adjacency[v][1]
        parity.append(len(gp_edges))
        gp_edges.append((port_at(v, e0), port_at(v, e1)))
        wts.append(unit(v))
        owner.append(v)
    side: list[list[int]] = [[] for _ in range(n)]
    for e, (u, w) in enumerate(core.edges):
        side[u].append(2 * e)
        side[w].append(2 * e + 1)
    gprime = Graph(nxt, tuple(gp_edges))
    return ReducedGraph(
        core=core,
        gprime=gprime,
        connector=connector,
        ports=ports,
        connecting_edges=connecting_edges,
        inner=tuple(inner),
        gadget_edge_ids=tuple(gadget_edge_ids),
        parity_edge=tuple(parity),
        side_edges=tuple(tuple(s) for s in side),
        edge_weights=tuple(wts),
        edge_owner=tuple(owner),
    )


def quotient_Q(core: Graph, weights: VertexWeights) -> int | Fraction:
    """Sum over edges {u, v} of c_u + c_v; equals sum over v of d(v) * c_v."""
    if len(weights) != core.n:
        raise ValueError(f"weights cover {len(weights)} vertices, core has {core.n}")
    return weights.as_value(sum(core.degree(v) * weights.unit(v) for v in range(core.n)))
