"""End-to-end pipeline from input graph to certified optimal orientation.

The pipeline: absorb degree-1 vertices into 4-cycles, drop isolated
vertices, build the gadget graph, compute one maximum matching, read the
orientation back off the matching, and restrict it to the original
edges.  The matching value yields a certificate: on the preprocessed
core the optimal light count is 2m - |M| (unweighted) or Q - w(M)
(weighted), and the dropped vertices contribute a closed-form offset.
Both identities are recounted on the final orientation; a mismatch
raises an internal error instead of returning a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter

from .graph import (
    Graph,
    Orientation,
    VertexWeights,
    check_orientation,
    light_vertices,
)
from .matching import (
    Matching,
    extend_to_maximal,
    max_cardinality_matching,
    max_weight_matching,
)
from .reduction import ReducedGraph, build_gprime, eliminate_degree_one, strip_isolated

__all__ = [
    "Certificate",
    "Solution",
    "SolveStats",
    "matching_from_orientation",
    "normalize_gadget_matching",
    "recover_orientation",
    "solve_min_light",
    "solve_with_stats",
]


@dataclass(frozen=True)
class Certificate:
    """Optimality certificate: objective = constant - matching_value + offset.

    constant is 2m (unweighted) or Q (weighted) of the preprocessed
    core; offset accounts for the vertices the preprocessing removed.
    """

    matching_value: int | Fraction
    constant: int | Fraction
    offset: int | Fraction


@dataclass(frozen=True)
class Solution:
    orientation: Orientation
    light_set: frozenset[int]
    objective: int | Fraction
    certificate: Certificate


@dataclass(frozen=True)
class SolveStats:
    """Instance and phase statistics for one solve."""

    n: int
    m: int
    degree_one: int
    isolated: int
    reduced_vertices: int
    reduced_edges: int
    reduce_seconds: float
    match_seconds: float
    recover_seconds: float


def matching_from_orientation(r: ReducedGraph, o: Orientation) -> Matching:
    """The maximal matching of the gadget graph that mirrors an orientation.

    Chooses the tail-side connecting edge of every core edge, extends
    greedily to a maximal matching (every connector is already covered,
    so only gadget edges can still fit), then normalizes every gadget.
    The result matches exactly out_degree(v) of v's side edges, and its
    size is 2m minus the number of light core vertices.
    """
    core = r.core
    check_orientation(core, o)
    ids = []
    for e, (u, _) in enumerate(core.edges):
        lo, hi = r.connecting_edges[e]
        ids.append(lo if o.tails[e] == u else hi)
    m = extend_to_maximal(r.gprime, Matching.from_edge_ids(r.gprime, ids))
    for v in range(core.n):
        m = normalize_gadget_matching(r, m, v)
    return m


def normalize_gadget_matching(r: ReducedGraph, m: Matching, v: int) -> Matching:
    """Rebalances the matching inside one gadget, leaving the rest alone.

    With k matched side edges at v, the result holds exactly d(v) - 1
    matched edges among v's gadget and side edges when k <= 1, and
    exactly d(v) when k >= 2.  Only two situations need work: no side
    edge and no parity edge matched (the gadget is repacked into a
    perfect matching of its vertices, one edge larger than before), and
    two or more side edges with the parity edge matched (the parity edge
    is swapped for two inner-to-port edges, again one edge larger).
    Requires a maximal matching, as the counts above do not hold
    otherwise.
    """
    core = r.core
    if not 0 <= v < core.n:
        raise ValueError(f"vertex {v} out of range 0..{core.n - 1}")
    if len(m.mate) != r.gprime.n:
        raise ValueError("matching does not belong to the gadget graph")
    mate = m.mate
    bucket = r.gadget_bucket(v)
    for eid in bucket:
        a, b = r.gprime.edges[eid]
        if mate[a] == -1 and mate[b] == -1:
            raise ValueError(
                f"matching is not maximal: edge {eid} near vertex {v} could be added"
            )
    matched = m.matched_edge_ids
    d = core.degree(v)
    k = sum(1 for eid in r.side_edges[v] if eid in matched)
    parity_in = r.parity_edge[v] in matched

    if k == 0 and not parity_in:
        # repack: parity edge covers the two designated ports, and each
        # inner vertex pairs with one of the remaining ports in order
        keep = set(matched)
        keep.difference_update(r.gadget_edge_ids[v])
        keep.add(r.parity_edge[v])
        for i in range(d - 2):
            keep.add(r.gadget_edge_ids[v][i * d + (2 + i)])
        out = Matching.from_edge_ids(r.gprime, keep)
    elif k >= 2 and parity_in:
        exposed_inner = [i for i in r.inner[v] if mate[i] == -1]
        if len(exposed_inner) < 2:
            raise ValueError(
                f"matching is not maximal around vertex {v}: expected at least two "
                "exposed inner vertices"
            )
        pa, pb = r.gprime.edges[r.parity_edge[v]]
        i0, i1 = exposed_inner[0], exposed_inner[1]
        e0 = r.gprime.edge_ids[(min(i0, pa), max(i0, pa))]
        e1 = r.gprime.edge_ids[(min(i1, pb), max(i1, pb))]
        keep = set(matched)
        keep.remove(r.parity_edge[v])
        keep.add(e0)
        keep.add(e1)
        out = Matching.from_edge_ids(r.gprime, keep)
    else:
        out = m

    expected = d - 1 if k <= 1 else d
    got = sum(1 for eid in bucket if eid in out.matched_edge_ids)
    if got != expected:
        raise RuntimeError(
            f"internal error: gadget of vertex {v} holds {got} matched edges, expected {expected}"
        )
    return out


def recover_orientation(r: ReducedGraph, m: Matching) -> Orientation:
    """Reads a core orientation off a matching of the gadget graph.

    A matched lower-side connecting edge orients the core edge away from
    its lower endpoint, a matched higher-side edge away from the higher
    one, and an exposed connector orients lower to higher.
    """
    matched = m.matched_edge_ids
    tails = []
    for e, (u, v) in enumerate(r.core.edges):
        lo, hi = r.connecting_edges[e]
        in_lo = lo in matched
        in_hi = hi in matched
        if in_lo and in_hi:
            raise ValueError(f"both connecting edges of core edge {e} are matched")
        if in_hi:
            tails.append(v)
        else:
            tails.append(u)
    return Orientation(tuple(tails))


def solve_min_light(g: Graph, weights: VertexWeights | None = None) -> Solution:
    """Minimum number (or cost) of vertices with out-degree at most 1.

    Unweighted when weights is None; otherwise minimizes the total cost
    of the light vertices.  Negative costs are rejected: that variant is
    NP-hard and out of scope.
    """
    return solve_with_stats(g, weights)[0]


def solve_with_stats(
    g: Graph, weights: VertexWeights | None = None
) -> tuple[Solution, SolveStats]:
    """solve_min_light plus instance sizes and per-phase timings."""
    weighted = weights is not None
    if weighted:
        if len(weights) != g.n:
            raise ValueError(f"weights cover {len(weights)} vertices, graph has {g.n}")
        if any(u < 0 for u in weights.units):
            raise ValueError(
                "negative vertex costs are not supported: that variant is NP-hard"
            )
    isolated = sum(1 for v in range(g.n) if g.degree(v) == 0)

    t0 = perf_counter()
    aug = eliminate_degree_one(g)
    degree_one = len(aug.added_cycles)
    core, kept = strip_isolated(aug.graph)

    if core.m == 0:
        # no edges anywhere: every vertex is trivially light
        light = frozenset(range(g.n))
        if weighted:
            objective = weights.as_value(sum(weights.units))
        else:
            objective = g.n
        cert = Certificate(0, 0, objective)
        stats = SolveStats(g.n, g.m, degree_one, isolated, 0, 0, perf_counter() - t0, 0.0, 0.0)
        return Solution(Orientation(()), light, objective, cert), stats

    core_weights = None
    if weighted:
        units = tuple(
            weights.unit(kept[i]) if kept[i] < g.n else 0 for i in range(core.n)
        )
        core_weights = VertexWeights(units, weights.scale)
    r = build_gprime(core, core_weights)
    t1 = perf_counter()

    if weighted:
        matching = max_weight_matching(r.gprime, r.edge_weights)
        matching_units = matching.weight_units(r.edge_weights)
        constant_units = sum(
            core.degree(v) * core_weights.unit(v) for v in range(core.n)
        )
    else:
        matching = max_cardinality_matching(r.gprime)
        matching_units = matching.size
        constant_units = 2 * core.m
    t2 = perf_counter()

    o_core = recover_orientation(r, matching)
    predicted_core = constant_units - matching_units
    core_light = light_vertices(core, o_core, 1)
    if weighted:
        core_count = sum(core_weights.unit(v) for v in core_light)
    else:
        core_count = len(core_light)
    if core_count != predicted_core:
        raise RuntimeError(
            f"internal error: core recount {core_count} disagrees with "
            f"certificate value {predicted_core}"
        )

    # restrict to the original edges; edge ids survive both preprocessing steps
    tails = tuple(kept[o_core.tails[e]] for e in range(g.m))
    orientation = Orientation(tails)
    light = light_vertices(g, orientation, 1)

    if weighted:
        offset_units = sum(weights.unit(v) for v in range(g.n) if g.degree(v) <= 1)
        objective_units = sum(weights.unit(v) for v in light)
        if objective_units != predicted_core + offset_units:
            raise RuntimeError(
                f"internal error: objective recount {objective_units} disagrees with "
                f"certificate {predicted_core} plus offset {offset_units}"
            )
        objective = weights.as_value(objective_units)
        cert = Certificate(
            weights.as_value(matching_units),
            weights.as_value(constant_units),
            weights.as_value(offset_units),
        )
    else:
        offset = isolated - degree_one
        objective = len(light)
        if objective != predicted_core + offset:
            raise RuntimeError(
                f"internal error: objective recount {objective} disagrees with "
                f"certificate {predicted_core} plus offset {offset}"
            )
        cert = Certificate(matching_units, constant_units, offset)
    t3 = perf_counter()

    stats = SolveStats(
        n=g.n,
        m=g.m,
        degree_one=degree_one,
        isolated=isolated,
        reduced_vertices=r.gprime.n,
        reduced_edges=r.gprime.m,
        reduce_seconds=t1 - t0,
        match_seconds=t2 - t1,
        recover_seconds=t3 - t2,
    )
    return Solution(orientation, light, objective, cert), stats
