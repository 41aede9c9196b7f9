"""Command-line front end: solve, verify, gen, and bench subcommands.

Exit codes: 0 success, 1 a verification or benchmark check failed, 2
bad usage or unreadable/unparseable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .generate import random_graph, random_weights
from .graph import (
    Graph,
    Orientation,
    VertexWeights,
    light_vertices,
    parse_graph,
    parse_weights,
    render_graph,
)
from .oracle import BudgetExceededError, brute_force_min_light
from .reduction import build_gprime, eliminate_degree_one, strip_isolated
from .solver import Certificate, Solution, solve_with_stats

__all__ = ["RunReport", "main"]


@dataclass(frozen=True)
class RunReport:
    """One benchmark row: instance stats, reduced sizes, timings, result."""

    n: int
    m: int
    degree_one: int
    isolated: int
    gprime_vertices: int
    gprime_edges: int
    reduce_seconds: float
    match_seconds: float
    recover_seconds: float
    objective: int | Fraction
    certificate: Certificate

    def row(self) -> str:
        c = self.certificate
        return (
            f"n={self.n:>5}  m={self.m:>6}  n1={self.degree_one:>4}  "
            f"iso={self.isolated:>4}  |V'|={self.gprime_vertices:>6}  "
            f"|E'|={self.gprime_edges:>7}  reduce={self.reduce_seconds:7.3f}s  "
            f"match={self.match_seconds:7.3f}s  recover={self.recover_seconds:7.3f}s  "
            f"objective={_num(self.objective)}  "
            f"[{_num(c.constant)} - {_num(c.matching_value)} + {_num(c.offset)}]"
        )


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _num(x: int | Fraction) -> int | float:
    """JSON-friendly number: exact for ints, float otherwise."""
    return x if isinstance(x, int) else float(x)


def _close(claimed: object, exact: int | Fraction) -> bool:
    """Value comparison tolerant of the float round-trip through JSON."""
    if not isinstance(claimed, (int, float)) or isinstance(claimed, bool):
        return False
    if isinstance(exact, int):
        return claimed == exact
    return abs(float(claimed) - float(exact)) <= 1e-9 * max(1.0, abs(float(exact)))


def _solution_to_json(g: Graph, sol: Solution) -> dict:
    cert = sol.certificate
    return {
        "objective": _num(sol.objective),
        "light": sorted(v + 1 for v in sol.light_set),
        "orientation": [
            [sol.orientation.tails[e] + 1, sol.orientation.head(g, e) + 1]
            for e in range(g.m)
        ],
        "certificate": {
            "matching_value": _num(cert.matching_value),
            "constant": _num(cert.constant),
            "offset": _num(cert.offset),
        },
    }


def _dump_reduction(g: Graph, weights: VertexWeights | None, path: str) -> None:
    """Writes the gadget graph to path and its bookkeeping to path.json.

    The sidecar uses 1-based vertex labels (matching the graph file) and
    0-based edge indices into that file's edge list.
    """
    aug = eliminate_degree_one(g)
    core, kept = strip_isolated(aug.graph)
    core_weights = None
    if weights is not None:
        units = tuple(
            weights.unit(kept[i]) if kept[i] < g.n else 0 for i in range(core.n)
        )
        core_weights = VertexWeights(units, weights.scale)
    r = build_gprime(core, core_weights)
    Path(path).write_text(render_graph(r.gprime), encoding="utf-8")
    sidecar = {
        "conventions": "vertex labels are 1-based; edge indices are 0-based "
        "positions in the edge list of the graph file",
        "core_vertices": core.n,
        "core_edges": core.m,
        "core_to_input": [v + 1 if v < g.n else 0 for v in kept],
        "connector": [v + 1 for v in r.connector],
        "ports": [[a + 1, b + 1] for a, b in r.ports],
        "connecting_edges": [list(pair) for pair in r.connecting_edges],
        "inner": [[v + 1 for v in vs] for vs in r.inner],
        "gadget_edge_ids": [list(ids) for ids in r.gadget_edge_ids],
        "parity_edge": list(r.parity_edge),
        "side_edges": [list(ids) for ids in r.side_edges],
        "edge_owner": [v + 1 for v in r.edge_owner],
        "edge_weight_units": list(r.edge_weights),
        "weight_scale": weights.scale if weights is not None else 1,
    }
    Path(path + ".json").write_text(
        json.dumps(sidecar, indent=2) + "\n", encoding="utf-8"
    )


def cmd_solve(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    weights = parse_weights(_read(args.weights), g.n) if args.weights else None
    if args.dump_reduction:
        _dump_reduction(g, weights, args.dump_reduction)
    sol, _ = solve_with_stats(g, weights)
    if args.json:
        print(json.dumps(_solution_to_json(g, sol), indent=2))
        return 0
    cert = sol.certificate
    print(f"objective: {_num(sol.objective)}")
    print("light:", " ".join(str(v + 1) for v in sorted(sol.light_set)))
    print(
        f"certificate: matching_value={_num(cert.matching_value)} "
        f"constant={_num(cert.constant)} offset={_num(cert.offset)}"
    )
    for e in range(g.m):
        print(f"{sol.orientation.tails[e] + 1} -> {sol.orientation.head(g, e) + 1}")
    return 0


def _shape_problems(g: Graph, claimed: object) -> list[str]:
    """Structural complaints about a claimed solution document."""
    out = []
    if not isinstance(claimed, dict):
        return ["solution must be a JSON object"]
    for key in ("objective", "light", "orientation", "certificate"):
        if key not in claimed:
            out.append(f"missing key {key!r}")
    if out:
        return out
    if not isinstance(claimed["objective"], (int, float)) or isinstance(
        claimed["objective"], bool
    ):
        out.append("objective must be a number")
    light = claimed["light"]
    if not isinstance(light, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in light
    ):
        out.append("light must be a list of integers")
    ori = claimed["orientation"]
    if not isinstance(ori, list) or len(ori) != g.m:
        out.append(f"orientation must list all {g.m} edges")
    else:
        for e, pair in enumerate(ori):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
            ):
                out.append(f"orientation entry {e} must be a [tail, head] pair")
                break
    cert = claimed["certificate"]
    if not isinstance(cert, dict) or not all(
        k in cert and isinstance(cert[k], (int, float)) and not isinstance(cert[k], bool)
        for k in ("matching_value", "constant", "offset")
    ):
        out.append("certificate must carry numeric matching_value, constant, offset")
    return out


def _content_problems(
    g: Graph, weights: VertexWeights | None, claimed: dict
) -> list[str]:
    """Semantic complaints: the document is well-shaped but wrong."""
    out = []
    tails = []
    for e, (u, v) in enumerate(g.edges):
        a, b = claimed["orientation"][e]
        if {a, b} != {u + 1, v + 1}:
            out.append(
                f"orientation entry {e} is [{a}, {b}], expected the endpoints "
                f"of edge {u + 1} {v + 1}"
            )
            return out
        tails.append(a - 1)
    o = Orientation(tuple(tails))
    light = light_vertices(g, o, 1)
    claimed_light = set(claimed["light"])
    actual_light = {v + 1 for v in light}
    if claimed_light != actual_light:
        extra = sorted(claimed_light - actual_light)
        missing = sorted(actual_light - claimed_light)
        parts = []
        if extra:
            parts.append(f"not light: {extra}")
        if missing:
            parts.append(f"missing: {missing}")
        out.append("light set disagrees with the orientation (" + "; ".join(parts) + ")")
    if weights is None:
        objective: int | Fraction = len(light)
    else:
        objective = weights.as_value(sum(weights.unit(v) for v in light))
    if not _close(claimed["objective"], objective):
        out.append(
            f"objective {claimed['objective']} disagrees with the recomputed "
            f"value {_num(objective)}"
        )
    cert = claimed["certificate"]
    residual = cert["constant"] - cert["matching_value"] + cert["offset"]
    if abs(float(claimed["objective"]) - float(residual)) > 1e-9 * max(
        1.0, abs(float(residual))
    ):
        out.append(
            "certificate identity fails: objective != constant - matching_value + offset"
        )
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    weights = parse_weights(_read(args.weights), g.n) if args.weights else None
    claimed = json.loads(_read(args.solution))
    problems = _shape_problems(g, claimed)
    if not problems:
        problems = _content_problems(g, weights, claimed)
    if problems:
        for p in problems:
            print(f"verify: FAIL: {p}")
        return 1
    if not args.no_oracle:
        try:
            optimum, _ = brute_force_min_light(g, 1, weights)
        except BudgetExceededError as ex:
            print(f"verify: optimality not checked ({ex})")
        else:
            if not _close(claimed["objective"], optimum):
                print(
                    f"verify: FAIL: objective {claimed['objective']} is not optimal "
                    f"(optimum is {_num(optimum)})"
                )
                return 1
    print("verify: OK")
    return 0


def _render_weights(w: VertexWeights) -> str:
    lines = [f"{v + 1} {w.unit(v)}" for v in range(len(w))]
    return "\n".join(lines) + "\n"


def cmd_gen(args: argparse.Namespace) -> int:
    if args.weights_max is not None and not args.weights_out:
        raise ValueError("--weights-max requires --weights-out")
    g = random_graph(args.n, args.p, args.seed)
    text = render_graph(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.weights_max is not None:
        w = random_weights(args.n, args.weights_max, args.seed + 1)
        Path(args.weights_out).write_text(_render_weights(w), encoding="utf-8")
    return 0


def _parse_schedule(text: str) -> list[tuple[int, int]]:
    """Parses "n=50,m=150;n=100,m=300" into [(50, 150), (100, 300)]."""
    entries = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        fields = {}
        for item in part.split(","):
            if "=" not in item:
                raise ValueError(f"schedule entry {part!r} must look like n=50,m=150")
            key, _, val = item.partition("=")
            try:
                fields[key.strip()] = int(val)
            except ValueError:
                raise ValueError(f"schedule value {val!r} is not an integer") from None
        if set(fields) != {"n", "m"}:
            raise ValueError(f"schedule entry {part!r} must set exactly n and m")
        n, m = fields["n"], fields["m"]
        if n < 2 or m < 0:
            raise ValueError(f"schedule entry {part!r} needs n >= 2 and m >= 0")
        entries.append((n, m))
    if not entries:
        raise ValueError("empty schedule")
    return entries


def cmd_bench(args: argparse.Namespace) -> int:
    entries = _parse_schedule(args.schedule)
    for i, (n, m_target) in enumerate(entries):
        pairs = n * (n - 1) // 2
        p = min(1.0, m_target / pairs)
        g = random_graph(n, p, args.seed + i)
        sol, stats = solve_with_stats(g)
        cert = sol.certificate
        if sol.objective != cert.constant - cert.matching_value + cert.offset:
            print(f"bench: certificate identity violated on n={n} m={g.m}")
            return 1
        # reduced sizes must satisfy the closed-form gadget-graph formulas
        core, _ = strip_isolated(eliminate_degree_one(g).graph)
        want_v = 5 * core.m - 2 * core.n
        want_e = sum(
            core.degree(v) ** 2 - core.degree(v) + 1 for v in range(core.n)
        )
        if core.m and (stats.reduced_vertices, stats.reduced_edges) != (want_v, want_e):
            print(f"bench: reduced sizes disagree with the formulas on n={n} m={g.m}")
            return 1
        report = RunReport(
            n=g.n,
            m=g.m,
            degree_one=stats.degree_one,
            isolated=stats.isolated,
            gprime_vertices=stats.reduced_vertices,
            gprime_edges=stats.reduced_edges,
            reduce_seconds=stats.reduce_seconds,
            match_seconds=stats.match_seconds,
            recover_seconds=stats.recover_seconds,
            objective=sol.objective,
            certificate=cert,
        )
        print(report.row())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orientlight",
        description="Orient every edge of a graph so that as few vertices as "
        "possible (or as little total cost as possible) end up with "
        "out-degree at most 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("graph", help="graph file: 'n m' header, then 'u v' lines, 1-based")
    p.add_argument("--weights", help="per-vertex cost file: 'v cost' lines, default 1")
    p.add_argument("--json", action="store_true", help="emit the solution as JSON")
    p.add_argument(
        "--dump-reduction",
        metavar="PATH",
        help="also write the gadget graph to PATH and its bookkeeping to PATH.json",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution document against its instance")
    p.add_argument("graph")
    p.add_argument("solution", help="solution JSON, as produced by solve --json")
    p.add_argument("--weights")
    p.add_argument(
        "--no-oracle",
        action="store_true",
        help="skip the exhaustive optimality check (it is capped by "
        "ORIENT_LIGHT_ORACLE_BUDGET anyway)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a reproducible random instance")
    p.add_argument("n", type=int)
    p.add_argument("p", type=float, help="edge probability in [0, 1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the graph here instead of stdout")
    p.add_argument("--weights-max", type=int, help="also draw integer costs in [0, K]")
    p.add_argument("--weights-out", help="where to write the generated costs")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the solver on random instances")
    p.add_argument(
        "schedule",
        nargs="?",
        default="n=50,m=150;n=100,m=300",
        help="semicolon-separated n=..,m=.. entries",
    )
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
