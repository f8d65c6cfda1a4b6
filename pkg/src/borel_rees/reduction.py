"""Marked binomials, one-step reductions, and directed reduction graphs.

The engine is generic over the three monomial kinds (ambient Monomial,
PresMonomial, MixedMonomial): a rule applies to a vertex when its lead
divides the vertex, and the successor swaps the lead for the trail. Graphs
carry sink/cycle analysis and the longest-path invariant used to certify
that a marked collection rewrites Noetherianly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .monomial import Monomial
from .presentation import MixedMonomial, PresMonomial

DEFAULT_STEP_LIMIT = 10_000
STEP_LIMIT_ENV = "BOREL_REES_STEP_LIMIT"


class ReductionLimitExceeded(RuntimeError):
    """Rewriting did not terminate within the step budget (cycle suspected)."""


class GraphShapeError(ValueError):
    """An invariant required the graph to be acyclic with a unique sink."""


@dataclass(frozen=True)
class MarkedBinomial:
    """An ordered pair (lead, trail) of equal-image monomials; lead is marked."""

    lead: Monomial | PresMonomial | MixedMonomial
    trail: Monomial | PresMonomial | MixedMonomial
    source: str = ""

    def __post_init__(self):
        if type(self.lead) is not type(self.trail):
            raise TypeError("lead and trail must be the same monomial kind")
        if self.lead == self.trail:
            raise ValueError("lead equals trail")

    def label(self, style: str = "auto", r: int | None = None) -> str:
        lead = _label(self.lead, style, r)
        trail = _label(self.trail, style, r)
        return f"{lead} -> {trail}"

    def __str__(self) -> str:
        return self.label()


def _label(v, style="auto", r=None) -> str:
    return v.label(style, r) if hasattr(v, "label") else str(v)


def lift_to_mixed(rules: Sequence[MarkedBinomial], n: int) -> list[MarkedBinomial]:
    """Embed pure presentation binomials into the mixed ring (x-part 1)."""
    one = Monomial.one(n)
    out = []
    for g in rules:
        if isinstance(g.lead, PresMonomial):
            out.append(
                MarkedBinomial(
                    MixedMonomial(one, g.lead),
                    MixedMonomial(one, g.trail),
                    g.source,
                )
            )
        else:
            out.append(g)
    return out


def applicable_reductions(v, rules: Sequence[MarkedBinomial]):
    """All one-step reductions of v: (successor, rule) per applicable rule."""
    out = []
    for g in rules:
        if g.lead.divides(v):
            out.append((v.quotient(g.lead) * g.trail, g))
    return out


@dataclass
class ReductionGraph:
    """Directed reduction graph on a set of monomial vertices.

    Edges with identical endpoints arising from distinct rules are collapsed
    into one edge carrying the full rule tuple. sinks/has_cycle are computed
    at construction and recomputable via analyze().
    """

    vertices: list
    index: dict = field(repr=False)
    edges: list[list[tuple[int, tuple[MarkedBinomial, ...]]]]
    sinks: list = None
    has_cycle: bool = None

    def successors(self, i: int) -> list[int]:
        return [j for j, _ in self.edges[i]]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, outs in enumerate(self.edges) for j, _ in outs}

    def num_edges(self) -> int:
        return sum(len(outs) for outs in self.edges)

    def vertex_index(self, v) -> int:
        return self.index[v]


def build_graph(
    rules: Sequence[MarkedBinomial],
    start=None,
    fiber: Sequence | None = None,
) -> ReductionGraph:
    """Reduction graph from a start vertex (closure) or a whole fiber.

    With `start`, vertices are everything reachable by one-step reductions.
    With `fiber`, the vertex set is fixed and all reduction edges are added;
    when the rules preserve the toric image the two constructions agree on
    fibers, since reductions cannot leave the fiber.
    """
    if (start is None) == (fiber is None):
        raise ValueError("give exactly one of start or fiber")
    if start is not None:
        vertices = [start]
        index = {start: 0}
        edges: list[list[tuple[int, tuple[MarkedBinomial, ...]]]] = [[]]
        todo = [0]
        while todo:
            i = todo.pop()
            collapsed: dict[int, list[MarkedBinomial]] = {}
            for succ, rule in applicable_reductions(vertices[i], rules):
                j = index.get(succ)
                if j is None:
                    j = len(vertices)
                    vertices.append(succ)
                    index[succ] = j
                    edges.append([])
                    todo.append(j)
                collapsed.setdefault(j, []).append(rule)
            edges[i] = [(j, tuple(collapsed[j])) for j in sorted(collapsed)]
    else:
        vertices = list(fiber)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertices in fiber")
        edges = []
        for v in vertices:
            collapsed = {}
            for succ, rule in applicable_reductions(v, rules):
                j = index.get(succ)
                if j is None:
                    raise ValueError(
                        f"reduction left the fiber: {v} -> {succ}"
                    )
                collapsed.setdefault(j, []).append(rule)
            edges.append([(j, tuple(collapsed[j])) for j in sorted(collapsed)])
    graph = ReductionGraph(vertices=vertices, index=index, edges=edges)
    analyze(graph)
    return graph


def analyze(graph: ReductionGraph) -> dict:
    """Recompute sinks (out-degree zero) and cycle existence (iterative DFS)."""
    graph.sinks = [v for v, outs in zip(graph.vertices, graph.edges) if not outs]
    color = [0] * len(graph.vertices)  # 0 white, 1 on stack, 2 done
    has_cycle = False
    for root in range(len(graph.vertices)):
        if color[root] or has_cycle:
            continue
        stack = [(root, 0)]
        color[root] = 1
        while stack:
            node, ptr = stack[-1]
            if ptr < len(graph.edges[node]):
                stack[-1] = (node, ptr + 1)
                child = graph.edges[node][ptr][0]
                if color[child] == 1:
                    has_cycle = True
                    break
                if color[child] == 0:
                    color[child] = 1
                    stack.append((child, 0))
            else:
                color[node] = 2
                stack.pop()
        if has_cycle:
            break
    graph.has_cycle = has_cycle
    return {"sinks": graph.sinks, "has_cycle": has_cycle}


def ell_max(graph: ReductionGraph, v) -> int:
    """Longest directed path length from v to the unique sink.

    Memoized longest-path on the DAG; every maximal path ends at the sink, so
    this equals the longest path out of v.
    """
    if graph.has_cycle:
        raise GraphShapeError("longest path undefined on a cyclic graph")
    if len(graph.sinks) != 1:
        raise GraphShapeError(f"need a unique sink, found {len(graph.sinks)}")
    memo: dict[int, int] = {}
    root = graph.vertex_index(v)
    stack = [(root, False)]
    while stack:
        i, expanded = stack.pop()
        if not expanded and i in memo:
            continue
        succ = [j for j, _ in graph.edges[i]]
        if expanded:
            memo[i] = 1 + max(memo[j] for j in succ) if succ else 0
        else:
            stack.append((i, True))
            stack.extend((j, False) for j in succ if j not in memo)
    return memo[root]


def o_invariant(v: MixedMonomial) -> int:
    """Iterated cumulative degree of the content against the x-part.

    For each variable occurrence x_i of the x-part (with multiplicity), counts
    the content exponents strictly beyond position i, summed over occurrences.
    """
    alpha = [0] * v.x_part.n
    for f in v.t_part.factors:
        for k, e in enumerate(f.generator.exps):
            alpha[k] += e
    suffix = [0] * (len(alpha) + 1)
    for k in range(len(alpha) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + alpha[k]
    total = 0
    for i, e in enumerate(v.x_part.exps):
        total += e * suffix[i + 1]
    return total


def resolve_step_limit(step_limit: int | None = None) -> int:
    if step_limit is not None:
        return step_limit
    env = os.environ.get(STEP_LIMIT_ENV)
    if env:
        return int(env)
    return DEFAULT_STEP_LIMIT


def normal_form(v, rules: Sequence[MarkedBinomial], step_limit: int | None = None):
    """Rewrite v by the first applicable rule until none applies.

    Rules are scanned in their given (fixed) order, so the path is
    deterministic; when the collection is a verified Groebner basis the result
    is the unique sink regardless of scan order.
    """
    limit = resolve_step_limit(step_limit)
    current = v
    for _ in range(limit):
        for g in rules:
            if g.lead.divides(current):
                current = current.quotient(g.lead) * g.trail
                break
        else:
            return current
    raise ReductionLimitExceeded(
        f"no normal form within {limit} steps; collection may not terminate"
    )


def default_step_limit_for(fiber_size: int) -> int:
    return fiber_size * fiber_size + 16


def to_dot(
    graph: ReductionGraph,
    name: str = "fiber",
    label: Callable | None = None,
    r: int | None = None,
) -> str:
    """Graphviz DOT text: sink highlighted, edges labeled with their rules."""
    lab = label or (lambda v: _label(v, "auto", r))
    lines = [f'digraph "{name}" {{', "  rankdir=TB;"]
    for i, v in enumerate(graph.vertices):
        sink = ' style=filled fillcolor="lightblue"' if not graph.edges[i] else ""
        lines.append(f'  v{i} [label="{lab(v)}"{sink}];')
    for i, outs in enumerate(graph.edges):
        for j, rules in outs:
            rule_text = "; ".join(g.label(r=r) for g in rules)
            lines.append(f'  v{i} -> v{j} [label="{rule_text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
