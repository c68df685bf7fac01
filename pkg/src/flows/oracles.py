"""
Exhaustive ground-truth procedures. Every structural decider in the app is
tested against these; they are deliberately independent of the triangle-tree
machinery and refuse inputs beyond the configured guardrails.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass

import networkx as nx

from flows.conf import guard
from flows.exceptions import DisconnectedGraph, GraphError
from flows.graph import (
    FlowAssignment,
    Multigraph,
    Orientation,
    Z3Boundary,
    boundary_of,
    is_2edge_connected,
    is_connected,
    is_strongly_connected,
    iter_boundaries,
    natural_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleReport:
    verdict: bool
    witness: object = None
    counterexample_boundary: Z3Boundary | None = None
    boundaries_checked: int = 0


def _guard(g: Multigraph, edge_limit=None, vertex_limit=None):
    guard("edges", g.size, "ORACLE_EDGE_LIMIT", edge_limit)
    guard("vertices", g.order, "ORACLE_VERTEX_LIMIT", vertex_limit)


def _edge_order(g: Multigraph) -> list:
    """Edges grouped by their first endpoint in vertex order, so vertices close early."""
    ordered, seen = [], set()
    for v in g.vertices:
        for edge_id in g.incident(v):
            if edge_id not in seen:
                seen.add(edge_id)
                ordered.append(edge_id)
    return ordered


def _reachable(residue: int, remaining: int) -> bool:
    # r free edges change out-in by one of -r, -r+2, ..., r
    if remaining >= 2:
        return True
    if remaining == 1:
        return residue != 0
    return residue == 0


def iter_mod3_orientations(g: Multigraph, beta, edge_limit=None):
    """Every orientation with out-in = beta (mod 3), by backtracking with residue pruning."""
    guard("edges", g.size, "ORACLE_EDGE_LIMIT", edge_limit)
    target = {v: beta[v] % 3 for v in g.vertices}
    if sum(target.values()) % 3:
        return
    net = Counter()
    remaining = {v: g.degree(v) for v in g.vertices}
    if not all(_reachable(target[v], remaining[v]) for v in g.vertices):
        return
    edges = _edge_order(g)
    arcs = {}

    def assign(index):
        if index == len(edges):
            yield Orientation(arcs)
            return
        edge_id = edges[index]
        u, v = g.endpoints(edge_id)
        remaining[u] -= 1
        remaining[v] -= 1
        for tail, head in ((u, v), (v, u)):
            net[tail] += 1
            net[head] -= 1
            if _reachable((target[tail] - net[tail]) % 3, remaining[tail]) and _reachable(
                (target[head] - net[head]) % 3, remaining[head]
            ):
                arcs[edge_id] = (tail, head)
                yield from assign(index + 1)
                del arcs[edge_id]
            net[tail] -= 1
            net[head] += 1
        remaining[u] += 1
        remaining[v] += 1

    yield from assign(0)


def mod3_orient(g: Multigraph, beta, edge_limit=None) -> Orientation | None:
    return next(iter_mod3_orientations(g, beta, edge_limit=edge_limit), None)


def achievable_boundaries(g: Multigraph, edge_limit=None, vertex_limit=None) -> set:
    """Boundary tuples (vertex order) realized by at least one orientation."""
    _guard(g, edge_limit, vertex_limit)
    index = {v: i for i, v in enumerate(g.vertices)}
    states = {(0,) * g.order}
    for u, v in g.edges.values():
        i, j = index[u], index[v]
        grown = set()
        for state in states:
            for sign in (1, -1):
                row = list(state)
                row[i] = (row[i] + sign) % 3
                row[j] = (row[j] - sign) % 3
                grown.add(tuple(row))
        states = grown
    return states


def z3_connected(g: Multigraph, edge_limit=None, vertex_limit=None) -> OracleReport:
    """Z3-connectivity: every Z3-boundary is realized by some orientation."""
    if g.order == 0:
        raise GraphError("z3_connected needs at least one vertex")
    states = achievable_boundaries(g, edge_limit, vertex_limit)
    checked = 0
    for beta in iter_boundaries(g.vertices):
        checked += 1
        if beta.as_tuple() not in states:
            logger.debug("boundary %s is not realizable", dict(beta))
            return OracleReport(False, counterexample_boundary=beta, boundaries_checked=checked)
    witness = mod3_orient(g, Z3Boundary.zero(g.vertices), edge_limit=edge_limit)
    return OracleReport(True, witness=witness, boundaries_checked=checked)


def _strong_orientation(g: Multigraph, beta, edge_limit=None) -> Orientation | None:
    for d in iter_mod3_orientations(g, beta, edge_limit=edge_limit):
        if is_strongly_connected(g, d):
            return d
    return None


def _require_connected(g: Multigraph):
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")


def s3_member(g: Multigraph, edge_limit=None, vertex_limit=None) -> OracleReport:
    """Every Z3-boundary is realized by a strongly connected orientation."""
    _require_connected(g)
    _guard(g, edge_limit, vertex_limit)
    if g.order == 1:
        return OracleReport(True, witness=Orientation({}), boundaries_checked=1)
    witness = None
    checked = 0
    bridgeless = is_2edge_connected(g)
    for beta in iter_boundaries(g.vertices):
        checked += 1
        found = _strong_orientation(g, beta, edge_limit) if bridgeless else None
        if found is None:
            return OracleReport(False, counterexample_boundary=beta, boundaries_checked=checked)
        if witness is None:
            witness = found
    return OracleReport(True, witness=witness, boundaries_checked=checked)


def flow_index_lt3(g: Multigraph, edge_limit=None) -> OracleReport:
    """A strongly connected mod 3-orientation exists."""
    _require_connected(g)
    guard("edges", g.size, "ORACLE_EDGE_LIMIT", edge_limit)
    zero = Z3Boundary.zero(g.vertices)
    if g.order == 1:
        return OracleReport(True, witness=Orientation({}), boundaries_checked=1)
    found = _strong_orientation(g, zero, edge_limit) if is_2edge_connected(g) else None
    if found is None:
        return OracleReport(False, counterexample_boundary=zero, boundaries_checked=1)
    return OracleReport(True, witness=found, boundaries_checked=1)


# -- nowhere-zero flows --------------------------------------------------------------


def _integer_three_flow(g: Multigraph, d: Orientation) -> FlowAssignment | None:
    """
    Turn a mod 3-orientation into a nowhere-zero 3-flow: start from value 1 on
    every arc and send a {0,1} circulation correction of -3 along a set of arcs.
    """
    excess = d.imbalance()
    network = nx.DiGraph()
    network.add_nodes_from(g.vertices, demand=0)
    for v in g.vertices:
        network.nodes[v]["demand"] = -(excess[v] // 3)
    by_arc = defaultdict(list)
    for edge_id, arc in d.items():
        by_arc[arc].append(edge_id)
    for (tail, head), ids in by_arc.items():
        network.add_edge(tail, head, capacity=len(ids), weight=0)
    try:
        routed = nx.min_cost_flow(network)
    except nx.NetworkXUnfeasible:
        return None

    arcs, values = {}, {}
    for (tail, head), ids in by_arc.items():
        shifted = routed[tail][head]
        for position, edge_id in enumerate(sorted(ids, key=natural_key)):
            if position < shifted:
                arcs[edge_id], values[edge_id] = (head, tail), 2
            else:
                arcs[edge_id], values[edge_id] = (tail, head), 1
    return FlowAssignment(Orientation(arcs), values, 3)


def _closing_order(g: Multigraph) -> list:
    """Edges ordered vertex by vertex, always moving to the vertex with the fewest unassigned edges left."""
    ordered, seen = [], set()
    assigned = Counter()
    pending = set(g.vertices)
    while pending:
        v = min(pending, key=lambda w: (g.degree(w) - assigned[w], -assigned[w], natural_key(w)))
        pending.discard(v)
        for edge_id in g.incident(v):
            if edge_id not in seen:
                seen.add(edge_id)
                ordered.append(edge_id)
                for end in g.endpoints(edge_id):
                    assigned[end] += 1
    return ordered


def _cancellable(excess: int, remaining: int, k: int) -> bool:
    # r free edges carry values in +-1..+-(k-1); for k = 2 only the parity of r is reachable
    if remaining == 0:
        return excess == 0
    if abs(excess) > remaining * (k - 1):
        return False
    if k == 2:
        return (excess - remaining) % 2 == 0
    return remaining > 1 or excess != 0


def _general_flow(g: Multigraph, k: int) -> FlowAssignment | None:
    """Signed values edge by edge, pruning as soon as a vertex cannot balance."""
    if g.size and nx.has_bridges(g.to_networkx()):
        return None
    remaining = {v: g.degree(v) for v in g.vertices}
    if not all(_cancellable(0, remaining[v], k) for v in g.vertices):
        return None
    edges = _closing_order(g)
    choices = [value for magnitude in range(1, k) for value in (magnitude, -magnitude)]
    excess = Counter()
    signed = {}

    def assign(index):
        if index == len(edges):
            return True
        edge_id = edges[index]
        u, v = g.endpoints(edge_id)
        remaining[u] -= 1
        remaining[v] -= 1
        for value in choices:
            excess[u] += value
            excess[v] -= value
            if _cancellable(excess[u], remaining[u], k) and _cancellable(excess[v], remaining[v], k):
                signed[edge_id] = value
                if assign(index + 1):
                    return True
                del signed[edge_id]
            excess[u] -= value
            excess[v] += value
        remaining[u] += 1
        remaining[v] += 1
        return False

    if not assign(0):
        return None
    arcs, values = {}, {}
    for edge_id, value in signed.items():
        u, v = g.endpoints(edge_id)
        arcs[edge_id] = (u, v) if value > 0 else (v, u)
        values[edge_id] = abs(value)
    return FlowAssignment(Orientation(arcs), values, k)


def has_nzf(g: Multigraph, k: int, edge_limit=None) -> FlowAssignment | None:
    """A nowhere-zero k-flow, or None."""
    if k < 2:
        raise GraphError("a nowhere-zero flow needs k >= 2")
    guard("edges", g.size, "ORACLE_EDGE_LIMIT", edge_limit)
    if k == 3:
        for d in iter_mod3_orientations(g, Z3Boundary.zero(g.vertices), edge_limit=edge_limit):
            flow = _integer_three_flow(g, d)
            if flow is not None:
                return flow
            logger.debug("mod 3-orientation without an integer correction; trying the next one")
        return None
    return _general_flow(g, k)


# -- colorings -----------------------------------------------------------------------


def vertex_3_colorable(g: Multigraph, colors: int = 3) -> dict | None:
    order = sorted(g.vertices, key=lambda v: (-len(g.neighbors(v)), natural_key(v)))
    coloring = {}

    def place(index):
        if index == len(order):
            return True
        v = order[index]
        used = {coloring[w] for w in g.neighbors(v) if w in coloring}
        for color in range(colors):
            if color not in used:
                coloring[v] = color
                if place(index + 1):
                    return True
                del coloring[v]
        return False

    return dict(coloring) if place(0) else None


# -- witness checkers --------------------------------------------------------------


def verify_orientation(g: Multigraph, d: Orientation, beta=None, strong=False) -> bool:
    if not isinstance(d, Orientation) or not d.orients(g):
        return False
    if beta is not None and boundary_of(g, d) != Z3Boundary({v: beta[v] for v in g.vertices}):
        return False
    return not strong or is_strongly_connected(g, d)


def verify_flow(g: Multigraph, f: FlowAssignment, k: int | None = None) -> bool:
    k = f.k if k is None else k
    if not f.orientation.orients(g):
        return False
    if any(not 0 < value < k for value in f.values.values()):
        return False
    net = f.net_outflow()
    return all(net[v] == 0 for v in g.vertices)


def verify_coloring(g: Multigraph, coloring: dict, colors: int = 3) -> bool:
    if set(coloring) != set(g.vertices):
        return False
    if any(c not in range(colors) for c in coloring.values()):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges.values())
