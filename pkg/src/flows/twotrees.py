"""
Graphs with two edge-disjoint spanning triangle-trees.

The edge set is split into a spanning Z3-connected part and a spanning
2-edge-connected part; a strongly connected orientation of the second part
plus a boundary-correcting mod 3-orientation of the first realizes any
Z3-boundary with a strongly connected orientation.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations

from flows.certify import Z3Proof, verify_z3proof, z3_prove
from flows.conf import guard, triflow_setting
from flows.exceptions import NotTwoEdgeConnected, OracleTooLarge, PartitionError
from flows.graph import (
    Multigraph,
    Orientation,
    Z3Boundary,
    boundary_of,
    is_2edge_connected,
    iter_boundaries,
    natural_key,
)
from flows.oracles import mod3_orient, verify_orientation, z3_connected
from flows.tritree import (
    TriTreeSeq,
    find_two_disjoint_spanning_tritrees,
    iter_removable_sets,
    leaf_triangle,
    remove_leaf,
    removable_max,
    validate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpanningPartition:
    e1: frozenset
    e2: frozenset
    z3_proof: Z3Proof | None = None
    oracle_checked: bool = False

    def parts(self, g: Multigraph) -> tuple:
        return g.edge_subgraph(self.e1), g.edge_subgraph(self.e2)


def check_partition(g: Multigraph, part: SpanningPartition) -> bool:
    """Disjoint cover of E(g), 2-edge-connected second part, Z3-connected first part."""
    if part.e1 & part.e2 or part.e1 | part.e2 != set(g.edge_ids):
        return False
    first, second = part.parts(g)
    if not is_2edge_connected(second):
        return False
    if part.z3_proof is not None:
        return verify_z3proof(first, part.z3_proof)
    return part.oracle_checked and z3_connected(first).verdict


# -- ear decompositions ------------------------------------------------------------


def _dfs(g: Multigraph, root):
    parent_edge = {root: None}
    order = [root]
    stack = [(root, iter(g.incident(root)))]
    while stack:
        v, pending = stack[-1]
        for edge_id in pending:
            if edge_id == parent_edge[v]:
                continue
            w = g.other_end(edge_id, v)
            if w not in parent_edge:
                parent_edge[w] = edge_id
                order.append(w)
                stack.append((w, iter(g.incident(w))))
                break
        else:
            stack.pop()
    return order, parent_edge


def ear_decomposition(g: Multigraph) -> list:
    """
    Chains of a depth-first search from the least vertex, each a directed
    list of ``(edge_id, tail, head)``. The first ear is a cycle, every later
    ear a path or cycle hanging off earlier ones.
    """
    if g.order == 0:
        raise NotTwoEdgeConnected("empty graph")
    root = g.vertices[0]
    order, parent_edge = _dfs(g, root)
    if len(order) != g.order:
        raise NotTwoEdgeConnected("graph is not connected")
    index = {v: i for i, v in enumerate(order)}
    tree = {e for e in parent_edge.values() if e is not None}

    ears, visited, covered = [], set(), set()
    for v in order:
        visited.add(v)
        for edge_id in g.incident(v):
            w = g.other_end(edge_id, v)
            if edge_id in tree or index[w] < index[v]:
                continue
            climb = []
            x = w
            while x not in visited:
                visited.add(x)
                up = parent_edge[x]
                climb.append((up, g.other_end(up, x), x))
                x = g.other_end(up, x)
            ear = list(reversed(climb)) + [(edge_id, w, v)]
            covered.update(step[0] for step in ear)
            ears.append(ear)

    missing = set(g.edge_ids) - covered
    if missing:
        raise NotTwoEdgeConnected(f"cut edge(s) {sorted(missing, key=natural_key)}")
    return ears


def robbins_orient(g: Multigraph) -> Orientation:
    """Strongly connected orientation of a 2-edge-connected graph."""
    ears = ear_decomposition(g)
    return Orientation({edge_id: (tail, head) for ear in ears for edge_id, tail, head in ear})


# -- partitions --------------------------------------------------------------------


def _prove_part(g: Multigraph, e1):
    """(proof, oracle verdict) for the spanning part on ``e1``; the oracle screens out hopeless parts."""
    first = g.edge_subgraph(e1)
    try:
        verdict = z3_connected(first).verdict
    except OracleTooLarge:
        verdict = None
    if verdict is False:
        return None, False
    return z3_prove(first), bool(verdict)


def _split(g: Multigraph, tree: TriTreeSeq, removable) -> tuple:
    e2 = frozenset(tree.edge_ids) - frozenset(removable)
    return frozenset(g.edge_ids) - e2, e2


def partition(g: Multigraph, t1: TriTreeSeq, t2: TriTreeSeq, limit=None, exhaustive=True) -> SpanningPartition | None:
    """
    Split E(g) into a Z3-connected spanning part e1 and a 2-edge-connected
    spanning part e2 = E(T) - R for a removable set R of one tree. Falls back
    from the maximum removable set to every maximal one, then to a bounded
    exhaustive search.
    """
    if g.order < 4:
        raise PartitionError("partitions need at least 4 vertices")
    if not (validate(g, t1, spanning=True) and validate(g, t2, spanning=True)):
        raise PartitionError("both triangle-trees must span the graph")
    if set(t1.edge_ids) & set(t2.edge_ids):
        raise PartitionError("the triangle-trees share edges")

    r1, r2 = removable_max(t1), removable_max(t2)
    ordered = (t1, t2) if len(r1) >= len(r2) else (t2, t1)
    candidates = [(ordered[0], removable_max(ordered[0]))]
    for tree in ordered:
        candidates.extend((tree, r) for r in iter_removable_sets(tree) if (tree, r) != candidates[0])

    fallback = None
    for tree, removable in candidates:
        e1, e2 = _split(g, tree, removable)
        proof, confirmed = _prove_part(g, e1)
        if proof is not None:
            return SpanningPartition(e1, e2, proof)
        if confirmed and fallback is None:
            fallback = SpanningPartition(e1, e2, None, oracle_checked=True)
    if fallback is not None:
        logger.info("partition accepted on the oracle verdict, no proof found")
        return fallback

    if not exhaustive:
        return None
    logger.info("removable-set partitions failed; searching exhaustively")
    return _exhaustive_partition(g, limit)


def _exhaustive_partition(g: Multigraph, limit=None) -> SpanningPartition | None:
    budget = triflow_setting("PARTITION_SEARCH_LIMIT", limit)
    edges = g.edge_ids
    examined = 0
    for size in range(g.order, g.size - g.order + 1):
        for chosen in combinations(edges, size):
            examined += 1
            if examined > budget:
                logger.warning("partition search budget of %d candidates exhausted", budget)
                return None
            e2 = frozenset(chosen)
            if not is_2edge_connected(g.edge_subgraph(e2)):
                continue
            e1 = frozenset(edges) - e2
            proof, confirmed = _prove_part(g, e1)
            if proof is not None or confirmed:
                return SpanningPartition(e1, e2, proof, proof is None)
    return None


def strong_mod3_orient(g: Multigraph, beta, part: SpanningPartition) -> Orientation:
    """D2 strongly connected on e2, D1 on e1 correcting the boundary to ``beta``."""
    if part.e1 & part.e2 or part.e1 | part.e2 != set(g.edge_ids):
        raise PartitionError("partition does not split the edge set")
    first, second = part.parts(g)
    try:
        d2 = robbins_orient(second)
    except NotTwoEdgeConnected as exc:
        raise PartitionError(f"second part is not 2-edge-connected: {exc}") from exc
    target = Z3Boundary({v: beta[v] for v in g.vertices})
    d1 = mod3_orient(first, target - boundary_of(second, d2))
    if d1 is None:
        raise PartitionError("first part does not realize the corrected boundary")
    return d1.union(d2)


# -- S3 certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CommonLeafReduction:
    """G' = G - x + yz for a common leaf ``x`` of both trees, ``yz`` its triangle in the first."""

    x: str
    y: str
    z: str
    new_edge: str

    def apply(self, g: Multigraph) -> Multigraph:
        reduced = g.without_vertices((self.x,))
        return reduced.with_edges({self.new_edge: (self.y, self.z)})


@dataclass(frozen=True)
class S3Certificate:
    partition: SpanningPartition
    reductions: tuple = ()
    summary: dict = field(default_factory=dict, hash=False)
    trees: tuple = ()


def _spoke_directions(g: Multigraph, r: CommonLeafReduction, residue: int) -> dict:
    """Orient the edges at x other than xy, xz so that x's out-in is ``residue`` mod 3."""
    first_y = g.edges_between(r.x, r.y)[0]
    first_z = g.edges_between(r.x, r.z)[0]
    spokes = [e for e in g.incident(r.x) if e not in (first_y, first_z)]
    count = len(spokes)
    outward = next(k for k in range(count + 1) if (2 * k - count) % 3 == residue % 3)
    return {
        e: (r.x, g.other_end(e, r.x)) if i < outward else (g.other_end(e, r.x), r.x)
        for i, e in enumerate(spokes)
    }


def lift_strong_orientation(g: Multigraph, r: CommonLeafReduction, beta, orient_reduced) -> Orientation:
    """
    Orientation of g for ``beta`` from one of G' = G - x + yz: yz becomes the
    directed path through x, the other edges at x fix x's boundary.
    """
    spokes = _spoke_directions(g, r, beta[r.x])
    shifted = {v: beta[v] for v in g.vertices if v != r.x}
    for tail, head in spokes.values():
        other = head if tail == r.x else tail
        shifted[other] += 1 if other == head else -1
    reduced = r.apply(g)
    inner = orient_reduced(reduced, Z3Boundary(shifted))

    tail, head = inner[r.new_edge]
    through_tail = g.edges_between(r.x, tail)[0]
    through_head = g.edges_between(r.x, head)[0]
    arcs = {e: arc for e, arc in inner.items() if e != r.new_edge}
    arcs[through_tail] = (tail, r.x)
    arcs[through_head] = (r.x, head)
    arcs.update(spokes)
    return Orientation(arcs)


def orient_with_certificate(g: Multigraph, beta, cert: S3Certificate, level: int = 0) -> Orientation:
    if level == len(cert.reductions):
        return strong_mod3_orient(g, beta, cert.partition)
    reduction = cert.reductions[level]
    return lift_strong_orientation(
        g, reduction, beta, lambda reduced, shifted: orient_with_certificate(reduced, shifted, cert, level + 1)
    )


def _certify_partition(g: Multigraph, t1: TriTreeSeq, t2: TriTreeSeq, limit=None):
    part = partition(g, t1, t2, limit=limit, exhaustive=False)
    if part is not None:
        return part, ()
    common = sorted(t1.leaves() & t2.leaves(), key=natural_key)
    if not common or g.order <= 4:
        return _exhaustive_partition(g, limit), ()
    x = common[0]
    y, z = leaf_triangle(t1, x)
    reduction = CommonLeafReduction(x, y, z, g.fresh_edge_id())
    logger.info("reducing at common leaf %s (triangle %s%s%s)", x, x, y, z)
    reduced = reduction.apply(g)
    inner, deeper = _certify_partition(reduced, remove_leaf(t1, x), remove_leaf(t2, x), limit)
    if inner is None:
        return _exhaustive_partition(g, limit), ()
    return inner, (reduction,) + deeper


def check_all_boundaries(g: Multigraph, cert: S3Certificate) -> dict:
    guard("vertices", g.order, "ORACLE_VERTEX_LIMIT")
    checked, ok = 0, True
    for beta in iter_boundaries(g.vertices):
        checked += 1
        d = orient_with_certificate(g, beta, cert)
        if not verify_orientation(g, d, beta, strong=True):
            logger.error("boundary %s failed the strong orientation check", dict(beta))
            ok = False
    return {"boundaries_checked": checked, "all_ok": ok}


def certify_s3(g: Multigraph, limit=None) -> S3Certificate | None:
    """
    Constructive S3 membership for graphs with two edge-disjoint spanning
    triangle-trees on at least 4 vertices. None when no such pair exists.
    """
    if g.order < 4:
        return None
    trees = find_two_disjoint_spanning_tritrees(g)
    if trees is None:
        return None
    part, reductions = _certify_partition(g, *trees, limit=limit)
    if part is None:
        logger.warning("no partition found for a graph with two disjoint triangle-trees")
        return None
    cert = S3Certificate(part, reductions, {}, trees)
    summary = check_all_boundaries(g, cert)
    summary["first_part"] = "oracle" if part.oracle_checked else "proof"
    if part.oracle_checked:
        logger.info("s3 certificate rests on an oracle-checked first part")
    return S3Certificate(part, reductions, summary, trees)
