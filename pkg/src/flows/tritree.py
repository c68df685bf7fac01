"""
Triangle-trees (2-trees): construction sequences, leaves, triangle-paths,
removable edge sets, spanning triangle-tree search and the standard instance
families (wheels, fans, books, crystals, bull-grown graphs, random 2-trees).
"""

import logging
import random
from dataclasses import dataclass, field

import networkx as nx

from flows.conf import guard
from flows.exceptions import TriTreeError
from flows.graph import Multigraph, is_2edge_connected, natural_key

logger = logging.getLogger(__name__)


def _pair(u, v):
    return (u, v) if natural_key(u) <= natural_key(v) else (v, u)


@dataclass(frozen=True)
class TriTreeSeq:
    """
    A triangle-tree built from a base triangle by attaching each new vertex to
    both ends of an existing tree edge.

    ``attach`` holds ``(new, y, z)`` triples; ``edge_ids`` lists the realizing
    edge ids in construction order: x1x2, x1x3, x2x3, then new-y, new-z per
    attachment.
    """

    base: tuple
    attach: tuple = ()
    edge_ids: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "attach", tuple(tuple(step) for step in self.attach))
        edge_ids = tuple(self.edge_ids) or tuple(f"e{i}" for i in range(3 + 2 * len(self.attach)))
        object.__setattr__(self, "edge_ids", edge_ids)

    @property
    def vertices(self) -> tuple:
        return self.base + tuple(step[0] for step in self.attach)

    @property
    def order(self) -> int:
        return len(self.base) + len(self.attach)

    def pairs(self) -> list:
        x1, x2, x3 = self.base
        out = [(x1, x2), (x1, x3), (x2, x3)]
        for new, y, z in self.attach:
            out.extend([(new, y), (new, z)])
        return out

    def edge_map(self) -> dict:
        return dict(zip(self.edge_ids, self.pairs()))

    def triangles(self) -> list:
        return [self.base] + [(y, z, new) for new, y, z in self.attach]

    def is_wellformed(self) -> bool:
        if len(self.base) != 3 or len(set(self.base)) != 3:
            return False
        if len(self.edge_ids) != 3 + 2 * len(self.attach) or len(set(self.edge_ids)) != len(self.edge_ids):
            return False
        placed = set(self.base)
        tree_pairs = {frozenset(p) for p in self.pairs()[:3]}
        for new, y, z in self.attach:
            if new in placed or frozenset((y, z)) not in tree_pairs:
                return False
            placed.add(new)
            tree_pairs.update((frozenset((new, y)), frozenset((new, z))))
        return True

    def as_graph(self) -> Multigraph:
        if not self.is_wellformed():
            raise TriTreeError("malformed triangle-tree sequence")
        return Multigraph(self.vertices, self.edge_map())

    def degree(self, v) -> int:
        return sum(v in pair for pair in self.pairs())

    def leaves(self) -> frozenset:
        return frozenset(v for v in self.vertices if self.degree(v) == 2)

    def edge_between(self, u, v):
        for edge_id, pair in self.edge_map().items():
            if set(pair) == {u, v}:
                return edge_id
        return None


def leaves(t: TriTreeSeq) -> frozenset:
    return t.leaves()


def validate(g: Multigraph, t: TriTreeSeq, spanning=False) -> bool:
    if not t.is_wellformed():
        return False
    for edge_id, (u, v) in t.edge_map().items():
        if not g.has_edge(edge_id) or set(g.endpoints(edge_id)) != {u, v}:
            return False
    if spanning and set(t.vertices) != set(g.vertices):
        return False
    return True


def is_triangle_path(t: TriTreeSeq) -> bool:
    return t.is_wellformed() and (t.order == 3 or len(t.leaves()) == 2)


# -- spanning triangle-tree search ---------------------------------------------


def triangles_of(g: Multigraph) -> list:
    """Vertex triples spanning a triangle of ``g``, in natural order."""
    return _triangles(g, {v: set(g.neighbors(v)) for v in g.vertices})


def _triangles(g: Multigraph, adjacency: dict) -> list:
    found = []
    for u in g.vertices:
        for v in sorted(adjacency[u], key=natural_key):
            if natural_key(v) <= natural_key(u):
                continue
            for w in sorted(adjacency[v], key=natural_key):
                if natural_key(w) > natural_key(v) and w in adjacency[u]:
                    found.append((u, v, w))
    return found


def _realize(g: Multigraph, base, attach) -> TriTreeSeq:
    seq = TriTreeSeq(base, attach)
    return TriTreeSeq(base, attach, tuple(g.edges_between(u, v)[0] for u, v in seq.pairs()))


def iter_spanning_tritrees(g: Multigraph, limit=None):
    """
    Every spanning triangle-tree of ``g`` once per underlying vertex-pair set,
    realized on the least edge id of each pair. Exponential in the worst case.
    """
    guard("vertices", g.order, "TRITREE_VERTEX_LIMIT", limit)
    n = g.order
    if n < 3 or len(g.pair_counts()) < 2 * n - 3:
        return
    adjacency = {v: set(g.neighbors(v)) for v in g.vertices}
    if any(len(adjacency[v]) < 2 for v in g.vertices):
        return

    seen = set()
    explored = 0

    def grow(base, attach, placed, tree_pairs):
        nonlocal explored
        key = frozenset(tree_pairs)
        if key in seen:
            return
        seen.add(key)
        explored += 1
        if len(placed) == n:
            yield _realize(g, base, attach)
            return
        for x in g.vertices:
            if x in placed:
                continue
            for y, z in tree_pairs:
                if y in adjacency[x] and z in adjacency[x]:
                    yield from grow(
                        base,
                        attach + ((x, y, z),),
                        placed | {x},
                        tree_pairs + [_pair(x, y), _pair(x, z)],
                    )

    for u, v, w in _triangles(g, adjacency):
        yield from grow((u, v, w), (), frozenset((u, v, w)), [_pair(u, v), _pair(u, w), _pair(v, w)])
    logger.debug("spanning triangle-tree search explored %d partial trees", explored)


def find_spanning_tritree(g: Multigraph, limit=None):
    return next(iter_spanning_tritrees(g, limit=limit), None)


def find_two_disjoint_spanning_tritrees(g: Multigraph, limit=None):
    n = g.order
    if n < 3 or g.size < 2 * (2 * n - 3):
        return None
    for first in iter_spanning_tritrees(g, limit=limit):
        second = find_spanning_tritree(g.without_edges(first.edge_ids), limit=limit)
        if second is not None:
            return first, second
    return None


# -- triangle-paths ------------------------------------------------------------


def _element(t: TriTreeSeq, x):
    """A vertex id, an edge id of ``t`` or an endpoint pair; edges come back as frozensets."""
    if isinstance(x, (tuple, list, frozenset, set)):
        ends = frozenset(x)
        if len(ends) != 2 or ends not in {frozenset(p) for p in t.pairs()}:
            raise TriTreeError(f"{sorted(ends, key=natural_key)} is not an edge of the triangle-tree")
        return ends
    if x in t.vertices:
        return x
    edges = t.edge_map()
    if x in edges:
        return frozenset(edges[x])
    raise TriTreeError(f"{x!r} is neither a vertex nor an edge of the triangle-tree")


def _adjacent(t: TriTreeSeq, x, y) -> bool:
    if x == y:
        return True
    if isinstance(x, frozenset) and isinstance(y, frozenset):
        return bool(x & y)
    if isinstance(x, frozenset) or isinstance(y, frozenset):
        edge, vertex = (x, y) if isinstance(x, frozenset) else (y, x)
        return vertex in edge
    return frozenset((x, y)) in {frozenset(p) for p in t.pairs()}


def triangle_path(t: TriTreeSeq, x, y) -> TriTreeSeq:
    """
    The unique minimal sub-triangle-tree of ``t`` containing ``x`` and ``y``
    at its two ends. Elements are vertices or edges; an edge is inside a
    triangle when both its ends are.
    """
    if not t.is_wellformed():
        raise TriTreeError("malformed triangle-tree sequence")
    x, y = _element(t, x), _element(t, y)
    if _adjacent(t, x, y):
        raise TriTreeError("triangle-path ends must be distinct and nonadjacent")

    def holds(triangle, element):
        members = set(triangle)
        return element <= members if isinstance(element, frozenset) else element in members

    incidence = nx.Graph()
    triangles = t.triangles()
    for index, triangle in enumerate(triangles):
        a, b, c = triangle
        for pair in ((a, b), (a, c), (b, c)):
            incidence.add_edge(("triangle", index), ("edge", frozenset(pair)))
        if holds(triangle, x):
            incidence.add_edge("source", ("triangle", index))
        if holds(triangle, y):
            incidence.add_edge("target", ("triangle", index))

    route = nx.shortest_path(incidence, "source", "target")
    chosen = [triangles[node[1]] for node in route if isinstance(node, tuple) and node[0] == "triangle"]

    first = chosen[0]
    if len(chosen) > 1:
        shared = set(first) & set(chosen[1])
        outer = next(v for v in first if v not in shared)
        first = (outer, *sorted(shared, key=natural_key))
    attach = []
    placed = set(first)
    for triangle in chosen[1:]:
        new = next(v for v in triangle if v not in placed)
        y_end, z_end = (v for v in triangle if v != new)
        attach.append((new, y_end, z_end))
        placed.add(new)
    path = TriTreeSeq(first, attach)
    return TriTreeSeq(first, attach, tuple(t.edge_between(u, v) for u, v in path.pairs()))


# -- removable sets --------------------------------------------------------------


def _removable_candidates(t: TriTreeSeq) -> list:
    tips = t.leaves()
    return [e for e, (u, v) in t.edge_map().items() if u not in tips and v not in tips]


def _removable_sets(t: TriTreeSeq):
    """All removable sets; removability is closed under taking subsets."""
    tree = t.as_graph()
    candidates = sorted(_removable_candidates(t), key=natural_key)

    def extend(start, chosen):
        yield chosen
        for index in range(start, len(candidates)):
            trial = chosen + (candidates[index],)
            if is_2edge_connected(tree.without_edges(trial)):
                yield from extend(index + 1, trial)

    yield from extend(0, ())


def removable_max(t: TriTreeSeq) -> frozenset:
    """
    A maximum edge set X of ``t`` with T - X 2-edge-connected; ties go to the
    natural-order least id sequence.
    """
    tree = t.as_graph()
    candidates = sorted(_removable_candidates(t), key=natural_key)
    bound = max(t.order - 3, 0)
    best = ()

    def search(start, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen
        if len(best) == bound:
            return
        for index in range(start, len(candidates)):
            if len(chosen) + len(candidates) - index <= len(best):
                return
            trial = chosen + (candidates[index],)
            if is_2edge_connected(tree.without_edges(trial)):
                search(index + 1, trial)
                if len(best) == bound:
                    return

    search(0, ())
    return frozenset(best)


def iter_removable_sets(t: TriTreeSeq, maximal_only=True):
    """Removable sets by decreasing size, natural id order within a size."""
    found = [frozenset(s) for s in _removable_sets(t)]
    if maximal_only:
        found = [s for s in found if not any(s < other for other in found)]
    ordered = sorted(found, key=lambda s: (-len(s), [natural_key(e) for e in sorted(s, key=natural_key)]))
    yield from ordered


# -- families ------------------------------------------------------------------


def gen_wheel(k: int) -> Multigraph:
    """W_k: center ``0`` joined to the rim cycle ``1..k``."""
    if k < 3:
        raise TriTreeError("a wheel needs a rim of length at least 3")
    pairs = [("0", str(i)) for i in range(1, k + 1)]
    pairs += [(str(i), str(i % k + 1)) for i in range(1, k + 1)]
    return Multigraph.from_pairs(pairs)


def fan_sequence(n: int) -> TriTreeSeq:
    """Apex ``0`` over the path ``1..n-1``."""
    if n < 3:
        raise TriTreeError("a fan needs at least 3 vertices")
    return TriTreeSeq(("0", "1", "2"), [(str(i + 1), "0", str(i)) for i in range(2, n - 1)])


def gen_fan(n: int) -> Multigraph:
    return fan_sequence(n).as_graph()


def book_sequence(n: int) -> TriTreeSeq:
    """K_{1,1,n-2}: spine ``0``-``1``, pages ``2..n-1``."""
    if n < 4:
        raise TriTreeError("a triangular book needs at least 4 vertices")
    return TriTreeSeq(("0", "1", "2"), [(str(i), "0", "1") for i in range(3, n)])


def gen_book(n: int) -> Multigraph:
    return book_sequence(n).as_graph()


def gen_triangle_path(turns) -> TriTreeSeq:
    """
    Triangle-path with ``3 + len(turns)`` vertices. Each new vertex joins the
    newest vertex and one end of the edge the newest vertex was attached to:
    the first end for turn 0, the second for turn 1. All-zero turns give a fan.
    """
    base = ("0", "1", "2")
    newest, ends = "2", ("0", "1")
    attach = []
    for index, turn in enumerate(turns):
        if turn not in (0, 1):
            raise TriTreeError(f"turns are 0 or 1, got {turn!r}")
        new = str(index + 3)
        anchor = ends[turn]
        attach.append((new, anchor, newest))
        newest, ends = new, (anchor, newest)
    return TriTreeSeq(base, attach)


def gen_crystal(path: TriTreeSeq) -> Multigraph:
    """A triangle-path on at least 4 vertices plus an edge joining its two leaves."""
    if path.order < 4 or not is_triangle_path(path):
        raise TriTreeError("a crystal is built from a triangle-path on at least 4 vertices")
    g = path.as_graph()
    u, v = sorted(path.leaves(), key=natural_key)
    return g.with_edges({g.fresh_edge_id(): (u, v)})


def k4() -> Multigraph:
    return gen_wheel(3)


def gen_bullgrown(seed: Multigraph | None = None, steps=()) -> Multigraph:
    """Apply ``bull_grow`` for each ``(ab, w)`` step, ``ab`` an edge id or a vertex pair."""
    from flows.certify import bull_grow

    g = seed if seed is not None else k4()
    for step in steps:
        try:
            ab, w = step
        except (TypeError, ValueError):
            raise TriTreeError(f"malformed growth step {step!r}") from None
        g = bull_grow(g, ab, w)
    return g


def random_bullgrown_steps(count: int, seed: int, start: Multigraph | None = None):
    """Random growth steps: consume a random edge ab, with w a common neighbor of a and b when there is one."""
    from flows.certify import bull_grow

    rng = random.Random(seed)
    g = start if start is not None else k4()
    steps = []
    for _ in range(count):
        edge_id = rng.choice(g.edge_ids)
        a, b = g.endpoints(edge_id)
        common = sorted(set(g.neighbors(a)) & set(g.neighbors(b)), key=natural_key)
        others = [v for v in g.vertices if v not in (a, b)]
        w = rng.choice(common or others)
        steps.append((edge_id, w))
        g = bull_grow(g, edge_id, w)
    return steps


def random2tree(n: int, seed: int = 0, labels=None) -> TriTreeSeq:
    if n < 3:
        raise TriTreeError("a triangle-tree needs at least 3 vertices")
    rng = random.Random(seed)
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    base = tuple(labels[:3])
    seq = TriTreeSeq(base)
    for new in labels[3:]:
        y, z = rng.choice(seq.pairs())
        seq = TriTreeSeq(base, seq.attach + ((new, y, z),))
    return seq


def double2tree(n: int, seed: int = 0):
    """
    Union of two random spanning triangle-trees on ``0..n-1``, the second on
    shuffled labels. Returns the graph and both realizing sequences.
    """
    rng = random.Random(seed)
    first = random2tree(n, rng.randrange(2**31))
    labels = [str(i) for i in range(n)]
    rng.shuffle(labels)
    second = random2tree(n, rng.randrange(2**31), labels=labels)
    offset = len(first.edge_ids)
    second = TriTreeSeq(second.base, second.attach, tuple(f"e{offset + i}" for i in range(len(second.edge_ids))))
    g = Multigraph(labels, {**first.edge_map(), **second.edge_map()})
    return g, first, second


def iter_tritree_shapes(n: int):
    """One construction sequence per isomorphism class of triangle-trees on ``0..n-1``."""
    if n < 3:
        return
    level = [TriTreeSeq(("0", "1", "2"))]
    for size in range(4, n + 1):
        new = str(size - 1)
        buckets = {}
        grown = []
        for seq in level:
            for y, z in seq.pairs():
                candidate = TriTreeSeq(seq.base, seq.attach + ((new, y, z),))
                graph = candidate.as_graph()
                bucket = buckets.setdefault(graph.fingerprint(), [])
                if any(graph.is_isomorphic(other) for other in bucket):
                    continue
                bucket.append(graph)
                grown.append(candidate)
        level = grown
    yield from level


def remove_leaf(t: TriTreeSeq, x) -> TriTreeSeq:
    """T - x for a leaf ``x``; the remaining edges keep their ids."""
    if x not in t.leaves() or t.order < 4:
        raise TriTreeError(f"{x!r} is not a removable leaf of the triangle-tree")
    rest = t.as_graph().without_vertices((x,))
    shrunk = find_spanning_tritree(rest)
    if shrunk is None:
        raise TriTreeError(f"removing {x!r} did not leave a triangle-tree")
    return shrunk


def leaf_triangle(t: TriTreeSeq, x) -> tuple:
    """The two other vertices of the only triangle of ``t`` through the leaf ``x``."""
    for triangle in t.triangles():
        if x in triangle:
            return tuple(sorted((v for v in triangle if v != x), key=natural_key))
    raise TriTreeError(f"{x!r} is not in the triangle-tree")
