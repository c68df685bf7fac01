"""
Structural deciders with replayable certificates.

Negative verdicts (no 3-NZF, not Z3-connected) come with a ``Certificate``: a
base K3/K4 and the bull-growing / K3 2-sum steps that rebuild the input.
Positive Z3 verdicts can be backed by a ``Z3Proof``: a sequence of
contractions and liftings that collapses the input to K1.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from flows.conf import triflow_setting
from flows.exceptions import BullPairError, SurgeryError, TriflowError, TriTreeError
from flows.graph import (
    Multigraph,
    contract_subgraph,
    least,
    lift_pair,
    lift_path,
    natural_key,
    path_vertices,
    two_sum,
)
from flows.oracles import vertex_3_colorable
from flows.tritree import (
    TriTreeSeq,
    find_spanning_tritree,
    gen_wheel,
    is_triangle_path,
    iter_spanning_tritrees,
    triangles_of,
    validate,
)

logger = logging.getLogger(__name__)


# -- bull pairs ----------------------------------------------------------------


@dataclass(frozen=True)
class BullPair:
    """Adjacent 3-vertices ``u``, ``v`` with common neighbor ``w``; ``a``, ``b`` their third neighbors."""

    u: str
    v: str
    w: str
    a: str
    b: str

    @property
    def flagged(self) -> bool:
        """True when a third neighbor coincides with ``w`` (parallel edges at the bull)."""
        return self.a == self.w or self.b == self.w


def _neighbor_multiset(g: Multigraph, v) -> list:
    return sorted((g.other_end(e, v) for e in g.incident(v)), key=natural_key)


def _bull_at(g: Multigraph, u, v) -> BullPair | None:
    if g.degree(u) != 3 or g.degree(v) != 3 or not g.edges_between(u, v):
        return None
    around_u = _neighbor_multiset(g, u)
    around_v = _neighbor_multiset(g, v)
    around_u.remove(v)
    around_v.remove(u)
    common = [x for x in set(around_u) & set(around_v) if x not in (u, v)]
    if not common:
        return None
    w = least(common)
    around_u.remove(w)
    around_v.remove(w)
    a, b = around_u[0], around_v[0]
    if a in (u, v) or b in (u, v):
        return None
    return BullPair(u, v, w, a, b)


def bull_pairs(g: Multigraph) -> list:
    """Each unordered adjacent pair once, ``u`` before ``v``, ``w`` the least common neighbor."""
    found = []
    for u in g.vertices:
        if g.degree(u) != 3:
            continue
        for v in g.neighbors(u):
            if natural_key(v) > natural_key(u):
                pair = _bull_at(g, u, v)
                if pair is not None:
                    found.append(pair)
    return found


def _check_pair(g: Multigraph, p: BullPair):
    for x in (p.u, p.v, p.w, p.a, p.b):
        if not g.has_vertex(x):
            raise BullPairError(f"bull pair mentions unknown vertex {x!r}")
    if g.degree(p.u) != 3 or g.degree(p.v) != 3:
        raise BullPairError(f"{p.u!r} and {p.v!r} must both have degree 3")
    if _neighbor_multiset(g, p.u) != sorted((p.v, p.w, p.a), key=natural_key):
        raise BullPairError(f"neighbors of {p.u!r} are not {p.v!r}, {p.w!r}, {p.a!r}")
    if _neighbor_multiset(g, p.v) != sorted((p.u, p.w, p.b), key=natural_key):
        raise BullPairError(f"neighbors of {p.v!r} are not {p.u!r}, {p.w!r}, {p.b!r}")


def bull_reduce(g: Multigraph, p: BullPair) -> Multigraph:
    """G - u - v + ab; nothing is added when a = b."""
    _check_pair(g, p)
    reduced = g.without_vertices((p.u, p.v))
    if p.a == p.b:
        return reduced
    return reduced.with_edges({reduced.fresh_edge_id(): (p.a, p.b)})


def fresh_pair(h: Multigraph) -> tuple:
    u = h.fresh_vertex_id()
    return u, h.fresh_vertex_id(taken=(u,))


def _add_edges(g: Multigraph, pairs) -> Multigraph:
    for pair in pairs:
        g = g.with_edges({g.fresh_edge_id(): pair})
    return g


def bull_grow(h: Multigraph, ab, w, consume=None, names=None) -> Multigraph:
    """
    Add a bull on ``ab`` with apex ``w``: new vertices u, v and edges uv, uw,
    vw, ua, vb. ``ab`` is an edge id (consumed) or a vertex pair (kept unless
    ``consume``).
    """
    if isinstance(ab, str):
        if not h.has_edge(ab):
            raise BullPairError(f"unknown edge id {ab!r}")
        a, b = h.endpoints(ab)
        consumed = ab if consume is not False else None
    else:
        try:
            a, b = ab
        except (TypeError, ValueError):
            raise BullPairError(f"malformed vertex pair {ab!r}") from None
        consumed = None
        if consume:
            between = h.edges_between(a, b) if h.has_vertex(a) and h.has_vertex(b) else ()
            if not between:
                raise BullPairError(f"no edge {a}{b} to consume")
            consumed = between[0]
    for x in (a, b, w):
        if not h.has_vertex(x):
            raise BullPairError(f"unknown vertex {x!r}")
    u, v = names if names is not None else fresh_pair(h)
    if u == v or h.has_vertex(u) or h.has_vertex(v):
        raise BullPairError(f"new vertex ids {u!r}, {v!r} clash")

    grown = h.without_edges((consumed,)) if consumed else h
    grown = grown.with_vertices((u, v))
    return _add_edges(grown, [(u, v), (u, w), (v, w), (u, a), (v, b)])


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class BullGrowStep:
    a: str
    b: str
    w: str
    u: str
    v: str
    consume_ab: bool = True
    op = "bull_grow"


@dataclass(frozen=True)
class TwoSumK3Step:
    edge: tuple
    apex: str
    op = "two_sum_k3"


@dataclass(frozen=True)
class Certificate:
    base: str
    base_vertices: tuple
    steps: tuple = ()
    target: str = ""


def complete_graph(vertices) -> Multigraph:
    return Multigraph.from_pairs(combinations(vertices, 2), vertices=vertices)


def _fresh_ids(g: Multigraph, count: int) -> list:
    ids, k = [], g.size
    while len(ids) < count:
        if f"e{k}" not in g.edges:
            ids.append(f"e{k}")
        k += 1
    return ids


def attach_k3(h: Multigraph, edge, apex) -> Multigraph:
    """K3 (+)_2 h along an existing edge yz, the new 2-vertex named ``apex``."""
    y, z = edge
    between = h.edges_between(y, z) if h.has_vertex(y) and h.has_vertex(z) else ()
    if not between:
        raise SurgeryError(f"no edge {y}{z} to 2-sum a triangle onto")
    if h.has_vertex(apex):
        raise SurgeryError(f"apex {apex!r} already present")
    shared, spoke_y, spoke_z = _fresh_ids(h, 3)
    y, z = h.endpoints(between[0])
    triangle = Multigraph((y, z, apex), {shared: (y, z), spoke_y: (y, apex), spoke_z: (z, apex)})
    return two_sum(h, triangle, between[0], shared)


def attach_piece(h: Multigraph, piece: Multigraph, edge_id: str, piece_edge: str, flip=False) -> Multigraph:
    """
    ``piece`` 2-summed onto ``h`` along ``edge_id``, the ends of ``piece_edge``
    landing on its ends (swapped when ``flip``). The other vertices and edges
    of the piece get fresh names.
    """
    hu, hv = h.endpoints(edge_id)
    if flip:
        hu, hv = hv, hu
    pu, pv = piece.endpoints(piece_edge)
    vertex_map, taken = {pu: hu, pv: hv}, set()
    for v in piece.vertices:
        if v not in vertex_map:
            vertex_map[v] = h.fresh_vertex_id(taken=taken)
            taken.add(vertex_map[v])
    ids = _fresh_ids(h, piece.size)
    edge_map = {piece_edge: ids[0]}
    edge_map.update(zip((e for e in piece.edge_ids if e != piece_edge), ids[1:]))
    placed = piece.relabel(vertex_map, edge_map)
    return two_sum(h, placed, edge_id, ids[0], flip=placed.endpoints(ids[0])[0] != h.endpoints(edge_id)[0])


def gen_summed_wheel(k: int, spokes=False) -> Multigraph:
    """W_k with a triangle 2-summed onto every rim edge, and onto every spoke when ``spokes``."""
    wheel = gen_wheel(k)
    chosen = [e for e in wheel.edge_ids if spokes or "0" not in wheel.endpoints(e)]
    g, triangle = wheel, complete_graph(("0", "1", "2"))
    for e in chosen:
        g = attach_piece(g, triangle, e, triangle.edge_ids[0])
    return g


def replay_certificate(c: Certificate) -> Multigraph:
    sizes = {"K3": 3, "K4": 4}
    if c.base not in sizes or len(set(c.base_vertices)) != sizes[c.base]:
        raise BullPairError(f"certificate base {c.base!r} does not match {list(c.base_vertices)}")
    g = complete_graph(c.base_vertices)
    for step in c.steps:
        if isinstance(step, BullGrowStep):
            g = bull_grow(g, (step.a, step.b), step.w, consume=step.consume_ab, names=(step.u, step.v))
        elif isinstance(step, TwoSumK3Step):
            g = attach_k3(g, step.edge, step.apex)
        else:
            raise BullPairError(f"unknown certificate step {step!r}")
    return g


def verify_certificate(g: Multigraph, c: Certificate) -> bool:
    try:
        rebuilt = replay_certificate(c)
    except TriflowError as exc:
        logger.debug("certificate replay failed: %s", exc)
        return False
    return rebuilt.is_isomorphic(g)


def _grow_step(p: BullPair) -> BullGrowStep:
    return BullGrowStep(a=p.a, b=p.b, w=p.w, u=p.u, v=p.v, consume_ab=p.a != p.b)


def _require_spanning(g: Multigraph, t: TriTreeSeq):
    if not validate(g, t, spanning=True):
        raise TriTreeError("not a spanning triangle-tree of the graph")


def _reducible(g: Multigraph):
    """Bull reductions whose result still has a spanning triangle-tree."""
    for p in bull_pairs(g):
        reduced = bull_reduce(g, p)
        if find_spanning_tritree(reduced) is not None:
            yield p, reduced


def _no_3nzf(g: Multigraph, memo: dict):
    key = g.labelled_key()
    if key in memo:
        return memo[key]
    result = None
    if g.is_complete(4):
        result = ("K4", g.vertices, ())
    elif g.is_simple() and min(g.degree(v) for v in g.vertices) >= 3:
        for p, reduced in _reducible(g):
            inner = _no_3nzf(reduced, memo)
            if inner is not None:
                base, base_vertices, steps = inner
                result = (base, base_vertices, steps + (_grow_step(p),))
                break
    memo[key] = result
    return result


def decide_3nzf(g: Multigraph, t: TriTreeSeq):
    """(has a 3-NZF, certificate from K4 when it has none)."""
    _require_spanning(g, t)
    derivation = _no_3nzf(g, {})
    if derivation is None:
        return True, None
    base, base_vertices, steps = derivation
    return False, Certificate(base, tuple(base_vertices), steps, g.fingerprint())


def _not_z3(g: Multigraph, memo: dict):
    key = g.labelled_key()
    if key in memo:
        return memo[key]
    result = None
    if g.is_complete(3):
        result = ("K3", g.vertices, ())
    elif g.is_complete(4):
        result = ("K4", g.vertices, ())
    elif g.is_simple():
        apex = next(
            (x for x in g.vertices if g.degree(x) == 2 and g.edges_between(*g.neighbors(x))),
            None,
        )
        if apex is not None:
            # a triangle 2-summed on yz: the verdict is that of the rest
            inner = _not_z3(g.without_vertices((apex,)), memo)
            if inner is not None:
                base, base_vertices, steps = inner
                result = (base, base_vertices, steps + (TwoSumK3Step(g.neighbors(apex), apex),))
        else:
            for p, reduced in _reducible(g):
                inner = _not_z3(reduced, memo)
                if inner is not None:
                    base, base_vertices, steps = inner
                    result = (base, base_vertices, steps + (_grow_step(p),))
                    break
    memo[key] = result
    return result


def decide_z3(g: Multigraph, t: TriTreeSeq):
    """(Z3-connected, certificate from K3/K4 when it is not)."""
    _require_spanning(g, t)
    derivation = _not_z3(g, {})
    if derivation is None:
        return True, None
    base, base_vertices, steps = derivation
    return False, Certificate(base, tuple(base_vertices), steps, g.fingerprint())


def few_3vertices_shortcut(g: Multigraph, t: TriTreeSeq) -> bool | None:
    """True (has a 3-NZF) when at most three vertices have degree 3; no claim otherwise."""
    _require_spanning(g, t)
    if sum(1 for v in g.vertices if g.degree(v) == 3) <= 3:
        return True
    return None


# -- crystals ------------------------------------------------------------------


def crystal_structure(g: Multigraph):
    """``(triangle-path, extra edge id)`` when ``g`` is a crystal, else None."""
    if g.order < 4 or g.size != 2 * g.order - 2:
        return None
    for t in iter_spanning_tritrees(g):
        if not is_triangle_path(t):
            continue
        extra = [e for e in g.edge_ids if e not in set(t.edge_ids)]
        if len(extra) == 1 and set(g.endpoints(extra[0])) == set(t.leaves()):
            return t, extra[0]
    return None


def is_crystal(g: Multigraph) -> bool:
    return crystal_structure(g) is not None


def _require_crystal(g: Multigraph):
    if not is_crystal(g):
        raise TriTreeError("not a crystal")


def crystal_3nzf(c: Multigraph) -> bool:
    """A crystal has a 3-NZF exactly when some vertex has even degree."""
    _require_crystal(c)
    return any(c.degree(v) % 2 == 0 for v in c.vertices)


def crystal_z3(c: Multigraph) -> bool:
    """A crystal is Z3-connected exactly when it is vertex-3-colorable."""
    _require_crystal(c)
    return vertex_3_colorable(c) is not None


# -- Z3 proofs -----------------------------------------------------------------

BASE_K1 = "BASE_K1"
BASE_2K2 = "BASE_2K2"
CONTRACT_2CYCLE = "CONTRACT_2CYCLE"
CONTRACT_Z3_SUBGRAPH = "CONTRACT_Z3_SUBGRAPH"
LIFT_PAIR = "LIFT_PAIR"
LIFT_PATH = "LIFT_PATH"
TREE_PLUS = "TREE_PLUS"

RULES = (BASE_K1, BASE_2K2, CONTRACT_2CYCLE, CONTRACT_Z3_SUBGRAPH, LIFT_PAIR, LIFT_PATH, TREE_PLUS)


@dataclass(frozen=True)
class ProofStep:
    rule: str
    data: dict = field(default_factory=dict, hash=False, compare=True)


@dataclass(frozen=True)
class Z3Proof:
    steps: tuple = ()

    def rules(self) -> list:
        return [step.rule for step in self.steps]


def apply_step(g: Multigraph, step: ProofStep) -> Multigraph:
    """One rule application; raises when its premise does not hold in ``g``."""
    data = step.data
    if step.rule == BASE_K1:
        if not g.is_k1():
            raise SurgeryError("BASE_K1 on a graph that is not K1")
        return g
    if step.rule in (BASE_2K2, CONTRACT_2CYCLE):
        e, f = data["edges"]
        if e == f or set(g.endpoints(e)) != set(g.endpoints(f)):
            raise SurgeryError(f"{e!r} and {f!r} are not a 2-cycle")
        if step.rule == BASE_2K2 and (g.order, g.size) != (2, 2):
            raise SurgeryError("BASE_2K2 on a graph that is not 2K2")
        return contract_subgraph(g, (e, f))
    if step.rule == CONTRACT_Z3_SUBGRAPH:
        edges = tuple(data["edges"])
        if not verify_z3proof(g.edge_subgraph(edges, spanning=False), data["proof"]):
            raise SurgeryError("sub-proof does not verify on the contracted subgraph")
        return contract_subgraph(g, edges)
    if step.rule == LIFT_PAIR:
        if g.degree(data["v"]) < 4:
            raise SurgeryError(f"lifting at {data['v']!r} needs degree at least 4")
        return lift_pair(g, data["v"], data["a"], data["b"], via=data.get("via"))
    if step.rule == LIFT_PATH:
        return lift_path(g, tuple(data["path"]))
    if step.rule == TREE_PLUS:
        tree, leaf, j, k = data["tritree"], data["leaf"], data["j"], data["k"]
        if not validate(g, tree) or leaf not in tree.leaves():
            raise SurgeryError("TREE_PLUS needs a triangle-tree of the graph with the given leaf")
        if j == k or {j, k} & set(tree.edge_ids):
            raise SurgeryError("TREE_PLUS needs two distinct edges outside the triangle-tree")
        for extra in (j, k):
            ends = g.endpoints(extra)
            if leaf not in ends or g.other_end(extra, leaf) not in tree.vertices:
                raise SurgeryError(f"edge {extra!r} must join the leaf to the triangle-tree")
        return contract_subgraph(g, tree.edge_ids + (j, k))
    raise SurgeryError(f"unknown proof rule {step.rule!r}")


def verify_z3proof(g: Multigraph, p: Z3Proof) -> bool:
    try:
        for step in p.steps:
            g = apply_step(g, step)
    except (TriflowError, KeyError, TypeError, ValueError) as exc:
        logger.debug("proof replay failed: %s", exc)
        return False
    return g.is_k1() and bool(p.steps)


def _closure(g: Multigraph, base) -> TriTreeSeq:
    """Greedy maximal triangle-tree grown from ``base``."""
    seq = TriTreeSeq(base)
    placed = set(base)
    pairs = seq.pairs()
    grew = True
    while grew:
        grew = False
        for x in g.vertices:
            if x in placed:
                continue
            for y, z in pairs:
                if g.edges_between(x, y) and g.edges_between(x, z):
                    seq = TriTreeSeq(base, seq.attach + ((x, y, z),))
                    pairs = seq.pairs()
                    placed.add(x)
                    grew = True
                    break
    return TriTreeSeq(seq.base, seq.attach, tuple(g.edges_between(u, v)[0] for u, v in seq.pairs()))


def _tree_plus_site(g: Multigraph):
    """A triangle-tree with a leaf ``x`` and two more edges from ``x`` into it."""
    for x in g.vertices:
        if len(g.neighbors(x)) < 4:
            continue
        rest = g.without_vertices((x,))
        covered = set()
        for triangle in triangles_of(rest):
            tree = _closure(rest, triangle)
            key = frozenset(tree.vertices)
            if key in covered:
                continue
            covered.add(key)
            inside = [e for e in g.incident(x) if g.other_end(e, x) in key]
            if len(inside) < 4:
                continue
            for y, z in tree.pairs():
                ey, ez = g.edges_between(x, y), g.edges_between(x, z)
                if not ey or not ez:
                    continue
                j, k = [e for e in inside if e not in (ey[0], ez[0])][:2]
                grown = TriTreeSeq(tree.base, tree.attach + ((x, y, z),), tree.edge_ids + (ey[0], ez[0]))
                return ProofStep(TREE_PLUS, {"leaf": x, "tritree": grown, "j": j, "k": k})
    return None


def _saturate(g: Multigraph, steps: list) -> Multigraph:
    while not g.is_k1():
        cycle = next(g.parallel_pairs(), None)
        if cycle is not None:
            rule = BASE_2K2 if (g.order, g.size) == (2, 2) else CONTRACT_2CYCLE
            step = ProofStep(rule, {"edges": list(cycle)})
        else:
            step = _tree_plus_site(g)
            if step is None:
                break
        steps.append(step)
        g = apply_step(g, step)
    return g


def _lift_candidates(g: Multigraph):
    """Lifts that create a 2-cycle: pairs at 4+-vertices, then paths of length 2 and 3."""
    for v in g.vertices:
        if g.degree(v) < 4:
            continue
        tried = set()
        for ea, eb in combinations(g.incident(v), 2):
            a, b = g.other_end(ea, v), g.other_end(eb, v)
            if a == b or (a, b) in tried or not g.edges_between(a, b):
                continue
            tried.update(((a, b), (b, a)))
            yield ProofStep(LIFT_PAIR, {"v": v, "a": a, "b": b, "via": [ea, eb]})
    seen = set()
    for first in g.edge_ids:
        for start in g.endpoints(first):
            middle = g.other_end(first, start)
            for second in g.incident(middle):
                if second == first:
                    continue
                for path in ((first, second), *((first, second, third) for third in _onward(g, first, second))):
                    try:
                        walk = path_vertices(g, path)
                    except SurgeryError:
                        continue
                    if len(path) == 2 and g.degree(walk[1]) >= 4:
                        continue
                    if any(g.degree(inner) <= 2 for inner in walk[1:-1]):
                        continue
                    signature = tuple(walk) if natural_key(walk[0]) <= natural_key(walk[-1]) else tuple(reversed(walk))
                    if signature in seen or not g.edges_between(walk[0], walk[-1]):
                        continue
                    seen.add(signature)
                    yield ProofStep(LIFT_PATH, {"path": list(path)})


def _onward(g: Multigraph, first, second):
    walk_end = set(g.endpoints(second)) - set(g.endpoints(first))
    if not walk_end:
        return
    tail = walk_end.pop()
    for third in g.incident(tail):
        if third not in (first, second):
            yield third


def _local_blocks(g: Multigraph):
    """Edge sets of proper subgraphs induced by maximal triangle-trees that carry extra edges."""
    covered = set()
    for triangle in triangles_of(g):
        tree = _closure(g, triangle)
        key = frozenset(tree.vertices)
        if key in covered or len(key) == g.order:
            continue
        covered.add(key)
        inside = [e for e, (u, v) in g.edges.items() if u in key and v in key]
        if len(inside) > 2 * len(key) - 3:
            yield inside


def _prove(g: Multigraph, depth: int, failed: set):
    steps = []
    g = _saturate(g, steps)
    if g.is_k1():
        return steps + [ProofStep(BASE_K1)] if not steps or steps[-1].rule != BASE_2K2 else steps
    key = (g.labelled_key(), depth)
    if key in failed:
        return None

    for block in _local_blocks(g):
        inner = _prove(g.edge_subgraph(block, spanning=False), depth, failed)
        if inner is None:
            continue
        step = ProofStep(CONTRACT_Z3_SUBGRAPH, {"edges": sorted(block, key=natural_key), "proof": Z3Proof(tuple(inner))})
        rest = _prove(contract_subgraph(g, block), depth, failed)
        if rest is not None:
            return steps + [step] + rest

    if depth > 0:
        for step in _lift_candidates(g):
            try:
                lifted = apply_step(g, step)
            except SurgeryError:
                continue
            rest = _prove(lifted, depth - 1, failed)
            if rest is not None:
                return steps + [step] + rest

    failed.add(key)
    return None


def z3_prove(g: Multigraph, depth=None) -> Z3Proof | None:
    """
    Best-effort positive Z3-connectivity proof by iterative deepening over
    liftings. None means no proof was found within ``depth`` lifts, not that
    the graph is outside Z3.
    """
    if g.order == 0:
        return None
    limit = triflow_setting("PROOF_DEPTH", depth)
    failed = set()
    for level in range(limit + 1):
        steps = _prove(g, level, failed)
        if steps is not None:
            logger.debug("z3 proof found with %d lift(s) allowed, %d steps", level, len(steps))
            return Z3Proof(tuple(steps))
    return None


# -- triangular connectivity -------------------------------------------------------


def triangularly_connected(g: Multigraph) -> bool:
    """Every edge lies in a triangle and triangles sharing edges link all edges together."""
    if g.size == 0:
        return False
    linked = nx.Graph()
    for u, v, w in triangles_of(g):
        ids = g.edges_between(u, v) + g.edges_between(u, w) + g.edges_between(v, w)
        linked.add_nodes_from(ids)
        linked.add_edges_from(zip(ids, ids[1:]))
    if set(linked.nodes) != set(g.edge_ids):
        return False
    return nx.is_connected(linked)


def _normal_cycle(cycle: list) -> tuple:
    start = cycle.index(least(cycle))
    rotated = cycle[start:] + cycle[:start]
    backwards = [rotated[0]] + rotated[:0:-1]
    return tuple(min(rotated, backwards, key=lambda c: [natural_key(x) for x in c]))


def _separates(simple: nx.Graph, inside, x, y) -> bool:
    """Some component of ``simple - {x, y}`` misses ``inside``: xy carries a 2-summed piece."""
    rest = simple.subgraph(n for n in simple.nodes if n not in (x, y))
    return any(inside not in part for part in nx.connected_components(rest))


def _fully_summed(simple: nx.Graph, center, rim: tuple) -> bool:
    if len(rim) > 3:
        return all(_separates(simple, center, x, y) for x, y in zip(rim, rim[1:] + rim[:1]))
    # A K4 triangle-tree leaves out one edge, so all six have to be summed.
    block = (center,) + rim
    return all(
        _separates(simple, next(v for v in block if v not in (x, y)), x, y) for x, y in combinations(block, 2)
    )


def fully_2summed_odd_wheel(g: Multigraph):
    """
    An odd wheel that keeps ``g`` from having a spanning triangle-tree, as
    ``{"center": c, "rim": [r1, ..., rk]}``; None when there is none. For
    k >= 5 every rim edge splits ``g`` as a 2-sum, for K4 every one of its
    six edges does.
    """
    simple = g.simple_graph()
    for center in g.vertices:
        around = simple.subgraph(simple.neighbors(center))
        cycles = sorted(
            {_normal_cycle(c) for c in nx.simple_cycles(around) if len(c) >= 3 and len(c) % 2},
            key=lambda c: (len(c), [natural_key(x) for x in c]),
        )
        for rim in cycles:
            if _fully_summed(simple, center, rim):
                return {"center": center, "rim": list(rim)}
    return None
