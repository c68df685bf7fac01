"""
Loop-free multigraphs with stable edge identities, and the edge surgery the
rest of the app is built on: contraction, lifting, 2-sums, connectivity
predicates and mod-3 boundaries of orientations.

Every value here is immutable; operations return new values.
"""

import logging
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from itertools import product
from types import MappingProxyType

import networkx as nx
from networkx.algorithms.isomorphism import numerical_edge_match

from flows.exceptions import GraphError, SurgeryError, UnknownEdge, UnknownVertex

logger = logging.getLogger(__name__)

_DIGIT_RUNS = re.compile(r"(\d+)")


def natural_key(ident):
    """Order ids lexicographically, comparing runs of digits as numbers."""
    return tuple((0, int(part)) if part.isdigit() else (1, part) for part in _DIGIT_RUNS.split(str(ident)) if part)


def least(ids):
    return min(ids, key=natural_key)


class Multigraph:
    """
    A finite multigraph without loops. Vertices and edges are identified by
    strings; every edge id maps to an unordered endpoint pair, stored in the
    order it was given so that it doubles as a default direction.
    """

    __slots__ = ("_vertices", "_edges", "_incidence")

    def __init__(self, vertices: Iterable[str] = (), edges: Mapping | Iterable = ()):
        vertex_set = {str(v) for v in vertices}
        items = edges.items() if isinstance(edges, Mapping) else ((row[0], (row[1], row[2])) for row in edges)
        edge_map = {}
        for edge_id, (u, v) in items:
            edge_id, u, v = str(edge_id), str(u), str(v)
            if edge_id in edge_map:
                raise GraphError(f"duplicate edge id {edge_id!r}")
            if u == v:
                raise GraphError(f"edge {edge_id!r} is a loop at {u!r}")
            for end in (u, v):
                if end not in vertex_set:
                    raise UnknownVertex(end)
            edge_map[edge_id] = (u, v)

        self._vertices = tuple(sorted(vertex_set, key=natural_key))
        self._edges = MappingProxyType({e: edge_map[e] for e in sorted(edge_map, key=natural_key)})
        incidence = {v: [] for v in self._vertices}
        for edge_id, (u, v) in self._edges.items():
            incidence[u].append(edge_id)
            incidence[v].append(edge_id)
        self._incidence = MappingProxyType({v: tuple(ids) for v, ids in incidence.items()})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[str]], vertices: Iterable[str] = (), prefix="e"):
        """Build a graph from endpoint pairs, numbering edges ``e0, e1, ...`` in order."""
        pairs = [(str(u), str(v)) for u, v in pairs]
        vertex_set = {str(v) for v in vertices}
        for u, v in pairs:
            vertex_set.update((u, v))
        return cls(vertex_set, {f"{prefix}{i}": pair for i, pair in enumerate(pairs)})

    # -- accessors -----------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> Mapping:
        return self._edges

    @property
    def edge_ids(self) -> tuple:
        return tuple(self._edges)

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def has_vertex(self, v) -> bool:
        return v in self._incidence

    def has_edge(self, edge_id) -> bool:
        return edge_id in self._edges

    def endpoints(self, edge_id) -> tuple:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise UnknownEdge(edge_id) from None

    def other_end(self, edge_id, v):
        u, w = self.endpoints(edge_id)
        if v == u:
            return w
        if v == w:
            return u
        raise SurgeryError(f"vertex {v!r} is not an end of edge {edge_id!r}")

    def incident(self, v) -> tuple:
        try:
            return self._incidence[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v) -> int:
        return len(self.incident(v))

    def neighbors(self, v) -> tuple:
        return tuple(sorted({self.other_end(e, v) for e in self.incident(v)}, key=natural_key))

    def edges_between(self, u, v) -> tuple:
        return tuple(e for e in self.incident(u) if self.other_end(e, u) == v)

    def multiplicity(self, u, v) -> int:
        return len(self.edges_between(u, v))

    def pair_counts(self) -> Counter:
        return Counter(frozenset(ends) for ends in self._edges.values())

    def has_parallel_edges(self) -> bool:
        return any(count > 1 for count in self.pair_counts().values())

    def parallel_pairs(self) -> Iterator[tuple]:
        """Yield ``(e, f)`` for the first two parallel edges of every multi-pair, in id order."""
        seen = {}
        for edge_id, ends in self._edges.items():
            key = frozenset(ends)
            if key in seen and seen[key] is not None:
                yield seen[key], edge_id
                seen[key] = None
            elif key not in seen:
                seen[key] = edge_id

    def is_simple(self) -> bool:
        return not self.has_parallel_edges()

    def is_complete(self, k: int) -> bool:
        return self.order == k and self.is_simple() and self.size == k * (k - 1) // 2

    def is_k1(self) -> bool:
        return self.order == 1 and self.size == 0

    def fresh_edge_id(self, prefix="e") -> str:
        k = self.size
        while f"{prefix}{k}" in self._edges:
            k += 1
        return f"{prefix}{k}"

    def fresh_vertex_id(self, taken: Iterable[str] = ()) -> str:
        taken = set(taken)
        k = self.order
        while str(k) in self._incidence or str(k) in taken:
            k += 1
        return str(k)

    # -- derived graphs ------------------------------------------------------

    def with_vertices(self, vertices: Iterable[str]) -> "Multigraph":
        return Multigraph(set(self._vertices) | set(vertices), self._edges)

    def with_edges(self, edges: Mapping) -> "Multigraph":
        clash = set(edges) & set(self._edges)
        if clash:
            raise GraphError(f"edge ids already present: {sorted(clash, key=natural_key)}")
        return Multigraph(self._vertices, {**self._edges, **edges})

    def without_edges(self, edge_ids: Iterable[str]) -> "Multigraph":
        drop = set(edge_ids)
        for edge_id in drop:
            self.endpoints(edge_id)
        return Multigraph(self._vertices, {e: ends for e, ends in self._edges.items() if e not in drop})

    def without_vertices(self, vertices: Iterable[str]) -> "Multigraph":
        drop = set(vertices)
        for v in drop:
            self.incident(v)
        return Multigraph(
            (v for v in self._vertices if v not in drop),
            {e: (u, v) for e, (u, v) in self._edges.items() if u not in drop and v not in drop},
        )

    def edge_subgraph(self, edge_ids: Iterable[str], spanning=True) -> "Multigraph":
        keep = set(edge_ids)
        for edge_id in keep:
            self.endpoints(edge_id)
        edges = {e: ends for e, ends in self._edges.items() if e in keep}
        if spanning:
            return Multigraph(self._vertices, edges)
        return Multigraph({v for ends in edges.values() for v in ends}, edges)

    def relabel(self, vertex_map: Mapping | None = None, edge_map: Mapping | None = None) -> "Multigraph":
        vertex_map = vertex_map or {}
        edge_map = edge_map or {}
        rename = lambda v: vertex_map.get(v, v)  # noqa: E731
        return Multigraph(
            {rename(v) for v in self._vertices},
            {edge_map.get(e, e): (rename(u), rename(v)) for e, (u, v) in self._edges.items()},
        )

    # -- networkx views ------------------------------------------------------

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self._vertices)
        for edge_id, (u, v) in self._edges.items():
            graph.add_edge(u, v, key=edge_id)
        return graph

    def simple_graph(self) -> nx.Graph:
        """Underlying simple graph; the ``mult`` edge attribute keeps the multiplicity."""
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        for pair, count in self.pair_counts().items():
            u, v = tuple(pair)
            graph.add_edge(u, v, mult=count)
        return graph

    def is_isomorphic(self, other: "Multigraph") -> bool:
        if (self.order, self.size) != (other.order, other.size):
            return False
        return nx.is_isomorphic(
            self.simple_graph(),
            other.simple_graph(),
            edge_match=numerical_edge_match("mult", 1),
        )

    def fingerprint(self) -> str:
        """Isomorphism-invariant hash. Equal graphs collide; unequal ones almost never do."""
        digest = nx.weisfeiler_lehman_graph_hash(self.simple_graph(), edge_attr="mult", iterations=4)
        return f"{self.order}:{self.size}:{digest}"

    def labelled_key(self) -> tuple:
        """Exact identity up to edge ids: vertex set plus endpoint multiset."""
        pairs = sorted(tuple(sorted(ends, key=natural_key)) for ends in self._edges.values())
        return self._vertices, tuple(pairs)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self):
        return f"Multigraph(n={self.order}, m={self.size})"


class Orientation(Mapping):
    """A (tail, head) choice per edge id."""

    __slots__ = ("_arcs",)

    def __init__(self, arcs: Mapping):
        self._arcs = MappingProxyType({str(e): (str(arcs[e][0]), str(arcs[e][1])) for e in sorted(arcs, key=natural_key)})

    @classmethod
    def along(cls, g: Multigraph, reverse: Iterable[str] = ()) -> "Orientation":
        """Orient every edge as stored, except the ids in ``reverse``."""
        reverse = set(reverse)
        return cls({e: (v, u) if e in reverse else (u, v) for e, (u, v) in g.edges.items()})

    def __getitem__(self, edge_id):
        return self._arcs[edge_id]

    def __iter__(self):
        return iter(self._arcs)

    def __len__(self):
        return len(self._arcs)

    def orients(self, g: Multigraph) -> bool:
        if set(self._arcs) != set(g.edges):
            return False
        return all(set(self._arcs[e]) == set(ends) for e, ends in g.edges.items())

    def check(self, g: Multigraph):
        if not self.orients(g):
            raise GraphError("orientation does not cover exactly the edges of the graph")

    def union(self, other: "Orientation") -> "Orientation":
        clash = set(self._arcs) & set(other)
        if clash:
            raise GraphError(f"orientations overlap on {sorted(clash, key=natural_key)}")
        return Orientation({**self._arcs, **dict(other.items())})

    def restricted(self, edge_ids: Iterable[str]) -> "Orientation":
        keep = set(edge_ids)
        return Orientation({e: arc for e, arc in self._arcs.items() if e in keep})

    def imbalance(self) -> Counter:
        """Out-degree minus in-degree per vertex touched by an arc."""
        net = Counter()
        for tail, head in self._arcs.values():
            net[tail] += 1
            net[head] -= 1
        return net

    def to_networkx(self, g: Multigraph) -> nx.MultiDiGraph:
        digraph = nx.MultiDiGraph()
        digraph.add_nodes_from(g.vertices)
        for edge_id, (tail, head) in self._arcs.items():
            digraph.add_edge(tail, head, key=edge_id)
        return digraph

    def __repr__(self):
        return f"Orientation({len(self._arcs)} arcs)"


class Z3Boundary(Mapping):
    """Residues mod 3 per vertex, summing to 0 mod 3."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping):
        residues = {str(v): int(values[v]) % 3 for v in values}
        if sum(residues.values()) % 3:
            raise GraphError("a Z3-boundary must sum to 0 mod 3")
        self._values = MappingProxyType({v: residues[v] for v in sorted(residues, key=natural_key)})

    @classmethod
    def zero(cls, vertices: Iterable[str]) -> "Z3Boundary":
        return cls({v: 0 for v in vertices})

    def __getitem__(self, v):
        return self._values[v]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __sub__(self, other: Mapping) -> "Z3Boundary":
        return Z3Boundary({v: self._values[v] - other.get(v, 0) for v in self._values})

    def __add__(self, other: Mapping) -> "Z3Boundary":
        return Z3Boundary({v: self._values[v] + other.get(v, 0) for v in self._values})

    def as_tuple(self) -> tuple:
        return tuple(self._values.values())

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._values) == {str(v): other[v] % 3 for v in other}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._values.items()))

    def __repr__(self):
        return f"Z3Boundary({dict(self._values)})"


def iter_boundaries(vertices: Sequence[str]) -> Iterator[Z3Boundary]:
    """
    All Z3-boundaries on ``vertices`` in canonical order: lexicographic in the
    values of the vertices sorted by id, the last vertex fixed by the sum.
    """
    ordered = sorted(vertices, key=natural_key)
    if not ordered:
        return
    *free, reference = ordered
    for values in product(range(3), repeat=len(free)):
        yield Z3Boundary({**dict(zip(free, values)), reference: -sum(values)})


class FlowAssignment:
    """An orientation with a positive value below ``k`` on every edge."""

    __slots__ = ("orientation", "values", "k")

    def __init__(self, orientation: Orientation, values: Mapping, k: int):
        for edge_id, value in values.items():
            if not 0 < value < k:
                raise GraphError(f"flow value {value} on {edge_id!r} is outside 1..{k - 1}")
        if set(values) != set(orientation):
            raise GraphError("flow values and orientation cover different edges")
        self.orientation = orientation
        self.values = MappingProxyType(dict(values))
        self.k = k

    def net_outflow(self) -> Counter:
        net = Counter()
        for edge_id, (tail, head) in self.orientation.items():
            net[tail] += self.values[edge_id]
            net[head] -= self.values[edge_id]
        return net

    def __repr__(self):
        return f"FlowAssignment(k={self.k}, m={len(self.values)})"


# -- surgery -----------------------------------------------------------------


def contract_subgraph(g: Multigraph, h: Iterable[str]) -> Multigraph:
    """G/H: collapse every component of the edge set ``h``; loops are deleted."""
    h = set(h)
    if not h:
        raise SurgeryError("cannot contract an empty edge set")
    merged = nx.Graph()
    for edge_id in h:
        merged.add_edge(*g.endpoints(edge_id))
    representative = {}
    for component in nx.connected_components(merged):
        keep = least(component)
        for v in component:
            representative[v] = keep

    rename = lambda v: representative.get(v, v)  # noqa: E731
    edges = {}
    for edge_id, (u, v) in g.edges.items():
        if edge_id in h:
            continue
        ends = (rename(u), rename(v))
        if ends[0] != ends[1]:
            edges[edge_id] = ends
    dropped = g.size - len(h) - len(edges)
    if dropped:
        logger.debug("contraction deleted %d loop(s)", dropped)
    return Multigraph({rename(v) for v in g.vertices}, edges)


def contract_edge(g: Multigraph, edge_id: str) -> Multigraph:
    return contract_subgraph(g, {edge_id})


def lift_pair(g: Multigraph, v: str, a: str, b: str, via: Sequence[str] | None = None) -> Multigraph:
    """
    G_[v,ab] = G - va - vb + ab. ``via`` picks the two edge ids when va or vb
    is parallel; otherwise the least ids are used.
    """
    if a == b:
        raise SurgeryError("lifting two edges to the same neighbor would create a loop")
    if via is None:
        va, vb = g.edges_between(v, a), g.edges_between(v, b)
        if not va or not vb:
            raise SurgeryError(f"{v!r} is not adjacent to both {a!r} and {b!r}")
        via = (va[0], vb[0])
    ea, eb = via
    if ea == eb or set(g.endpoints(ea)) != {v, a} or set(g.endpoints(eb)) != {v, b}:
        raise SurgeryError(f"edges {ea!r}, {eb!r} are not {v}{a} and {v}{b}")
    new_id = g.fresh_edge_id()
    return g.without_edges((ea, eb)).with_edges({new_id: (a, b)})


def path_vertices(g: Multigraph, path: Sequence[str]) -> list:
    """Vertex sequence of a simple path given by edge ids."""
    if not path:
        raise SurgeryError("empty path")
    if len(set(path)) != len(path):
        raise SurgeryError("path repeats an edge")
    first = g.endpoints(path[0])
    if len(path) == 1:
        walk = list(first)
    else:
        nxt = set(g.endpoints(path[1]))
        start = first[0] if first[1] in nxt else first[1]
        walk = [start]
        for edge_id in path:
            walk.append(g.other_end(edge_id, walk[-1]))
    if len(set(walk)) != len(walk):
        raise SurgeryError("edge sequence is not a simple path with distinct ends")
    return walk


def lift_path(g: Multigraph, path: Sequence[str]) -> Multigraph:
    """Replace the u-v path ``path`` by one new edge uv."""
    walk = path_vertices(g, path)
    new_id = g.fresh_edge_id()
    return g.without_edges(path).with_edges({new_id: (walk[0], walk[-1])})


def two_sum(a: Multigraph, b: Multigraph, ea: str, eb: str, flip=False) -> Multigraph:
    """
    A (+)_2 B glued along ``ea`` and ``eb``: the ends of ``eb`` are identified
    with the ends of ``ea`` (reversed when ``flip``) and the two edges become
    one shared edge keeping the id ``ea``.
    """
    au, av = a.endpoints(ea)
    bu, bv = b.endpoints(eb)
    if flip:
        bu, bv = bv, bu
    if (set(a.vertices) - {au, av}) & set(b.vertices) or (set(b.vertices) - {bu, bv}) & set(a.vertices):
        raise SurgeryError("vertex sets overlap beyond the identified pair")
    m1, m2 = least((au, bu)), least((av, bv))
    if m1 == m2:
        raise SurgeryError("the pairing identifies both ends of the shared edge")
    a2 = a.relabel({au: m1, av: m2})
    b2 = b.relabel({bu: m1, bv: m2})
    if set(a2.vertices) & set(b2.vertices) != {m1, m2}:
        raise SurgeryError("vertex sets overlap beyond the identified pair")
    b_edges = {e: ends for e, ends in b2.edges.items() if e != eb}
    if set(b_edges) & set(a2.edges):
        raise SurgeryError("edge ids of the two summands overlap")
    return Multigraph(set(a2.vertices) | set(b2.vertices), {**a2.edges, **b_edges})


# -- predicates --------------------------------------------------------------


def is_connected(g: Multigraph) -> bool:
    if g.order == 0:
        return False
    return nx.is_connected(g.to_networkx())


def is_2edge_connected(g: Multigraph) -> bool:
    """Connected and bridgeless; K1 counts, the empty graph does not."""
    if g.order == 0:
        return False
    if g.order == 1:
        return True
    multigraph = g.to_networkx()
    return nx.is_connected(multigraph) and not nx.has_bridges(multigraph)


def is_strongly_connected(g: Multigraph, d: Orientation) -> bool:
    d.check(g)
    if g.order <= 1:
        return g.order == 1
    return nx.is_strongly_connected(d.to_networkx(g))


def boundary_of(g: Multigraph, d: Orientation) -> Z3Boundary:
    d.check(g)
    net = d.imbalance()
    return Z3Boundary({v: net[v] for v in g.vertices})
