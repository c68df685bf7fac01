from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flows.certify import attach_piece, complete_graph
from flows.graph import Multigraph
from flows.tritree import TriTreeSeq, gen_wheel

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def tritree_sequences(draw, min_order=3, max_order=7):
    order = draw(st.integers(min_value=min_order, max_value=max_order))
    seq = TriTreeSeq(("0", "1", "2"))
    for new in range(3, order):
        pairs = seq.pairs()
        y, z = pairs[draw(st.integers(min_value=0, max_value=len(pairs) - 1))]
        seq = TriTreeSeq(seq.base, seq.attach + ((str(new), y, z),))
    return seq


@st.composite
def tritree_graphs(draw, min_order=3, max_order=6, max_extra=2):
    """A triangle-tree plus a few extra (possibly parallel) edges."""
    g = draw(tritree_sequences(min_order, max_order)).as_graph()
    extra = draw(st.integers(min_value=0, max_value=max_extra))
    for _ in range(extra):
        u = draw(st.sampled_from(g.vertices))
        v = draw(st.sampled_from([w for w in g.vertices if w != u]))
        g = g.with_edges({g.fresh_edge_id(): (u, v)})
    return g


@st.composite
def multigraphs(draw, min_order=1, max_order=5, max_size=8, connected=False):
    order = draw(st.integers(min_value=min_order, max_value=max_order))
    vertices = [str(i) for i in range(order)]
    pairs = []
    if connected:
        for i in range(1, order):
            pairs.append((str(draw(st.integers(min_value=0, max_value=i - 1))), str(i)))
    if order >= 2:
        pair = st.tuples(st.sampled_from(vertices), st.sampled_from(vertices)).filter(lambda p: p[0] != p[1])
        pairs += draw(st.lists(pair, max_size=max(0, max_size - len(pairs))))
    return Multigraph.from_pairs(pairs, vertices=vertices)


@st.composite
def relabelings(draw, g: Multigraph):
    shuffled = draw(st.permutations(g.vertices))
    return {v: f"v{w}" for v, w in zip(g.vertices, shuffled)}


@st.composite
def two_sum_graphs(draw, max_order=9, max_pieces=4):
    """Triangles, K4s and W5s 2-summed one onto another at random edges."""
    pieces = st.sampled_from([complete_graph(("0", "1", "2")), gen_wheel(3), gen_wheel(5)])
    g = draw(pieces)
    for _ in range(draw(st.integers(min_value=0, max_value=max_pieces - 1))):
        piece = draw(pieces)
        if g.order + piece.order - 2 > max_order:
            continue
        edge_id = draw(st.sampled_from(g.edge_ids))
        piece_edge = draw(st.sampled_from(piece.edge_ids))
        g = attach_piece(g, piece, edge_id, piece_edge, flip=draw(st.booleans()))
    return g
