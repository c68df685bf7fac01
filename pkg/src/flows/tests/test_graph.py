from django.test import SimpleTestCase
from hypothesis import assume, given
from hypothesis import strategies as st

from flows.exceptions import GraphError, SurgeryError, UnknownEdge, UnknownVertex
from flows.graph import (
    FlowAssignment,
    Multigraph,
    Orientation,
    Z3Boundary,
    boundary_of,
    contract_edge,
    contract_subgraph,
    is_2edge_connected,
    is_connected,
    is_strongly_connected,
    iter_boundaries,
    lift_pair,
    lift_path,
    natural_key,
    two_sum,
)
from flows.tests.strategies import PROPERTY_SETTINGS, multigraphs, relabelings, tritree_graphs
from flows.tritree import gen_book, gen_wheel, k4


def triangle(a="0", b="1", c="2", prefix="e"):
    return Multigraph.from_pairs([(a, b), (a, c), (b, c)], prefix=prefix)


def cycle(n):
    return Multigraph.from_pairs([(str(i), str((i + 1) % n)) for i in range(n)])


def digon():
    return Multigraph.from_pairs([("0", "1"), ("0", "1")])


class MultigraphTests(SimpleTestCase):
    def test_rejects_loops(self):
        with self.assertRaises(GraphError):
            Multigraph(["0"], {"e0": ("0", "0")})

    def test_rejects_unknown_endpoint(self):
        with self.assertRaises(UnknownVertex):
            Multigraph(["0"], {"e0": ("0", "1")})

    def test_rejects_duplicate_edge_ids(self):
        with self.assertRaises(GraphError):
            Multigraph(["0", "1"], [("e0", "0", "1"), ("e0", "1", "0")])

    def test_natural_order(self):
        self.assertEqual(sorted(["e10", "e2", "e1"], key=natural_key), ["e1", "e2", "e10"])
        g = Multigraph.from_pairs([(str(i), str(i + 1)) for i in range(11)])
        self.assertEqual(g.vertices[-2:], ("10", "11"))

    def test_degree_counts_parallel_edges(self):
        g = digon().with_edges({"e2": ("0", "1")})
        self.assertEqual(g.degree("0"), 3)
        self.assertEqual(g.multiplicity("1", "0"), 3)
        self.assertEqual(list(g.parallel_pairs()), [("e0", "e1")])

    def test_fresh_ids_skip_used_ones(self):
        g = Multigraph(["0", "1", "2"], {"e3": ("0", "1")})
        self.assertEqual(g.fresh_edge_id(), "e1")
        self.assertEqual(g.fresh_vertex_id(), "3")
        self.assertEqual(g.fresh_vertex_id(taken=["3"]), "4")

    def test_unknown_edge(self):
        with self.assertRaises(UnknownEdge):
            triangle().endpoints("e9")

    def test_isomorphism_respects_multiplicity(self):
        doubled = triangle().with_edges({"e3": ("0", "1")})
        other = triangle("a", "b", "c").with_edges({"e3": ("b", "c")})
        self.assertTrue(doubled.is_isomorphic(other))
        tripled = doubled.with_edges({"e4": ("0", "1")})
        spread = doubled.with_edges({"e4": ("1", "2")})
        self.assertFalse(tripled.is_isomorphic(spread))

    @PROPERTY_SETTINGS
    @given(st.data())
    def test_fingerprint_is_invariant_under_relabeling(self, data):
        g = data.draw(tritree_graphs())
        renamed = g.relabel(data.draw(relabelings(g)))
        self.assertEqual(g.fingerprint(), renamed.fingerprint())
        self.assertTrue(g.is_isomorphic(renamed))

    @PROPERTY_SETTINGS
    @given(multigraphs())
    def test_handshake(self, g):
        self.assertEqual(sum(g.degree(v) for v in g.vertices), 2 * g.size)


class ContractionTests(SimpleTestCase):
    def test_triangle_edge_gives_digon(self):
        g = contract_edge(triangle(), "e0")
        self.assertEqual((g.order, g.size), (2, 2))
        self.assertTrue(g.has_parallel_edges())

    def test_digon_edge_gives_k1(self):
        self.assertTrue(contract_edge(digon(), "e0").is_k1())

    def test_k4_edge(self):
        g = contract_edge(k4(), k4().edges_between("0", "1")[0])
        self.assertEqual((g.order, g.size), (3, 5))
        self.assertEqual(g.multiplicity("0", "2"), 2)
        self.assertEqual(g.multiplicity("0", "3"), 2)
        self.assertEqual(g.multiplicity("2", "3"), 1)

    def test_k4_triangle_gives_three_parallel_edges(self):
        g = k4()
        h = g.edges_between("1", "2") + g.edges_between("1", "3") + g.edges_between("2", "3")
        contracted = contract_subgraph(g, h)
        self.assertEqual(contracted.vertices, ("0", "1"))
        self.assertEqual(contracted.multiplicity("0", "1"), 3)

    def test_book_triangle_gives_digon(self):
        b2 = gen_book(4)
        h = b2.edges_between("0", "1") + b2.edges_between("0", "2") + b2.edges_between("1", "2")
        contracted = contract_subgraph(b2, h)
        self.assertEqual(contracted.vertices, ("0", "3"))
        self.assertEqual(contracted.multiplicity("0", "3"), 2)

    def test_spanning_connected_set_gives_k1(self):
        g = gen_wheel(5)
        self.assertTrue(contract_subgraph(g, g.edge_ids).is_k1())

    def test_empty_set_is_rejected(self):
        with self.assertRaises(SurgeryError):
            contract_subgraph(triangle(), [])

    def test_merged_vertex_keeps_least_id(self):
        g = Multigraph(["a10", "a2", "b"], {"e0": ("a10", "a2"), "e1": ("a10", "b"), "e2": ("a2", "b")})
        self.assertEqual(contract_edge(g, "e0").vertices, ("a2", "b"))

    @PROPERTY_SETTINGS
    @given(multigraphs(min_order=2, connected=True), st.data())
    def test_contraction_keeps_other_edge_ids(self, g, data):
        h = data.draw(st.sets(st.sampled_from(g.edge_ids), min_size=1))
        contracted = contract_subgraph(g, h)
        self.assertTrue(set(contracted.edge_ids) <= set(g.edge_ids) - h)


class LiftingTests(SimpleTestCase):
    def test_path_lifts_to_one_edge(self):
        g = Multigraph.from_pairs([("a", "v"), ("v", "b")])
        lifted = lift_pair(g, "v", "a", "b")
        self.assertEqual(lifted.size, 1)
        self.assertEqual(lifted.multiplicity("a", "b"), 1)
        self.assertEqual(lifted.degree("v"), 0)

    def test_k4(self):
        g = Multigraph.from_pairs([("v", "a"), ("v", "b"), ("v", "c"), ("a", "b"), ("a", "c"), ("b", "c")])
        lifted = lift_pair(g, "v", "a", "b")
        self.assertEqual(lifted.size, 5)
        self.assertEqual(lifted.multiplicity("a", "b"), 2)
        self.assertEqual(lifted.neighbors("v"), ("c",))

    def test_wheel_opposite_spokes(self):
        lifted = lift_pair(gen_wheel(4), "0", "1", "3")
        self.assertEqual(lifted.neighbors("0"), ("2", "4"))
        self.assertEqual(lifted.multiplicity("1", "3"), 1)
        self.assertEqual(lifted.size, 7)

    def test_same_neighbor_is_rejected(self):
        g = Multigraph.from_pairs([("v", "a"), ("v", "a")])
        with self.assertRaises(SurgeryError):
            lift_pair(g, "v", "a", "a")

    def test_missing_edge_is_rejected(self):
        with self.assertRaises(SurgeryError):
            lift_pair(cycle(4), "0", "1", "2")

    def test_via_picks_parallel_edges(self):
        g = Multigraph.from_pairs([("v", "a"), ("v", "a"), ("v", "b")])
        lifted = lift_pair(g, "v", "a", "b", via=("e1", "e2"))
        self.assertEqual(lifted.edges_between("v", "a"), ("e0",))

    def test_single_edge_path(self):
        lifted = lift_path(triangle(), ["e0"])
        self.assertTrue(lifted.is_isomorphic(triangle()))
        self.assertNotIn("e0", lifted.edges)

    def test_three_edges_of_a_square(self):
        lifted = lift_path(cycle(4), ["e0", "e1", "e2"])
        self.assertEqual(lifted.multiplicity("0", "3"), 2)
        self.assertEqual(lifted.size, 2)

    def test_two_edges_of_a_pentagon(self):
        lifted = lift_path(cycle(5), ["e0", "e1"])
        self.assertEqual(lifted.size, 4)
        self.assertEqual(lifted.degree("1"), 0)
        self.assertTrue(lifted.without_vertices(["1"]).is_isomorphic(cycle(4)))

    def test_closed_walk_is_rejected(self):
        with self.assertRaises(SurgeryError):
            lift_path(triangle(), ["e0", "e2", "e1"])

    def test_unknown_edge_in_a_path(self):
        with self.assertRaises(UnknownEdge):
            lift_path(triangle(), ["e9"])
        with self.assertRaises(UnknownEdge):
            lift_path(cycle(4), ["e0", "e7"])

    @PROPERTY_SETTINGS
    @given(multigraphs(min_order=3, max_order=6, max_size=10, connected=True), st.data())
    def test_splitting_the_lifted_edge_restores_the_graph(self, g, data):
        pairs = [
            (v, ea, eb)
            for v in g.vertices
            for ea in g.incident(v)
            for eb in g.incident(v)
            if ea != eb and g.other_end(ea, v) != g.other_end(eb, v)
        ]
        assume(pairs)
        v, ea, eb = data.draw(st.sampled_from(pairs))
        a, b = g.other_end(ea, v), g.other_end(eb, v)
        lifted = lift_pair(g, v, a, b, via=(ea, eb))
        (new_id,) = set(lifted.edge_ids) - set(g.edge_ids)
        self.assertEqual(set(lifted.endpoints(new_id)), {a, b})
        restored = lifted.without_edges([new_id]).with_edges({ea: g.endpoints(ea), eb: g.endpoints(eb)})
        self.assertEqual(restored.vertices, g.vertices)
        self.assertEqual(dict(restored.edges), dict(g.edges))


class TwoSumTests(SimpleTestCase):
    def test_two_triangles_give_book(self):
        g = two_sum(triangle(), triangle("a", "b", "c", prefix="f"), "e0", "f0")
        self.assertEqual((g.order, g.size), (4, 5))
        self.assertTrue(g.is_isomorphic(gen_book(4)))

    def test_k4_and_triangle(self):
        g = two_sum(k4(), triangle("a", "b", "c", prefix="f"), "e0", "f0")
        self.assertEqual((g.order, g.size), (5, 8))

    def test_digon_doubles_the_edge(self):
        other = Multigraph.from_pairs([("x", "y"), ("x", "y")], prefix="f")
        g = two_sum(triangle(), other, "e0", "f0")
        self.assertEqual(g.multiplicity(*triangle().endpoints("e0")), 2)
        self.assertEqual(g.size, 4)

    def test_overlapping_vertices_are_rejected(self):
        with self.assertRaises(SurgeryError):
            two_sum(triangle(), triangle(prefix="f"), "e0", "f1")

    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=5), tritree_graphs(max_order=5), st.data())
    def test_sizes_add_up(self, a, other, data):
        b = other.relabel({v: f"b{v}" for v in other.vertices}, {e: f"f{e}" for e in other.edge_ids})
        ea = data.draw(st.sampled_from(a.edge_ids))
        eb = data.draw(st.sampled_from(b.edge_ids))
        g = two_sum(a, b, ea, eb, flip=data.draw(st.booleans()))
        self.assertEqual(g.size, a.size + b.size - 1)
        self.assertEqual(g.order, a.order + b.order - 2)
        self.assertIn(ea, g.edges)
        self.assertNotIn(eb, g.edges)


class PredicateTests(SimpleTestCase):
    def test_two_edge_connectivity(self):
        self.assertTrue(is_2edge_connected(triangle()))
        self.assertFalse(is_2edge_connected(Multigraph.from_pairs([("0", "1"), ("1", "2")])))
        self.assertTrue(is_2edge_connected(digon()))
        self.assertTrue(is_2edge_connected(Multigraph(["0"])))
        self.assertFalse(is_2edge_connected(Multigraph()))
        self.assertFalse(is_connected(Multigraph(["0", "1"])))

    def test_strong_connectivity(self):
        g = triangle()
        self.assertTrue(is_strongly_connected(g, Orientation({"e0": ("0", "1"), "e2": ("1", "2"), "e1": ("2", "0")})))
        d = digon()
        self.assertFalse(is_strongly_connected(d, Orientation({"e0": ("0", "1"), "e1": ("0", "1")})))
        self.assertTrue(is_strongly_connected(d, Orientation({"e0": ("0", "1"), "e1": ("1", "0")})))

    @PROPERTY_SETTINGS
    @given(multigraphs(min_order=1, max_order=5, max_size=9, connected=True), st.data())
    def test_strong_orientations_need_two_edge_connectivity(self, g, data):
        reverse = data.draw(st.sets(st.sampled_from(g.edge_ids))) if g.size else set()
        if is_strongly_connected(g, Orientation.along(g, reverse)):
            self.assertTrue(is_2edge_connected(g))

    def test_orientation_must_cover_the_graph(self):
        with self.assertRaises(GraphError):
            is_strongly_connected(triangle(), Orientation({"e0": ("0", "1")}))

    def test_boundaries(self):
        g = triangle()
        d = Orientation({"e0": ("0", "1"), "e2": ("1", "2"), "e1": ("2", "0")})
        self.assertEqual(boundary_of(g, d), Z3Boundary.zero(g.vertices))
        edge = Multigraph.from_pairs([("u", "v")])
        self.assertEqual(dict(boundary_of(edge, Orientation({"e0": ("u", "v")}))), {"u": 1, "v": 2})

    def test_k4_source_vertex(self):
        g = k4()
        d = Orientation.along(g)
        beta = boundary_of(g, d)
        # "0" is the tail of all three spokes
        self.assertEqual(beta["0"], 0)
        self.assertEqual(sum(beta.values()) % 3, 0)

    def test_boundary_must_sum_to_zero(self):
        with self.assertRaises(GraphError):
            Z3Boundary({"0": 1, "1": 0})

    def test_iter_boundaries(self):
        boundaries = list(iter_boundaries(["0", "1", "2"]))
        self.assertEqual(len(boundaries), 9)
        self.assertEqual(boundaries[0], Z3Boundary.zero(["0", "1", "2"]))
        self.assertEqual(len(set(boundaries)), 9)

    def test_flow_values_stay_below_k(self):
        d = Orientation({"e0": ("0", "1")})
        with self.assertRaises(GraphError):
            FlowAssignment(d, {"e0": 3}, 3)

    @PROPERTY_SETTINGS
    @given(multigraphs(min_order=2, connected=True), st.data())
    def test_boundary_sums_to_zero(self, g, data):
        reverse = data.draw(st.sets(st.sampled_from(g.edge_ids))) if g.size else set()
        beta = boundary_of(g, Orientation.along(g, reverse))
        self.assertEqual(sum(beta.values()) % 3, 0)
