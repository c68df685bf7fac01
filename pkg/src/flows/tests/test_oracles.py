import networkx as nx
from django.test import SimpleTestCase, override_settings
from hypothesis import assume, given
from hypothesis import strategies as st

from flows.exceptions import DisconnectedGraph, GraphError, OracleTooLarge
from flows.graph import (
    FlowAssignment,
    Multigraph,
    Orientation,
    Z3Boundary,
    boundary_of,
    is_strongly_connected,
    iter_boundaries,
)
from flows.oracles import (
    achievable_boundaries,
    flow_index_lt3,
    has_nzf,
    iter_mod3_orientations,
    mod3_orient,
    s3_member,
    verify_coloring,
    verify_flow,
    verify_orientation,
    vertex_3_colorable,
    z3_connected,
)
from flows.tests.strategies import PROPERTY_SETTINGS, multigraphs, relabelings, tritree_graphs
from flows.tritree import double2tree, gen_book, gen_wheel, k4


def parallel(count):
    return Multigraph.from_pairs([("0", "1")] * count)


def triangle():
    return Multigraph.from_pairs([("0", "1"), ("0", "2"), ("1", "2")])


def doubled_triangle():
    return Multigraph.from_pairs([("0", "1"), ("0", "1"), ("0", "2"), ("0", "2"), ("1", "2"), ("1", "2")])


def petersen():
    return Multigraph.from_pairs(nx.petersen_graph().edges)


class Mod3OrientationTests(SimpleTestCase):
    def test_digon_zero_boundary(self):
        d = mod3_orient(parallel(2), Z3Boundary.zero(["0", "1"]))
        self.assertEqual({d["e0"], d["e1"]}, {("0", "1"), ("1", "0")})

    def test_triangle_all_ones_is_impossible(self):
        self.assertIsNone(mod3_orient(triangle(), {"0": 1, "1": 1, "2": 1}))

    @PROPERTY_SETTINGS
    @given(multigraphs(min_order=2, max_size=9), st.data())
    def test_realized_boundaries_are_found(self, g, data):
        reverse = data.draw(st.sets(st.sampled_from(g.edge_ids))) if g.size else set()
        beta = boundary_of(g, Orientation.along(g, reverse))
        d = mod3_orient(g, beta)
        self.assertIsNotNone(d)
        self.assertTrue(verify_orientation(g, d, beta))

    def test_enumeration_agrees_with_brute_force(self):
        g = gen_book(4)
        beta = Z3Boundary.zero(g.vertices)
        found = {tuple(sorted(d.items())) for d in iter_mod3_orientations(g, beta)}
        brute = set()
        for mask in range(2**g.size):
            d = Orientation.along(g, [e for i, e in enumerate(g.edge_ids) if mask >> i & 1])
            if boundary_of(g, d) == beta:
                brute.add(tuple(sorted(d.items())))
        self.assertEqual(found, brute)

    def test_guardrail(self):
        with self.assertRaises(OracleTooLarge):
            mod3_orient(parallel(6), Z3Boundary.zero(["0", "1"]), edge_limit=5)

    @override_settings(TRIFLOW={"ORACLE_EDGE_LIMIT": 4, "ORACLE_VERTEX_LIMIT": 12})
    def test_guardrail_from_settings(self):
        with self.assertRaises(OracleTooLarge):
            z3_connected(parallel(5))


class FlowTests(SimpleTestCase):
    def test_k4_has_no_3_flow(self):
        self.assertIsNone(has_nzf(k4(), 3))

    def test_k4_has_a_4_flow(self):
        flow = has_nzf(k4(), 4)
        self.assertIsNotNone(flow)
        self.assertTrue(verify_flow(k4(), flow))

    def test_book_has_a_3_flow(self):
        g = gen_book(4)
        flow = has_nzf(g, 3)
        self.assertTrue(verify_flow(g, flow))
        self.assertEqual(set(flow.values.values()) - {1, 2}, set())

    def test_even_graphs_have_2_flows(self):
        flow = has_nzf(triangle(), 2)
        self.assertTrue(verify_flow(triangle(), flow, 2))
        self.assertEqual(set(flow.values.values()), {1})
        self.assertIsNone(has_nzf(k4(), 2))

    def test_large_wheel_4_flow(self):
        g = gen_wheel(8)
        flow = has_nzf(g, 4)
        self.assertIsNotNone(flow)
        self.assertTrue(verify_flow(g, flow, 4))

    def test_petersen_needs_5(self):
        g = petersen()
        self.assertIsNone(has_nzf(g, 4))
        self.assertTrue(verify_flow(g, has_nzf(g, 5), 5))

    def test_k_must_be_at_least_2(self):
        with self.assertRaises(GraphError):
            has_nzf(triangle(), 1)

    def test_bridge_has_no_flow(self):
        g = Multigraph.from_pairs([("0", "1")])
        self.assertIsNone(has_nzf(g, 3))
        self.assertIsNone(has_nzf(g, 5))

    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=5, max_extra=1))
    def test_monotone_in_k(self, g):
        if has_nzf(g, 3) is not None:
            self.assertIsNotNone(has_nzf(g, 4))

    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=6))
    def test_three_flows_verify(self, g):
        flow = has_nzf(g, 3)
        if flow is not None:
            self.assertTrue(verify_flow(g, flow, 3))


class Z3ConnectivityTests(SimpleTestCase):
    def test_triangle_and_k4_are_not_z3(self):
        self.assertFalse(z3_connected(triangle()).verdict)
        self.assertFalse(z3_connected(k4()).verdict)

    def test_digon_is_z3(self):
        report = z3_connected(parallel(2))
        self.assertTrue(report.verdict)
        self.assertEqual(report.boundaries_checked, 3)
        self.assertTrue(verify_orientation(parallel(2), report.witness, Z3Boundary.zero(["0", "1"])))

    def test_k1(self):
        self.assertTrue(z3_connected(Multigraph(["0"])).verdict)

    def test_counterexample_is_first_failure(self):
        report = z3_connected(triangle())
        beta = report.counterexample_boundary
        self.assertIsNone(mod3_orient(triangle(), beta))
        first_failure = next(b for b in iter_boundaries(triangle().vertices) if mod3_orient(triangle(), b) is None)
        self.assertEqual(beta, first_failure)

    def test_dynamic_program_matches_search(self):
        g = gen_wheel(4)
        states = achievable_boundaries(g)
        for beta in (Z3Boundary.zero(g.vertices), Z3Boundary({"0": 1, "1": 2, "2": 0, "3": 0, "4": 0})):
            self.assertEqual(beta.as_tuple() in states, mod3_orient(g, beta) is not None)

    def test_needs_a_vertex(self):
        with self.assertRaises(GraphError):
            z3_connected(Multigraph())

    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=5))
    def test_z3_implies_3_flow(self, g):
        if z3_connected(g).verdict:
            self.assertIsNotNone(has_nzf(g, 3))


class StrongTests(SimpleTestCase):
    def test_four_parallel_edges(self):
        report = s3_member(parallel(4))
        self.assertTrue(report.verdict)
        self.assertTrue(verify_orientation(parallel(4), report.witness, Z3Boundary.zero(["0", "1"]), strong=True))

    def test_digon_fails_at_one_two(self):
        report = s3_member(parallel(2))
        self.assertFalse(report.verdict)
        self.assertEqual(dict(report.counterexample_boundary), {"0": 1, "1": 2})

    def test_double_two_tree(self):
        g, _, _ = double2tree(4, seed=1)
        self.assertTrue(s3_member(g).verdict)
        self.assertTrue(flow_index_lt3(g).verdict)

    def test_k1(self):
        self.assertTrue(s3_member(Multigraph(["0"])).verdict)

    def test_disconnected_input(self):
        with self.assertRaises(DisconnectedGraph):
            s3_member(Multigraph(["0", "1"]))
        with self.assertRaises(DisconnectedGraph):
            flow_index_lt3(Multigraph(["0", "1"]))

    def test_flow_index(self):
        report = flow_index_lt3(doubled_triangle())
        self.assertTrue(report.verdict)
        self.assertTrue(is_strongly_connected(doubled_triangle(), report.witness))
        self.assertFalse(flow_index_lt3(k4()).verdict)

    @PROPERTY_SETTINGS
    @given(tritree_graphs(min_order=3, max_order=4, max_extra=3))
    def test_s3_implies_z3_and_flow_index(self, g):
        if s3_member(g).verdict:
            self.assertTrue(z3_connected(g).verdict)
            self.assertTrue(flow_index_lt3(g).verdict)


class ColoringTests(SimpleTestCase):
    def test_triangle(self):
        coloring = vertex_3_colorable(triangle())
        self.assertEqual(sorted(coloring.values()), [0, 1, 2])

    def test_k4(self):
        self.assertIsNone(vertex_3_colorable(k4()))

    def test_wheels(self):
        coloring = vertex_3_colorable(gen_wheel(4))
        self.assertTrue(verify_coloring(gen_wheel(4), coloring))
        self.assertIsNone(vertex_3_colorable(gen_wheel(5)))


class WitnessIntegrityTests(SimpleTestCase):
    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=5), st.data())
    def test_flipping_an_arc_breaks_the_boundary(self, g, data):
        beta = Z3Boundary.zero(g.vertices)
        d = mod3_orient(g, beta)
        assume(d is not None)
        victim = data.draw(st.sampled_from(g.edge_ids))
        arcs = dict(d.items())
        arcs[victim] = arcs[victim][::-1]
        self.assertTrue(verify_orientation(g, d, beta))
        self.assertFalse(verify_orientation(g, Orientation(arcs), beta))

    @PROPERTY_SETTINGS
    @given(tritree_graphs(max_order=5), st.data())
    def test_changing_a_value_breaks_conservation(self, g, data):
        flow = has_nzf(g, 3)
        assume(flow is not None)
        victim = data.draw(st.sampled_from(g.edge_ids))
        values = dict(flow.values)
        values[victim] = 3 - values[victim]
        self.assertFalse(verify_flow(g, FlowAssignment(flow.orientation, values, 3)))

    def test_missing_arc_is_rejected(self):
        g = gen_book(4)
        d = mod3_orient(g, Z3Boundary.zero(g.vertices))
        partial = Orientation({e: arc for e, arc in d.items() if e != "e0"})
        self.assertFalse(verify_orientation(g, partial))

    def test_clashing_colors_are_rejected(self):
        g = triangle()
        coloring = vertex_3_colorable(g)
        coloring["0"] = coloring["1"]
        self.assertFalse(verify_coloring(g, coloring))


class InvarianceTests(SimpleTestCase):
    @PROPERTY_SETTINGS
    @given(st.data())
    def test_relabeling_keeps_verdicts(self, data):
        g = data.draw(tritree_graphs(max_order=5))
        renamed = g.relabel(data.draw(relabelings(g)))
        self.assertEqual(z3_connected(g).verdict, z3_connected(renamed).verdict)
        self.assertEqual(has_nzf(g, 3) is None, has_nzf(renamed, 3) is None)
        self.assertEqual(vertex_3_colorable(g) is None, vertex_3_colorable(renamed) is None)
