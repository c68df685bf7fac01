from unittest import mock

from django.core.cache import cache
from django.test import SimpleTestCase

from flows import corpus
from flows.certify import gen_summed_wheel, is_crystal
from flows.exceptions import OracleTooLarge
from flows.serializers import dump_graph
from flows.tasks import check_instance
from flows.tritree import find_spanning_tritree, gen_wheel, k4


class EnumerationTests(SimpleTestCase):
    def test_bare_trees(self):
        self.assertEqual(len(list(corpus.iter_instances(6, max_extra=0))), 1 + 1 + 2 + 5)

    def test_one_extra_edge(self):
        instances = list(corpus.iter_instances(4, max_extra=1))
        self.assertTrue(any(g.is_complete(4) for g in instances))
        for g in instances:
            self.assertIsNotNone(find_spanning_tritree(g))
        for i, g in enumerate(instances):
            for h in instances[i + 1 :]:
                self.assertFalse(g.is_isomorphic(h))

    def test_double_instances(self):
        for g in corpus.iter_double_instances(4):
            self.assertEqual((g.order, g.size), (4, 10))

    def test_crystals(self):
        crystals = list(corpus.iter_crystals(6))
        self.assertTrue(crystals[0].is_complete(4))
        self.assertTrue(all(is_crystal(c) for c in crystals))

    def test_two_sum_instances(self):
        instances = list(corpus.iter_two_sum_instances(5))
        self.assertEqual([g.order for g in instances[-2:]], [10, 11])
        small = instances[:-2]
        self.assertTrue(any(g.is_complete(4) for g in small))
        self.assertTrue(all(g.order <= 5 for g in small))
        for i, g in enumerate(instances):
            for h in instances[i + 1 :]:
                self.assertFalse(g.is_isomorphic(h))


class CompareTests(SimpleTestCase):
    def setUp(self):
        cache.clear()

    def test_verdicts_are_cached(self):
        counting = mock.Mock(return_value={"decider": False, "oracle": False, "agree": True})
        with mock.patch.dict(corpus.COMPARISONS, {"3nzf": counting}):
            first = corpus.compare("3nzf", k4())
            second = corpus.compare("3nzf", k4().relabel(edge_map={"e0": "x0"}))
        self.assertEqual(first, second)
        self.assertEqual(counting.call_count, 1)

    def test_skips_are_not_cached(self):
        failing = mock.Mock(side_effect=OracleTooLarge("edges", 30, 26))
        with mock.patch.dict(corpus.COMPARISONS, {"z3": failing}):
            result = corpus.compare("z3", k4())
            corpus.compare("z3", k4())
        self.assertIsNone(result["agree"])
        self.assertIn("exceeds limit 26", result["skipped"])
        self.assertEqual(failing.call_count, 2)

    def test_key_ignores_edge_ids(self):
        self.assertEqual(corpus.cache_key("z3", k4()), corpus.cache_key("z3", k4().relabel(edge_map={"e1": "q"})))
        self.assertNotEqual(corpus.cache_key("z3", k4()), corpus.cache_key("3nzf", k4()))

    def test_odd_wheel_witness(self):
        result = corpus.compare("odd_wheel", gen_summed_wheel(5))
        self.assertEqual((result["decider"], result["oracle"], result["agree"]), (True, True, True))

    def test_odd_wheel_needs_a_negative_instance(self):
        self.assertFalse(corpus.COMPARISONS["odd_wheel"](gen_wheel(4))["agree"])

    def test_task(self):
        result = check_instance.delay(dump_graph(k4()), "z3").get()
        self.assertEqual((result["decider"], result["oracle"], result["agree"]), (False, False, True))


class RunCorpusTests(SimpleTestCase):
    def setUp(self):
        cache.clear()

    def test_z3(self):
        summary = corpus.run_corpus("z3", 5, max_extra=1)
        self.assertEqual(summary.disagreements, [])
        self.assertEqual(summary.agreements, summary.instances)

    def test_s3(self):
        summary = corpus.run_corpus("s3", 4)
        self.assertGreater(summary.instances, 0)
        self.assertEqual(summary.disagreements, [])

    def test_shortcut(self):
        summary = corpus.run_corpus("shortcut", 5, max_extra=2)
        self.assertEqual(summary.disagreements, [])

    def test_odd_wheel(self):
        summary = corpus.run_corpus("odd_wheel", 6)
        self.assertGreater(summary.instances, 2)
        self.assertEqual(summary.skipped, 0)
        self.assertEqual(summary.disagreements, [])
        self.assertEqual(summary.agreements, summary.instances)

    def test_unknown_check(self):
        with self.assertRaises(ValueError):
            corpus.run_corpus("planarity", 4)
