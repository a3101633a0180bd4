import unittest
from unittest import TestCase

import numpy as np

from fsdnet import ego
from fsdnet.ego import Bin, ClassificationThresholds, EgoScan, classify
from fsdnet.ingest import parse_edge_list
from fsdnet.synthetics import GeneratorSpec, draw
from fsdnet.utils import errors

from . import oracles


def _star(user, degrees, next_id):
    """Edges for one ego whose friends have the given out-degrees"""
    lines, filler = [], 10 ** 9
    for k in degrees:
        lines.append(f'{user} {next_id}')
        lines += [f'{next_id} {filler + j}' for j in range(k)]
        next_id += 1
    return lines, next_id


class TestThresholds(TestCase):

    def test_defaults(self):
        t = ClassificationThresholds()
        self.assertEqual(t, (0.9, 0.5, 100))

    def test_order(self):
        with self.assertRaises(errors.InvalidThresholds):
            ClassificationThresholds(0.5, 0.9)
        with self.assertRaises(errors.InvalidThresholds):
            ClassificationThresholds(0.9, 0.9)
        with self.assertRaises(errors.InvalidThresholds):
            ClassificationThresholds(min_degree=0)


class TestClassify(TestCase):

    def test_bins(self):
        self.assertIs(classify(0.95), Bin.CONFORMANT)
        self.assertIs(classify(0.3), Bin.SUSPICIOUS)
        self.assertIs(classify(0.7), Bin.INTERMEDIATE)
        self.assertIs(classify(None), Bin.UNDEFINED)

    def test_boundaries(self):
        self.assertIs(classify(0.9), Bin.CONFORMANT)
        self.assertIs(classify(0.5), Bin.INTERMEDIATE)

    def test_monotone(self):
        order = [Bin.SUSPICIOUS, Bin.INTERMEDIATE, Bin.CONFORMANT]
        ranks = [order.index(classify(r)) for r in np.linspace(-1, 1, 401)]
        self.assertEqual(ranks, sorted(ranks))


class TestEgoHistogram(TestCase):

    def setUp(self):
        lines, _ = _star(1, [150, 23, 9, 1024], 100)
        lines.append('2 3')
        self.graph = parse_edge_list(lines, keep_adjacency=True)

    def test_friend_degrees(self):
        hist = ego.ego_histogram(self.graph, 1)
        self.assertEqual(hist.count(1), 2)
        self.assertEqual(hist.count(2), 1)
        self.assertEqual(hist.count(9), 1)
        self.assertEqual(hist.total, 4)

    def test_no_friends(self):
        hist = ego.ego_histogram(self.graph, 3)
        self.assertEqual(hist.total, 0)
        self.assertEqual(hist.excluded_zero, 0)

    def test_zero_degree_friend(self):
        hist = ego.ego_histogram(self.graph, 2)
        self.assertEqual(hist.excluded_zero, 1)

    def test_unknown_user(self):
        with self.assertRaises(errors.UnknownUser):
            ego.ego_histogram(self.graph, 404)

    def test_in_degree(self):
        hist = ego.ego_histogram(self.graph, 2, degree='in')
        self.assertEqual(hist.count(1), 1)

    def test_external_degrees(self):
        report = ego.ego_report(self.graph, 1, degrees={100: 7, 101: 8})
        self.assertEqual(report.hist.count(7), 1)
        self.assertEqual(report.hist.count(8), 1)
        self.assertEqual(report.missing, 2)
        self.assertEqual(report.ego_size, 2)


class TestEgoReport(TestCase):

    def test_benford_multiset_is_conformant(self):
        report = ego.report_from_degrees(1, oracles.benford_multiset(10 ** 4))
        self.assertAlmostEqual(report.r, 1.0, delta=1e-6)
        self.assertIs(report.bin, Bin.CONFORMANT)

    def test_band_is_suspicious(self):
        degrees = draw(GeneratorSpec('botnet_band', 100, seed=5, a=400, b=600))
        report = ego.report_from_degrees(1, degrees)
        self.assertLess(report.r, 0.5)
        self.assertIs(report.bin, Bin.SUSPICIOUS)

    def test_all_zero_is_undefined(self):
        report = ego.report_from_degrees(1, [0] * 120)
        self.assertIsNone(report.report)
        self.assertIs(report.bin, Bin.UNDEFINED)
        self.assertEqual(report.ego_size, 120)

    def test_single_digit_ego(self):
        report = ego.report_from_degrees(1, [3] * 100)
        self.assertIsNotNone(report.r)  # point mass still has variance
        self.assertIs(report.bin, Bin.SUSPICIOUS)

    def test_to_dict(self):
        d = ego.report_from_degrees(9, [1, 2, 3]).to_dict()
        self.assertEqual(d['user'], 9)
        self.assertEqual(d['ego_size'], 3)
        self.assertIsNotNone(d['report'])
        self.assertEqual(d['bin'], classify(d['pearson_r']).value)

    def test_conformant_band(self):
        """Most egos of 100 log-uniform friends correlate over 0.9"""
        egos = oracles.scale(20000, 100000)
        degrees = draw(GeneratorSpec('log_uniform', egos * 100, seed=2014))
        reports = [ego.report_from_degrees(u, row)
                   for u, row in enumerate(degrees.reshape(egos, 100))]

        r = np.array([rep.r for rep in reports])
        self.assertGreaterEqual(np.mean(r > 0.9), 0.85)
        self.assertLessEqual(np.mean(r < 0.5), 0.02)


class TestScan(TestCase):

    def _graph(self, bots=3, egos=20, seed=11):
        lines, next_id = [], 10 ** 6
        for u in range(egos):
            degrees = draw(GeneratorSpec('log_uniform', 100, seed=seed, stream=u,
                                         lo=1, hi=100))
            more, next_id = _star(u, degrees.tolist(), next_id)
            lines += more
        for u in range(egos, egos + bots):
            degrees = draw(GeneratorSpec('botnet_band', 100, seed=seed, stream=u))
            more, next_id = _star(u, degrees.tolist(), next_id)
            lines += more
        return parse_edge_list(lines, keep_adjacency=True)

    def test_bots_rank_first(self):
        graph = self._graph()
        reports, summary = ego.scan_egos(graph)
        by_user = {rep.user: rep for rep in reports}

        for u in range(20, 23):
            self.assertIs(by_user[u].bin, Bin.SUSPICIOUS)

        lowest = [rep.user for rep in ego.rank(reports)[:3]]
        self.assertEqual(sorted(lowest), [20, 21, 22])
        self.assertEqual(summary.counts[Bin.SUSPICIOUS], 3)

    def test_min_degree(self):
        graph = self._graph(bots=0, egos=5)
        reports, summary = ego.scan_egos(graph)

        self.assertEqual({rep.user for rep in reports}, set(range(5)))
        self.assertTrue(all(rep.ego_size >= 100 for rep in reports))
        self.assertEqual(summary.skipped, graph.node_count - 5)
        self.assertEqual(summary.evaluated, 5)

    def test_nothing_qualifies(self):
        graph = parse_edge_list(['1 2', '2 3'], keep_adjacency=True)
        reports, summary = ego.scan_egos(graph)

        self.assertEqual(reports, [])
        self.assertEqual(summary.evaluated, 0)
        self.assertEqual(summary.skipped, 3)
        self.assertEqual(summary.fraction_at_least(), 0.0)

    def test_empty_graph(self):
        reports, summary = ego.scan_egos(parse_edge_list([], keep_adjacency=True))
        self.assertEqual(reports, [])
        self.assertEqual(summary.to_dict()['bins'],
                         {'conformant': 0, 'intermediate': 0,
                          'suspicious': 0, 'undefined': 0})

    def test_needs_adjacency(self):
        with self.assertRaises(errors.ConfigError):
            EgoScan(parse_edge_list(['1 2']))

    def test_order_independent(self):
        graph = self._graph(bots=2, egos=6)
        lines = [f'{u} {f}' for u, fs in graph.adjacency.items() for f in fs]
        shuffled = parse_edge_list(reversed(lines), keep_adjacency=True)

        a, sa = ego.scan_egos(graph)
        b, sb = ego.scan_egos(shuffled)
        self.assertEqual(set(a), set(b))
        self.assertEqual(sa.to_dict(), sb.to_dict())

    def test_missing_friends(self):
        lines, _ = _star(1, [5] * 100, 100)
        lines.append('1 555')  # dangling: known only as a target
        graph = parse_edge_list(lines, keep_adjacency=True, track_in_degree=False)
        report, = [r for r in EgoScan(graph) if r.user == 1]

        self.assertEqual(report.missing, 1)
        self.assertEqual(report.ego_size, 100)

    def test_top_deviating(self):
        reports = [ego.report_from_degrees(u, d) for u, d in
                   enumerate([[400] * 50, oracles.benford_multiset(100), [0] * 10,
                              [5, 55, 555, 6]])]
        top = ego.top_deviating(reports, 2)

        self.assertEqual([r.user for r in top], [3, 0])
        self.assertNotIn(2, [r.user for r in ego.top_deviating(reports)])

    def test_fractions_skip_undefined(self):
        summary = ego.EgoSummary(ClassificationThresholds())
        for degrees in ([1, 2, 3, 1, 1, 2], [0, 0], [4, 4, 4]):
            summary.add(ego.report_from_degrees(0, degrees))

        self.assertEqual(summary.evaluated, 3)
        self.assertEqual(summary.scored, 2)
        self.assertEqual(summary.fraction_below(), 0.5)


if __name__ == '__main__':
    unittest.main()
