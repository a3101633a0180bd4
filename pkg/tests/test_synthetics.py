import unittest
from unittest import TestCase

import numpy as np

from fsdnet import synthetics
from fsdnet.ego import Bin, scan_egos, rank
from fsdnet.ingest import parse_edge_list
from fsdnet.stats import FsdHistogram, conformance, fsd_array
from fsdnet.synthetics import GeneratorSpec, draw, generate
from fsdnet.utils import errors

from . import oracles


def _report(values, **kw):
    return conformance(FsdHistogram.from_values(values), chi_warn=10 ** 8, **kw)


class TestSpec(TestCase):

    def test_defaults(self):
        spec = GeneratorSpec('pinterest_min5', 10)
        self.assertEqual(spec.params.m, 5)
        self.assertEqual(spec.params.q, 0.4)
        self.assertEqual(spec.seed, 20140101)

    def test_invalid(self):
        bad = [
            dict(model='zipf', n=10),
            dict(model='log_uniform', n=0),
            dict(model='log_uniform', n=10, lo=0),
            dict(model='log_uniform', n=10, lo=10, hi=50),
            dict(model='power_law', n=10, alpha=1.0),
            dict(model='pinterest_min5', n=10, q=1.5),
            dict(model='pinterest_min5', n=10, m=0),
            dict(model='botnet_band', n=10, a=600, b=400),
            dict(model='botnet_band', n=10, a=0, b=400),
            dict(model='botnet_band', n=10, alpha=2),
            dict(model='leading_one', n=10, share=2),
            dict(model='log_uniform', n=10, seed=-1),
        ]
        for kw in bad:
            with self.assertRaises(errors.InvalidGeneratorSpec, msg=str(kw)):
                GeneratorSpec(**kw)

    def test_integral_params(self):
        spec = GeneratorSpec('log_uniform', 5, seed=1, hi=1e6)
        self.assertEqual(spec.params.hi, 10 ** 6)
        self.assertIs(type(spec.params.hi), int)
        self.assertEqual(draw(spec).dtype, np.int64)

        bots = GeneratorSpec('botnet_band', 50, seed=1, a=400.0, b=6e2)
        values = draw(bots)
        self.assertEqual(values.dtype, np.int64)
        self.assertTrue(((values >= 400) & (values <= 600)).all())

        for kw in (dict(model='log_uniform', hi=10.5 ** 6),
                   dict(model='pinterest_min5', m=4.5),
                   dict(model='botnet_band', a='400'),
                   dict(model='power_law', kmax=True)):
            with self.assertRaises(errors.InvalidGeneratorSpec, msg=str(kw)):
                GeneratorSpec(n=10, **kw)

    def test_short_span_logged(self):
        with self.assertLogs('fsdnet.synthetics.spec', level='INFO'):
            GeneratorSpec('log_uniform', 10, lo=1, hi=100)

    def test_dict_round_trip(self):
        spec = GeneratorSpec('pinterest_min5', 100, seed=3, stream=2, q=0.25)
        d = spec.to_dict()

        self.assertEqual(d['params']['q'], 0.25)
        self.assertEqual(d['rng'], 'PCG64')
        self.assertEqual(GeneratorSpec.from_dict(d), spec)

    def test_replace(self):
        spec = GeneratorSpec('power_law', 100, seed=3, alpha=2.5)
        other = spec.replace(n=7)
        self.assertEqual(other.n, 7)
        self.assertEqual(other.params.alpha, 2.5)
        self.assertEqual(spec.n, 100)


class TestDeterminism(TestCase):

    def test_same_seed_same_stream(self):
        for model in ('log_uniform', 'power_law', 'pinterest_min5',
                      'botnet_band', 'leading_one'):
            spec = GeneratorSpec(model, 5000, seed=99)
            np.testing.assert_array_equal(draw(spec), draw(spec), err_msg=model)

    def test_chunk_independent(self):
        for model in ('log_uniform', 'power_law', 'pinterest_min5',
                      'botnet_band', 'leading_one'):
            spec = GeneratorSpec(model, 1000, seed=8)
            chunked = np.concatenate(list(generate(spec, chunk_size=37)))
            np.testing.assert_array_equal(chunked, draw(spec), err_msg=model)

    def test_seeds_and_streams_differ(self):
        spec = GeneratorSpec('log_uniform', 100, seed=1)
        self.assertFalse(np.array_equal(draw(spec), draw(spec.replace(seed=2))))
        self.assertFalse(np.array_equal(draw(spec), draw(spec.replace(stream=1))))

    def test_stream_digest(self):
        spec = GeneratorSpec('power_law', 3000, seed=4)
        whole = synthetics.stream_digest([draw(spec)])

        self.assertEqual(whole, synthetics.stream_digest(generate(spec, 100)))
        self.assertEqual(len(whole), 64)
        self.assertNotEqual(whole, synthetics.stream_digest([draw(spec.replace(seed=5))]))

    # 200 values, seed 7, stream 0, default parameters
    DIGESTS = {
        'log_uniform': 'fb468edd6319d5d3c8d60eafb4e1c9c983bb62fcd69149866ee867f30dd33505',
        'power_law': '7cdc8873a295d917859a41d3940329b3c19c32a79ed46908b4d3dc0bbe3289ca',
        'pinterest_min5': '654bb32ae66c595c23f29878f856ff092670ec422398df1b93b8231ee7989929',
        'botnet_band': 'f613be6bcbed4c68c2b9503aeea205eefa0360bca2c59cb19ecb6754620a7d6b',
        'leading_one': '5218fe2bb4f5e1d640be2daf3b655a23a93cdfcc24bf15d2f2cb96dd5b3c3348',
    }

    def test_pinned_streams(self):
        for model, digest in self.DIGESTS.items():
            spec = GeneratorSpec(model, 200, seed=7)
            self.assertEqual(synthetics.stream_digest(generate(spec, 64)), digest,
                             msg=model)

    def test_pinned_values(self):
        first = {
            'log_uniform': [225, 8, 1142, 1, 18],
            'botnet_band': [478, 430, 502, 408, 442],
            'leading_one': [130, 11, 144, 18, 13],
        }
        for model, values in first.items():
            spec = GeneratorSpec(model, 200, seed=7)
            self.assertEqual(draw(spec)[:5].tolist(), values, msg=model)

    def test_make_rng(self):
        a = synthetics.make_rng(7, 1, 2).random(5)
        b = synthetics.make_rng(7, 1, 2).random(5)
        c = synthetics.make_rng(7, 1, 3).random(5)
        np.testing.assert_array_equal(a, b)
        self.assertFalse(np.array_equal(a, c))


class TestLogUniform(TestCase):

    def test_bounds(self):
        values = draw(GeneratorSpec('log_uniform', 10 ** 5, seed=2, lo=10, hi=10 ** 4))
        self.assertGreaterEqual(values.min(), 10)
        self.assertLess(values.max(), 10 ** 4)

    def test_benford(self):
        rep = _report(draw(GeneratorSpec('log_uniform', 10 ** 6, seed=20140101)))
        self.assertGreaterEqual(rep.pearson_r, 0.9999)
        self.assertLessEqual(rep.mad, 0.002)


class TestPowerLaw(TestCase):

    def test_alpha_two(self):
        values = draw(GeneratorSpec('power_law', 10 ** 5, seed=6, alpha=2))
        rep = _report(values)
        law = synthetics.expected_power_law_fsd(2)

        self.assertGreaterEqual(rep.pearson_r, 0.97)
        np.testing.assert_allclose(rep.observed, law, atol=0.01)
        self.assertAlmostEqual(rep.pearson_r, 0.9758, delta=0.005)

    def test_alpha_one_and_a_half(self):
        rep = _report(draw(GeneratorSpec('power_law', 10 ** 5, seed=6, alpha=1.5)))
        self.assertGreaterEqual(rep.pearson_r, 0.99)

    def test_bounds(self):
        values = draw(GeneratorSpec('power_law', 10 ** 4, seed=6, kmin=3, kmax=5000))
        self.assertGreaterEqual(values.min(), 3)
        self.assertLessEqual(values.max(), 5000)

    def test_steep_collapses_to_kmin(self):
        values = draw(GeneratorSpec('power_law', 10 ** 4, seed=6, alpha=60,
                                    kmin=3, kmax=3000))
        self.assertGreater(np.mean(fsd_array(values) == 3), 0.999)

    def test_expected_law(self):
        law = synthetics.expected_power_law_fsd(2)
        self.assertAlmostEqual(float(law.sum()), 1.0, delta=1e-12)
        self.assertAlmostEqual(float(law[0]), 0.5 / 0.9, delta=1e-12)
        with self.assertRaises(errors.InvalidGeneratorSpec):
            synthetics.expected_power_law_fsd(1)


class TestPinterest(TestCase):

    def test_five_spike(self):
        spec = GeneratorSpec('pinterest_min5', 10 ** 5, seed=12, m=5, q=0.4)
        rep = _report(draw(spec))
        baseline = _report(draw(GeneratorSpec('log_uniform', 10 ** 5, seed=12)))

        self.assertGreater(rep.observed[4], 2 * 0.079)
        self.assertGreater(rep.observed[4], 0.4)
        self.assertLess(rep.pearson_r, baseline.pearson_r)

    def test_floor(self):
        values = draw(GeneratorSpec('pinterest_min5', 10 ** 4, seed=12))
        self.assertGreaterEqual(values.min(), 5)

    def test_q_one_is_point_mass(self):
        values = draw(GeneratorSpec('pinterest_min5', 1000, seed=12, q=1))
        self.assertTrue((values == 5).all())

    def test_q_zero_is_power_law(self):
        pin = GeneratorSpec('pinterest_min5', 5000, seed=13, q=0, kmin=5)
        law = GeneratorSpec('power_law', 5000, seed=13, kmin=5)
        np.testing.assert_array_equal(draw(pin), draw(law))


class TestBotnetBand(TestCase):

    def test_band(self):
        values = draw(GeneratorSpec('botnet_band', 10 ** 4, seed=3, a=400, b=600))
        self.assertGreaterEqual(values.min(), 400)
        self.assertLessEqual(values.max(), 600)
        self.assertEqual(set(fsd_array(values).tolist()), {4, 5, 6})

    def test_not_benford(self):
        rep = _report(draw(GeneratorSpec('botnet_band', 100, seed=3)))
        self.assertLess(rep.pearson_r, 0.5)

    def test_single_value(self):
        values = draw(GeneratorSpec('botnet_band', 50, seed=3, a=7, b=7))
        self.assertTrue((values == 7).all())


class TestLeadingOne(TestCase):

    def test_exact_share(self):
        values = draw(GeneratorSpec('leading_one', 2000, seed=9, share=0.945))
        digits = fsd_array(values)

        self.assertEqual(int((digits == 1).sum()), 1890)
        self.assertGreaterEqual(values.min(), 10)
        self.assertLess(values.max(), 10 ** 4)

    def test_fails_benford(self):
        rep = _report(draw(GeneratorSpec('leading_one', 2000, seed=9)))
        self.assertGreater(rep.deviation_pct[0], 200)
        self.assertLess(rep.pearson_r, 0.9)


class TestGraph(TestCase):

    def test_round_trip_degrees(self):
        plans = synthetics.plan_egos([0, 1, 2], 20, GeneratorSpec('power_law', 1, seed=1,
                                                                   kmax=50))
        graph = parse_edge_list(synthetics.build_synthetic_graph(plans),
                                keep_adjacency=True)

        for plan in plans:
            degrees = [graph.degree(f) for f in graph.friends(plan.user)]
            self.assertEqual(degrees, plan.degrees.tolist())

    def test_benford_multiset_ego(self):
        plan = synthetics.EgoPlan(0, oracles.benford_multiset(1000))
        graph = parse_edge_list(synthetics.build_synthetic_graph([plan]),
                                keep_adjacency=True)
        reports, _ = scan_egos(graph)
        report, = [r for r in reports if r.user == 0]
        self.assertAlmostEqual(report.r, 1.0, delta=1e-4)

    def test_invalid_plans(self):
        bad = [
            [synthetics.EgoPlan(0, [3, 0])],
            [synthetics.EgoPlan(0, [])],
            [synthetics.EgoPlan(0, [1]), synthetics.EgoPlan(0, [2])],
        ]
        for plans in bad:
            with self.assertRaises(errors.InvalidGeneratorSpec):
                list(synthetics.build_synthetic_graph(plans))

        with self.assertRaises(errors.InvalidGeneratorSpec):
            list(synthetics.build_synthetic_graph([synthetics.EgoPlan(4, [1])],
                                                  first_friend=3))
        with self.assertRaises(errors.InvalidGeneratorSpec):
            synthetics.plan_egos([0], 0, GeneratorSpec('log_uniform', 1))

    def test_detection_across_seeds(self):
        seeds = range(oracles.scale(3, 50))
        hits = 0

        for seed in seeds:
            good = GeneratorSpec('log_uniform', 1, seed=seed, lo=1, hi=100)
            bots = GeneratorSpec('botnet_band', 1, seed=seed, stream=100)
            plans = (synthetics.plan_egos(range(100), 100, good)
                     + synthetics.plan_egos(range(100, 110), 100, bots))

            graph = parse_edge_list(synthetics.build_synthetic_graph(plans),
                                    keep_adjacency=True)
            reports, summary = scan_egos(graph)
            injected = {r.user for r in reports
                        if r.user >= 100 and r.bin is Bin.SUSPICIOUS and r.user < 110}
            lowest = {r.user for r in rank(reports)[:10]}

            hits += injected == set(range(100, 110)) and lowest == injected

        self.assertGreaterEqual(hits / len(seeds), 0.95)


class TestIdSampling(TestCase):

    def test_stride_bound(self):
        n = sum(1 for _ in synthetics.simulate_id_sampling(10 ** 9, 50000))
        self.assertLessEqual(n, 20001)

    def test_no_misses(self):
        self.assertEqual(list(synthetics.simulate_id_sampling(1000, 7)),
                         list(range(0, 1000, 7)))

    def test_misses_increasing(self):
        ids = list(synthetics.simulate_id_sampling(10 ** 5, 100, miss=0.3, seed=1))
        self.assertTrue(all(b > a for a, b in zip(ids, ids[1:])))
        self.assertGreater(len(ids), 10 ** 5 / 101 * 0.5)

    def test_invalid(self):
        with self.assertRaises(errors.ConfigError):
            list(synthetics.simulate_id_sampling(100, 0))
        with self.assertRaises(errors.ConfigError):
            list(synthetics.simulate_id_sampling(100, 5, miss=1.0))

    def test_unbiased_subsample(self):
        population = draw(GeneratorSpec('log_uniform', 10 ** 6, seed=21))
        ids = np.fromiter(synthetics.simulate_id_sampling(10 ** 6, 10, miss=0.1,
                                                          seed=21), dtype=np.int64)
        rep = _report(population[ids])
        self.assertGreaterEqual(rep.pearson_r, 0.999)


if __name__ == '__main__':
    unittest.main()
