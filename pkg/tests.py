import contextlib
import io
import itertools
import json
import os
import shutil
import sys
import tempfile
import unittest
from fractions import Fraction as F

try:
    import msgpack
except ImportError:
    msgpack = None
try:
    import numpy
except ImportError:
    numpy = None

from evreq import cli
from evreq import constants
from evreq import outcomes
from evreq import search
from evreq.agent import STATE_INDEX
from evreq.agent import AgentStrategy
from evreq.agent import PrivateState
from evreq.agent import best_response
from evreq.agent import compliant_response
from evreq.agent import continuation_value
from evreq.agent import conforming_payoff
from evreq.agent import conforming_strategy
from evreq.agent import exhaustive_optimum
from evreq.agent import follows_tie_rule
from evreq.agent import is_obedient_on_path
from evreq.agent import obedient_strategy
from evreq.agent import private_belief
from evreq.agent import retest_conforming_payoff
from evreq.agent import retest_deviation
from evreq.agent import retest_deviation_payoff
from evreq.agent import selective_deviation
from evreq.agent import selective_deviation_payoff
from evreq.constants import FD_R1_OMEGA2
from evreq.constants import HIGH
from evreq.constants import LOW
from evreq.constants import NO_SIGNAL
from evreq.constants import NULL
from evreq.constants import OB_SIGMA2_0
from evreq.constants import SAW0
from evreq.constants import SAW1
from evreq.core import Mechanism
from evreq.core import Params
from evreq.core import belief_after_report
from evreq.core import classify_region
from evreq.core import decode
from evreq.core import encode
from evreq.core import format_rational
from evreq.core import parse_rational
from evreq.core import threshold_remark_holds
from evreq.core import thresholds
from evreq.exceptions import ConfigError
from evreq.exceptions import ImproperlyConfigured
from evreq.exceptions import MechanismError
from evreq.exceptions import NotForcingError
from evreq.exceptions import NotICError
from evreq.exceptions import ParameterError
from evreq.mechanisms import baseline_mechanism
from evreq.mechanisms import baseline_region
from evreq.mechanisms import case_one_mechanism
from evreq.mechanisms import case_one_payoff
from evreq.mechanisms import case_two_mechanism
from evreq.mechanisms import case_two_payoff
from evreq.mechanisms import constant_mechanism
from evreq.mechanisms import efficient_assignments
from evreq.mechanisms import ic_check
from evreq.mechanisms import is_ic
from evreq.mechanisms import lemma_bounds_check
from evreq.mechanisms import make_forcing
from evreq.mechanisms import never_test_mechanism
from evreq.mechanisms import optimal_closed_form
from evreq.mechanisms import pi_zero_mechanism
from evreq.mechanisms import result_dependent_policy
from evreq.mechanisms import revelation_transform
from evreq.outcomes import agent_payoff
from evreq.outcomes import baseline_objective
from evreq.outcomes import baseline_payoff
from evreq.outcomes import monte_carlo_check
from evreq.outcomes import play
from evreq.outcomes import principal_payoff
from evreq.outcomes import strategic_payoff
from evreq.outcomes import to_csv
from evreq.search import PLAY_FIELDS
from evreq.search import OptimumResult
from evreq.search import RegionReport
from evreq.search import brute_force_optimum
from evreq.search import closed_form_match
from evreq.search import enumerate_all
from evreq.search import full_disclosure_set
from evreq.search import never_testing_optima
from evreq.search import oracle_spot_check
from evreq.search import parallel_map
from evreq.search import random_points
from evreq.search import region_grid
from evreq.search import regions_to_csv
from evreq.search import sweep
from evreq.search import verify_claims
from evreq.serializers import Serializer
from evreq.serializers import regions_svg


class BaseTestCase(unittest.TestCase):
    # Intermediate costs with a profitable early-test deviation.
    point = Params('7/10', '4/5', '1/2', '7/40', '17/100')
    # Same primitives, free testing.
    free = Params('7/10', '4/5', '1/2')
    case_one = Params('9/10', '4/5', '1/2', '1/4', '11/100')
    high_high = Params('7/10', '4/5', '1/2', '2/5', '1/4')
    both_low = Params('7/10', '4/5', '1/2', '1/10', '1/10')
    pi_zero = Params('7/10', '4/5', 0, '7/20', '17/50')

    def with_costs(self, params, gamma, kappa=None):
        if kappa is None:
            kappa = params.kappa
        return Params.from_costs(params, F(gamma), F(kappa))


class TestRationals(BaseTestCase):
    def test_parse_rational(self):
        self.assertEqual(parse_rational('7/10'), F(7, 10))
        self.assertEqual(parse_rational(' 3 '), F(3))
        self.assertEqual(parse_rational('-1/4'), F(-1, 4))
        self.assertEqual(parse_rational(2), F(2))
        self.assertEqual(parse_rational(F(1, 3)), F(1, 3))
        for bad in (0.5, '0.5', '1/0', 'abc', True, None):
            self.assertRaises(ParameterError, parse_rational, bad)

    def test_format_rational(self):
        self.assertEqual(format_rational(F(104, 125)), '104/125')
        self.assertEqual(format_rational(1), '1/1')


class TestParams(BaseTestCase):
    def test_validation(self):
        self.assertRaises(ParameterError, Params, '1/2', '4/5', '1/2')
        self.assertRaises(ParameterError, Params, '7/10', '1', '1/2')
        self.assertRaises(ParameterError, Params, '7/10', '4/5', '1/1')
        self.assertRaises(ParameterError, Params, '7/10', '4/5', '-1/2')
        self.assertRaises(ParameterError, Params, '7/10', '4/5', '1/2',
                          '-1/10')
        self.assertRaises(ParameterError, self.point.replace, pi=1)

    def test_effective_costs(self):
        p = self.point
        self.assertEqual(p.gamma, F(7, 20))
        self.assertEqual(p.kappa, F(17, 50))
        self.assertEqual(p.mu2_null, F(31, 50))
        q = Params.from_costs(p, F(7, 20), F(17, 50))
        self.assertEqual(q, p)

    def test_thresholds(self):
        t = thresholds(self.point)
        self.assertEqual(t.gamma_bar, F(21, 50))
        self.assertEqual(t.gamma_bar_prime, F(2, 5))
        self.assertEqual(t.kappa_bar, F(3, 5))
        self.assertEqual(t.one_minus_rho, F(3, 10))

        t = thresholds(self.case_one)
        self.assertEqual(t.gamma_bar, F(7, 50))
        self.assertEqual(t.kappa_bar, F(1, 5))

        self.assertTrue(thresholds(self.pi_zero).gamma_bar is None)
        self.assertTrue(threshold_remark_holds(self.pi_zero) is None)

    def test_threshold_remark(self):
        self.assertTrue(threshold_remark_holds(self.point))
        p = Params('7/10', '4/5', '1/10')
        self.assertEqual(thresholds(p).gamma_bar, F(93, 50))
        self.assertFalse(threshold_remark_holds(p))

    def test_lattice_invariants(self):
        for a, b, c in itertools.product(range(11, 20), range(1, 20),
                                         range(10)):
            p = Params(F(a, 20), F(b, 20), F(c, 10))
            t = thresholds(p)
            self.assertTrue(t.one_minus_rho < p.mu2_null < p.rho, p)
            self.assertTrue(min(p.mu2_null, 1 - p.mu2_null) >
                            t.one_minus_rho, p)
            if not p.pi:
                continue
            self.assertEqual(t.gamma_bar * p.pi / t.one_minus_rho +
                             (1 - p.mu0) * (1 - p.pi), p.mu0)
            self.assertEqual(t.gamma_bar > t.one_minus_rho,
                             p.mu0 > 1 / (2 - p.pi))


class TestClassification(BaseTestCase):
    def test_regions(self):
        self.assertEqual(classify_region(self.point),
                         constants.REGION_CASE_II)
        self.assertEqual(classify_region(self.case_one),
                         constants.REGION_CASE_I)
        self.assertEqual(classify_region(self.high_high),
                         constants.REGION_HIGH_HIGH)
        self.assertEqual(classify_region(self.both_low),
                         constants.REGION_BOTH_LOW)
        self.assertEqual(classify_region(self.pi_zero),
                         constants.REGION_PI_ZERO)

    def test_boundaries(self):
        boundary = self.case_one.replace(k=F(1, 10))
        self.assertEqual(classify_region(boundary),
                         constants.REGION_BOUNDARY)

        # kappa equal to its threshold but gamma below the deviation
        # threshold stays in the second case.
        low_gamma = self.with_costs(boundary, F(1, 8))
        self.assertEqual(classify_region(low_gamma),
                         constants.REGION_CASE_II)

        # Below kappa_bar the second case applies on both sides of gamma_bar.
        for gamma in ('2/5', '21/50', '1/2'):
            p = self.with_costs(self.point, F(gamma))
            self.assertEqual(classify_region(p), constants.REGION_CASE_II)

        # Intermediate kappa, gamma above mu2(null) but below rho.
        p = self.with_costs(self.point, F(13, 20))
        self.assertEqual(classify_region(p), constants.REGION_UNCOVERED)

        # Case I is empty when kappa_bar exceeds the intermediate range.
        p = self.with_costs(self.point, F(1, 2), F(19, 50))
        self.assertEqual(classify_region(p), constants.REGION_CASE_II)


class TestMechanismEncoding(BaseTestCase):
    def test_layout(self):
        mechs = enumerate_all()
        self.assertEqual(len(mechs), 8192)
        self.assertEqual(len(set(mechs)), 8192)
        self.assertEqual(mechs[0], Mechanism(0, (0, 0, 0), [0] * 9))
        self.assertEqual(mechs[4682], case_two_mechanism())
        self.assertEqual([encode(m) for m in mechs[:64]], list(range(64)))

    def test_known_indices(self):
        self.assertEqual(case_two_mechanism().index, 4682)
        self.assertEqual(case_one_mechanism().index, 7746)
        self.assertEqual(never_test_mechanism().index, 4672)
        self.assertEqual(pi_zero_mechanism().index, 66)
        self.assertEqual(baseline_mechanism(self.point).index, 5698)

    def test_decode_errors(self):
        for bad in (-1, 8192, True, '12', 1.0):
            self.assertRaises(MechanismError, decode, bad)
        self.assertRaises(MechanismError, Mechanism, 0, (0, 0), [0] * 9)
        self.assertRaises(MechanismError, Mechanism, 2, (0, 0, 0), [0] * 9)

    def test_record(self):
        mech = case_one_mechanism()
        record = mech.to_record()
        self.assertEqual(record, {
            'sigma1': 0,
            'sigma2': {'null': 1, 'low': 0, 'high': 0},
            'xhat': [[0, 0, 1], [0, 0, 1], [1, 1, 1]]})
        self.assertEqual(Mechanism.from_record(record), mech)
        self.assertEqual(Mechanism.from_record(
            json.loads(json.dumps(record))), mech)
        self.assertRaises(MechanismError, Mechanism.from_record,
                          {'sigma1': 0})
        self.assertRaises(MechanismError, Mechanism.from_record,
                          {'sigma1': 0, 'sigma2': record['sigma2'],
                           'xhat': [[0, 0, 1]]})

    def test_forcing(self):
        self.assertTrue(case_two_mechanism().is_forcing)
        mech = decode((1 << 1) | (1 << 4))
        self.assertFalse(mech.is_forcing)
        self.assertTrue(make_forcing(mech).is_forcing)
        self.assertEqual(make_forcing(mech).xhat, (0,) * 9)
        for mech in (case_two_mechanism(), constant_mechanism(1)):
            self.assertEqual(make_forcing(mech), mech)


class TestBaseline(BaseTestCase):
    def test_efficient_assignments(self):
        xhat = efficient_assignments(self.point)
        for r1 in constants.REPORTS:
            self.assertEqual(xhat[3 * r1 + HIGH], 1)
            self.assertEqual(xhat[3 * r1 + LOW], 0)
        self.assertEqual(xhat[3 * NULL + NULL], 1)
        self.assertEqual(xhat[3 * LOW + NULL], 0)
        self.assertEqual(xhat[3 * HIGH + NULL], 1)

        pessimist = Params('7/10', '1/5', '1/2')
        self.assertEqual(efficient_assignments(pessimist)[0], 0)

    def test_baseline_regions(self):
        self.assertEqual(baseline_region(self.point),
                         constants.BASELINE_AFTER_NULL)
        mech = baseline_mechanism(self.point)
        self.assertEqual(mech.policy, (0, 1, 0, 0))
        self.assertEqual(mech.x(NULL, NULL), 0)

        mech = baseline_mechanism(self.point.replace(k=F(1, 10)))
        self.assertEqual(mech.policy, (0, 1, 1, 1))
        mech = baseline_mechanism(self.point.replace(k=F(1, 4)))
        self.assertEqual(mech.policy, (0, 0, 0, 0))
        self.assertEqual(mech.x(NULL, NULL), 1)

    def test_result_dependent_policy(self):
        policy = result_dependent_policy()
        self.assertEqual(policy, (0, 1, 0, 1))
        baseline = baseline_mechanism(self.point).policy
        self.assertTrue(all(a >= b for a, b in zip(policy, baseline)))
        self.assertEqual(policy[HIGH + 1] - baseline[HIGH + 1], 1)

    def test_baseline_payoffs(self):
        mech = baseline_mechanism(self.point)
        self.assertEqual(baseline_payoff(self.point, mech), F(21, 25))
        self.assertEqual(baseline_objective(self.point, mech), F(21, 25))
        mech = baseline_mechanism(self.both_low)
        self.assertEqual(baseline_payoff(self.both_low, mech), F(9, 10))

    def test_boundary_tie(self):
        p = self.with_costs(self.point, self.point.gamma, F(3, 10))
        always = baseline_mechanism(p, constants.BASELINE_ALWAYS)
        after_null = baseline_mechanism(p, constants.BASELINE_AFTER_NULL)
        self.assertEqual(baseline_payoff(p, always),
                         baseline_payoff(p, after_null))

        q = self.with_costs(self.point, self.point.gamma, F(1, 5))
        self.assertNotEqual(baseline_payoff(q, always),
                            baseline_payoff(q, after_null))


class TestAgent(BaseTestCase):
    def test_beliefs(self):
        p = self.point
        self.assertEqual(belief_after_report(p, HIGH), F(7, 10))
        self.assertEqual(belief_after_report(p, LOW), F(3, 10))
        self.assertEqual(belief_after_report(p, NULL), F(31, 50))
        self.assertEqual(private_belief(p, PrivateState(SAW1, HIGH)),
                         F(7, 10))
        self.assertEqual(private_belief(p, PrivateState(SAW1, NULL)),
                         F(7, 10))
        self.assertEqual(private_belief(p, PrivateState(SAW0, LOW)),
                         F(3, 10))
        self.assertEqual(private_belief(p, PrivateState(NO_SIGNAL, NULL)),
                         F(31, 50))

    def test_continuation_value(self):
        # Test after a null report, assign 1 only on a high second report.
        mech = Mechanism.build((0, 1, 0, 0), lambda r1, r2: r2 == HIGH)
        self.assertEqual(mech.index, 4674)
        self.assertEqual(decode(4674), mech)
        p = self.point
        self.assertEqual(continuation_value(p, mech, NULL, p.mu2_null),
                         F(89, 200))
        # No scheduled test after a high report; free signals only.
        self.assertEqual(continuation_value(p, mech, HIGH, p.rho),
                         F(1, 2) * F(7, 10))

    def test_best_response_to_baseline(self):
        mech = baseline_mechanism(self.point)
        strat, values = best_response(self.point, mech)
        self.assertEqual(strat, AgentStrategy(
            1, (1, 1), (1, 0, 0, 1, 0), (1, 1, 1, 1, 1, 1, 1, 1, 0, 1)))
        self.assertEqual(values.v0, F(131, 200))
        self.assertEqual(values.w1, (F(3, 20), F(1)))
        self.assertFalse(is_obedient_on_path(self.point, mech, strat))

        strat, values = compliant_response(self.point, mech)
        self.assertEqual(strat.e1, 0)
        self.assertEqual(values.v0, F(51, 80))

    def test_obedient_value(self):
        mech = baseline_mechanism(self.point)
        strat = obedient_strategy(self.point, mech)
        dist = play(self.point, mech, strat)
        self.assertEqual(agent_payoff(dist, self.point), F(231, 400))

    def test_second_period_pattern(self):
        mech = baseline_mechanism(self.point)

        def e2(params, o1, r1):
            strat, _ = best_response(params, mech)
            return strat.e2[STATE_INDEX[PrivateState(o1, r1)]]

        self.assertEqual(e2(self.point, SAW1, HIGH), 0)
        self.assertEqual(e2(self.point, SAW0, LOW), 0)
        self.assertEqual(e2(self.point, constants.NO_SIGNAL, NULL), 1)

        low = self.with_costs(self.point, F(1, 5))
        self.assertEqual(e2(low, SAW0, LOW), 1)
        # Indifferent at gamma = 1 - rho: follows the recommendation.
        edge = self.with_costs(self.point, F(3, 10))
        self.assertEqual(e2(edge, SAW0, LOW), 0)
        self.assertEqual(e2(edge, SAW0, NULL), 1)

    def test_selective_deviation(self):
        mech = baseline_mechanism(self.point)
        strat = selective_deviation(self.point)
        dist = play(self.point, mech, strat)
        self.assertEqual(agent_payoff(dist, self.point), F(131, 200))
        self.assertEqual(selective_deviation_payoff(self.point), F(131, 200))
        self.assertEqual(dist.marginal('r1'), {HIGH: F(4, 5), NULL: F(1, 5)})

        conform = conforming_strategy(self.point)
        value = agent_payoff(play(self.point, mech, conform), self.point)
        self.assertEqual(value, F(51, 80))
        self.assertEqual(conforming_payoff(self.point), F(51, 80))

    def test_selective_threshold(self):
        # Strict preference below gamma_bar = 21/50, tie at it, none above.
        expected = {'2/5': 1, '21/50': 0, '11/25': -1}
        for gamma, sign in expected.items():
            p = self.with_costs(self.point, F(gamma))
            diff = selective_deviation_payoff(p) - conforming_payoff(p)
            self.assertEqual((diff > 0) - (diff < 0), sign)
            mech = baseline_mechanism(p)
            played = (
                agent_payoff(play(p, mech, selective_deviation(p)), p) -
                agent_payoff(play(p, mech, conforming_strategy(p)), p))
            self.assertEqual(played, diff)

    def test_retest_deviation(self):
        p = self.point.replace(c=F(1, 10))
        mech = baseline_mechanism(p)
        self.assertEqual(retest_deviation_payoff(p), F(37, 50))
        self.assertEqual(retest_conforming_payoff(p), F(17, 25))
        value = agent_payoff(play(p, mech, retest_deviation(p)), p)
        self.assertEqual(value, F(37, 50))
        conform = conforming_strategy(p, retest=True)
        self.assertEqual(agent_payoff(play(p, mech, conform), p), F(17, 25))
        self.assertEqual(compliant_response(p, mech)[1].v0, F(17, 25))

        expected = {'3/10': 1, '2/5': 0, '1/2': -1}
        for gamma, sign in expected.items():
            q = self.with_costs(self.point, F(gamma))
            diff = retest_deviation_payoff(q) - retest_conforming_payoff(q)
            self.assertEqual((diff > 0) - (diff < 0), sign)

    def test_strategy_bits(self):
        strat = selective_deviation(self.point)
        bits = strat.to_bits()
        self.assertEqual(len(bits), 18)
        self.assertEqual(AgentStrategy.from_bits(bits), strat)
        self.assertEqual(len(AgentStrategy.field_names()), 18)
        self.assertEqual(strat.to_record()['d1_saw0'], constants.CONCEAL)
        self.assertRaises(ValueError, AgentStrategy.from_bits, bits[:-1])

    def test_oracle(self):
        mech = baseline_mechanism(self.point)
        best, argmax = exhaustive_optimum(self.point, mech)
        strat, values = best_response(self.point, mech)
        self.assertEqual(best, F(131, 200))
        self.assertTrue(strat in argmax)
        self.assertEqual(
            [s for s in argmax if follows_tie_rule(self.point, mech, s)],
            [strat])
        for params in (self.free, self.point):
            passed, detail = oracle_spot_check(params, case_two_mechanism())
            self.assertTrue(passed, detail)

    @unittest.skipIf(numpy is None, 'numpy not installed')
    def test_oracle_random_mechanisms(self):
        rng = numpy.random.default_rng(2024)
        for params in random_points(11, 10):
            mech = decode(int(rng.integers(8192)))
            passed, detail = oracle_spot_check(params, mech)
            self.assertTrue(passed, '%s at %s: %s' % (mech.index, params,
                                                      detail))


class TestOutcomes(BaseTestCase):
    def test_distribution(self):
        for mech in (baseline_mechanism(self.point), case_two_mechanism(),
                     decode(8191)):
            strat, _ = best_response(self.point, mech)
            dist = play(self.point, mech, strat)
            self.assertEqual(dist.total(), 1)
            self.assertTrue(all(atom.prob > 0 for atom in dist))

        dist = play(self.pi_zero, pi_zero_mechanism(),
                    obedient_strategy(self.pi_zero, pi_zero_mechanism()))
        self.assertEqual(len(dist), 4)
        self.assertEqual(dist.probability(lambda a: a.e2 == 1), 1)

    def test_principal_payoffs(self):
        mech = baseline_mechanism(self.point)
        self.assertEqual(strategic_payoff(self.point, mech), F(14, 25))
        self.assertEqual(strategic_payoff(self.point, case_two_mechanism()),
                         F(104, 125))
        self.assertEqual(case_two_payoff(self.point), F(104, 125))
        strat, _ = best_response(self.point, case_two_mechanism())
        dist = play(self.point, case_two_mechanism(), strat)
        self.assertEqual(principal_payoff(dist, self.point), F(104, 125))
        self.assertEqual(strategic_payoff(self.case_one,
                                          case_one_mechanism()), F(9, 10))
        self.assertEqual(case_one_payoff(self.case_one), F(9, 10))
        self.assertEqual(strategic_payoff(self.high_high,
                                          never_test_mechanism()),
                         F(69, 100))

    def test_csv(self):
        mech = case_two_mechanism()
        strat, _ = best_response(self.point, mech)
        dist = play(self.point, mech, strat)
        buf = io.StringIO()
        to_csv(dist, buf)
        lines = buf.getvalue().splitlines()
        self.assertEqual(lines[0], 'omega1,omega2,o1,o2,r1,r2,e1,e2,x,prob')
        self.assertEqual(len(lines), len(dist) + 1)
        total = sum(F(line.rsplit(',', 1)[1]) for line in lines[1:])
        self.assertEqual(total, 1)

    @unittest.skipIf(numpy is None, 'numpy not installed')
    def test_monte_carlo(self):
        for mech in (baseline_mechanism(self.point), case_two_mechanism()):
            strat, _ = best_response(self.point, mech)
            passed, worst = monte_carlo_check(self.point, mech, strat,
                                              draws=100000, seed=1234,
                                              bound=4.5)
            self.assertTrue(passed, worst)

    @unittest.skipIf(numpy is None, 'numpy not installed')
    def test_monte_carlo_random_mechanisms(self):
        rng = numpy.random.default_rng(99)
        for i, params in enumerate(random_points(5, 10)):
            mech = decode(int(rng.integers(8192)))
            strat, _ = best_response(params, mech)
            passed, worst = monte_carlo_check(params, mech, strat,
                                              draws=100000, seed=i,
                                              bound=5)
            self.assertTrue(passed, '%s at %s: %s' % (mech.index, params,
                                                      worst))


class TestIncentives(BaseTestCase):
    def test_case_two_is_ic(self):
        report = ic_check(self.point, case_two_mechanism())
        self.assertTrue(report.passed)
        self.assertEqual(len(report), 8)
        self.assertEqual(report.find(OB_SIGMA2_0, LOW).slack, F(1, 20))
        self.assertEqual(
            report.find(constants.OB_SIGMA2_1, NULL).slack, F(27, 100))

    def test_unrequested_disclosure_fails(self):
        report = ic_check(self.point, baseline_mechanism(self.point))
        self.assertFalse(report.passed)
        failed = report.find(FD_R1_OMEGA2, HIGH, 0)
        self.assertFalse(failed.satisfied)
        self.assertEqual(failed.slack, -1)
        self.assertTrue(report.find(FD_R1_OMEGA2, HIGH, 1).satisfied)

    def test_free_testing_obedience(self):
        report = ic_check(self.free, never_test_mechanism())
        self.assertEqual(report.find(OB_SIGMA2_0, NULL).slack, F(-31, 50))
        self.assertEqual(report.find(OB_SIGMA2_0, LOW).slack, F(-3, 10))

    def test_not_forcing(self):
        self.assertRaises(NotForcingError, ic_check, self.point,
                          decode((1 << 1) | (1 << 4)))
        self.assertFalse(is_ic(self.point, decode((1 << 1) | (1 << 4))))

    def test_ic_matches_best_response(self):
        for index in range(0, 8192, 37):
            mech = decode(index)
            if not mech.is_forcing:
                continue
            strat, _ = best_response(self.point, mech)
            self.assertEqual(ic_check(self.point, mech).passed,
                             is_obedient_on_path(self.point, mech, strat),
                             mech.describe())

    def test_lemma_bounds(self):
        report = lemma_bounds_check(self.point, case_two_mechanism())
        self.assertTrue(report.passed)
        spread = [b for b in report
                  if b.name == 'assignment_spread' and b.r1 == LOW][0]
        self.assertEqual(spread.value, F(3, 10))
        self.assertEqual(spread.upper, F(7, 20))
        continuation = [b for b in report
                        if b.name == 'continuation_spread'][0]
        self.assertEqual(continuation.value, F(1, 200))

        report = lemma_bounds_check(self.free, constant_mechanism(1))
        self.assertTrue(report.passed)
        self.assertEqual(
            len([b for b in report if b.name == 'constant_assignments']), 3)

        self.assertRaises(NotICError, lemma_bounds_check, self.point,
                          baseline_mechanism(self.point))


class TestRevelation(BaseTestCase):
    def test_baseline_transform(self):
        mech = baseline_mechanism(self.point)
        transformed = revelation_transform(self.point, mech)
        self.assertEqual(transformed.index, 7681)
        self.assertEqual(transformed.policy, (1, 0, 0, 0))
        self.assertEqual(transformed.row(NULL), (0, 0, 0))
        self.assertEqual(transformed.row(LOW), (0, 0, 1))
        self.assertEqual(transformed.row(HIGH), (1, 1, 1))
        self.assertTrue(is_ic(self.point, transformed))

    def test_ic_transform_is_identity(self):
        mech = case_two_mechanism()
        self.assertEqual(revelation_transform(self.point, mech), mech)

    def test_play_equivalence(self):
        for index in range(3, 8192, 101):
            mech = decode(index)
            strat, _ = best_response(self.point, mech)
            transformed = revelation_transform(self.point, mech)
            self.assertTrue(is_ic(self.point, transformed), mech.describe())
            t_strat, _ = best_response(self.point, transformed)
            self.assertEqual(
                play(self.point, mech, strat).project(*PLAY_FIELDS),
                play(self.point, transformed, t_strat).project(*PLAY_FIELDS))


class TestClosedForms(BaseTestCase):
    def test_case_two(self):
        result = optimal_closed_form(self.point)
        self.assertEqual(result.region, constants.REGION_CASE_II)
        self.assertEqual(result.mechanism, case_two_mechanism())
        self.assertEqual(result.predicted_W, F(104, 125))
        self.assertTrue(result.tie_mechanism is None)

    def test_case_one(self):
        result = optimal_closed_form(self.case_one)
        self.assertEqual(result.mechanism, case_one_mechanism())
        self.assertEqual(result.predicted_W, F(9, 10))

    def test_boundary(self):
        boundary = self.case_one.replace(k=F(1, 10))
        result = optimal_closed_form(boundary)
        self.assertEqual(result.region, constants.REGION_BOUNDARY)
        self.assertEqual(result.tie_mechanism, case_two_mechanism())
        self.assertEqual(case_one_payoff(boundary), case_two_payoff(boundary))
        self.assertEqual(strategic_payoff(boundary, case_one_mechanism()),
                         strategic_payoff(boundary, case_two_mechanism()))

    def test_other_regions(self):
        result = optimal_closed_form(self.high_high)
        self.assertEqual(result.mechanism, never_test_mechanism())
        self.assertEqual(result.predicted_W, F(69, 100))

        result = optimal_closed_form(self.both_low)
        self.assertEqual(result.mechanism.policy, (0, 1, 1, 1))
        self.assertEqual(result.predicted_W, F(9, 10))

        result = optimal_closed_form(self.pi_zero)
        self.assertEqual(result.mechanism.index, 66)
        self.assertEqual(result.predicted_W, F(33, 50))

        uncovered = self.with_costs(self.point, F(13, 20))
        result = optimal_closed_form(uncovered)
        self.assertEqual(result.region, constants.REGION_UNCOVERED)
        self.assertTrue(result.mechanism is None)
        self.assertTrue(result.predicted_W is None)

    def test_pi_zero_outcomes(self):
        p = self.pi_zero
        mech = pi_zero_mechanism()
        strat, _ = best_response(p, mech)
        baseline = baseline_mechanism(p)
        self.assertEqual(
            play(p, mech, strat).project(*PLAY_FIELDS),
            play(p, baseline,
                 obedient_strategy(p, baseline)).project(*PLAY_FIELDS))


class TestFullDisclosure(BaseTestCase):
    def test_result_dependent_is_minimal(self):
        policy = result_dependent_policy()
        members = full_disclosure_set(self.point)
        self.assertTrue(policy in members)
        for member in members:
            self.assertTrue(all(a >= b for a, b in zip(member, policy)),
                            member)

    def test_low_cost(self):
        members = full_disclosure_set(self.with_costs(self.point, F(1, 5)))
        self.assertTrue((0, 1, 1, 1) in members)

    def test_high_cost(self):
        members = full_disclosure_set(self.with_costs(self.point, F(7, 10)))
        self.assertFalse(result_dependent_policy() in members)


class TestBruteForce(BaseTestCase):
    def test_strategic_optimum(self):
        result = brute_force_optimum(self.point, constants.MODE_STRATEGIC)
        self.assertEqual(result.best_W, F(104, 125))
        self.assertTrue(case_two_mechanism() in result)
        self.assertEqual(result.canonical.index, result.argmax[0])
        self.assertEqual(list(result.argmax), sorted(result.argmax))
        for mech in result.mechanisms()[:20]:
            self.assertEqual(strategic_payoff(self.point, mech), F(104, 125))

    def test_no_agency_optimum(self):
        result = brute_force_optimum(self.point, constants.MODE_NO_AGENCY)
        self.assertEqual(result.best_W, F(21, 25))
        self.assertTrue(baseline_mechanism(self.point) in result)

    def test_corner_regions(self):
        result = brute_force_optimum(self.high_high)
        # A first-report dependent row beats the shared row of the printed
        # never-test mechanism; a bad first result is concealed.
        self.assertEqual(result.best_W, F(71, 100))
        self.assertEqual(result.canonical.index, 1088)
        self.assertEqual(result.canonical.describe(),
                         'sigma1=0 sigma2=000 xhat[null:001 low:000 '
                         'high:100]')
        self.assertFalse(never_test_mechanism() in result)
        self.assertEqual(strategic_payoff(self.high_high,
                                          never_test_mechanism()),
                         F(69, 100))
        silent = never_testing_optima(result)
        self.assertEqual(silent[0].index, 1088)
        self.assertTrue(all(m.policy == (0, 0, 0, 0) for m in silent))

        closed = optimal_closed_form(self.high_high)
        self.assertTrue(closed.policy_only)
        self.assertTrue(closed_form_match(closed, result))

        result = brute_force_optimum(self.both_low)
        self.assertEqual(result.best_W, F(9, 10))
        self.assertTrue(baseline_mechanism(self.both_low) in result)

    def test_kappa_threshold_switch(self):
        # kappa_bar = 1/5 with gamma above gamma_bar.
        grid = region_grid(self.case_one, [F(1, 2)],
                           [F(3, 20), F(1, 5), F(1, 4)])
        below, at, above = [
            brute_force_optimum(self.case_one.replace(c=c, k=k))
            for c, k in grid]
        self.assertTrue(case_two_mechanism() in below)
        self.assertFalse(case_one_mechanism() in below)
        self.assertTrue(case_two_mechanism() in at)
        self.assertTrue(case_one_mechanism() in at)
        self.assertEqual(at.best_W, F(181, 200))
        self.assertTrue(case_one_mechanism() in above)
        self.assertFalse(case_two_mechanism() in above)

    def test_closed_form_match(self):
        boundary = self.case_one.replace(k=F(1, 10))
        closed = optimal_closed_form(boundary)
        self.assertEqual(closed.region, constants.REGION_BOUNDARY)
        self.assertFalse(closed.policy_only)
        one, two = case_one_mechanism(), case_two_mechanism()
        partial = OptimumResult(constants.MODE_STRATEGIC, F(181, 200),
                                (one.index,), one)
        self.assertFalse(closed_form_match(closed, partial))
        both = OptimumResult(constants.MODE_STRATEGIC, F(181, 200),
                             tuple(sorted((one.index, two.index))), one)
        self.assertTrue(closed_form_match(closed, both))
        lower = both._replace(best_W=F(9, 10))
        self.assertFalse(closed_form_match(closed, lower))

        uncovered = optimal_closed_form(self.free)
        self.assertTrue(uncovered.mechanism is None)
        self.assertTrue(closed_form_match(uncovered, both) is None)

    def test_parallel_map(self):
        self.assertEqual(parallel_map(abs, [-1, 2, -3], workers=2),
                         [1, 2, 3])
        self.assertEqual(parallel_map(abs, [-1, 2, -3]), [1, 2, 3])


class TestVerifyClaims(BaseTestCase):
    @classmethod
    def setUpClass(cls):
        cls.report = verify_claims(cls.point, draws=20000, mc_bound=4.5)

    def test_all_pass(self):
        self.assertTrue(self.report.passed, self.report.failures())

    def test_applicability(self):
        applicable = dict((c.claim, c.applicable) for c in self.report)
        self.assertTrue(applicable['closed_form_optimum'])
        self.assertTrue(applicable['selective_deviation_threshold'])
        self.assertTrue(applicable['result_dependent_minimal'])
        self.assertTrue(applicable['revelation_equivalence'])
        self.assertFalse(applicable['retest_deviation_threshold'])
        self.assertFalse(applicable['never_test_optimal'])
        self.assertFalse(applicable['never_test_alternatives'])
        self.assertFalse(applicable['pi_zero_baseline_outcomes'])
        self.assertTrue(self.report['gamma_bar_below_mu2null'].informational)

    def test_report_data(self):
        data = self.report.to_data()
        self.assertEqual(data['params']['c'], '7/40')
        self.assertTrue(data['passed'])
        json.dumps(data)


class TestVerifyClaimsWithoutFreeSignals(BaseTestCase):
    # pi = 0 with gamma strictly inside (1 - rho, mu2(null)).
    params = Params('17/20', '7/20', 0, '9/40', '3/10')

    @classmethod
    def setUpClass(cls):
        cls.report = verify_claims(cls.params, draws=20000, mc_bound=4.5)

    def test_minimality_skipped(self):
        t = thresholds(self.params)
        self.assertTrue(t.one_minus_rho < t.gamma < t.mu2_null)
        self.assertEqual(classify_region(self.params),
                         constants.REGION_PI_ZERO)
        claim = self.report['result_dependent_minimal']
        self.assertFalse(claim.applicable)
        self.assertTrue('pi > 0' in claim.detail)
        self.assertTrue(
            self.report['result_dependent_full_disclosure'].applicable)

    def test_all_pass(self):
        self.assertTrue(self.report.passed, self.report.failures())


@unittest.skipIf(numpy is None, 'numpy not installed')
class TestRandomPoints(BaseTestCase):
    def test_deterministic(self):
        self.assertEqual(random_points(7, 10), random_points(7, 10))
        self.assertNotEqual(random_points(7, 10), random_points(8, 10))

    def test_kinds(self):
        for p in random_points(3, 20, 'intermediate'):
            t = thresholds(p)
            self.assertTrue(t.one_minus_rho < t.gamma <= t.mu2_null)
            self.assertTrue(t.one_minus_rho < t.kappa <=
                            min(t.mu2_null, 1 - t.mu2_null))
        for p in random_points(3, 20, 'rd_gamma'):
            t = thresholds(p)
            self.assertTrue(t.one_minus_rho < t.gamma < t.mu2_null)
        self.assertRaises(ValueError, random_points, 0, 1, 'bogus')


class TestWithoutNumpy(BaseTestCase):
    def setUp(self):
        self._np = (search.np, outcomes.np)
        search.np = outcomes.np = None

    def tearDown(self):
        search.np, outcomes.np = self._np

    def test_optional(self):
        self.assertRaises(ImproperlyConfigured, random_points, 0, 1)
        mech = case_two_mechanism()
        strat, _ = best_response(self.point, mech)
        self.assertRaises(ImproperlyConfigured, monte_carlo_check,
                          self.point, mech, strat)
        # The exact core does not need numpy.
        self.assertEqual(strategic_payoff(self.point, mech), F(104, 125))
        passed, detail = oracle_spot_check(self.point, mech)
        self.assertTrue(passed, detail)


class TestRegions(BaseTestCase):
    def test_grid(self):
        grid = region_grid(self.point, [F(7, 20)], [F(17, 50), F(1, 2)])
        self.assertEqual(grid, [(F(7, 40), F(17, 100)), (F(7, 40), F(1, 4))])

    def test_sweep_rejects_invalid_points(self):
        self.assertRaises(ParameterError, sweep, self.point,
                          [(F(1, 10), F(1, 10)), (F(-1, 10), 0)])
        self.assertRaises(ParameterError, sweep, self.point, [])

    def test_single_cell(self):
        reports = sweep(self.point, [(self.point.c, self.point.k)])
        self.assertEqual(len(reports), 1)
        report = reports[0]
        self.assertEqual(report.label, constants.REGION_CASE_II)
        self.assertEqual(report.brute_force_W, F(104, 125))
        self.assertTrue(report.closed_form_in_argmax)

        buf = io.StringIO()
        regions_to_csv(reports, buf)
        header, row = buf.getvalue().splitlines()
        self.assertEqual(header, ','.join((
            'rho', 'mu0', 'pi', 'c', 'k', 'gamma', 'kappa', 'label',
            'closed_form_W', 'brute_force_W', 'match',
            'canonical_mechanism_index')))
        self.assertTrue(row.startswith('7/10,4/5,1/2,7/40,17/100,7/20,17/50,'
                                       'Intermediate_CaseII,104/125,104/125,'
                                       'true,'))

    def test_high_high_cell(self):
        p = self.high_high
        report, = sweep(p, [(p.c, p.k)])
        self.assertEqual(report.label, constants.REGION_HIGH_HIGH)
        self.assertEqual(report.closed_form_W, F(69, 100))
        self.assertEqual(report.brute_force_W, F(71, 100))
        self.assertTrue(report.closed_form_in_argmax)
        self.assertEqual(report.notes, 'assignments improved by mechanism '
                                       '1088')

    def make_reports(self):
        reports = []
        labels = (constants.REGION_CASE_II, constants.REGION_HIGH_HIGH,
                  constants.REGION_UNCOVERED, constants.REGION_BOTH_LOW)
        grid = region_grid(self.point, [F(1, 5), F(4, 5)], [F(1, 5), F(1, 2)])
        for (c, k), label in zip(grid, labels):
            found = None if label == constants.REGION_UNCOVERED else True
            if label == constants.REGION_BOTH_LOW:
                found = False
            reports.append(RegionReport(self.point.replace(c=c, k=k), label,
                                        None, F(1, 2), found, 0, ''))
        return reports

    def test_svg(self):
        reports = self.make_reports()
        svg = regions_svg(reports)
        self.assertTrue(svg.startswith('<svg '))
        self.assertTrue(svg.endswith('</svg>\n'))
        self.assertEqual(svg, regions_svg(reports))
        self.assertEqual(svg.count('<title>'), 4)
        self.assertEqual(svg.count('stroke="#000"'), 1)
        for label in ('Intermediate_CaseII', 'HighHigh', 'BothLow'):
            self.assertTrue('>%s</text>' % label in svg)

        single = regions_svg(reports[:1])
        self.assertEqual(single.count('<title>'), 1)


class TestSerializers(BaseTestCase):
    def test_json(self):
        s = Serializer('json')
        self.assertEqual(s.encode({'b': 1, 'a': '7/10'}),
                         b'{"a":"7/10","b":1}')
        self.assertEqual(s.decode(s.encode([1, None])), [1, None])

    @unittest.skipIf(msgpack is None, 'msgpack not installed')
    def test_msgpack(self):
        s = Serializer('msgpack')
        data = {'best_W': '104/125', 'argmax': [4682]}
        self.assertEqual(s.decode(s.encode(data)), data)

    def test_unknown(self):
        self.assertRaises(ImproperlyConfigured, Serializer, 'yaml')


class BaseCLITestCase(BaseTestCase):
    def setUp(self):
        self.output = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.output)

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = cli.main(['-q'] + list(argv))
        return status, out.getvalue(), err.getvalue()

    def write(self, filename, content):
        path = os.path.join(self.output, filename)
        with open(path, 'w') as fh:
            fh.write(content)
        return path


class TestConfig(BaseCLITestCase):
    def test_parse_config(self):
        config = cli.parse_config('rho = 7/10  # persistence\n\nmu0=4/5\n'
                                  'c_grid = 1/10, 1/5\nworkers = 2\n')
        self.assertEqual(config, {'rho': F(7, 10), 'mu0': F(4, 5),
                                  'c_grid': [F(1, 10), F(1, 5)],
                                  'workers': 2})

    def test_config_errors(self):
        self.assertRaises(ConfigError, cli.parse_config, 'alpha = 1/2')
        self.assertRaises(ConfigError, cli.parse_config, 'rho 7/10')
        self.assertRaises(ConfigError, cli.parse_config, 'rho=7/10\nrho=3/5')
        self.assertRaises(ConfigError, cli.parse_config, 'seed = x')
        self.assertRaises(ParameterError, cli.parse_config, 'rho = 0.7')

    def test_layering(self):
        path = self.write('run.cfg', 'rho = 7/10\nmu0 = 4/5\npi = 1/2\n'
                                     'c = 7/40\n')
        args = cli.get_parser().parse_args(
            ['solve', '--config', path, '--c', '1/10', '--k', '17/100'])
        config = cli.RunConfig.from_args(args)
        self.assertEqual(config.params(), self.point.replace(c=F(1, 10)))

    def test_grid(self):
        config = cli.RunConfig({'grid_steps': 2})
        grid = config.grid(self.point)
        self.assertEqual(len(grid), 4)
        self.assertEqual(grid[0], (F(1, 4), F(1, 4)))
        self.assertRaises(ConfigError, cli.RunConfig({'c_grid': [0]}).grid,
                          self.point)
        self.assertRaises(ConfigError, cli.RunConfig().grid, self.point)
        self.assertRaises(ConfigError, cli.RunConfig, {'format': 'xml'})


class TestCommands(BaseCLITestCase):
    def test_show_mech(self):
        status, out, _ = self.run_cli('show-mech', '4682')
        self.assertEqual(status, constants.EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(Mechanism.from_record(json.loads(lines[0])),
                         case_two_mechanism())
        self.assertEqual(lines[-1], 'forcing: true')

        status, _, err = self.run_cli('show-mech', '9000')
        self.assertEqual(status, constants.EXIT_INVALID)
        self.assertTrue(err.startswith('error:'))

    def test_invalid_parameters(self):
        status, _, err = self.run_cli('solve', '--rho', '7/10', '--mu0',
                                      '4/5', '--pi', '1/1')
        self.assertEqual(status, constants.EXIT_INVALID)
        self.assertTrue('pi must be < 1' in err)

        status, _, _ = self.run_cli('bogus')
        self.assertEqual(status, constants.EXIT_INVALID)

    def test_corrupted_mechanism(self):
        path = self.write('mech.json', '{"sigma1": 0, ')
        status, _, err = self.run_cli('verify', '--mechanism', path,
                                      '--output', self.output)
        self.assertEqual(status, constants.EXIT_INVALID)
        self.assertTrue('cannot parse mechanism' in err)

    def test_solve(self):
        status, out, _ = self.run_cli(
            'solve', '--rho', '7/10', '--mu0', '4/5', '--pi', '1/2',
            '--c', '7/40', '--k', '17/100', '--output', self.output)
        self.assertEqual(status, constants.EXIT_OK)
        self.assertTrue('match: true' in out)
        with open(os.path.join(self.output, 'solve.json')) as fh:
            data = json.load(fh)
        self.assertEqual(data['strategic']['best_W'], '104/125')
        self.assertEqual(data['no_agency']['best_W'], '21/25')
        self.assertEqual(data['region'], 'Intermediate_CaseII')
        self.assertEqual(data['closed_form']['index'], 4682)
        self.assertEqual(data['match'], 'true')
        self.assertTrue(os.path.exists(os.path.join(self.output,
                                                    'outcomes.csv')))

    def test_solve_boundary(self):
        status, out, _ = self.run_cli(
            'solve', '--rho', '9/10', '--mu0', '4/5', '--pi', '1/2',
            '--c', '1/4', '--k', '1/10', '--output', self.output)
        self.assertEqual(status, constants.EXIT_OK)
        self.assertTrue('match: true' in out)
        with open(os.path.join(self.output, 'solve.json')) as fh:
            data = json.load(fh)
        self.assertEqual(data['region'], 'Intermediate_Boundary')
        self.assertEqual(data['closed_form']['tie_index'],
                         case_two_mechanism().index)
        self.assertFalse(data['closed_form']['policy_only'])
        self.assertEqual(data['strategic']['best_W'], '181/200')

    def test_regions(self):
        status, out, _ = self.run_cli(
            'regions', '--rho', '7/10', '--mu0', '4/5', '--pi', '1/2',
            '--gamma-grid', '7/20', '--kappa-grid', '17/50',
            '--output', self.output)
        self.assertEqual(status, constants.EXIT_OK)
        self.assertTrue('cells: 1' in out)
        with open(os.path.join(self.output, 'regions.svg')) as fh:
            self.assertEqual(fh.read().count('<title>'), 1)
        with open(os.path.join(self.output, 'regions.csv')) as fh:
            self.assertEqual(len(fh.read().splitlines()), 2)


if __name__ == '__main__':
    unittest.main(argv=sys.argv)
