from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
import csv
import functools
import itertools
import logging

try:
    import numpy as np
except ImportError:
    np = None

from .agent import NO_SIGNAL_STATE
from .agent import STATE_INDEX
from .agent import PrivateState
from .agent import best_response
from .agent import compliant_response
from .agent import conforming_strategy
from .agent import conforming_payoff
from .agent import exhaustive_optimum
from .agent import follows_tie_rule
from .agent import is_obedient_on_path
from .agent import obedient_strategy
from .agent import retest_conforming_payoff
from .agent import retest_deviation
from .agent import retest_deviation_payoff
from .agent import selective_deviation
from .agent import selective_deviation_payoff
from .constants import BASELINE_AFTER_NULL
from .constants import BASELINE_ALWAYS
from .constants import HIGH
from .constants import LOW
from .constants import MODE_NO_AGENCY
from .constants import MODE_STRATEGIC
from .constants import MODES
from .constants import N_MECHANISMS
from .constants import NULL
from .constants import REGION_HIGH_HIGH
from .constants import REGION_PI_ZERO
from .constants import REGION_UNCOVERED
from .constants import SAW0
from .constants import SAW1
from .core import ONE
from .core import Mechanism
from .core import Params
from .core import decode
from .core import format_rational
from .core import intermediate_gamma
from .core import intermediate_kappa
from .core import threshold_remark_holds
from .core import thresholds
from .exceptions import ImproperlyConfigured
from .exceptions import ParameterError
from .mechanisms import baseline_mechanism
from .mechanisms import constant_mechanism
from .mechanisms import dominates
from .mechanisms import efficient_assignments
from .mechanisms import ic_check
from .mechanisms import is_ic
from .mechanisms import lemma_bounds_check
from .mechanisms import make_forcing
from .mechanisms import never_test_mechanism
from .mechanisms import never_test_payoff
from .mechanisms import optimal_closed_form
from .mechanisms import pi_zero_mechanism
from .mechanisms import result_dependent_policy
from .mechanisms import revelation_transform
from .outcomes import agent_payoff
from .outcomes import baseline_objective
from .outcomes import baseline_payoff
from .outcomes import monte_carlo_check
from .outcomes import play
from .outcomes import principal_payoff
from .outcomes import strategic_payoff


logger = logging.getLogger(__name__)

# Coordinates the principal cares about; two plays are equivalent when they
# induce the same joint distribution over these.
PLAY_FIELDS = ('x', 'e1', 'e2', 'omega2')

REGION_CSV_COLUMNS = ('rho', 'mu0', 'pi', 'c', 'k', 'gamma', 'kappa', 'label',
                      'closed_form_W', 'brute_force_W', 'match',
                      'canonical_mechanism_index')


@functools.lru_cache(maxsize=1)
def enumerate_all():
    """Every deterministic mechanism, in ascending index order."""
    return tuple(decode(i) for i in range(N_MECHANISMS))


def parallel_map(fn, items, workers=None, chunksize=64):
    """
    Map ``fn`` over ``items`` in a process pool when more than one worker is
    requested. Results are returned in input order.
    """
    items = list(items)
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items, chunksize=chunksize))


def mechanism_value(params, mode, index):
    mech = decode(index)
    if mode == MODE_STRATEGIC:
        return strategic_payoff(params, mech)
    return baseline_payoff(params, mech)


class OptimumResult(namedtuple('_OptimumResult', ('mode', 'best_W', 'argmax',
                                                  'canonical'))):
    __slots__ = ()

    def mechanisms(self):
        return [decode(index) for index in self.argmax]

    def __contains__(self, mech):
        index = mech if isinstance(mech, int) else mech.index
        return index in self.argmax

    def to_data(self):
        return {
            'mode': self.mode,
            'best_W': format_rational(self.best_W),
            'argmax': list(self.argmax),
            'canonical': self.canonical.to_record(),
            'canonical_index': self.canonical.index}


def _optimum(mode, values):
    best = max(values)
    argmax = tuple(i for i, value in enumerate(values) if value == best)
    return OptimumResult(mode, best, argmax, decode(argmax[0]))


def never_testing_optima(optimum):
    """Optimal mechanisms that recommend no test at all, by index."""
    return [mech for mech in optimum.mechanisms() if not any(mech.policy)]


def closed_form_match(result, optimum):
    """
    Whether a closed form agrees with a brute-force optimum: the mechanism
    (and its tie partner) attain the optimum. Closed forms that only pin the
    testing policy match when some optimum shares that policy. Returns None
    when the region has no closed form.
    """
    if result.mechanism is None:
        return None
    if result.policy_only:
        return any(mech.policy == result.mechanism.policy
                   for mech in optimum.mechanisms())
    found = (result.mechanism in optimum and
             result.predicted_W == optimum.best_W)
    if result.tie_mechanism is not None:
        found = found and result.tie_mechanism in optimum
    return found


def brute_force_optimum(params, mode=MODE_STRATEGIC, workers=None):
    if mode not in MODES:
        raise ValueError('unknown mode "%s"' % mode)
    logger.info('scanning %s mechanisms (%s) at %s', N_MECHANISMS, mode,
                params)
    values = parallel_map(functools.partial(mechanism_value, params, mode),
                          range(N_MECHANISMS), workers)
    result = _optimum(mode, values)
    logger.info('%s optimum %s attained by %s mechanisms', mode,
                format_rational(result.best_W), len(result.argmax))
    return result


def forced_efficient(params, policy):
    return make_forcing(Mechanism(policy[0], policy[1:],
                                  efficient_assignments(params)))


def full_disclosure_set(params):
    """
    Testing policies which, paired with forced efficient assignments, are
    followed by an obedient and fully disclosing agent.
    """
    accum = []
    for policy in itertools.product((0, 1), repeat=4):
        mech = forced_efficient(params, policy)
        strat, _ = best_response(params, mech)
        if is_obedient_on_path(params, mech, strat):
            accum.append(policy)
    return accum


ScanRecord = namedtuple('ScanRecord', ('index', 'forcing', 'strategic_W',
                                       'baseline_W', 'ic', 'obedient',
                                       'bounds_ok', 'transform_ok',
                                       'transformed_W'))


def scan_mechanism(params, index):
    """Evaluate every per-mechanism property checked by the verifier."""
    mech = decode(index)
    strat, _ = best_response(params, mech)
    dist = play(params, mech, strat)
    ic = obedient = bounds_ok = None
    if mech.is_forcing:
        ic = ic_check(params, mech).passed
        obedient = is_obedient_on_path(params, mech, strat)
        if ic:
            bounds_ok = lemma_bounds_check(params, mech).passed

    transformed = revelation_transform(params, mech)
    t_strat, _ = best_response(params, transformed)
    t_dist = play(params, transformed, t_strat)
    transform_ok = (is_ic(params, transformed) and
                    is_obedient_on_path(params, transformed, t_strat) and
                    t_dist.project(*PLAY_FIELDS) == dist.project(*PLAY_FIELDS))
    return ScanRecord(index, mech.is_forcing, principal_payoff(dist, params),
                      baseline_payoff(params, mech), ic, obedient, bounds_ok,
                      transform_ok, principal_payoff(t_dist, params))


def scan_mechanisms(params, workers=None):
    logger.info('full scan of %s mechanisms at %s', N_MECHANISMS, params)
    return parallel_map(functools.partial(scan_mechanism, params),
                        range(N_MECHANISMS), workers)


def oracle_spot_check(params, mech):
    """
    Compare the backward-induction response with exhaustive enumeration of
    every pure strategy. Returns (passed, detail).
    """
    best, argmax = exhaustive_optimum(params, mech)
    strat, values = best_response(params, mech)
    if values.v0 != best:
        return False, 'best response value %s, oracle %s' % (
            format_rational(values.v0), format_rational(best))
    if strat not in argmax:
        return False, 'best response not among %s optimal plans' % len(argmax)
    selected = [s for s in argmax if follows_tie_rule(params, mech, s)]
    if selected != [strat]:
        return False, '%s optimal plans follow the tie rule' % len(selected)
    return True, '%s optimal plans' % len(argmax)


Claim = namedtuple('Claim', ('claim', 'applicable', 'passed', 'witness',
                             'detail', 'informational'))


class VerificationReport(object):
    def __init__(self, params):
        self.params = params
        self.claims = []

    def add(self, claim, passed, detail='', witness=None,
            informational=False):
        self.claims.append(Claim(claim, True, bool(passed), witness, detail,
                                 informational))

    def skip(self, claim, detail='', informational=False):
        self.claims.append(Claim(claim, False, None, None, detail,
                                 informational))

    def __iter__(self):
        return iter(self.claims)

    def __getitem__(self, claim):
        for item in self.claims:
            if item.claim == claim:
                return item
        raise KeyError(claim)

    def failures(self):
        return [item for item in self.claims
                if item.applicable and not item.passed and
                not item.informational]

    @property
    def passed(self):
        return not self.failures()

    def to_data(self):
        accum = []
        for item in self.claims:
            witness = item.witness
            if isinstance(witness, Mechanism):
                witness = {'mechanism': witness.to_record(),
                           'index': witness.index}
            elif witness is not None:
                witness = {'strategy': witness.to_record()}
            accum.append({
                'claim': item.claim,
                'applicable': item.applicable,
                'passed': item.passed,
                'informational': item.informational,
                'witness': witness,
                'detail': item.detail})
        return {'params': self.params.to_data(), 'passed': self.passed,
                'claims': accum}


def _first_failure(records, predicate):
    for record in records:
        if not predicate(record):
            return decode(record.index)


def _check_baseline(report, params, no_agency):
    mech = baseline_mechanism(params)
    value = baseline_payoff(params, mech)
    passed = (value == no_agency.best_W and mech in no_agency and
              baseline_objective(params, mech) == value)
    report.add('baseline_no_agency_optimum', passed,
               'W=%s oracle=%s' % (format_rational(value),
                                   format_rational(no_agency.best_W)),
               None if passed else mech)

    t = thresholds(params)
    if t.kappa == t.one_minus_rho:
        always = baseline_mechanism(params, BASELINE_ALWAYS)
        after_null = baseline_mechanism(params, BASELINE_AFTER_NULL)
        a, b = baseline_payoff(params, always), baseline_payoff(params,
                                                                after_null)
        report.add('baseline_boundary_tie', a == b,
                   'always=%s after_null=%s' % (format_rational(a),
                                                format_rational(b)))
    else:
        report.skip('baseline_boundary_tie', 'kappa != 1 - rho')


def _check_second_period(report, params):
    if not intermediate_kappa(params):
        report.skip('second_period_obedience', 'kappa not intermediate')
        return
    t = thresholds(params)
    mech = baseline_mechanism(params)
    strat, _ = best_response(params, mech)

    def e2(o1, r1):
        return strat.e2[STATE_INDEX[PrivateState(o1, r1)]]

    expected = [
        (e2(SAW1, HIGH), 0),
        (e2(SAW0, LOW), int(t.gamma < t.one_minus_rho)),
        (strat.e2[NO_SIGNAL_STATE], int(t.gamma <= t.mu2_null)),
        (e2(SAW0, NULL), int(t.gamma <= t.one_minus_rho)),
        (e2(SAW1, NULL), int(t.gamma <= params.rho))]
    passed = all(actual == wanted for actual, wanted in expected)
    report.add('second_period_obedience', passed,
               'e2=%s' % ''.join(str(b) for b in strat.e2),
               None if passed else strat)


def _strategy_value(params, mech, strat):
    return agent_payoff(play(params, mech, strat), params)


def _check_deviations(report, params):
    t = thresholds(params)
    if not intermediate_kappa(params):
        report.skip('selective_deviation_threshold', 'kappa not intermediate')
        report.skip('retest_deviation_threshold', 'kappa not intermediate')
        return
    mech = baseline_mechanism(params)
    br, values = best_response(params, mech)
    _, compliant = compliant_response(params, mech)

    if params.pi > 0 and intermediate_gamma(params):
        deviation = _strategy_value(params, mech, selective_deviation(params))
        conform = _strategy_value(params, mech, conforming_strategy(params))
        checks = (
            deviation == selective_deviation_payoff(params),
            conform == conforming_payoff(params),
            conform == compliant.v0,
            (deviation > conform) == (t.gamma < t.gamma_bar),
            (br.e1 == 1) == (t.gamma < t.gamma_bar),
            values.v0 >= max(deviation, conform))
        report.add('selective_deviation_threshold', all(checks),
                   'deviation=%s conforming=%s gamma_bar=%s' % (
                       format_rational(deviation), format_rational(conform),
                       format_rational(t.gamma_bar)),
                   None if all(checks) else br)
    else:
        report.skip('selective_deviation_threshold',
                    'requires pi > 0 and intermediate gamma')

    if t.gamma <= t.one_minus_rho:
        deviation = _strategy_value(params, mech, retest_deviation(params))
        conform = _strategy_value(params, mech,
                                  conforming_strategy(params, retest=True))
        checks = (
            deviation == retest_deviation_payoff(params),
            conform == retest_conforming_payoff(params),
            conform == compliant.v0,
            (deviation > conform) == (t.gamma < t.gamma_bar_prime),
            values.v0 >= max(deviation, conform))
        report.add('retest_deviation_threshold', all(checks),
                   'deviation=%s conforming=%s gamma_bar_prime=%s' % (
                       format_rational(deviation), format_rational(conform),
                       format_rational(t.gamma_bar_prime)),
                   None if all(checks) else br)
    else:
        report.skip('retest_deviation_threshold', 'requires gamma <= 1 - rho')


def _check_result_dependent(report, params):
    t = thresholds(params)
    policy = result_dependent_policy()
    if t.one_minus_rho < t.gamma <= t.mu2_null:
        mech = forced_efficient(params, policy)
        strat, _ = best_response(params, mech)
        passed = is_obedient_on_path(params, mech, strat)
        report.add('result_dependent_full_disclosure', passed,
                   mech.describe(), None if passed else strat)
    else:
        report.skip('result_dependent_full_disclosure',
                    'gamma outside (1 - rho, mu2(null)]')

    # With pi = 0 and no early test the rows after a low or high report are
    # never reached, so policies that skip testing there also qualify.
    if params.pi > 0 and t.one_minus_rho < t.gamma < t.mu2_null:
        members = full_disclosure_set(params)
        smaller = [p for p in members if not dominates(p, policy)]
        passed = policy in members and not smaller
        witness = None
        if smaller:
            witness = forced_efficient(params, smaller[0])
        report.add('result_dependent_minimal', passed,
                   '%s policies induce full disclosure' % len(members),
                   witness)
    else:
        report.skip('result_dependent_minimal',
                    'requires pi > 0 and gamma in (1 - rho, mu2(null))')


def _check_null_report(report, params, records, strategic):
    if not (intermediate_kappa(params) and intermediate_gamma(params)):
        report.skip('null_report_testing', 'requires intermediate costs')
        return
    by_index = dict((r.index, r) for r in records)
    members = [decode(i) for i in strategic.argmax
               if by_index[i].ic and decode(i).sigma1 == 0]
    for mech in members:
        if mech.sigma2[NULL] != 1 or mech.row(NULL) != (0, 0, 1):
            report.add('null_report_testing', False, mech.describe(), mech)
            return
    report.add('null_report_testing', True,
               '%s IC optima without an early test' % len(members))


def _check_structure(report, params, records, strategic):
    witness = _first_failure(records, lambda r: r.transform_ok)
    report.add('revelation_equivalence', witness is None,
               'all %s mechanisms' % len(records), witness)

    best = max(r.transformed_W for r in records)
    report.add('revelation_preserves_optimum', best == strategic.best_W,
               'transformed optimum %s' % format_rational(best))

    forcing = [r for r in records if r.forcing]
    witness = _first_failure(forcing, lambda r: r.ic == r.obedient)
    report.add('ic_equivalence', witness is None,
               '%s forcing mechanisms, %s IC' % (
                   len(forcing), sum(1 for r in forcing if r.ic)),
               witness)

    ic = [r for r in forcing if r.ic]
    witness = _first_failure(ic, lambda r: r.bounds_ok)
    report.add('ic_bounds', witness is None,
               '%s IC mechanisms' % len(ic), witness)


def _check_closed_form(report, params, strategic):
    result = optimal_closed_form(params)
    if result.region == REGION_UNCOVERED:
        report.skip('closed_form_optimum', 'region Uncovered')
        return result
    mech = result.mechanism
    actual = strategic_payoff(params, mech)
    passed = (closed_form_match(result, strategic) and
              actual == result.predicted_W)
    report.add('closed_form_optimum', passed,
               '%s: predicted=%s oracle=%s' % (
                   result.region, format_rational(result.predicted_W),
                   format_rational(strategic.best_W)),
               None if passed else mech)
    return result


def _check_corner_regions(report, params, region, strategic):
    if region == REGION_PI_ZERO:
        mech = pi_zero_mechanism()
        strat, _ = best_response(params, mech)
        baseline = baseline_mechanism(params)
        ours = play(params, mech, strat).project(*PLAY_FIELDS)
        theirs = play(params, baseline, obedient_strategy(params, baseline))
        passed = ours == theirs.project(*PLAY_FIELDS)
        report.add('pi_zero_baseline_outcomes', passed, mech.describe(),
                   None if passed else strat)
    else:
        report.skip('pi_zero_baseline_outcomes', 'requires pi = 0 region')

    if region == REGION_HIGH_HIGH:
        never = strategic_payoff(params, never_test_mechanism())
        zero = strategic_payoff(params, constant_mechanism(0))
        one = strategic_payoff(params, constant_mechanism(1))
        silent = never_testing_optima(strategic)
        identities = (never == never_test_payoff(params) and
                      zero == ONE - params.mu2_null and
                      one == params.mu2_null)
        report.add('never_test_optimal', bool(silent) and identities,
                   '%s never-testing optima' % len(silent),
                   silent[0] if silent else strategic.canonical)
        passed = never >= max(zero, one) and never == strategic.best_W
        report.add('never_test_alternatives', passed,
                   'never_test=%s constant0=%s constant1=%s oracle=%s' % (
                       format_rational(never), format_rational(zero),
                       format_rational(one),
                       format_rational(strategic.best_W)),
                   None if passed else (silent[0] if silent else
                                        strategic.canonical),
                   informational=True)
    else:
        report.skip('never_test_optimal', 'requires HighHigh region')
        report.skip('never_test_alternatives', 'requires HighHigh region',
                    informational=True)


def _check_thresholds(report, params):
    t = thresholds(params)
    if params.pi == 0:
        report.skip('threshold_identity', 'deviation threshold undefined')
        report.skip('gamma_bar_below_mu2null', 'deviation threshold undefined',
                    informational=True)
        return
    checks = [(t.gamma_bar > t.one_minus_rho) ==
              (params.mu0 > ONE / (2 - params.pi))]
    if t.gamma_bar >= 0:
        at = Params.from_costs(params, t.gamma_bar, t.kappa)
        checks.append(selective_deviation_payoff(at) == conforming_payoff(at))
    at = Params.from_costs(params, t.gamma_bar_prime, t.kappa)
    checks.append(retest_deviation_payoff(at) == retest_conforming_payoff(at))
    report.add('threshold_identity', all(checks),
               'gamma_bar=%s gamma_bar_prime=%s' % (
                   format_rational(t.gamma_bar),
                   format_rational(t.gamma_bar_prime)))

    holds = threshold_remark_holds(params)
    if not holds:
        logger.warning('gamma_bar %s exceeds mu2(null) %s at %s',
                       format_rational(t.gamma_bar),
                       format_rational(t.mu2_null), params)
    report.add('gamma_bar_below_mu2null', holds,
               'gamma_bar=%s mu2_null=%s' % (format_rational(t.gamma_bar),
                                             format_rational(t.mu2_null)),
               informational=True)


def _check_agent(report, params, strategic, draws, seed, mc_bound):
    mech = baseline_mechanism(params)
    passed, detail = oracle_spot_check(params, mech)
    report.add('agent_oracle', passed, detail, None if passed else mech)

    if np is None:
        report.skip('monte_carlo_consistency', 'numpy not installed',
                    informational=True)
        return
    strat, _ = best_response(params, strategic.canonical)
    passed, worst = monte_carlo_check(params, strategic.canonical, strat,
                                      draws=draws, seed=seed, bound=mc_bound)
    report.add('monte_carlo_consistency', passed,
               'worst |z|=%.3f over %s draws' % (worst, draws),
               informational=True)


def verify_claims(params, workers=None, records=None, draws=100000, seed=0,
                  mc_bound=3):
    """
    Confront every closed-form result and structural property applicable at
    ``params`` with exhaustive enumeration.
    """
    report = VerificationReport(params)
    if records is None:
        records = scan_mechanisms(params, workers)
    strategic = _optimum(MODE_STRATEGIC, [r.strategic_W for r in records])
    no_agency = _optimum(MODE_NO_AGENCY, [r.baseline_W for r in records])

    _check_baseline(report, params, no_agency)
    _check_second_period(report, params)
    _check_deviations(report, params)
    _check_result_dependent(report, params)
    _check_null_report(report, params, records, strategic)
    _check_structure(report, params, records, strategic)
    result = _check_closed_form(report, params, strategic)
    _check_corner_regions(report, params, result.region, strategic)
    report.add('agency_gap', no_agency.best_W >= strategic.best_W,
               'no_agency=%s strategic=%s' % (
                   format_rational(no_agency.best_W),
                   format_rational(strategic.best_W)))
    _check_thresholds(report, params)
    _check_agent(report, params, strategic, draws, seed, mc_bound)

    for item in report.failures():
        logger.warning('claim %s failed at %s: %s', item.claim, params,
                       item.detail)
    return report


def verify_points(points, workers=None, **kwargs):
    return [verify_claims(params, workers, **kwargs) for params in points]


def _lattice(low, high, denominator, strict_low=True, strict_high=False):
    # Rationals n/denominator in the interval with the given endpoint rules.
    accum = []
    for n in range(0, denominator + 1):
        value = ONE * n / denominator
        if (value > low if strict_low else value >= low) and \
                (value < high if strict_high else value <= high):
            accum.append(value)
    return accum


def random_points(seed=0, count=100, kind='any', denominator=40):
    """
    Draw valid parameter points on a rational lattice. ``kind`` restricts the
    effective costs: "any", "intermediate" (intermediate testing costs for
    both players) or "rd_gamma" (gamma strictly between 1 - rho and the
    no-report belief).
    """
    if np is None:
        raise ImproperlyConfigured('numpy library not found')
    if kind not in ('any', 'intermediate', 'rd_gamma'):
        raise ValueError('unknown point kind "%s"' % kind)
    rng = np.random.default_rng(seed)

    def pick(values):
        return values[int(rng.integers(len(values)))]

    points = []
    while len(points) < count:
        rho = ONE * int(rng.integers(11, 20)) / 20
        mu0 = ONE * int(rng.integers(1, 20)) / 20
        pi = ONE * int(rng.integers(0, 10)) / 10
        base = Params(rho, mu0, pi)
        t = thresholds(base)
        upper = min(t.mu2_null, ONE - t.mu2_null)
        any_cost = _lattice(0, ONE, denominator)
        if kind == 'intermediate':
            gammas = _lattice(t.one_minus_rho, t.mu2_null, denominator)
            kappas = _lattice(t.one_minus_rho, upper, denominator)
        elif kind == 'rd_gamma':
            gammas = _lattice(t.one_minus_rho, t.mu2_null, denominator,
                              strict_high=True)
            kappas = any_cost
        else:
            gammas = kappas = any_cost
        if not gammas or not kappas:
            continue
        points.append(Params.from_costs(base, pick(gammas), pick(kappas)))
    return points


RegionReport = namedtuple('RegionReport', ('params', 'label', 'closed_form_W',
                                           'brute_force_W',
                                           'closed_form_in_argmax',
                                           'canonical_index', 'notes'))


def region_report(params):
    result = optimal_closed_form(params)
    optimum = brute_force_optimum(params, MODE_STRATEGIC)
    if result.mechanism is None:
        return RegionReport(params, result.region, None, optimum.best_W, None,
                            optimum.canonical.index,
                            'no closed form for this region')
    found = closed_form_match(result, optimum)
    notes = ''
    if result.tie_mechanism is not None:
        notes = 'tie with mechanism %s' % result.tie_mechanism.index
    elif result.policy_only and result.predicted_W != optimum.best_W:
        notes = 'assignments improved by mechanism %s' % (
            never_testing_optima(optimum) or [optimum.canonical])[0].index
    if not found:
        logger.warning('closed form mismatch in %s at %s', result.region,
                       params)
    return RegionReport(params, result.region, result.predicted_W,
                        optimum.best_W, found,
                        optimum.canonical.index, notes)


def region_match(report):
    if report.closed_form_in_argmax is None:
        return 'n/a'
    return 'true' if report.closed_form_in_argmax else 'false'


def sweep(base, grid, workers=None):
    """
    Classify and solve every (c, k) point of ``grid``. All points are
    validated before any work starts.
    """
    if not grid:
        raise ParameterError('empty grid')
    points = [base.replace(c=c, k=k) for c, k in grid]
    logger.info('sweeping %s grid points', len(points))
    return parallel_map(region_report, points, workers, chunksize=1)


def region_grid(base, gammas, kappas):
    """(c, k) grid, gamma-major, from axes given in effective-cost units."""
    scale = ONE - base.pi
    return [(gamma * scale, kappa * scale)
            for gamma in gammas for kappa in kappas]


def regions_to_csv(reports, fileobj):
    writer = csv.writer(fileobj, lineterminator='\n')
    writer.writerow(REGION_CSV_COLUMNS)
    for report in reports:
        p = report.params
        writer.writerow((
            format_rational(p.rho),
            format_rational(p.mu0),
            format_rational(p.pi),
            format_rational(p.c),
            format_rational(p.k),
            format_rational(p.gamma),
            format_rational(p.kappa),
            report.label,
            '' if report.closed_form_W is None else
            format_rational(report.closed_form_W),
            format_rational(report.brute_force_W),
            region_match(report),
            report.canonical_index))
