from collections import namedtuple
import logging

from .agent import NO_SIGNAL_STATE
from .agent import STATE_INDEX
from .agent import STATES
from .agent import PrivateState
from .agent import best_response
from .agent import continuation_value
from .agent import state_after
from .agent import state_value
from .constants import BASELINE_AFTER_NULL
from .constants import BASELINE_ALWAYS
from .constants import BASELINE_NEVER
from .constants import FD_OMEGA1
from .constants import FD_R1_OMEGA2
from .constants import HIGH
from .constants import LOW
from .constants import NULL
from .constants import OB_SIGMA1_0
from .constants import OB_SIGMA1_1
from .constants import OB_SIGMA2_0
from .constants import OB_SIGMA2_1
from .constants import REGION_BOTH_LOW
from .constants import REGION_BOUNDARY
from .constants import REGION_CASE_I
from .constants import REGION_CASE_II
from .constants import REGION_HIGH_HIGH
from .constants import REGION_PI_ZERO
from .constants import REPORT_NAMES
from .constants import REPORTS
from .constants import REVEAL
from .core import HALF
from .core import ONE
from .core import Mechanism
from .core import belief_after_report
from .core import classify_region
from .core import format_rational
from .core import thresholds
from .exceptions import NotForcingError
from .exceptions import NotICError
from .outcomes import baseline_payoff


logger = logging.getLogger(__name__)


def efficient_assignments(params):
    """
    Statically optimal assignment at every report pair, including histories
    that have zero probability.
    """
    def assign(r1, r2):
        if r2 != NULL:
            return r2 == HIGH
        return belief_after_report(params, r1) >= HALF
    return tuple(int(assign(r1, r2)) for r1 in REPORTS for r2 in REPORTS)


def make_forcing(mech):
    xhat = list(mech.xhat)
    for r1 in REPORTS:
        if mech.sigma2[r1]:
            xhat[3 * r1 + NULL] = 0
    return mech.with_assignments(xhat)


def baseline_region(params):
    t = thresholds(params)
    if t.kappa <= t.one_minus_rho:
        return BASELINE_ALWAYS
    elif t.kappa <= min(t.mu2_null, ONE - t.mu2_null):
        return BASELINE_AFTER_NULL
    return BASELINE_NEVER


_baseline_policies = {
    BASELINE_ALWAYS: (0, 1, 1, 1),
    BASELINE_AFTER_NULL: (0, 1, 0, 0),
    BASELINE_NEVER: (0, 0, 0, 0)}


def baseline_testing_policy(params, region=None):
    return _baseline_policies[region or baseline_region(params)]


def baseline_mechanism(params, region=None):
    policy = baseline_testing_policy(params, region)
    mech = Mechanism(policy[0], policy[1:], efficient_assignments(params))
    return make_forcing(mech)


def result_dependent_policy():
    """Test in the second period after no report or a favourable report."""
    return (0, 1, 0, 1)


def _high_second(r1, r2):
    return r2 == HIGH


def case_one_mechanism():
    return Mechanism.build((0, 1, 0, 0),
                           lambda r1, r2: r1 == HIGH or r2 == HIGH)


def case_two_mechanism():
    return Mechanism.build(result_dependent_policy(), _high_second)


def never_test_mechanism():
    return Mechanism.build((0, 0, 0, 0), _high_second)


def pi_zero_mechanism():
    return Mechanism.build((0, 1, 0, 0),
                           lambda r1, r2: r1 == NULL and r2 == HIGH)


def constant_mechanism(value):
    return Mechanism.build((0, 0, 0, 0), lambda r1, r2: value)


def case_one_payoff(params):
    rho, mu0, pi, k = params.rho, params.mu0, params.pi, params.k
    return (pi * mu0 * rho + pi * (ONE - mu0) * (pi + (ONE - pi) * rho) +
            (ONE - pi) * (ONE - k))


def case_two_payoff(params):
    rho, mu0, pi, k = params.rho, params.mu0, params.pi, params.k
    return ((ONE - k) * (pi * mu0 + ONE - pi) +
            pi * (ONE - mu0) * (pi + (ONE - pi) * rho))


def never_test_payoff(params):
    return params.pi + (ONE - params.pi) * (ONE - params.mu2_null)


def baseline_intermediate_payoff(params):
    rho, pi = params.rho, params.pi
    return pi * (pi + (ONE - pi) * rho) + (ONE - pi) * (ONE - params.k)


Constraint = namedtuple('Constraint', ('name', 'r1', 'omega', 'satisfied',
                                       'slack'))


class ConstraintReport(object):
    def __init__(self, mech):
        self.mechanism = mech
        self.constraints = []

    def add(self, name, slack, r1=None, omega=None):
        self.constraints.append(Constraint(name, r1, omega, slack >= 0, slack))

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    @property
    def passed(self):
        return all(constraint.satisfied for constraint in self.constraints)

    def failures(self):
        return [constraint for constraint in self.constraints
                if not constraint.satisfied]

    def find(self, name, r1=None, omega=None):
        for constraint in self.constraints:
            if (constraint.name == name and constraint.r1 == r1 and
                    constraint.omega == omega):
                return constraint

    def to_data(self):
        accum = []
        for constraint in self.constraints:
            accum.append({
                'name': constraint.name,
                'r1': None if constraint.r1 is None else
                      REPORT_NAMES[constraint.r1],
                'omega': constraint.omega,
                'satisfied': constraint.satisfied,
                'slack': format_rational(constraint.slack)})
        return accum


def _disclosure_optimized(params, mech, r1, mu):
    # Expected assignment when every observed result is reported only if it
    # does at least as well as an empty report.
    null = mech.x(r1, NULL)
    return (mu * max(mech.x(r1, HIGH), null) +
            (ONE - mu) * max(mech.x(r1, LOW), null))


def ic_check(params, mech):
    """
    Evaluate every applicable obedience and full-disclosure constraint.
    Slacks are expressed in units of effective cost.
    """
    if not mech.is_forcing:
        raise NotForcingError('mechanism %s is not forcing' % mech.describe())

    gamma, pi, mu0 = params.gamma, params.pi, params.mu0
    scale = ONE - pi
    observed = mech.sigma1 == 1 or pi > 0
    reachable = {NULL: mech.sigma1 == 0, LOW: observed, HIGH: observed}
    report = ConstraintReport(mech)

    for r1 in REPORTS:
        if not reachable[r1]:
            continue
        mu = belief_after_report(params, r1)
        null = mech.x(r1, NULL)
        if mech.sigma2[r1]:
            expected = mu * mech.x(r1, HIGH) + (ONE - mu) * mech.x(r1, LOW)
            report.add(OB_SIGMA2_1, expected - gamma, r1)
        else:
            expected = _disclosure_optimized(params, mech, r1, mu)
            report.add(OB_SIGMA2_0, gamma - (expected - null), r1)
            if pi > 0:
                for omega in (0, 1):
                    report.add(FD_R1_OMEGA2, mech.x(r1, 1 + omega) - null,
                               r1, omega)

    values = [state_value(params, mech, state) for state in STATES]
    printed, optimal = [], []
    for omega in (0, 1):
        r1 = 1 + omega
        shown = continuation_value(params, mech, r1,
                                   belief_after_report(params, r1))
        hidden = values[state_after(omega, False)]
        if observed:
            report.add(FD_OMEGA1, shown - hidden, omega=omega)
        printed.append(shown)
        optimal.append(max(values[state_after(omega, True)], hidden))

    on_path = mu0 * printed[1] + (ONE - mu0) * printed[0]
    best = mu0 * optimal[1] + (ONE - mu0) * optimal[0]
    if mech.sigma1:
        follow = on_path - params.c
        deviate = pi * best + scale * values[NO_SIGNAL_STATE]
        report.add(OB_SIGMA1_1, (follow - deviate) / scale)
    else:
        follow = pi * on_path + scale * continuation_value(
            params, mech, NULL, params.mu2_null)
        deviate = best - params.c
        report.add(OB_SIGMA1_0, (follow - deviate) / scale)
    return report


def is_ic(params, mech):
    return mech.is_forcing and ic_check(params, mech).passed


def revelation_transform(params, mech):
    """
    Build a mechanism under which honest, obedient play reproduces the
    agent's best response to ``mech``. Reports are relabelled to what the
    agent would have sent, recommendations follow what the agent actually
    does, and detectable deviations receive a zero assignment.
    """
    strat, _ = best_response(params, mech)
    sigma2 = []
    xhat = [0] * 9
    for r1 in REPORTS:
        if r1 == NULL:
            state, source = NO_SIGNAL_STATE, NULL
        else:
            source = r1 if strat.d1[r1 - 1] == REVEAL else NULL
            state = STATE_INDEX[PrivateState(r1, source)]
        test = strat.e2[state]
        sigma2.append(test)
        for r2 in REPORTS:
            if r2 != NULL and strat.disclose2(state, r2 - 1) == REVEAL:
                xhat[3 * r1 + r2] = mech.x(source, r2)
            else:
                xhat[3 * r1 + r2] = mech.x(source, NULL)
        if test:
            xhat[3 * r1 + NULL] = 0
    if strat.e1:
        sigma2[NULL] = 0
        xhat[0:3] = [0, 0, 0]
    return Mechanism(strat.e1, sigma2, xhat)


# With policy_only set the closed form pins the testing policy but not the
# assignments: the printed mechanism never tests, and a never-testing
# mechanism is optimal, yet other assignment rows may do strictly better.
ClosedFormResult = namedtuple('ClosedFormResult', ('region', 'mechanism',
                                                   'predicted_W',
                                                   'tie_mechanism',
                                                   'policy_only'))


def optimal_closed_form(params):
    region = classify_region(params)
    tie = None
    if region == REGION_CASE_I:
        mech, payoff = case_one_mechanism(), case_one_payoff(params)
    elif region == REGION_CASE_II:
        mech, payoff = case_two_mechanism(), case_two_payoff(params)
    elif region == REGION_BOUNDARY:
        mech, payoff = case_one_mechanism(), case_one_payoff(params)
        tie = case_two_mechanism()
    elif region == REGION_HIGH_HIGH:
        mech, payoff = never_test_mechanism(), never_test_payoff(params)
    elif region == REGION_BOTH_LOW:
        mech = baseline_mechanism(params, BASELINE_ALWAYS)
        payoff = baseline_payoff(params, mech)
    elif region == REGION_PI_ZERO:
        mech = pi_zero_mechanism()
        payoff = baseline_payoff(params, mech)
    else:
        logger.warning('no closed form at %s', params)
        mech = payoff = None
    return ClosedFormResult(region, mech, payoff, tie,
                            region == REGION_HIGH_HIGH)


Bound = namedtuple('Bound', ('name', 'r1', 'lower', 'value', 'upper',
                             'holds'))


class BoundsReport(object):
    def __init__(self, mech):
        self.mechanism = mech
        self.bounds = []

    def add(self, name, value, lower=None, upper=None, r1=None, holds=None):
        if holds is None:
            holds = ((lower is None or lower <= value) and
                     (upper is None or value <= upper))
        self.bounds.append(Bound(name, r1, lower, value, upper, holds))

    def __iter__(self):
        return iter(self.bounds)

    @property
    def passed(self):
        return all(bound.holds for bound in self.bounds)

    def failures(self):
        return [bound for bound in self.bounds if not bound.holds]


def lemma_bounds_check(params, mech):
    """
    Bounds every IC mechanism satisfies: the spread of second-period
    assignments after an unrequested test, constant assignments when testing
    is free, and the spread of first-period continuation values.

    Assignments are taken after optimal disclosure, which agrees with the
    mechanism's own entries whenever free signals arrive.
    """
    if not is_ic(params, mech):
        raise NotICError('mechanism %s is not incentive compatible' %
                         mech.describe())
    gamma = params.gamma
    observed = mech.sigma1 == 1 or params.pi > 0
    reachable = {NULL: mech.sigma1 == 0, LOW: observed, HIGH: observed}
    report = BoundsReport(mech)

    for r1 in REPORTS:
        if not reachable[r1] or mech.sigma2[r1]:
            continue
        null = mech.x(r1, NULL)
        mu = belief_after_report(params, r1)
        spread = _disclosure_optimized(params, mech, r1, mu) - null
        report.add('assignment_spread', spread, 0, gamma, r1)
        if params.c == 0:
            effective = [max(mech.x(r1, r2), null) for r2 in (LOW, HIGH)]
            report.add('constant_assignments', spread, r1=r1,
                       holds=effective == [null, null])

    if mech.sigma1 == 0:
        _, values = best_response(params, mech)
        expected = (params.mu0 * values.w1[1] +
                    (ONE - params.mu0) * values.w1[0])
        spread = expected - continuation_value(params, mech, NULL,
                                               params.mu2_null)
        report.add('continuation_spread', spread, 0, gamma)
    return report


def dominates(policy, floor):
    return all(a >= b for a, b in zip(policy, floor))
