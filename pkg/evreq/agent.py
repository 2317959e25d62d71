from collections import namedtuple
import itertools

from .constants import CONCEAL
from .constants import HIGH
from .constants import LOW
from .constants import NO_SIGNAL
from .constants import NULL
from .constants import OBSERVATION_NAMES
from .constants import REPORT_NAMES
from .constants import REVEAL
from .constants import SAW0
from .constants import SAW1
from .core import ONE


PrivateState = namedtuple('PrivateState', ('o1', 'r1'))

# Canonical order of the five consistent private states.
STATES = (
    PrivateState(NO_SIGNAL, NULL),
    PrivateState(SAW0, NULL),
    PrivateState(SAW0, LOW),
    PrivateState(SAW1, NULL),
    PrivateState(SAW1, HIGH))
STATE_INDEX = dict((state, i) for i, state in enumerate(STATES))
NO_SIGNAL_STATE = STATE_INDEX[PrivateState(NO_SIGNAL, NULL)]


def state_name(state):
    return '%s_%s' % (OBSERVATION_NAMES[state.o1], REPORT_NAMES[state.r1])


def state_after(omega1, revealed):
    """Index of the private state after observing omega1."""
    o1 = 1 + omega1
    return STATE_INDEX[PrivateState(o1, o1 if revealed else NULL)]


class AgentStrategy(namedtuple('_AgentStrategy', ('e1', 'd1', 'e2', 'd2'))):
    """
    Pure contingent plan. ``d1`` is indexed by the first-period result,
    ``e2`` by private state index and ``d2`` by 2 * state + omega2.
    """
    __slots__ = ()

    def __new__(cls, e1, d1, e2, d2):
        return super(AgentStrategy, cls).__new__(
            cls, int(e1), tuple(d1), tuple(e2), tuple(d2))

    def disclose2(self, state, omega2):
        return self.d2[2 * state + omega2]

    @classmethod
    def field_names(cls):
        names = ['e1', 'd1_saw0', 'd1_saw1']
        names.extend('e2_%s' % state_name(s) for s in STATES)
        for s in STATES:
            names.extend('d2_%s_%d' % (state_name(s), w) for w in (0, 1))
        return names

    def to_bits(self):
        return (self.e1,) + self.d1 + self.e2 + self.d2

    @classmethod
    def from_bits(cls, bits):
        bits = tuple(bits)
        if len(bits) != 18:
            raise ValueError('strategy record needs 18 fields')
        return cls(bits[0], bits[1:3], bits[3:8], bits[8:])

    def to_record(self):
        return dict(zip(self.field_names(), self.to_bits()))


ValueTable = namedtuple('ValueTable', ('v2', 'w1', 'v0'))


def private_belief(params, state):
    if state.o1 == SAW1:
        return params.rho
    elif state.o1 == SAW0:
        return ONE - params.rho
    return params.mu2_null


def continuation_value(params, mech, r1, mu2):
    s = mech.sigma2[r1]
    expected = mu2 * mech.x(r1, HIGH) + (ONE - mu2) * mech.x(r1, LOW)
    return (-params.c * s + (s + (1 - s) * params.pi) * expected +
            (1 - s) * (ONE - params.pi) * mech.x(r1, NULL))


def _second_period(params, mech, state):
    r1 = state.r1
    mu = private_belief(params, state)
    null = mech.x(r1, NULL)
    low, high = mech.x(r1, LOW), mech.x(r1, HIGH)
    d2 = (REVEAL if low >= null else CONCEAL,
          REVEAL if high >= null else CONCEAL)
    best = mu * max(high, null) + (ONE - mu) * max(low, null)
    test = best - params.c
    idle = params.pi * best + (ONE - params.pi) * null
    if test > idle:
        e2 = 1
    elif test < idle:
        e2 = 0
    else:
        e2 = mech.sigma2[r1]
    return e2, d2, max(test, idle)


def state_value(params, mech, state):
    """Continuation value of a private state under optimal play."""
    return _second_period(params, mech, state)[2]


def _respond(params, mech, e1=None):
    e2, d2, v2 = [], [], []
    for state in STATES:
        test, disclose, value = _second_period(params, mech, state)
        e2.append(test)
        d2.extend(disclose)
        v2.append(value)

    d1, w1 = [], []
    for omega in (0, 1):
        shown = v2[state_after(omega, True)]
        hidden = v2[state_after(omega, False)]
        d1.append(REVEAL if shown >= hidden else CONCEAL)
        w1.append(max(shown, hidden))

    mu0, pi = params.mu0, params.pi
    expected = mu0 * w1[1] + (ONE - mu0) * w1[0]
    test = expected - params.c
    idle = pi * expected + (ONE - pi) * v2[NO_SIGNAL_STATE]
    if e1 is None:
        if test > idle:
            e1 = 1
        elif test < idle:
            e1 = 0
        else:
            e1 = mech.sigma1
    v0 = test if e1 else idle
    return (AgentStrategy(e1, d1, e2, d2),
            ValueTable(tuple(v2), tuple(w1), v0))


def best_response(params, mech):
    """
    Backward induction under the tie rule: when indifferent the agent
    follows the recommendation and discloses.
    """
    return _respond(params, mech)


def compliant_response(params, mech):
    """Best response with the first-period test fixed to sigma1."""
    return _respond(params, mech, mech.sigma1)


def obedient_strategy(params, mech):
    return AgentStrategy(
        mech.sigma1,
        (REVEAL, REVEAL),
        [mech.sigma2[s.r1] for s in STATES],
        [REVEAL] * 10)


def _good_news_only():
    return [CONCEAL, REVEAL] * 5


def selective_deviation(params):
    """
    Test early, report only a favourable first result, never test again and
    report only a favourable free second result.
    """
    return AgentStrategy(1, (CONCEAL, REVEAL), [0] * 5, _good_news_only())


def retest_deviation(params):
    """
    As the selective deviation, but re-test in the second period after
    concealing an unfavourable first result and report that test.
    """
    retest = STATE_INDEX[PrivateState(SAW0, NULL)]
    e2 = [0] * 5
    e2[retest] = 1
    d2 = _good_news_only()
    d2[2 * retest] = REVEAL
    return AgentStrategy(1, (CONCEAL, REVEAL), e2, d2)


def conforming_strategy(params, retest=False):
    """
    Plan that keeps the baseline's first-period recommendation (no early
    test) while reporting only favourable free results. With ``retest`` the
    agent also tests after hiding an unfavourable free first result.
    """
    e2 = [0] * 5
    e2[NO_SIGNAL_STATE] = 1
    if retest:
        e2[STATE_INDEX[PrivateState(SAW0, NULL)]] = 1
    d2 = []
    for test in e2:
        d2.extend((REVEAL, REVEAL) if test else (CONCEAL, REVEAL))
    return AgentStrategy(0, (CONCEAL, REVEAL), e2, d2)


def selective_deviation_payoff(params):
    rho, mu0, pi = params.rho, params.mu0, params.pi
    return -params.c + mu0 + (ONE - mu0) * pi * (ONE - rho)


def conforming_payoff(params):
    rho, mu0, pi = params.rho, params.mu0, params.pi
    return (-params.c * (ONE - pi) +
            pi * (mu0 + (ONE - mu0) * pi * (ONE - rho)) +
            (ONE - pi) * params.mu2_null)


def retest_deviation_payoff(params):
    rho, mu0 = params.rho, params.mu0
    return -params.c * (2 - mu0) + ONE - rho * (ONE - mu0)


def retest_conforming_payoff(params):
    rho, mu0, pi = params.rho, params.mu0, params.pi
    return (-params.c * (ONE - pi * mu0) +
            pi * (ONE - rho * (ONE - mu0)) +
            (ONE - pi) * params.mu2_null)


def reachable_states(params, mech):
    """Private states reached with positive probability under honest play."""
    states = []
    if mech.sigma1 == 0:
        states.append(NO_SIGNAL_STATE)
    if mech.sigma1 == 1 or params.pi > 0:
        states.append(state_after(0, True))
        states.append(state_after(1, True))
    return states


def is_obedient_on_path(params, mech, strat):
    """
    Whether ``strat`` follows every recommendation and discloses every result
    it can observe along the honest, obedient path.
    """
    if strat.e1 != mech.sigma1:
        return False
    if mech.sigma1 == 1 or params.pi > 0:
        if strat.d1 != (REVEAL, REVEAL):
            return False
    for state in reachable_states(params, mech):
        test = mech.sigma2[STATES[state].r1]
        if strat.e2[state] != test:
            return False
        if test or params.pi > 0:
            if (strat.disclose2(state, 0) != REVEAL or
                    strat.disclose2(state, 1) != REVEAL):
                return False
    return True


def follows_tie_rule(params, mech, strat):
    """
    Check that ``strat`` is optimal at every decision node given its own
    continuation, choosing the recommended test and disclosure on ties.
    """
    c, pi = params.c, params.pi
    values = []
    for i, state in enumerate(STATES):
        r1 = state.r1
        null = mech.x(r1, NULL)
        payoff = []
        for omega in (0, 1):
            shown = mech.x(r1, 1 + omega)
            choice = strat.disclose2(i, omega)
            if shown > null and choice != REVEAL:
                return False
            elif shown < null and choice != CONCEAL:
                return False
            elif shown == null and choice != REVEAL:
                return False
            payoff.append(shown if choice == REVEAL else null)
        mu = private_belief(params, state)
        expected = mu * payoff[1] + (ONE - mu) * payoff[0]
        options = (pi * expected + (ONE - pi) * null, expected - c)
        chosen = options[strat.e2[i]]
        other = options[1 - strat.e2[i]]
        if chosen < other:
            return False
        elif chosen == other and strat.e2[i] != mech.sigma2[r1]:
            return False
        values.append(chosen)

    w1 = []
    for omega in (0, 1):
        shown = values[state_after(omega, True)]
        hidden = values[state_after(omega, False)]
        choice = strat.d1[omega]
        if shown != hidden and (choice == REVEAL) != (shown > hidden):
            return False
        elif shown == hidden and choice != REVEAL:
            return False
        w1.append(shown if choice == REVEAL else hidden)
    expected = params.mu0 * w1[1] + (ONE - params.mu0) * w1[0]
    options = (pi * expected + (ONE - pi) * values[NO_SIGNAL_STATE],
               expected - c)
    chosen, other = options[strat.e1], options[1 - strat.e1]
    if chosen < other:
        return False
    return chosen > other or strat.e1 == mech.sigma1


def _state_terms(params, mech, state):
    # Value of each (e2, d2(0), d2(1)) combination at a state, indexed by
    # 4 * e2 + 2 * d2(0) + d2(1).
    r1 = state.r1
    mu = private_belief(params, state)
    null = mech.x(r1, NULL)
    terms = []
    for e2, reveal0, reveal1 in itertools.product((0, 1), repeat=3):
        low = mech.x(r1, LOW) if reveal0 else null
        high = mech.x(r1, HIGH) if reveal1 else null
        expected = mu * high + (ONE - mu) * low
        if e2:
            terms.append(expected - params.c)
        else:
            terms.append(params.pi * expected + (ONE - params.pi) * null)
    return terms


def _plan_to_strategy(e1, d1, combo):
    d2 = []
    for n in combo:
        d2.extend(((n >> 1) & 1, n & 1))
    return AgentStrategy(e1, d1, [n >> 2 for n in combo], d2)


def _valued_plans(params, mech):
    terms = [_state_terms(params, mech, state) for state in STATES]
    mu0, pi = params.mu0, params.pi
    combos = list(itertools.product(range(8), repeat=len(STATES)))
    for e1, d1_0, d1_1 in itertools.product((0, 1), repeat=3):
        seen = ONE if e1 else pi
        low_state = state_after(0, d1_0)
        high_state = state_after(1, d1_1)
        weighted = {
            NO_SIGNAL_STATE: [(ONE - seen) * t
                              for t in terms[NO_SIGNAL_STATE]],
            low_state: [seen * (ONE - mu0) * t for t in terms[low_state]],
            high_state: [seen * mu0 * t for t in terms[high_state]]}
        cost = -params.c * e1
        a, b, h = (weighted[NO_SIGNAL_STATE], weighted[low_state],
                   weighted[high_state])
        for combo in combos:
            value = (cost + a[combo[NO_SIGNAL_STATE]] + b[combo[low_state]] +
                     h[combo[high_state]])
            yield e1, (d1_0, d1_1), combo, value


def strategy_values(params, mech):
    """
    Exhaustively value every pure strategy. Yields (strategy, value) pairs
    over all 2 * 4 * 2^5 * 2^10 plans.
    """
    for e1, d1, combo, value in _valued_plans(params, mech):
        yield _plan_to_strategy(e1, d1, combo), value


def exhaustive_optimum(params, mech):
    """Return the best value and every pure strategy attaining it."""
    best, argmax = None, []
    for e1, d1, combo, value in _valued_plans(params, mech):
        if best is None or value > best:
            best, argmax = value, [(e1, d1, combo)]
        elif value == best:
            argmax.append((e1, d1, combo))
    return best, [_plan_to_strategy(*plan) for plan in argmax]
