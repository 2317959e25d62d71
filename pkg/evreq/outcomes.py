from collections import namedtuple
import csv
import logging
import math

try:
    import numpy as np
except ImportError:
    np = None

from .agent import STATE_INDEX
from .agent import STATES
from .agent import PrivateState
from .agent import best_response
from .agent import obedient_strategy
from .constants import NO_SIGNAL
from .constants import NULL
from .constants import OBSERVATION_NAMES
from .constants import REPORT_NAMES
from .constants import REVEAL
from .core import ONE
from .core import format_rational
from .exceptions import ImproperlyConfigured


logger = logging.getLogger(__name__)


OutcomeAtom = namedtuple('OutcomeAtom', ('omega1', 'omega2', 'o1', 'o2', 'r1',
                                         'r2', 'e1', 'e2', 'x', 'prob'))

CSV_COLUMNS = ('omega1', 'omega2', 'o1', 'o2', 'r1', 'r2', 'e1', 'e2', 'x',
               'prob')


class OutcomeDistribution(object):
    def __init__(self, atoms):
        self.atoms = tuple(atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, OutcomeDistribution):
            return NotImplemented
        return self.project(*CSV_COLUMNS[:-1]) == other.project(
            *CSV_COLUMNS[:-1])

    def __ne__(self, other):
        return not self == other

    @staticmethod
    def key(atom):
        return atom[:-1]

    def total(self):
        return sum((atom.prob for atom in self.atoms), 0 * ONE)

    def probability(self, predicate):
        return sum((atom.prob for atom in self.atoms if predicate(atom)),
                   0 * ONE)

    def project(self, *fields):
        """Marginal distribution over the named coordinates."""
        accum = {}
        for atom in self.atoms:
            key = tuple(getattr(atom, field) for field in fields)
            accum[key] = accum.get(key, 0) + atom.prob
        return accum

    def marginal(self, field):
        return dict((key[0], prob)
                    for key, prob in self.project(field).items())

    def to_data(self):
        accum = []
        for atom in self.atoms:
            record = atom._asdict()
            record['prob'] = format_rational(atom.prob)
            accum.append(record)
        return accum


def _signal(tested, pi):
    if tested:
        return ((True, ONE),)
    elif pi == 0:
        return ((False, ONE),)
    return ((True, pi), (False, ONE - pi))


def play(params, mech, strat):
    """
    Enumerate every path of positive probability induced by the mechanism and
    the agent's strategy.
    """
    rho, mu0, pi = params.rho, params.mu0, params.pi
    atoms = []
    for omega1, p1 in ((0, ONE - mu0), (1, mu0)):
        for seen1, q1 in _signal(strat.e1, pi):
            o1 = 1 + omega1 if seen1 else NO_SIGNAL
            if seen1 and strat.d1[omega1] == REVEAL:
                r1 = 1 + omega1
            else:
                r1 = NULL
            state = STATE_INDEX[PrivateState(o1, r1)]
            e2 = strat.e2[state]
            for omega2, p2 in ((omega1, rho), (1 - omega1, ONE - rho)):
                for seen2, q2 in _signal(e2, pi):
                    o2 = 1 + omega2 if seen2 else NO_SIGNAL
                    if seen2 and strat.disclose2(state, omega2) == REVEAL:
                        r2 = 1 + omega2
                    else:
                        r2 = NULL
                    atoms.append(OutcomeAtom(
                        omega1, omega2, o1, o2, r1, r2, strat.e1, e2,
                        mech.x(r1, r2), p1 * q1 * p2 * q2))
    return OutcomeDistribution(atoms)


def principal_payoff(dist, params):
    return sum((atom.prob * (int(atom.x == atom.omega2) -
                             params.k * (atom.e1 + atom.e2))
                for atom in dist), 0 * ONE)


def agent_payoff(dist, params):
    return sum((atom.prob * (atom.x - params.c * (atom.e1 + atom.e2))
                for atom in dist), 0 * ONE)


def baseline_payoff(params, mech):
    """Principal's payoff when the agent is obedient and fully disclosing."""
    dist = play(params, mech, obedient_strategy(params, mech))
    return principal_payoff(dist, params)


def strategic_payoff(params, mech):
    strat, _ = best_response(params, mech)
    return principal_payoff(play(params, mech, strat), params)


def testing_probability(params, mech):
    """Probability of a second-period test under obedient play."""
    mu0, pi = params.mu0, params.pi
    s_null, s_low, s_high = mech.sigma2
    informed = mu0 * s_high + (ONE - mu0) * s_low
    if mech.sigma1:
        return informed
    return pi * informed + (ONE - pi) * s_null


def baseline_objective(params, mech):
    """
    Accuracy minus the expected cost of the recommended tests, evaluated
    directly from the testing policy.
    """
    dist = play(params, mech, obedient_strategy(params, mech))
    accuracy = dist.probability(lambda atom: atom.x == atom.omega2)
    return accuracy - params.k * (mech.sigma1 +
                                  testing_probability(params, mech))


def to_csv(dist, fileobj):
    writer = csv.writer(fileobj, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for atom in dist:
        writer.writerow((
            atom.omega1,
            atom.omega2,
            OBSERVATION_NAMES[atom.o1],
            OBSERVATION_NAMES[atom.o2],
            REPORT_NAMES[atom.r1],
            REPORT_NAMES[atom.r2],
            atom.e1,
            atom.e2,
            atom.x,
            format_rational(atom.prob)))


def simulate(params, mech, strat, draws=100000, seed=0):
    """
    Monte Carlo play. Returns a dict mapping atom coordinates to the number of
    simulated plays that ended there.
    """
    if np is None:
        raise ImproperlyConfigured('numpy library not found')
    rng = np.random.default_rng(seed)
    u = rng.random((draws, 4))

    omega1 = (u[:, 0] < float(params.mu0)).astype(np.int64)
    if strat.e1:
        seen1 = np.ones(draws, dtype=bool)
    else:
        seen1 = u[:, 1] < float(params.pi)
    o1 = np.where(seen1, 1 + omega1, NO_SIGNAL)
    reveal1 = np.array(strat.d1)[omega1] == REVEAL
    r1 = np.where(seen1 & reveal1, 1 + omega1, NULL)

    lookup = np.full((3, 3), -1, dtype=np.int64)
    for i, state in enumerate(STATES):
        lookup[state.o1, state.r1] = i
    state = lookup[o1, r1]
    e2 = np.array(strat.e2)[state]

    omega2 = np.where(u[:, 2] < float(params.rho), omega1, 1 - omega1)
    seen2 = (e2 == 1) | (u[:, 3] < float(params.pi))
    o2 = np.where(seen2, 1 + omega2, NO_SIGNAL)
    reveal2 = np.array(strat.d2).reshape(len(STATES), 2)[state, omega2]
    r2 = np.where(seen2 & (reveal2 == REVEAL), 1 + omega2, NULL)
    x = np.array(mech.xhat).reshape(3, 3)[r1, r2]
    e1 = np.full(draws, strat.e1)

    rows = np.stack([omega1, omega2, o1, o2, r1, r2, e1, e2, x], axis=1)
    keys, counts = np.unique(rows, axis=0, return_counts=True)
    return dict((tuple(int(v) for v in key), int(n))
                for key, n in zip(keys, counts))


def monte_carlo_zscores(dist, counts, draws):
    """
    Standardized deviation of each simulated frequency from its exact atom
    probability. Simulated paths outside the support score infinity.
    """
    scores = {}
    for atom in dist:
        key = dist.key(atom)
        p = float(atom.prob)
        observed = counts.get(key, 0) / float(draws)
        error = math.sqrt(p * (1 - p) / draws)
        if error > 0:
            scores[key] = (observed - p) / error
        else:
            scores[key] = 0.0 if observed == p else float('inf')
    for key in counts:
        if key not in scores:
            scores[key] = float('inf')
    return scores


def monte_carlo_check(params, mech, strat, draws=100000, seed=0, bound=3):
    dist = play(params, mech, strat)
    counts = simulate(params, mech, strat, draws, seed)
    scores = monte_carlo_zscores(dist, counts, draws)
    worst = max(abs(z) for z in scores.values())
    logger.debug('monte carlo: %s atoms, worst |z| = %.3f', len(scores), worst)
    return worst <= bound, worst
