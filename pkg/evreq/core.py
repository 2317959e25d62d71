from collections import namedtuple
from fractions import Fraction
import re

from .constants import HIGH
from .constants import LOW
from .constants import MECHANISM_BITS
from .constants import N_MECHANISMS
from .constants import NULL
from .constants import REGION_BOTH_LOW
from .constants import REGION_BOUNDARY
from .constants import REGION_CASE_I
from .constants import REGION_CASE_II
from .constants import REGION_HIGH_HIGH
from .constants import REGION_PI_ZERO
from .constants import REGION_UNCOVERED
from .constants import REPORT_NAMES
from .constants import REPORTS
from .constants import SIGMA1_BIT
from .constants import SIGMA2_OFFSET
from .constants import XHAT_OFFSET
from .exceptions import MechanismError
from .exceptions import ParameterError


ONE = Fraction(1)
HALF = Fraction(1, 2)

_rational_re = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def parse_rational(value):
    """
    Convert an integer, Fraction or "p/q" literal to a Fraction. Floats and
    decimal literals are rejected.
    """
    if isinstance(value, Fraction):
        return value
    elif isinstance(value, bool) or isinstance(value, float):
        raise ParameterError('inexact value %r, use a "p/q" literal' % value)
    elif isinstance(value, int):
        return Fraction(value)
    elif isinstance(value, str):
        match = _rational_re.match(value)
        if match is None:
            raise ParameterError('invalid rational literal "%s"' % value)
        numerator, denominator = match.groups()
        denominator = int(denominator) if denominator is not None else 1
        if denominator == 0:
            raise ParameterError('zero denominator in "%s"' % value)
        return Fraction(int(numerator), denominator)
    raise ParameterError('unsupported rational value %r' % (value,))


def format_rational(value):
    value = Fraction(value)
    return '%d/%d' % (value.numerator, value.denominator)


class Params(namedtuple('_Params', ('rho', 'mu0', 'pi', 'c', 'k'))):
    """
    Model primitives: state persistence, prior, free-signal probability and
    the agent's and principal's testing costs.
    """
    __slots__ = ()

    def __new__(cls, rho, mu0, pi, c=0, k=0):
        values = [parse_rational(v) for v in (rho, mu0, pi, c, k)]
        self = super(Params, cls).__new__(cls, *values)
        self.validate()
        return self

    def validate(self):
        if not (HALF < self.rho < ONE):
            raise ParameterError('rho must lie in (1/2, 1), got %s' %
                                 format_rational(self.rho))
        if not (0 < self.mu0 < ONE):
            raise ParameterError('mu0 must lie in (0, 1), got %s' %
                                 format_rational(self.mu0))
        if self.pi >= ONE:
            raise ParameterError('pi must be < 1, got %s' %
                                 format_rational(self.pi))
        if self.pi < 0:
            raise ParameterError('pi must be >= 0, got %s' %
                                 format_rational(self.pi))
        if self.c < 0 or self.k < 0:
            raise ParameterError('testing costs must be non-negative')

    @classmethod
    def from_costs(cls, base, gamma, kappa):
        """
        Build a point sharing rho, mu0 and pi with ``base`` whose effective
        costs are ``gamma`` and ``kappa``.
        """
        scale = ONE - base.pi
        return cls(base.rho, base.mu0, base.pi,
                   parse_rational(gamma) * scale,
                   parse_rational(kappa) * scale)

    def replace(self, **kwargs):
        data = self._asdict()
        data.update(kwargs)
        return Params(**data)

    @property
    def gamma(self):
        return self.c / (ONE - self.pi)

    @property
    def kappa(self):
        return self.k / (ONE - self.pi)

    @property
    def mu2_null(self):
        return self.rho * self.mu0 + (ONE - self.rho) * (ONE - self.mu0)

    def to_data(self):
        return dict((key, format_rational(value))
                    for key, value in self._asdict().items())

    def __str__(self):
        return '(%s)' % ', '.join(format_rational(v) for v in self)


Thresholds = namedtuple('Thresholds', ('gamma', 'kappa', 'mu2_null',
                                       'gamma_bar', 'gamma_bar_prime',
                                       'kappa_bar', 'one_minus_rho'))


def belief_after_report(params, r1):
    """Public belief that the second-period state is 1 after report r1."""
    if r1 == HIGH:
        return params.rho
    elif r1 == LOW:
        return ONE - params.rho
    return params.mu2_null


def thresholds(params):
    rho, mu0, pi = params.rho, params.mu0, params.pi
    if pi >= ONE:
        raise ParameterError('effective costs are undefined for pi = 1')
    if pi > 0:
        gamma_bar = (ONE - rho) * (mu0 - (ONE - mu0) * (ONE - pi)) / pi
    else:
        gamma_bar = None
    return Thresholds(
        gamma=params.gamma,
        kappa=params.kappa,
        mu2_null=params.mu2_null,
        gamma_bar=gamma_bar,
        gamma_bar_prime=mu0 * (ONE - rho) / (ONE - mu0 * (ONE - pi)),
        kappa_bar=(ONE - rho) / (ONE - pi),
        one_minus_rho=ONE - rho)


def threshold_remark_holds(params):
    """
    Whether the deviation threshold lies below the no-report belief. Returns
    None when the threshold is undefined (pi = 0).
    """
    t = thresholds(params)
    if t.gamma_bar is None:
        return None
    return t.gamma_bar < t.mu2_null


def intermediate_kappa(params):
    t = thresholds(params)
    upper = min(t.mu2_null, ONE - t.mu2_null)
    return t.one_minus_rho < t.kappa <= upper


def intermediate_gamma(params):
    t = thresholds(params)
    return t.one_minus_rho < t.gamma <= t.mu2_null


def classify_region(params):
    t = thresholds(params)
    low = t.one_minus_rho
    upper = min(t.mu2_null, ONE - t.mu2_null)
    kappa_mid = low < t.kappa <= upper

    if params.pi == 0 and kappa_mid and t.gamma <= t.mu2_null:
        return REGION_PI_ZERO
    if 0 < t.kappa <= low and 0 < t.gamma <= low:
        return REGION_BOTH_LOW
    if kappa_mid and low < t.gamma <= t.mu2_null:
        if t.gamma >= t.gamma_bar:
            if t.kappa == t.kappa_bar:
                return REGION_BOUNDARY
            elif t.kappa > t.kappa_bar:
                return REGION_CASE_I
        return REGION_CASE_II
    if t.kappa > upper and t.gamma >= params.rho:
        return REGION_HIGH_HIGH
    return REGION_UNCOVERED


class Mechanism(namedtuple('_Mechanism', ('sigma1', 'sigma2', 'xhat'))):
    """
    Deterministic mechanism. ``sigma2`` is indexed by the first report and
    ``xhat`` holds the nine assignments in row-major (r1, r2) order.
    """
    __slots__ = ()

    def __new__(cls, sigma1, sigma2, xhat):
        sigma2 = tuple(int(b) for b in sigma2)
        xhat = tuple(int(b) for b in xhat)
        if len(sigma2) != 3 or len(xhat) != 9:
            raise MechanismError('mechanism needs 3 recommendations and 9 '
                                 'assignments')
        if any(b not in (0, 1) for b in (int(sigma1),) + sigma2 + xhat):
            raise MechanismError('mechanism entries must be 0 or 1')
        return super(Mechanism, cls).__new__(cls, int(sigma1), sigma2, xhat)

    @classmethod
    def build(cls, policy, assign):
        """
        Build from a testing policy (sigma1, sigma2(null), sigma2(low),
        sigma2(high)) and a callable assign(r1, r2) -> 0/1.
        """
        xhat = [int(assign(r1, r2)) for r1 in REPORTS for r2 in REPORTS]
        return cls(policy[0], policy[1:], xhat)

    def x(self, r1, r2):
        return self.xhat[3 * r1 + r2]

    def row(self, r1):
        return self.xhat[3 * r1:3 * r1 + 3]

    @property
    def policy(self):
        return (self.sigma1,) + self.sigma2

    @property
    def is_forcing(self):
        for r1 in REPORTS:
            if self.sigma2[r1] and self.x(r1, NULL):
                return False
        return True

    @property
    def index(self):
        return encode(self)

    def with_policy(self, policy):
        return Mechanism(policy[0], policy[1:], self.xhat)

    def with_assignments(self, xhat):
        return Mechanism(self.sigma1, self.sigma2, xhat)

    def to_record(self):
        return {
            'sigma1': self.sigma1,
            'sigma2': dict(zip(REPORT_NAMES, self.sigma2)),
            'xhat': [list(self.row(r1)) for r1 in REPORTS]}

    @classmethod
    def from_record(cls, record):
        try:
            sigma2 = [record['sigma2'][name] for name in REPORT_NAMES]
            rows = record['xhat']
            if len(rows) != 3 or any(len(row) != 3 for row in rows):
                raise MechanismError('xhat must be a 3x3 table')
            xhat = [value for row in rows for value in row]
            return cls(record['sigma1'], sigma2, xhat)
        except (KeyError, TypeError, ValueError) as exc:
            raise MechanismError('malformed mechanism record: %s' % exc)

    def describe(self):
        rows = ' '.join('%s:%s' % (REPORT_NAMES[r1],
                                   ''.join(str(b) for b in self.row(r1)))
                        for r1 in REPORTS)
        return 'sigma1=%d sigma2=%s xhat[%s]' % (
            self.sigma1, ''.join(str(b) for b in self.sigma2), rows)


def encode(mech):
    index = mech.sigma1 << SIGMA1_BIT
    for r1 in REPORTS:
        index |= mech.sigma2[r1] << (SIGMA2_OFFSET + r1)
    for i, bit in enumerate(mech.xhat):
        index |= bit << (XHAT_OFFSET + i)
    return index


def decode(index):
    if isinstance(index, bool) or not isinstance(index, int):
        raise MechanismError('mechanism index must be an integer')
    if not 0 <= index < N_MECHANISMS:
        raise MechanismError('mechanism index %s outside [0, %s]' %
                             (index, N_MECHANISMS - 1))
    bits = [(index >> i) & 1 for i in range(MECHANISM_BITS)]
    return Mechanism(bits[SIGMA1_BIT],
                     bits[SIGMA2_OFFSET:XHAT_OFFSET],
                     bits[XHAT_OFFSET:])
