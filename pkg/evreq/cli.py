import argparse
import io
import json
import logging
import os
import sys

from . import __version__
from .agent import best_response
from .constants import EXIT_INVALID
from .constants import EXIT_MISMATCH
from .constants import EXIT_OK
from .constants import FORMAT_JSON
from .constants import FORMATS
from .constants import MODE_NO_AGENCY
from .constants import MODE_STRATEGIC
from .core import ONE
from .core import Mechanism
from .core import Params
from .core import decode
from .core import format_rational
from .core import parse_rational
from .core import thresholds
from .exceptions import ConfigError
from .exceptions import EvreqError
from .exceptions import MechanismError
from .mechanisms import ic_check
from .mechanisms import is_ic
from .mechanisms import optimal_closed_form
from .mechanisms import revelation_transform
from .outcomes import play
from .outcomes import to_csv
from .search import brute_force_optimum
from .search import closed_form_match
from .search import random_points
from .search import region_grid
from .search import region_match
from .search import regions_to_csv
from .search import sweep
from .search import verify_points
from .serializers import Serializer
from .serializers import regions_svg


logger = logging.getLogger(__name__)

RATIONAL_KEYS = ('rho', 'mu0', 'pi', 'c', 'k', 'mc_bound')
GRID_KEYS = ('c_grid', 'k_grid', 'gamma_grid', 'kappa_grid')
INTEGER_KEYS = ('seed', 'points', 'workers', 'grid_steps', 'draws')
TEXT_KEYS = ('format', 'output', 'kind', 'mechanism')
CONFIG_KEYS = RATIONAL_KEYS + GRID_KEYS + INTEGER_KEYS + TEXT_KEYS

DEFAULTS = {
    'c': 0,
    'k': 0,
    'seed': 0,
    'points': 100,
    'draws': 100000,
    'mc_bound': 3,
    'format': FORMAT_JSON,
    'output': '.',
    'kind': 'any'}


def _convert(key, value):
    if key in RATIONAL_KEYS:
        return parse_rational(value)
    elif key in GRID_KEYS:
        items = [item for item in value.split(',') if item.strip()]
        if not items:
            raise ConfigError('empty grid for "%s"' % key)
        return [parse_rational(item) for item in items]
    elif key in INTEGER_KEYS:
        try:
            return int(value)
        except ValueError:
            raise ConfigError('"%s" must be an integer, got "%s"' %
                              (key, value))
    return value.strip()


def parse_config(text):
    """Parse a flat ``key = value`` configuration. ``#`` starts a comment."""
    config = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('line %s: expected "key = value"' % lineno)
        key, value = [part.strip() for part in line.split('=', 1)]
        if key not in CONFIG_KEYS:
            raise ConfigError('line %s: unknown key "%s"' % (lineno, key))
        elif key in config:
            raise ConfigError('line %s: duplicate key "%s"' % (lineno, key))
        config[key] = _convert(key, value)
    return config


def load_config(filename):
    try:
        with io.open(filename, encoding='utf-8') as fh:
            return parse_config(fh.read())
    except (IOError, OSError) as exc:
        raise ConfigError('cannot read config "%s": %s' % (filename, exc))


class RunConfig(object):
    """
    Layered run configuration: defaults, then the config file, then the
    ``EVREQ_WORKERS`` environment variable, then command-line flags.
    """
    def __init__(self, values=None):
        self.values = dict(DEFAULTS)
        workers = os.environ.get('EVREQ_WORKERS')
        if workers:
            self.values['workers'] = _convert('workers', workers)
        self.values.update(values or {})
        if self.values['format'] not in FORMATS:
            raise ConfigError('unknown format "%s"' % self.values['format'])

    @classmethod
    def from_args(cls, args):
        values = load_config(args.config) if args.config else {}
        for key in CONFIG_KEYS:
            flag = getattr(args, key, None)
            if flag is not None:
                values[key] = _convert(key, flag)
        return cls(values)

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)

    def __contains__(self, key):
        return key in self.values

    def has_point(self):
        return all(key in self.values for key in ('rho', 'mu0', 'pi'))

    def params(self):
        missing = [k for k in ('rho', 'mu0', 'pi') if k not in self.values]
        if missing:
            raise ConfigError('missing parameter(s): %s' % ', '.join(missing))
        return Params(self['rho'], self['mu0'], self['pi'], self['c'],
                      self['k'])

    def grid(self, base):
        if 'c_grid' in self or 'k_grid' in self:
            if not ('c_grid' in self and 'k_grid' in self):
                raise ConfigError('c_grid and k_grid must be given together')
            return [(c, k) for c in self['c_grid'] for k in self['k_grid']]
        elif 'gamma_grid' in self or 'kappa_grid' in self:
            if not ('gamma_grid' in self and 'kappa_grid' in self):
                raise ConfigError('gamma_grid and kappa_grid must be given '
                                  'together')
            return region_grid(base, self['gamma_grid'], self['kappa_grid'])
        elif 'grid_steps' in self:
            steps = self['grid_steps']
            if steps < 1:
                raise ConfigError('grid_steps must be positive')
            axis = [ONE * i / steps for i in range(1, steps + 1)]
            return region_grid(base, axis, axis)
        raise ConfigError('no grid given (c_grid/k_grid, gamma_grid/'
                          'kappa_grid or grid_steps)')

    @property
    def workers(self):
        return self.get('workers')

    def serializer(self):
        return Serializer(self['format'])

    def path(self, filename):
        output = self['output']
        if not os.path.isdir(output):
            os.makedirs(output)
        return os.path.join(output, filename)


def _write(config, name, data):
    serializer = config.serializer()
    filename = config.path('%s.%s' % (name, serializer.extension))
    serializer.dump(data, filename)
    logger.info('wrote %s', filename)
    return filename


def _write_text(config, filename, content):
    filename = config.path(filename)
    with io.open(filename, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(content)
    logger.info('wrote %s', filename)
    return filename


def thresholds_data(params):
    t = thresholds(params)
    return dict((key, None if value is None else format_rational(value))
                for key, value in t._asdict().items())


def cmd_solve(config):
    params = config.params()
    strategic = brute_force_optimum(params, MODE_STRATEGIC, config.workers)
    no_agency = brute_force_optimum(params, MODE_NO_AGENCY, config.workers)
    result = optimal_closed_form(params)
    strat, values = best_response(params, strategic.canonical)
    dist = play(params, strategic.canonical, strat)

    found = closed_form_match(result, strategic)
    if found is None:
        match = 'n/a'
        closed_form = None
    else:
        match = 'true' if found else 'false'
        closed_form = {
            'mechanism': result.mechanism.to_record(),
            'index': result.mechanism.index,
            'predicted_W': format_rational(result.predicted_W),
            'tie_index': (result.tie_mechanism.index
                          if result.tie_mechanism is not None else None),
            'policy_only': result.policy_only}

    _write(config, 'solve', {
        'params': params.to_data(),
        'thresholds': thresholds_data(params),
        'region': result.region,
        'closed_form': closed_form,
        'strategic': strategic.to_data(),
        'no_agency': no_agency.to_data(),
        'best_response': strat.to_record(),
        'agent_value': format_rational(values.v0),
        'outcomes': dist.to_data(),
        'match': match})
    buf = io.StringIO()
    to_csv(dist, buf)
    _write_text(config, 'outcomes.csv', buf.getvalue())

    print('region: %s' % result.region)
    print('best_W: %s' % format_rational(strategic.best_W))
    print('no_agency_W: %s' % format_rational(no_agency.best_W))
    print('canonical_mechanism_index: %s' % strategic.canonical.index)
    print('match: %s' % match)
    return EXIT_MISMATCH if match == 'false' else EXIT_OK


def _load_mechanism(filename):
    try:
        with io.open(filename, encoding='utf-8') as fh:
            record = json.load(fh)
    except ValueError as exc:
        raise MechanismError('cannot parse mechanism "%s": %s' %
                             (filename, exc))
    except (IOError, OSError) as exc:
        raise ConfigError('cannot read mechanism "%s": %s' % (filename, exc))
    if isinstance(record, int) and not isinstance(record, bool):
        return decode(record)
    elif not isinstance(record, dict):
        raise MechanismError('mechanism "%s" must be a record or an index' %
                             filename)
    return Mechanism.from_record(record)


def mechanism_data(params, mech):
    data = {'mechanism': mech.to_record(), 'index': mech.index,
            'forcing': mech.is_forcing}
    if mech.is_forcing:
        data['constraints'] = ic_check(params, mech).to_data()
        data['ic'] = is_ic(params, mech)
    transformed = revelation_transform(params, mech)
    data['revelation'] = {'mechanism': transformed.to_record(),
                          'index': transformed.index}
    return data


def cmd_verify(config):
    mech = None
    if config.get('mechanism'):
        mech = _load_mechanism(config['mechanism'])

    if config.has_point():
        points = [config.params()]
    else:
        points = random_points(config['seed'], config['points'],
                               config['kind'])
    logger.info('verifying %s parameter point(s)', len(points))
    reports = verify_points(points, config.workers, draws=config['draws'],
                            seed=config['seed'],
                            mc_bound=float(config['mc_bound']))

    data = {'points': [report.to_data() for report in reports]}
    if mech is not None:
        data['mechanism'] = [mechanism_data(params, mech) for params in points]
    _write(config, 'verify', data)

    failed = set()
    for report in reports:
        remark = report['gamma_bar_below_mu2null']
        if remark.applicable:
            print('%s gamma_bar_exceeds_mu2null: %s' % (
                report.params, 'false' if remark.passed else 'true'))
        for item in report.failures():
            failed.add(item.claim)
    print('points: %s' % len(reports))
    if failed:
        sys.stderr.write('failing claims: %s\n' % ', '.join(sorted(failed)))
        return EXIT_MISMATCH
    print('all applicable claims passed')
    return EXIT_OK


def cmd_regions(config):
    base = config.params()
    grid = config.grid(base)
    reports = sweep(base, grid, config.workers)

    buf = io.StringIO()
    regions_to_csv(reports, buf)
    _write_text(config, 'regions.csv', buf.getvalue())
    _write_text(config, 'regions.svg', regions_svg(reports))

    mismatched = [r for r in reports if region_match(r) == 'false']
    print('cells: %s' % len(reports))
    print('labels: %s' % ', '.join(sorted(set(r.label for r in reports))))
    if mismatched:
        for report in mismatched:
            sys.stderr.write('mismatch at %s (%s)\n' % (report.params,
                                                         report.label))
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_show_mech(index):
    try:
        index = int(index)
    except ValueError:
        raise MechanismError('mechanism index must be an integer, got "%s"'
                             % index)
    mech = decode(index)
    print(json.dumps(mech.to_record(), sort_keys=True))
    print(mech.describe())
    print('forcing: %s' % ('true' if mech.is_forcing else 'false'))
    return EXIT_OK


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def get_parser():
    parser = ArgumentParser(prog='evreq', description='Exact solver and '
                            'verification workbench for two-period evidence '
                            'requests.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='store_true')
    parser.add_argument('-q', '--quiet', action='store_true')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='flat key = value config file')
    for key in ('rho', 'mu0', 'pi', 'c', 'k'):
        common.add_argument('--%s' % key, help='rational, e.g. 7/10')
    common.add_argument('--output', help='output directory')
    common.add_argument('--workers', help='parallel worker processes')
    common.add_argument('--format', help='artifact format: json or msgpack')

    subparsers = parser.add_subparsers(dest='command')
    subparsers.add_parser('solve', parents=[common],
                          help='solve one parameter point')
    verify = subparsers.add_parser('verify', parents=[common],
                                   help='check every applicable claim')
    verify.add_argument('--seed')
    verify.add_argument('--points')
    verify.add_argument('--kind', help='any, intermediate or rd_gamma')
    verify.add_argument('--draws')
    verify.add_argument('--mc-bound', dest='mc_bound')
    verify.add_argument('--mechanism', help='JSON mechanism record to audit')
    regions = subparsers.add_parser('regions', parents=[common],
                                    help='sweep a cost grid')
    regions.add_argument('--c-grid', dest='c_grid')
    regions.add_argument('--k-grid', dest='k_grid')
    regions.add_argument('--gamma-grid', dest='gamma_grid')
    regions.add_argument('--kappa-grid', dest='kappa_grid')
    regions.add_argument('--grid-steps', dest='grid_steps')
    show = subparsers.add_parser('show-mech', help='describe a mechanism')
    show.add_argument('index')
    return parser


def main(argv=None):
    try:
        args = get_parser().parse_args(argv)
    except ConfigError as exc:
        sys.stderr.write('error: %s\n' % exc)
        return EXIT_INVALID

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: '
                        '%(message)s')

    try:
        if args.command == 'show-mech':
            return cmd_show_mech(args.index)
        elif args.command is None:
            raise ConfigError('missing command: solve, verify, regions or '
                              'show-mech')
        config = RunConfig.from_args(args)
        if args.command == 'solve':
            return cmd_solve(config)
        elif args.command == 'verify':
            return cmd_verify(config)
        return cmd_regions(config)
    except EvreqError as exc:
        sys.stderr.write('error: %s\n' % exc)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
