import json

try:
    import msgpack
except ImportError:
    msgpack = None

from .constants import FORMAT_JSON
from .constants import FORMAT_MSGPACK
from .constants import FORMATS
from .constants import REGION_BOTH_LOW
from .constants import REGION_BOUNDARY
from .constants import REGION_CASE_I
from .constants import REGION_CASE_II
from .constants import REGION_HIGH_HIGH
from .constants import REGION_PI_ZERO
from .constants import REGION_UNCOVERED
from .constants import REGIONS
from .core import format_rational
from .exceptions import ImproperlyConfigured


class Serializer(object):
    """Encode and decode artifact records as JSON or msgpack bytes."""
    def __init__(self, format=FORMAT_JSON):
        self.format = format
        if self.format == FORMAT_MSGPACK and msgpack is None:
            raise ImproperlyConfigured('msgpack library not found')
        elif self.format == FORMAT_JSON:
            self.encode = lambda v: (json
                                     .dumps(v, separators=(',', ':'),
                                            sort_keys=True)
                                     .encode('utf-8'))
            self.decode = lambda v: json.loads(v.decode('utf-8'))
            self.extension = 'json'
        elif self.format == FORMAT_MSGPACK:
            self.encode = lambda o: msgpack.packb(o, use_bin_type=True)
            self.decode = lambda b: msgpack.unpackb(b, raw=False)
            self.extension = 'msgpack'
        else:
            raise ImproperlyConfigured('unrecognized format "%s" - use one'
                                       ' of: %s' % (self.format,
                                                    ','.join(FORMATS)))

    def dump(self, data, filename):
        with open(filename, 'wb') as fh:
            fh.write(self.encode(data))

    def load(self, filename):
        with open(filename, 'rb') as fh:
            return self.decode(fh.read())


REGION_COLORS = {
    REGION_BOTH_LOW: '#4e79a7',
    REGION_CASE_I: '#f28e2b',
    REGION_CASE_II: '#59a14f',
    REGION_BOUNDARY: '#b07aa1',
    REGION_HIGH_HIGH: '#e15759',
    REGION_PI_ZERO: '#edc948',
    REGION_UNCOVERED: '#d3d3d3'}

CELL = 24
MARGIN = 60
LEGEND_WIDTH = 190


def svg_header(w, h):
    return [
        '<svg width="%d" height="%d" viewBox="0 0 %d %d" '
        'xmlns="http://www.w3.org/2000/svg">' % (w, h, w, h),
        '  <style>',
        '    text {',
        '      font-family: Arial, sans-serif;',
        '      font-size: 11px;',
        '    }',
        '  </style>']


def regions_svg(reports):
    """
    Render region reports as a grid of cells, effective principal cost on
    the horizontal axis and effective agent cost increasing upwards. Cells
    whose closed form disagrees with the oracle are outlined in black.
    """
    kappas = sorted(set(report.params.kappa for report in reports))
    gammas = sorted(set(report.params.gamma for report in reports))
    width = 2 * MARGIN + CELL * len(kappas) + LEGEND_WIDTH
    height = 2 * MARGIN + CELL * max(len(gammas), len(REGIONS))
    lines = svg_header(width, height)
    lines.append('  <rect x="0" y="0" width="%d" height="%d" fill="#fff" />'
                 % (width, height))

    mismatches = []
    for report in reports:
        col = kappas.index(report.params.kappa)
        row = len(gammas) - 1 - gammas.index(report.params.gamma)
        x, y = MARGIN + col * CELL, MARGIN + row * CELL
        lines.append('  <rect x="%d" y="%d" width="%d" height="%d" '
                     'fill="%s"><title>gamma=%s kappa=%s %s</title></rect>' % (
                         x, y, CELL, CELL, REGION_COLORS[report.label],
                         format_rational(report.params.gamma),
                         format_rational(report.params.kappa), report.label))
        if report.closed_form_in_argmax is False:
            mismatches.append((x, y))
    for x, y in mismatches:
        lines.append('  <rect x="%d" y="%d" width="%d" height="%d" '
                     'fill="none" stroke="#000" stroke-width="2" />' % (
                         x + 1, y + 1, CELL - 2, CELL - 2))

    bottom = MARGIN + CELL * len(gammas)
    right = MARGIN + CELL * len(kappas)
    lines.append('  <text x="%d" y="%d" text-anchor="middle">kappa %s .. %s'
                 '</text>' % ((MARGIN + right) // 2, bottom + 20,
                              format_rational(kappas[0]),
                              format_rational(kappas[-1])))
    lines.append('  <text x="%d" y="%d" text-anchor="middle" '
                 'transform="rotate(-90 %d %d)">gamma %s .. %s</text>' % (
                     MARGIN - 20, (MARGIN + bottom) // 2, MARGIN - 20,
                     (MARGIN + bottom) // 2, format_rational(gammas[0]),
                     format_rational(gammas[-1])))

    present = set(report.label for report in reports)
    y = MARGIN
    for label in REGIONS:
        if label not in present:
            continue
        lines.append('  <rect x="%d" y="%d" width="14" height="14" '
                     'fill="%s" />' % (right + 20, y, REGION_COLORS[label]))
        lines.append('  <text x="%d" y="%d">%s</text>' % (right + 40, y + 11,
                                                          label))
        y += 20
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'
