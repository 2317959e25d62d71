#!/usr/bin/env python

"""
Benchmark script to measure the time taken by the exhaustive mechanism scans
at a few parameter points, serially and with a process pool.
"""
import os, sys
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import contextlib
import time

from evreq import *


@contextlib.contextmanager
def timed(msg, *params):
    pstr = ', '.join(map(str, params))
    s = time.time()
    yield
    print('%0.3fs - %s(%s)' % (time.time() - s, msg, pstr))


POINTS = (
    # (rho, mu0, pi, c, k).
    ('7/10', '4/5', '1/2', '7/40', '17/100'),
    ('9/10', '4/5', '1/2', '1/4', '11/100'),
    ('7/10', '4/5', '1/2', '2/5', '1/4'),
)

WORKERS = (None, 4)


for point in POINTS:
    params = Params(*point)
    print('%s region: %s' % (params, classify_region(params)))

    for workers in WORKERS:
        with timed('brute_force_optimum', params, workers):
            brute_force_optimum(params, workers=workers)

        with timed('scan_mechanisms', params, workers):
            records = scan_mechanisms(params, workers=workers)

    with timed('verify_claims (precomputed scan)', params):
        verify_claims(params, records=records, draws=10000)

    with timed('exhaustive_optimum', params):
        for index in range(0, N_MECHANISMS, 512):
            exhaustive_optimum(params, decode(index))

    print('\n')
