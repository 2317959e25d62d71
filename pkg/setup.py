import warnings

from setuptools import setup

try:
    from evreq import __version__
except ImportError:
    warnings.warn('could not import evreq module to determine version')
    __version__ = '0.0.0'


setup(
    name='evreq',
    version=__version__,
    description='Exact solver and verification workbench for two-period '
                'evidence requests.',
    packages=['evreq'],
    extras_require={
        'numpy': ['numpy'],
        'msgpack': ['msgpack']},
    entry_points={
        'console_scripts': ['evreq = evreq.cli:main']},
)
