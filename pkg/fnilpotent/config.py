"""Default caps and their environment overrides.

Every default can be overridden by an integer environment variable named ``FNIL_<NAME>``
(upper-cased key), e.g. ``FNIL_EMAX=3`` or ``FNIL_ORACLE_CAP=65536``.

>>> get('find_budget', environ={})
64
>>> get('find_budget', environ={'FNIL_FIND_BUDGET': '10'})
10
>>> default_emax(2, environ={}), default_emax(7, environ={}), default_emax(7, environ={'FNIL_EMAX': '5'})
(4, 2, 5)
"""
import os

from fnilpotent.errors import UsageError
from fnilpotent.util import FrozenDict

DFLT = FrozenDict(
    emax_small_p=4,  # p = 2, 3
    emax_large_p=2,  # p >= 5
    big_e=2,
    find_budget=64,
    oracle_cap=2 ** 20,
    degree_cap=2,
    max_generators=2,
    multiplier_degree=3,
    order='grevlex',
    max_exponent=2 ** 63 - 1,
    preimage_basis_cap=20000,
)


def _env_name(name):
    return 'FNIL_' + name.upper()


def get(name, environ=None):
    environ = os.environ if environ is None else environ
    value = DFLT[name]
    raw = environ.get(_env_name(name))
    if raw is None or isinstance(value, str):
        return value
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{_env_name(name)} must be an integer, got {raw!r}")


def default_emax(p, environ=None):
    environ = os.environ if environ is None else environ
    if environ.get('FNIL_EMAX') is not None:
        try:
            return int(environ['FNIL_EMAX'])
        except ValueError:
            raise UsageError(f"FNIL_EMAX must be an integer, got {environ['FNIL_EMAX']!r}")
    return get('emax_small_p', environ) if p in (2, 3) else get('emax_large_p', environ)
