"""Exact computations with modular Lie algebras over GF(p^k)."""

import json as _json

from . import _modlie
from ._modlie import Algebra, AlarmError, __version__, content_hash

__all__ = [
    "Algebra",
    "AlarmError",
    "__version__",
    "atlas",
    "construct",
    "content_hash",
    "fixture_names",
    "grade",
    "optimize",
    "sections",
    "twosection",
    "verify_fixtures",
]


def _source(algebra, fixture):
    if (algebra is None) == (fixture is None):
        raise ValueError("give exactly one of algebra or fixture")
    if algebra is None:
        return "", fixture
    if isinstance(algebra, Algebra):
        return algebra.to_json(), ""
    if isinstance(algebra, dict):
        return _json.dumps(algebra), ""
    return str(algebra), ""


def construct(type, p=5, k=1, m=1, n=None, variant="second_derived"):
    return _json.loads(_modlie.construct(type, p, k, m, list(n or []), variant))


def fixture_names():
    return list(_modlie.fixture_names())


def atlas(algebra=None, fixture=None, budget=20, seed=1):
    a, f = _source(algebra, fixture)
    return _json.loads(_modlie.atlas(a, f, budget, seed))


def sections(algebra=None, fixture=None, seed=1):
    a, f = _source(algebra, fixture)
    return _json.loads(_modlie.sections(a, f, seed))


def twosection(algebra=None, fixture=None, alpha=None, beta=None, seed=1):
    a, f = _source(algebra, fixture)
    return _json.loads(_modlie.twosection(a, f, alpha, beta, seed))


def optimize(algebra=None, fixture=None, budget=20, seed=1):
    a, f = _source(algebra, fixture)
    return _json.loads(_modlie.optimize(a, f, budget, seed))


def grade(algebra=None, fixture=None, budget=20, seed=1):
    a, f = _source(algebra, fixture)
    return _json.loads(_modlie.grade(a, f, budget, seed))


def verify_fixtures(seed=1, out_dir=""):
    return _json.loads(_modlie.verify_fixtures(seed, str(out_dir)))
