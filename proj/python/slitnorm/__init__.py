"""Stable norms on slit tori."""

import json
from fractions import Fraction

from . import _slitnorm as _core
from ._slitnorm import SlitnormError

__all__ = [
    "SlitnormError",
    "vertical",
    "sheared",
    "slit",
    "norm",
    "classify",
    "visibility",
    "oracle",
    "vertices",
    "norm_of_vector",
    "cutting_word",
    "farey_parents",
    "totient_sum",
    "expected_coefficient",
    "count",
    "fit_coefficient",
    "glued_norm",
    "glued_classify",
]

SlitnormError.code = property(lambda self: self.args[0] if self.args else None)


def _entry(x):
    if isinstance(x, (Fraction, int)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return x


def _rho(rho):
    return _entry(rho) if not isinstance(rho, str) else rho


def _cls(h):
    if isinstance(h, str):
        return h
    return ",".join(str(int(c)) for c in h)


def _torus(t):
    if isinstance(t, dict):
        return json.dumps(t)
    return json.dumps(vertical(t))


def vertical(rho):
    return {"kind": "vertical", "rho": _rho(rho)}


def sheared(matrix, rho):
    rows = [[_entry(x) for x in row] for row in matrix]
    return {"kind": "sheared", "rho": _rho(rho), "M": rows}


def slit(beta, alpha):
    return {"kind": "slit", "slit_vector": [_entry(beta), _entry(alpha)]}


def norm(torus, h):
    """Certificate dict for class h; torus is a rho or a torus dict."""
    return json.loads(_core.norm(_torus(torus), _cls(h)))


def classify(torus, h):
    return _core.classify(_torus(torus), _cls(h))


def visibility(torus, h):
    return _core.visibility(_torus(torus), _cls(h))


def oracle(torus, h):
    """Shortest path in the cover, as computed by the graph oracle."""
    return json.loads(_core.oracle(_torus(torus), _cls(h)))


def vertices(rho, max_norm):
    return json.loads(_core.vertices(_rho(rho), float(max_norm)))


def norm_of_vector(rho, v):
    return _core.norm_of_vector(_rho(rho), float(v[0]), float(v[1]))


def cutting_word(m, n):
    return _core.cutting_word(int(m), int(n))


def farey_parents(x):
    lo, hi = _core.farey_parents(_rho(x))
    return Fraction(lo), Fraction(hi)


def totient_sum(rho):
    return Fraction(_core.totient_sum(_rho(rho)))


def expected_coefficient(rho, copies=1, convention="signed"):
    return _core.expected_coefficient(_rho(rho), int(copies), convention)


def count(rho, xs, convention="signed", copies=1, workers=0):
    """List of (x, p(x)) rows for the given thresholds."""
    return _core.count(_rho(rho), [float(x) for x in xs], convention, int(copies), int(workers))


def fit_coefficient(xs, ps):
    """Least squares fit p = A x ln x + B x; returns (A, B, residual)."""
    return _core.fit_coefficient([float(x) for x in xs], [float(p) for p in ps])


def glued_norm(rhos, width, h):
    return json.loads(_core.glued_norm([_rho(r) for r in rhos], float(width), h))


def glued_classify(rhos, width, h):
    return _core.glued_classify([_rho(r) for r in rhos], float(width), h)
