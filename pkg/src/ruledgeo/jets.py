"""Jet arithmetic facade.

Selects the compiled kernel when available and falls back to the
pure-Python implementation. Set RULEDGEO_PURE_PYTHON=1 to force the
fallback (used by the backend benchmark).

The module-level math functions dispatch on their argument so the same
closure can be evaluated over plain floats (cheap value-only path) or
over `Jet2` seeds (derivative-carrying path).
"""

import math
import os

if os.environ.get("RULEDGEO_PURE_PYTHON"):
    from ._jet_py import Jet2

    BACKEND = "python"
else:
    try:
        from ._jet_cy import Jet2

        BACKEND = "cython"
    except ImportError:
        from ._jet_py import Jet2

        BACKEND = "python"


def backend_name():
    """Name of the active jet kernel: 'cython' or 'python'."""
    return BACKEND


def constant(c):
    return Jet2(c, 0.0, 0.0, 0.0)


def variable(u):
    return Jet2(u, 1.0, 0.0, 0.0)


def as_jet(x):
    """Coerce a number to a constant jet; pass jets through."""
    if isinstance(x, Jet2):
        return x
    return Jet2(x, 0.0, 0.0, 0.0)


def compose(outer, inner):
    """Jet of f(g(t)) from the jet of f at g's value and the jet of g in t."""
    g1, g2, g3 = inner.d1, inner.d2, inner.d3
    return Jet2(
        outer.value,
        outer.d1 * g1,
        outer.d2 * g1 * g1 + outer.d1 * g2,
        outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 + outer.d1 * g3,
    )


# float-or-jet elementary functions -----------------------------------------


def sin(x):
    return math.sin(x) if isinstance(x, (int, float)) else x.sin()


def cos(x):
    return math.cos(x) if isinstance(x, (int, float)) else x.cos()


def tan(x):
    return math.tan(x) if isinstance(x, (int, float)) else x.tan()


def sqrt(x):
    return math.sqrt(x) if isinstance(x, (int, float)) else x.sqrt()


def exp(x):
    return math.exp(x) if isinstance(x, (int, float)) else x.exp()


def log(x):
    return math.log(x) if isinstance(x, (int, float)) else x.log()


def sinh(x):
    return math.sinh(x) if isinstance(x, (int, float)) else x.sinh()


def cosh(x):
    return math.cosh(x) if isinstance(x, (int, float)) else x.cosh()


# R^3 helpers over float-or-jet components -----------------------------------


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def triple(a, b, c):
    """Scalar triple product (a, b, c) = <a, b x c>."""
    return dot(a, cross(b, c))


def norm(a):
    return sqrt(dot(a, a))


def scale(a, f):
    return (a[0] * f, a[1] * f, a[2] * f)


def add3(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def deriv3(a):
    """Component-wise jet derivative of a jet triple."""
    return (a[0].derivative(), a[1].derivative(), a[2].derivative())


def values3(a):
    return (as_jet(a[0]).value, as_jet(a[1]).value, as_jet(a[2]).value)
