"""Jet arithmetic: Taylor rules, derivative correctness, backend parity."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledgeo import _jet_py

BACKENDS = [pytest.param(_jet_py, id="python")]
try:
    from ruledgeo import _jet_cy

    BACKENDS.append(pytest.param(_jet_cy, id="cython"))
except ImportError:  # extension not built; fallback-only environment
    _jet_cy = None


@pytest.fixture(params=BACKENDS)
def J(request):
    return request.param.Jet2


finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def jets_close(a, b, tol=1e-12):
    return (
        math.isclose(a.value, b.value, rel_tol=tol, abs_tol=tol)
        and math.isclose(a.d1, b.d1, rel_tol=tol, abs_tol=tol)
        and math.isclose(a.d2, b.d2, rel_tol=tol, abs_tol=tol)
        and math.isclose(a.d3, b.d3, rel_tol=tol, abs_tol=tol)
    )


def test_seed_jets(J):
    c = J.constant(4.5)
    assert (c.value, c.d1, c.d2, c.d3) == (4.5, 0.0, 0.0, 0.0)
    v = J.variable(2.0)
    assert (v.value, v.d1, v.d2, v.d3) == (2.0, 1.0, 0.0, 0.0)


def test_product_rule_first_order(J):
    f = J(2.0, 3.0, 4.0, 5.0)
    g = J(7.0, -1.0, 0.5, 2.0)
    p = f * g
    assert p.d1 == f.d1 * g.value + f.value * g.d1


def test_product_against_polynomial(J):
    # (u^2)(u^3) = u^5 has exact derivatives at any u
    u = J.variable(1.3)
    p = (u * u) * (u * u * u)
    x = 1.3
    assert math.isclose(p.value, x**5, rel_tol=1e-15)
    assert math.isclose(p.d1, 5 * x**4, rel_tol=1e-14)
    assert math.isclose(p.d2, 20 * x**3, rel_tol=1e-14)
    assert math.isclose(p.d3, 60 * x**2, rel_tol=1e-14)


def test_division_inverts_product(J):
    f = J(2.0, 3.0, -4.0, 5.0)
    g = J(0.7, -1.0, 0.5, 2.0)
    assert jets_close((f * g) / g, f)


def test_quotient_of_sines(J):
    u = J.variable(0.4)
    q = u.sin() / u.cos()  # tan
    t = u.tan()
    assert jets_close(q, t, tol=1e-13)


def test_float_mixing(J):
    u = J.variable(1.5)
    a = 2.0 * u + 1.0
    assert (a.value, a.d1) == (4.0, 2.0)
    b = 1.0 - u
    assert (b.value, b.d1) == (-0.5, -1.0)
    c = 6.0 / u
    assert math.isclose(c.d1, -6.0 / 1.5**2)
    d = u / 2
    assert d.value == 0.75


def test_integer_power_at_zero(J):
    z = J.variable(0.0)
    p = z**2 + 3.0
    assert (p.value, p.d1, p.d2) == (3.0, 0.0, 2.0)
    with pytest.raises(ZeroDivisionError):
        z**-1


def test_power_variants(J):
    u = J.variable(2.25)
    assert jets_close(u**0.5, u.sqrt(), tol=1e-13)
    e = 2.0**J.variable(1.0)
    assert math.isclose(e.value, 2.0)
    assert math.isclose(e.d1, 2.0 * math.log(2.0))
    uu = J.variable(2.0) ** J.variable(2.0)
    # d/du u^u = u^u (log u + 1)
    assert math.isclose(uu.d1, 4.0 * (math.log(2.0) + 1.0), rel_tol=1e-14)


def test_domain_errors(J):
    with pytest.raises(ValueError):
        J.constant(-1.0).sqrt()
    with pytest.raises(ValueError):
        J.constant(-1.0).log()
    with pytest.raises(ValueError):
        J.constant(-1.0) ** 0.5
    with pytest.raises(ZeroDivisionError):
        J.variable(1.0) / J.constant(0.0)


@pytest.mark.parametrize(
    "name",
    ["sin", "cos", "tan", "exp", "sinh", "cosh", "sqrt", "log"],
)
def test_elementary_derivatives_match_fd(J, name):
    from conftest import fd_jet

    u0 = 0.7  # inside every function's domain
    jet = getattr(J.variable(u0), name)()
    f = lambda x: getattr(math, name)(x)
    d1, d2 = fd_jet(f, u0)
    assert abs(jet.d1 - d1) <= 1e-6 * max(1.0, abs(d1))
    assert abs(jet.d2 - d2) <= 1e-6 * max(1.0, abs(d2))


@settings(max_examples=200, deadline=None)
@given(x=finite, y=finite)
def test_sum_rule_property(x, y):
    for mod in (m.values[0] for m in BACKENDS):
        J = mod.Jet2
        f = J(x, 1.0, 0.5, 0.25)
        g = J(y, -2.0, 1.5, 0.125)
        s = f + g
        assert s.value == x + y
        assert s.d1 == -1.0 and s.d2 == 2.0 and s.d3 == 0.375


@settings(max_examples=200, deadline=None)
@given(u=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
def test_sin_cos_pythagoras_property(u):
    for mod in (m.values[0] for m in BACKENDS):
        J = mod.Jet2
        j = J.variable(u)
        one = j.sin() * j.sin() + j.cos() * j.cos()
        assert math.isclose(one.value, 1.0, abs_tol=1e-14)
        assert abs(one.d1) < 1e-13 and abs(one.d2) < 1e-13 and abs(one.d3) < 1e-12


@pytest.mark.skipif(_jet_cy is None, reason="compiled backend not built")
def test_backend_parity_on_compound_expression():
    from ruledgeo.parser import parse_expression

    expr = parse_expression("sin(u)*cos(u)^2 + exp(-u^2)/(1+u^2) + sqrt(u+2)^-3")
    for u in (-0.9, 0.0, 0.3, 1.7):
        a = expr.eval(_jet_py.Jet2.variable(u))
        b = expr.eval(_jet_cy.Jet2.variable(u))
        assert jets_close(a, b, tol=1e-13)


def test_derivative_shift(J):
    u = J.variable(0.9)
    s = u.sin()
    sp = s.derivative()
    assert sp.value == s.d1 and sp.d1 == s.d2 and sp.d2 == s.d3 and sp.d3 == 0.0
