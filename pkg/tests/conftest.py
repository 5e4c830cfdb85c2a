"""Shared fixtures and independent numerical oracles for the test suite."""

import numpy as np
import pytest

from ruledgeo import gallery

# ---------------------------------------------------------------------------
# oracles: deliberately independent of the library's invariant-based formulas


def fd_jet(f, u, scale=None):
    """Central finite differences for d1 and d2 of a scalar callable.

    Steps are scaled per derivative order to balance truncation against
    round-off (1e-5 for d1, 1e-4 for d2, times max(1, |u|)).
    """
    s = scale if scale is not None else max(1.0, abs(u))
    h1 = 1e-5 * s
    h2 = 1e-4 * s
    d1 = (f(u + h1) - f(u - h1)) / (2.0 * h1)
    d2 = (f(u + h2) - 2.0 * f(u) + f(u - h2)) / (h2 * h2)
    return d1, d2


def embedding_forms(surf, u, v):
    """First/second fundamental forms from the embedding x = s + v e.

    Uses raw curve jets and the unit normal only; no invariant formulas.
    Returns (E, F, G, L, M, N, K, H).
    """
    s, e = surf.jets(u)
    xu = np.array([s[i].d1 + v * e[i].d1 for i in range(3)])
    xv = np.array([e[i].value for i in range(3)])
    xuu = np.array([s[i].d2 + v * e[i].d2 for i in range(3)])
    xuv = np.array([e[i].d1 for i in range(3)])
    normal = np.cross(xu, xv)
    normal = normal / np.linalg.norm(normal)
    E = float(xu @ xu)
    F = float(xu @ xv)
    G = float(xv @ xv)
    L = float(xuu @ normal)
    M = float(xuv @ normal)
    N = 0.0  # x_vv = 0 for a ruled patch
    det = E * G - F * F
    K = (L * N - M * M) / det
    H = (E * N - 2.0 * F * M + G * L) / (2.0 * det)
    return E, F, G, L, M, N, K, H


def det_invariants(surf, u):
    """(k, delta, lambda) by direct determinant evaluation of curve jets."""
    s, e = surf.jets(u)
    ev = np.array([c.value for c in e])
    ep = np.array([c.d1 for c in e])
    epp = np.array([c.d2 for c in e])
    sp = np.array([c.d1 for c in s])
    k = float(np.linalg.det(np.stack([ev, ep, epp])))
    delta = float(np.linalg.det(np.stack([ev, ep, sp])))
    lam = float(ev @ sp) / delta
    return k, delta, lam


# ---------------------------------------------------------------------------
# session-scoped gallery members (immutable; safe to share across tests)


@pytest.fixture(scope="session")
def right_helicoid():
    return gallery("right_helicoid", c=1.0)


@pytest.fixture(scope="session")
def hyperboloid_edlinger():
    return gallery("hyperboloid_edlinger", c=1.0)


@pytest.fixture(scope="session")
def orthoid_const_delta():
    return gallery("orthoid_const_delta", r=0.6, delta=1.0)


@pytest.fixture(scope="session")
def conoidal_const_delta():
    return gallery("conoidal_const_delta", alpha=2.0, beta=1.0)


@pytest.fixture(scope="session")
def generic_skew():
    return gallery("generic_skew", seed=0)


@pytest.fixture(scope="session")
def gallery_five(right_helicoid, hyperboloid_edlinger, orthoid_const_delta,
                 conoidal_const_delta, generic_skew):
    return {
        "right_helicoid": right_helicoid,
        "hyperboloid_edlinger": hyperboloid_edlinger,
        "orthoid_const_delta": orthoid_const_delta,
        "conoidal_const_delta": conoidal_const_delta,
        "generic_skew": generic_skew,
    }


def sample_uv(surf, rng, v_span=3.0):
    """Random (u, v) with v scaled to the local parameter of distribution."""
    from ruledgeo.invariants import point_invariants

    u = rng.uniform(surf.domain[0], surf.domain[1])
    d = abs(point_invariants(surf, u).delta)
    v = rng.uniform(-v_span * d, v_span * d)
    return u, v
