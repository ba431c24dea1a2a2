import numpy as np
import pytest
from hypothesis import given, strategies as st

from boussolid import stencils as S


def test_interp_examples():
    np.testing.assert_allclose(S.interp_node_to_mid(np.ones(6)), np.ones(5))
    x = np.arange(8) * 0.5
    np.testing.assert_allclose(S.interp_node_to_mid(x, None)[1:-1], (x[:-1] + 0.25)[1:-1])
    f = np.arange(4.0) ** 3
    assert S.interp_node_to_mid(f, None)[1] == 3.375


def test_d1_same_example():
    x = np.array([1.0, 1.5, 2.0, 2.5, 3.0])
    assert S.d1_same_parity(x ** 4, 0.5, parity=None)[2] == pytest.approx(32.0, abs=1e-13)


def test_d1_cross_example():
    f = np.arange(4.0) ** 3
    assert S.d1_cross_parity(f, 1.0, "node", None)[1] == 6.75


def test_d2_example():
    x = np.array([0.0, 0.5, 1.0, 1.5, 2.0])
    assert S.d2_cross_parity(x ** 4, 0.5, parity=None)[2] == pytest.approx(12.0, abs=1e-12)


def test_d3_example():
    x = 0.3 * np.arange(10) + 0.15
    d = S.d3_cross_parity(x ** 3, 0.3, parity=None)
    np.testing.assert_allclose(d[3:-3], 6.0, rtol=1e-10)
    np.testing.assert_allclose(S.d3_cross_parity(x ** 2, 0.3, parity=None)[3:-3], 0.0, atol=1e-10)


def test_simpson_examples():
    n = 5
    xn = np.linspace(0, 1, n)
    xm = xn[:-1] + 0.125
    assert S.simpson_support(np.ones(n), np.ones(n - 1), 0, n - 1, 0.25) == pytest.approx(1.0)
    assert S.simpson_support(xn, xm, 0, n - 1, 0.25) == pytest.approx(0.5)
    assert S.simpson_support(xn ** 3, xm ** 3, 0, n - 1, 0.25) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ValueError):
        S.simpson_support(xn, xm, 2, 2, 0.25)


def test_constants_annihilated():
    c = np.full(12, 3.0)
    for op in (S.d1_same_parity, S.d2_cross_parity, S.d3_cross_parity):
        np.testing.assert_allclose(op(c, 0.1, "node", "even"), 0.0, atol=1e-9)
    np.testing.assert_allclose(S.d1_cross_parity(c, 0.1, "node", "even"), 0.0, atol=1e-12)


def test_reflection_ghosts():
    f = np.array([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(S.pad(f, 2, "node", "even"), [3, 2, 1, 2, 3, 4, 3, 2])
    np.testing.assert_array_equal(S.pad(f, 2, "mid", "odd"), [-2, -1, 1, 2, 3, 4, -4, -3])
    assert np.isnan(S.pad(f, 1, "node", None)[0])
    with pytest.raises(ValueError):
        S.pad(f, 1, "edge", "even")
    with pytest.raises(ValueError):
        S.pad(f, 1, "node", "neumann")


poly_coeffs = st.lists(st.floats(-5, 5), min_size=5, max_size=5)


def _poly(c, x, deg):
    return np.polyval(c[5 - deg - 1:], x)


def _dpoly(c, x, deg, k):
    return np.polyval(np.polyder(np.array(c[5 - deg - 1:]), k), x)


@given(poly_coeffs, st.floats(0.05, 0.5), st.floats(-2, 2))
def test_polynomial_exactness(c, h, x0):
    xn = x0 + h * np.arange(12)
    xm = xn[:-1] + h / 2
    scale = 1.0 + np.abs(c).sum() * (1 + abs(x0) + 12 * h) ** 4
    tol = 1e-11 * scale

    def close(a, b, t=tol):
        np.testing.assert_allclose(a, b, atol=t, rtol=0)

    close(S.interp_node_to_mid(_poly(c, xn, 3), None)[1:-1], _poly(c, xm, 3)[1:-1])
    close(S.interp_mid_to_node(_poly(c, xm, 3), None)[2:-2], _poly(c, xn, 3)[2:-2])
    close(S.d1_same_parity(_poly(c, xn, 4), h, "node", None)[2:-2],
          _dpoly(c, xn, 4, 1)[2:-2], tol / h)
    close(S.d2_cross_parity(_poly(c, xm, 4), h, "mid", None)[2:-2],
          _dpoly(c, xm, 4, 2)[2:-2], tol / h ** 2)
    close(S.d1_cross_parity(_poly(c, xn, 3), h, "node", None)[1:-1],
          _dpoly(c, xm, 3, 1)[1:-1], tol / h)
    close(S.d1_cross_parity(_poly(c, xm, 3), h, "mid", None)[2:-2],
          _dpoly(c, xn, 3, 1)[2:-2], tol / h)
    close(S.d3_cross_parity(_poly(c, xm, 3), h, "mid", None)[3:-3],
          _dpoly(c, xm, 3, 3)[3:-3], tol / h ** 3)
    quad = np.polyint(np.array(c[1:]))
    exact = np.polyval(quad, xn[-1]) - np.polyval(quad, xn[0])
    close(S.simpson_support(_poly(c, xn, 3), _poly(c, xm, 3), 0, 11, h), exact)


@given(st.lists(st.floats(-1, 1), min_size=10, max_size=10),
       st.lists(st.floats(-1, 1), min_size=10, max_size=10),
       st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(f, g, a, b):
    f, g = np.array(f), np.array(g)
    for op in (lambda u: S.d1_same_parity(u, 0.1, "mid", "odd"),
               lambda u: S.d2_cross_parity(u, 0.1, "mid", "odd"),
               lambda u: S.d3_cross_parity(u, 0.1, "mid", "odd"),
               lambda u: S.d1_cross_parity(u, 0.1, "node", "even"),
               lambda u: S.interp_node_to_mid(u, "even")):
        np.testing.assert_allclose(op(a * f + b * g), a * op(f) + b * op(g), atol=1e-9)


def test_order_on_sine():
    def errs(h):
        xn = np.arange(0, 2 * np.pi + h / 2, h)
        xm = xn[:-1] + h / 2
        s = slice(4, -4)
        return np.array([
            np.abs(S.interp_node_to_mid(np.sin(xn), None) - np.sin(xm))[s].max(),
            np.abs(S.d1_same_parity(np.sin(xn), h, "node", None) - np.cos(xn))[s].max(),
            np.abs(S.d1_cross_parity(np.sin(xn), h, "node", None) - np.cos(xm))[s].max(),
            np.abs(S.d2_cross_parity(np.sin(xm), h, "mid", None) + np.sin(xm))[s].max(),
            np.abs(S.d3_cross_parity(np.sin(xm), h, "mid", None) + np.cos(xm))[s].max(),
        ])
    hs = [2 * np.pi / n for n in (32, 64, 128, 256)]
    e = np.array([errs(h) for h in hs])
    for col in e.T:
        assert np.polyfit(np.log(hs), np.log(col), 1)[0] >= 3.7
