"""Flat-bottom solitary waves.

A wave travelling at speed ``c > 1`` has a velocity profile solving

    V'' = (3/(mu c)) V (c - 1/(c - eps V) - (eps/2) V)

and surface elevation ``zeta = V / (c - eps V)``.  The profile is built by
marching classic RK4 along the unstable manifold of the rest state, from a
tiny far-field value up to the crest, and mirroring about the crest.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import NoSolitaryWave
from .physics import FluidState, helmholtz_apply

TAIL_TOL = 1e-12


def _profile_rhs(mu, eps, c):
    k = 3.0 / (mu * c)
    limit = c / eps

    def f(v):
        if v >= limit:
            raise NoSolitaryWave(f"velocity reached c/eps={limit:.6g}")
        return k * v * (c - 1.0 / (c - eps * v) - 0.5 * eps * v)

    return f


def _rk4(v, w, h, f):
    k1v, k1w = w, f(v)
    k2v, k2w = w + 0.5 * h * k1w, f(v + 0.5 * h * k1v)
    k3v, k3w = w + 0.5 * h * k2w, f(v + 0.5 * h * k2v)
    k4v, k4w = w + h * k3w, f(v + h * k3v)
    return (v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
            w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w))


@dataclass(frozen=True)
class SolitonProfile:
    """Even solitary-wave profile tabulated against the distance to the crest.

    Attributes
    ----------
    speed : float
        Propagation speed ``c``.
    distance : ndarray
        Increasing distances from the crest, starting at 0.
    v_tab, zeta_tab : ndarray
        Velocity and elevation at `distance`.
    decay_rate : float
        ``sqrt(lambda)``, the exponential decay rate of the tails.
    half_width : float
        Distance at which the elevation drops below ``1e-12`` of its peak.
    """

    speed: float
    mu: float
    eps: float
    distance: np.ndarray = field(repr=False)
    v_tab: np.ndarray = field(repr=False)
    zeta_tab: np.ndarray = field(repr=False)
    decay_rate: float
    half_width: float
    _spline: CubicSpline = field(repr=False, compare=False)

    @property
    def amplitude(self):
        return float(self.zeta_tab[0])

    @property
    def v_peak(self):
        return float(self.v_tab[0])

    def velocity(self, xi):
        """Velocity profile at signed offset `xi` from the crest."""
        d = np.abs(np.asarray(xi, dtype=float))
        dmax = self.distance[-1]
        inner = self._spline(np.minimum(d, dmax))
        tail = self.v_tab[-1] * np.exp(-self.decay_rate * (d - dmax))
        return np.where(d <= dmax, inner, tail)

    def elevation(self, xi):
        v = self.velocity(xi)
        return v / (self.speed - self.eps * v)

    def v_margin(self):
        """Gap between ``c/eps`` and the peak velocity."""
        return self.speed / self.eps - self.v_peak

    def to_text(self, path, quantity="zeta"):
        """Write the full even profile as two whitespace-separated columns."""
        vals = self.zeta_tab if quantity == "zeta" else self.v_tab
        xi = np.concatenate([-self.distance[:0:-1], self.distance])
        col = np.concatenate([vals[:0:-1], vals])
        np.savetxt(path, np.column_stack([xi, col]), fmt="%.17g",
                   header=f"xi {quantity}")


def solve_profile(c, mu, eps, mesh=0.005, tol=TAIL_TOL, max_span=None):
    """Integrate the solitary-wave ODE for speed `c`.

    Parameters
    ----------
    c : float
        Wave speed, must exceed 1.
    mu, eps : float
        Shallowness and nonlinearity parameters.
    mesh : float
        RK4 step on the auxiliary profile mesh.
    tol : float
        Relative tail level defining ``half_width``.
    max_span : float, optional
        Longest march before giving up; defaults to ``60/decay_rate``.

    Raises
    ------
    NoSolitaryWave
        If no crest is reached or the velocity hits ``c/eps``.
    """
    if not c > 1:
        raise ValueError("speed must exceed 1")
    if not (mu > 0 and eps > 0):
        raise ValueError("mu and eps must be positive")
    lam = 3.0 / (mu * c) * (c - 1.0 / c)
    rate = np.sqrt(lam)
    f = _profile_rhs(mu, eps, c)
    peak_guess = 2.0 * (c - 1.0) / eps
    eta = 1e-2 * tol * peak_guess
    if max_span is None:
        max_span = 60.0 / rate
    n_max = int(np.ceil(max_span / mesh))

    vs = [eta]
    v, w = eta, rate * eta
    for _ in range(n_max):
        v_new, w_new = _rk4(v, w, mesh, f)
        if w_new <= 0.0:
            break
        v, w = v_new, w_new
        vs.append(v)
    else:
        raise NoSolitaryWave(f"no crest within a span of {max_span:.4g}")

    # crest inside the last step: solve w(s) = 0 along an RK4 step of size s
    s = brentq(lambda s: _rk4(v, w, s, f)[1], 0.0, mesh, xtol=1e-15, rtol=1e-15)
    v_crest = _rk4(v, w, s, f)[0]

    vs = np.array(vs[::-1])
    dist = s + mesh * np.arange(vs.size)
    if s < 0.5 * mesh and vs.size > 4:
        vs, dist = vs[1:], dist[1:]
    dist = np.concatenate([[0.0], dist])
    vs = np.concatenate([[v_crest], vs])
    spline = CubicSpline(dist, vs, bc_type=((1, 0.0), "not-a-knot"))
    zeta = vs / (c - eps * vs)

    amp = zeta[0]
    below = np.nonzero(zeta < tol * amp)[0]
    if below.size:
        half_width = float(dist[below[0]])
    else:
        half_width = float(dist[-1] + np.log(zeta[-1] / (tol * amp)) / rate)
    return SolitonProfile(float(c), float(mu), float(eps), dist, vs, zeta,
                          float(rate), half_width, spline)


def peak_elevation(c, mu, eps, mesh=0.005):
    return solve_profile(c, mu, eps, mesh).amplitude


def speed_for_amplitude(amplitude, mu, eps, mesh=0.005, xtol=1e-8):
    """Speed whose solitary wave has elevation peak `amplitude` (root bracketing on c)."""
    if not amplitude > 0:
        raise ValueError("amplitude must be positive")

    def excess(c):
        return peak_elevation(c, mu, eps, mesh) - amplitude

    # bracket on c - 1 by geometric steps around the weakly nonlinear estimate
    gap = 0.5 * eps * amplitude
    try:
        f_hi = excess(1.0 + gap)
    except NoSolitaryWave:
        f_hi = np.inf
    lo_gap = hi_gap = gap
    if f_hi > 0:
        while excess(1.0 + lo_gap) > 0:
            lo_gap /= 2.0
    else:
        while True:
            lo_gap, hi_gap = hi_gap, 2.0 * hi_gap
            try:
                if excess(1.0 + hi_gap) > 0:
                    break
            except NoSolitaryWave:
                raise NoSolitaryWave(
                    f"no solitary wave of amplitude {amplitude} at mu={mu}, eps={eps}")
    if lo_gap == hi_gap:
        hi_gap = 2.0 * lo_gap
    return brentq(excess, 1.0 + lo_gap, 1.0 + hi_gap, xtol=xtol,
                  rtol=4 * np.finfo(float).eps)


def soliton_for_amplitude(amplitude, mu, eps, mesh=0.005):
    c = speed_for_amplitude(amplitude, mu, eps, mesh)
    return solve_profile(c, mu, eps, mesh)


def place_soliton(profile, center, grid, direction=1, tail_tol=None):
    """Sample the profile centred at `center` onto the grid.

    `direction` is +1 for a wave travelling towards increasing x and -1 for
    the opposite.  Placements whose tails above `tail_tol` (relative to the
    peak) reach a wall are rejected.
    """
    reach = profile.half_width if tail_tol is None else tail_reach(profile, tail_tol)
    if center - reach <= 0.0 or center + reach >= grid.domain_length:
        raise ValueError(
            f"soliton tails (half width {reach:.4g}) touch a wall at center {center:.6g}")
    zeta = profile.elevation(grid.node_coords - center)
    vbar = direction * profile.velocity(grid.mid_coords - center)
    ubar = helmholtz_apply(vbar, profile.mu, grid.dx)
    return FluidState(zeta, vbar, ubar)


def tail_reach(profile, tol):
    """Distance from the crest beyond which the elevation stays below ``tol * peak``."""
    amp = profile.amplitude
    below = np.nonzero(profile.zeta_tab < tol * amp)[0]
    if below.size:
        return float(profile.distance[below[0]])
    return float(profile.distance[-1]
                 + np.log(profile.zeta_tab[-1] / (tol * amp)) / profile.decay_rate)
