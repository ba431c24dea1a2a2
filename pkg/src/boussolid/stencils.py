"""Fourth-order staggered stencils, interpolation and Simpson quadrature.

Fields carry no metadata; callers state which point family a field lives on
(``"node"`` or ``"mid"``) and how it behaves at the walls (``"even"`` or
``"odd"``).  Ghost values are produced by reflection about the wall: node
fields reflect about node 0 / node N-1, midpoint fields about the wall that
sits half a cell outside the first / last midpoint.  Even reflection realises
the Neumann wall condition, odd reflection the Dirichlet one.  Pass
``parity=None`` to skip the closure; the boundary entries are then left as
NaN.
"""
import numpy as np

INTERP_W = np.array([-1.0, 9.0, 9.0, -1.0]) / 16.0
D1_SAME_W = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
D1_CROSS_W = np.array([1.0, -27.0, 27.0, -1.0]) / 24.0
D2_W = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
D3_W = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


def pad(f, width, family, parity):
    """Extend `f` by `width` ghost values on each side.

    ``family`` selects the reflection centre: a node field is mirrored about
    its end samples, a midpoint field about the half-cell wall.
    """
    f = np.asarray(f, dtype=float)
    if parity is None:
        return np.concatenate([np.full(width, np.nan), f, np.full(width, np.nan)])
    if family == "node":
        left = f[width:0:-1]
        right = f[-2:-2 - width:-1]
    elif family == "mid":
        left = f[width - 1::-1]
        right = f[:-width - 1:-1]
    else:
        raise ValueError(f"unknown family {family!r}")
    if parity == "odd":
        left, right = -left, -right
    elif parity != "even":
        raise ValueError(f"unknown parity {parity!r}")
    return np.concatenate([left, f, right])


def _correlate(g, w, n_out, start):
    out = np.zeros(n_out)
    for k, wk in enumerate(w):
        if wk != 0.0:
            out += wk * g[start + k:start + k + n_out]
    return out


def interp_node_to_mid(f, parity="even"):
    """Four-point interpolation from nodes to the midpoints between them."""
    f = np.asarray(f, dtype=float)
    g = pad(f, 1, "node", parity)
    return _correlate(g, INTERP_W, f.size - 1, 0)


def interp_mid_to_node(f, parity="odd"):
    """Four-point interpolation from midpoints back onto the nodes."""
    f = np.asarray(f, dtype=float)
    g = pad(f, 2, "mid", parity)
    # node i sits between mids i-1 and i -> padded indices i, i+1, i+2, i+3
    return _correlate(g, INTERP_W, f.size + 1, 0)


def d1_same_parity(f, dx, family="node", parity="even"):
    """First derivative ``(f[i-2] - 8f[i-1] + 8f[i+1] - f[i+2]) / 12dx``."""
    f = np.asarray(f, dtype=float)
    g = pad(f, 2, family, parity)
    return _correlate(g, D1_SAME_W, f.size, 0) / dx


def d1_cross_parity(f, dx, family="node", parity="even"):
    """First derivative evaluated on the other point family.

    A node field gives values on the midpoints and a midpoint field gives
    values on the nodes, using ``(f[-3/2] - 27f[-1/2] + 27f[1/2] - f[3/2]) / 24dx``
    relative to the output point.
    """
    f = np.asarray(f, dtype=float)
    if family == "node":
        g = pad(f, 1, "node", parity)
        return _correlate(g, D1_CROSS_W, f.size - 1, 0) / dx
    g = pad(f, 2, "mid", parity)
    return _correlate(g, D1_CROSS_W, f.size + 1, 0) / dx


def d2_cross_parity(f, dx, family="mid", parity="odd"):
    """Second derivative ``(-f[-2] + 16f[-1] - 30f[0] + 16f[1] - f[2]) / 12dx^2``.

    Applied to data already sitting on the staggered family, as done for the
    velocity and for node quantities interpolated to the midpoints.
    """
    f = np.asarray(f, dtype=float)
    g = pad(f, 2, family, parity)
    return _correlate(g, D2_W, f.size, 0) / dx ** 2


def d3_cross_parity(f, dx, family="mid", parity="odd"):
    """Third derivative from the six neighbours at offsets +-1, +-2, +-3."""
    f = np.asarray(f, dtype=float)
    g = pad(f, 3, family, parity)
    return _correlate(g, D3_W, f.size, 0) / dx ** 3


def simpson_support(f_nodes, f_mids, j, k, dx):
    """Composite Simpson integral over ``[j dx, k dx]`` from node and midpoint samples."""
    if not 0 <= j < k <= len(f_nodes) - 1:
        raise ValueError(f"invalid index range j={j}, k={k}")
    f_nodes = np.asarray(f_nodes, dtype=float)
    f_mids = np.asarray(f_mids, dtype=float)
    total = (f_nodes[j] + f_nodes[k] + 2.0 * f_nodes[j + 1:k].sum()
             + 4.0 * f_mids[j:k].sum())
    return dx * total / 6.0
