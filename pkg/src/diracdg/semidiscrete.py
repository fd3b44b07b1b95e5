"""Method-of-lines DG residual with local Lax-Friedrichs coupling.

The semidiscrete form of u_t + alpha u_x + beta u_y = M(u) + R reads, per
cell K and basis function v_l,

    a_l du_l/dt = int_K [ F(u) . grad v_l + (M(u) + R) v_l ]
                  - sum_edges int_e  Fhat . n  v_l,

with F(u) = (alpha u, beta u) and the flux Fhat at an interface

    Fhat . n = 1/2 [ (F(u-) + F(u+)) . n - (u+ - u-) ],

whose dissipation coefficient is the unit spectral radius of alpha/beta.
Exterior traces are zero on all boundaries (every derivative order), which
acts as a weakly absorbing wall far from the supported solution.

Because gamma is antisymmetric the discrete charge Q_h = sum a_l u_l^2 is
non-increasing for the exact-in-time flow: dQ/dt equals minus the summed
squared interface jumps.  `dqdt_semidiscrete` exposes that quantity.
"""

from __future__ import annotations

import numpy as np

from .mesh import table_dot
from .model import apply_alpha, apply_beta


def interface_states(lo, hi, axis: int):
    """Interior minus/plus states at the nx+1 interfaces along `axis`.

    lo/hi are the traces on each cell's low/high edge; exterior ghost
    states are zero.
    """
    shp = list(lo.shape)
    shp[axis] = 1
    z = np.zeros(shp)
    um = np.concatenate([z, hi], axis=axis)
    up = np.concatenate([lo, z], axis=axis)
    return um, up


def lf_flux(apply_f, flux_minus, flux_plus, diss_minus, diss_plus):
    """Lax-Friedrichs-type flux; the advected state and the jump state may
    differ (Taylor-evolved vs plain traces in the one-step schemes)."""
    return 0.5 * (
        apply_f(flux_minus) + apply_f(flux_plus) - (diss_plus - diss_minus)
    )


def edge_term_1d(space, fhat):
    """Per-cell boundary contribution sum_e Fhat.n v_l from interface fluxes."""
    hi = fhat[:, 1:, None] * space.tr[0, 1]
    lo = fhat[:, :-1, None] * space.tr[0, 0]
    return hi - lo


def edge_term_2d(space, fhat, axis: str):
    if axis == "x":
        tab = space.edgew_x
        hi_f, lo_f = fhat[:, 1:], fhat[:, :-1]
    else:
        tab = space.edgew_y
        hi_f, lo_f = fhat[:, :, 1:], fhat[:, :, :-1]
    return table_dot(hi_f, tab[1]) - table_dot(lo_f, tab[0])


def rkdg_residual(space, model, coeffs, t: float = 0.0, source=None):
    """du/dt coefficients of the semidiscrete scheme."""
    if space.dim == 1:
        return _residual_1d(space, model, coeffs, t, source)
    return _residual_2d(space, model, coeffs, t, source)


def _residual_1d(space, model, coeffs, t, source):
    uv = space.eval(coeffs)
    vol = table_dot(apply_alpha(uv), space.phiw[1])
    mv = model.nonlinear_term(uv)
    if source is not None:
        mv = mv + source.values(space, t)
    vol += table_dot(mv, space.phiw[0])

    lo, hi = space.traces(coeffs)
    um, up = interface_states(lo, hi, axis=1)
    fhat = lf_flux(apply_alpha, um, up, um, up)
    edge = edge_term_1d(space, fhat)
    return (vol - edge) / space.mass


def _residual_2d(space, model, coeffs, t, source):
    uv = space.eval(coeffs)
    vol = table_dot(apply_alpha(uv), space.volw[(1, 0)])
    vol += table_dot(apply_beta(uv), space.volw[(0, 1)])
    mv = model.nonlinear_term(uv)
    if source is not None:
        mv = mv + source.values(space, t)
    vol += table_dot(mv, space.volw[(0, 0)])

    lo, hi = space.edge_values(coeffs, "x")
    um, up = interface_states(lo, hi, axis=1)
    edge = edge_term_2d(space, lf_flux(apply_alpha, um, up, um, up), "x")
    lo, hi = space.edge_values(coeffs, "y")
    um, up = interface_states(lo, hi, axis=2)
    edge += edge_term_2d(space, lf_flux(apply_beta, um, up, um, up), "y")
    return (vol - edge) / space.mass


def dqdt_semidiscrete(space, model, coeffs, t: float = 0.0, source=None):
    """d/dt of the discrete charge along the semidiscrete flow.

    2 sum_K sum_l a_l u_l (du_l/dt); for the unforced system this is
    -(sum of squared interface jumps) and must never be positive.
    """
    L = rkdg_residual(space, model, coeffs, t, source)
    return 2.0 * float(np.sum(coeffs * L * space.mass))
