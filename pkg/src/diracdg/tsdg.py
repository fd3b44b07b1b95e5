"""Two-stage fourth-order DG update.

One time step performs exactly two spatial sweeps.  Each sweep assembles,
for the current state z and time s,

    I_l    = int_K [ F(z) . grad v_l + (M(z) + R(s)) v_l ]      - edges(F1)
    Ihat_l = int_K [ F(z_t) . grad v_l + (d_t M + R_t(s)) v_l ] - edges(F2)

with z_t from the first-order cascade and the interface fluxes

    F1 . n = 1/2 [ (F(z-) + F(z+)) . n - (z+ - z-) ]
    F2 . n = 1/2 [ (F(z_t-) + F(z_t+)) . n - (z+ - z-) ],

i.e. the dissipation always penalises the jump of the state itself.  With
I, Ihat from the sweep at (u, t) the intermediate state is

    u*_l = u_l + tau / (3 (1 - theta) a_l) [ I_l + tau/4 Ihat_l ],

living at stage time t* = t + tau / (3 (1 - theta)); the sweep at (u*, t*)
supplies Itilde (the Ihat-type moment only) and the full step reads

    u_l(t + tau) = u_l + tau / a_l [ I_l + theta tau/2 Ihat_l
                                     + (1 - theta) tau/2 Itilde_l ].

theta = 1/3 (the default) reproduces the classical two-derivative
two-stage fourth-order construction; theta = 1 degenerates (the stage
time escapes to infinity) and is rejected.
"""

from __future__ import annotations


from .cascade import time_jet
from .mesh import table_dot
from .errors import ConfigError
from .model import apply_alpha, apply_beta
from .semidiscrete import edge_term_1d, edge_term_2d, interface_states, lf_flux

from .lwdg import _edge_source_split


def tsdg_step(space, model, coeffs, t, tau, theta: float = 1.0 / 3.0, source=None):
    if abs(1.0 - theta) < 1e-12:
        raise ConfigError("two-stage scheme undefined at theta = 1")
    t2 = tau / (3.0 * (1.0 - theta))
    I, Ihat = _sweep(space, model, coeffs, t, source, want_first=True)
    ustar = coeffs + (t2 / space.mass) * (I + 0.25 * tau * Ihat)
    _, Itilde = _sweep(space, model, ustar, t + t2, source, want_first=False)
    t3 = 0.5 * theta * tau
    t4 = 0.5 * tau - t3
    return coeffs + (tau / space.mass) * (I + t3 * Ihat + t4 * Itilde)


def _sweep(space, model, coeffs, t, source, want_first):
    if space.dim == 1:
        return _sweep_1d(space, model, coeffs, t, source, want_first)
    return _sweep_2d(space, model, coeffs, t, source, want_first)


def _sweep_1d(space, model, coeffs, t, source, want_first):
    vjet = space.volume_jet(coeffs, depth=1)
    svol = source.volume_jet(space, t, depth=1) if source is not None else None
    tj = time_jet(vjet, model, depth=1, source=svol)
    phi0, phi1 = space.phiw[0], space.phiw[1]

    mt = tj["Mt"] if svol is None else tj["Mt"] + svol["t"]
    ihat_vol = table_dot(apply_alpha(tj["t"]), phi1)
    ihat_vol += table_dot(mt, phi0)

    ljet, rjet = space.trace_jets(coeffs, depth=1)
    sedge = source.edge_jet(space, t, "x", depth=1) if source is not None else None
    slo, shi = _edge_source_split(sedge, axis=1)
    ut_lo = time_jet(ljet, model, depth=1, source=slo)["t"]
    ut_hi = time_jet(rjet, model, depth=1, source=shi)["t"]
    um, up = interface_states(ljet["u"], rjet["u"], axis=1)
    utm, utp = interface_states(ut_lo, ut_hi, axis=1)
    ihat = ihat_vol - edge_term_1d(space, lf_flux(apply_alpha, utm, utp, um, up))

    if not want_first:
        return None, ihat
    mv = tj["M"] if svol is None else tj["M"] + svol["val"]
    i_vol = table_dot(apply_alpha(vjet["u"]), phi1)
    i_vol += table_dot(mv, phi0)
    i_full = i_vol - edge_term_1d(space, lf_flux(apply_alpha, um, up, um, up))
    return i_full, ihat


def _sweep_2d(space, model, coeffs, t, source, want_first):
    vjet = space.volume_jet(coeffs, depth=1)
    svol = source.volume_jet(space, t, depth=1) if source is not None else None
    tj = time_jet(vjet, model, depth=1, source=svol)
    vx, vy, v0 = space.volw[(1, 0)], space.volw[(0, 1)], space.volw[(0, 0)]

    mt = tj["Mt"] if svol is None else tj["Mt"] + svol["t"]
    ihat_vol = table_dot(apply_alpha(tj["t"]), vx)
    ihat_vol += table_dot(apply_beta(tj["t"]), vy)
    ihat_vol += table_dot(mt, v0)

    edges = {}
    for axis_name, axis, flux_op in (("x", 1, apply_alpha), ("y", 2, apply_beta)):
        lo, hi = space.edge_jets(coeffs, axis_name, depth=1)
        sedge = (
            source.edge_jet(space, t, axis_name, depth=1)
            if source is not None
            else None
        )
        slo, shi = _edge_source_split(sedge, axis=axis)
        ut_lo = time_jet(lo, model, depth=1, source=slo)["t"]
        ut_hi = time_jet(hi, model, depth=1, source=shi)["t"]
        um, up = interface_states(lo["u"], hi["u"], axis=axis)
        utm, utp = interface_states(ut_lo, ut_hi, axis=axis)
        edges[axis_name] = (um, up, utm, utp, flux_op)

    ihat = ihat_vol
    for axis_name, (um, up, utm, utp, flux_op) in edges.items():
        ihat = ihat - edge_term_2d(
            space, lf_flux(flux_op, utm, utp, um, up), axis_name
        )

    if not want_first:
        return None, ihat
    mv = tj["M"] if svol is None else tj["M"] + svol["val"]
    i_vol = table_dot(apply_alpha(vjet["u"]), vx)
    i_vol += table_dot(apply_beta(vjet["u"]), vy)
    i_vol += table_dot(mv, v0)
    i_full = i_vol
    for axis_name, (um, up, _, _, flux_op) in edges.items():
        i_full = i_full - edge_term_2d(
            space, lf_flux(flux_op, um, up, um, up), axis_name
        )
    return i_full, ihat
