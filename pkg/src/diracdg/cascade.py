"""Pointwise time-derivative cascade for the real-form system.

Time derivatives of u are traded for spatial derivatives through repeated
use of

    u_t = -alpha u_x - beta u_y + M(u) + R,      M(u) = g(rho) gamma u,

so that e.g. u_tt = -alpha u_tx - beta u_ty + d_t M + R_t, with the mixed
derivatives u_tx, u_ty obtained by differentiating the same identity in
space.  Derivatives of M follow from the product/chain rule through
rho = <u, u> (the sigma3 pairing):

    rho_a   = 2 <u, u_a>
    rho_ab  = 2 (<u_a, u_b> + <u, u_ab>)
    rho_ttt = 2 (3 <u_t, u_tt> + <u, u_ttt>)
    g_a     = g' rho_a
    g_ab    = g'' rho_a rho_b + g' rho_ab
    g_ttt   = g''' rho_t^3 + 3 g'' rho_t rho_tt + g' rho_ttt

All operations act on point values, so the same code serves volume
quadrature points and cell-edge traces of every space dimension; 1D inputs
simply omit the y-derivative keys.

The cascade is exact: fed the spatial jet of a solution of the (possibly
forced) system, it returns that solution's exact time derivatives.  That
property is what the finite-difference oracle in the tests checks.
"""

from __future__ import annotations

from .model import apply_alpha, apply_beta, apply_gamma, sigma3_pair


def _adv(two_d, jx, jy):
    out = -apply_alpha(jx)
    if two_d:
        out -= apply_beta(jy)
    return out


def time_jet(space_jet, model, depth: int = 3, source=None):
    """Time derivatives of u and M(u) from a spatial jet at a point set.

    space_jet: dict with keys 'u', 'x' ('y'), and for depth 3 also
        'xx' ('xy', 'yy'), 'xxx' ('xxy', 'xyy', 'yyy'); arrays (4, ...).
    source: dict of source derivatives with keys 'val', 'x' ('y'), 't',
        and for depth 3 'xx' ('xy', 'yy'), 'tx' ('ty'), 'tt'; or None.
    depth: 1 returns {'t', 'M', 'Mt'}; 3 adds {'tt', 'ttt', 'Mtt', 'Mttt'}.
    """
    two_d = "y" in space_jet
    u = space_jet["u"]
    ux = space_jet["x"]
    uy = space_jet.get("y")
    src = source or {}

    def s(key):
        return src.get(key)

    def plus(a, b):
        return a if b is None else a + b

    g0, g1, g2, g3 = model.g_jet(sigma3_pair(u, u), depth)
    gu = apply_gamma(u)
    M = g0 * gu

    ut = plus(_adv(two_d, ux, uy) + M, s("val"))
    gut = apply_gamma(ut)
    rho_t = 2.0 * sigma3_pair(u, ut)
    gt = g1 * rho_t
    Mt = gt * gu + g0 * gut
    out = {"t": ut, "M": M, "Mt": Mt}
    if depth == 1:
        return out

    uxx = space_jet["xx"]
    uxxx = space_jet["xxx"]
    rho_x = 2.0 * sigma3_pair(u, ux)
    gx = g1 * rho_x
    Mx = gx * gu + g0 * apply_gamma(ux)
    utx = plus(_adv(two_d, uxx, space_jet.get("xy")) + Mx, s("x"))
    if two_d:
        uxy, uyy = space_jet["xy"], space_jet["yy"]
        rho_y = 2.0 * sigma3_pair(u, uy)
        gy = g1 * rho_y
        My = gy * gu + g0 * apply_gamma(uy)
        uty = plus(_adv(two_d, uxy, uyy) + My, s("y"))
    else:
        uty = None
    utt = plus(_adv(two_d, utx, uty) + Mt, s("t"))

    # second spatial derivatives of u_t, for u_ttx (and u_tty)
    rho_xx = 2.0 * (sigma3_pair(ux, ux) + sigma3_pair(u, uxx))
    gxx = g2 * rho_x * rho_x + g1 * rho_xx
    Mxx = gxx * gu + 2.0 * gx * apply_gamma(ux) + g0 * apply_gamma(uxx)
    utxx = plus(_adv(two_d, uxxx, space_jet.get("xxy")) + Mxx, s("xx"))
    if two_d:
        uxxy, uxyy, uyyy = space_jet["xxy"], space_jet["xyy"], space_jet["yyy"]
        rho_xy = 2.0 * (sigma3_pair(ux, uy) + sigma3_pair(u, uxy))
        gxy = g2 * rho_x * rho_y + g1 * rho_xy
        Mxy = (
            gxy * gu
            + gx * apply_gamma(uy)
            + gy * apply_gamma(ux)
            + g0 * apply_gamma(uxy)
        )
        utxy = plus(_adv(two_d, uxxy, uxyy) + Mxy, s("xy"))
        rho_yy = 2.0 * (sigma3_pair(uy, uy) + sigma3_pair(u, uyy))
        gyy = g2 * rho_y * rho_y + g1 * rho_yy
        Myy = gyy * gu + 2.0 * gy * apply_gamma(uy) + g0 * apply_gamma(uyy)
        utyy = plus(_adv(two_d, uxyy, uyyy) + Myy, s("yy"))
    else:
        utxy = utyy = None

    rho_tx = 2.0 * (sigma3_pair(ut, ux) + sigma3_pair(u, utx))
    gtx = g2 * rho_t * rho_x + g1 * rho_tx
    Mtx = gtx * gu + gt * apply_gamma(ux) + gx * gut + g0 * apply_gamma(utx)
    uttx = plus(_adv(two_d, utxx, utxy) + Mtx, s("tx"))
    if two_d:
        rho_ty = 2.0 * (sigma3_pair(ut, uy) + sigma3_pair(u, uty))
        gty = g2 * rho_t * rho_y + g1 * rho_ty
        Mty = gty * gu + gt * apply_gamma(uy) + gy * gut + g0 * apply_gamma(uty)
        utty = plus(_adv(two_d, utxy, utyy) + Mty, s("ty"))
    else:
        utty = None

    rho_tt = 2.0 * (sigma3_pair(ut, ut) + sigma3_pair(u, utt))
    gtt = g2 * rho_t * rho_t + g1 * rho_tt
    gutt = apply_gamma(utt)
    Mtt = gtt * gu + 2.0 * gt * gut + g0 * gutt
    uttt = plus(_adv(two_d, uttx, utty) + Mtt, s("tt"))

    rho_ttt = 2.0 * (3.0 * sigma3_pair(ut, utt) + sigma3_pair(u, uttt))
    gttt = g3 * rho_t**3 + 3.0 * g2 * rho_t * rho_tt + g1 * rho_ttt
    Mttt = gttt * gu + 3.0 * gtt * gut + 3.0 * gt * gutt + g0 * apply_gamma(uttt)

    out.update({"tt": utt, "ttt": uttt, "Mtt": Mtt, "Mttt": Mttt})
    return out


def taylor_state(space_jet, model, tau: float, source=None):
    """(w, G) of the one-step Taylor update at the jet's point set:

    w = u + tau/2 u_t + tau^2/6 u_tt + tau^3/24 u_ttt, and the matching
    zero-order moment G = M + tau/2 M_t + tau^2/6 M_tt + tau^3/24 M_ttt
    (+ the same combination of source derivatives when forced).
    """
    tj = time_jet(space_jet, model, depth=3, source=source)
    c1, c2, c3 = tau / 2.0, tau * tau / 6.0, tau**3 / 24.0
    w = space_jet["u"] + c1 * tj["t"] + c2 * tj["tt"] + c3 * tj["ttt"]
    G = tj["M"] + c1 * tj["Mt"] + c2 * tj["Mtt"] + c3 * tj["Mttt"]
    if source is not None:
        G = G + source["val"] + c1 * source["t"] + c2 * source["tt"] + c3 * source["ttt"]
    return w, G
