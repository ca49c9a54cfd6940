"""Generalized Jacobi inversion on an elliptic curve with a marked point.

The problem pairs the holomorphic integral with a third-kind one:

    int_inf^{P1} dX/(-2Y) + int_inf^{P2} dX/(-2Y)          = U1,
    int_inf^{P1} dX/(-2Y(X-A)) + int_inf^{P2} dX/(-2Y(X-A)) = U3,

with A = wp(alpha), both integrals based at the branch point at infinity
(xi = 0 in the uniformizer).  In the variable (X, Y) = (wp(xi), -wp'(xi)/2)
the forward map has the closed form

    xi1 + xi2 = U1,
    sigma(a-xi1) sigma(a-xi2) / (sigma(a+xi1) sigma(a+xi2))
        = exp(-2 zeta(a) U1 + wp'(a) U3),

and the inverse is rational in S (see sigma.s_function): X1 + X2 = S^2 - wp(U1)
with matching products and Y-values.  The same machinery solves the two-site
Bethe-type equation for sigma quotients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import elliptic as el
from . import sigma as sg
from .errors import (BranchPointCase, NotBranchPoint, NotOnStratum,
                     PoleAtArgument, SingularConfiguration)
from .numerics import NumericsConfig, quadrature_path

__all__ = [
    "InversionResult", "solve_inversion", "forward_integrals",
    "branch_point_inversion", "solve_bethe", "bethe_residual",
    "bethe_linear_form", "solve_inversion_rational", "rational_pair_product",
    "third_kind_integral_quadrature",
]


@dataclass(frozen=True)
class InversionResult:
    e1: complex                 # X1 + X2
    e2: complex                 # X1 * X2
    X1: complex
    X2: complex
    Y1: complex
    Y2: complex
    xi1: complex
    xi2: complex
    residuals: dict = field(default_factory=dict)


def _require_generic_l1(ctx):
    if ctx.kind != "lambda1":
        raise NotOnStratum("inversion needs a Lambda1 context")
    if ctx.branch_point:
        raise BranchPointCase("wp'(alpha) = 0: use branch_point_inversion")


def forward_integrals(ctx: sg.DegenSigmaContext, xi1, xi2):
    """(U1, U3) for the point pair (wp(xi1), ...), (wp(xi2), ...).

    U3 uses the closed form (2 zeta(a) U1 + log-ratio)/wp'(a) with the sigma
    ratio logs tracked continuously from xi = 0, which puts the value on the
    same sheet as straight-path quadrature.
    """
    _require_generic_l1(ctx)
    xi1, xi2 = complex(xi1), complex(xi2)
    ec = ctx.ectx
    u1 = xi1 + xi2
    log1 = el.sigma_ratio_log(ec, ctx.alpha, xi1)
    log2 = el.sigma_ratio_log(ec, ctx.alpha, xi2)
    u3 = (2.0 * ctx.zeta_alpha * u1 + log1 + log2) / ctx.wpp_alpha
    return complex(u1), complex(u3)


def third_kind_integral_quadrature(ctx: sg.DegenSigmaContext, xi,
                                   cfg: NumericsConfig | None = None):
    """Quadrature oracle for int_0^xi dv/(wp(v) - wp(alpha))."""
    _require_generic_l1(ctx)
    ec = ctx.ectx
    a = ctx.wp_alpha
    return quadrature_path(lambda v: 1.0 / (el.wp(ec, v) - a),
                           [1e-300j, complex(xi)], cfg or ctx.cfg)


def solve_inversion(ctx: sg.DegenSigmaContext, U1, U3) -> InversionResult:
    """Closed-form solution of the inversion problem at transformed (U1, U3)."""
    _require_generic_l1(ctx)
    U1, U3 = complex(U1), complex(U3)
    ec = ctx.ectx
    a = ctx.wp_alpha
    ap = ctx.wpp_alpha
    pu = el.wp(ec, U1)
    ppu = el.wp_prime(ec, U1)
    s = sg.s_function(ctx, U3, U1)
    dp = pu - a
    e1 = s * s - pu
    e2 = pu * s * s - ppu * s - a * (pu + a) + (ppu ** 2 - ap ** 2) / (4.0 * dp)
    disc = np.sqrt(e1 * e1 - 4.0 * e2)
    x1, x2 = (e1 + disc) / 2.0, (e1 - disc) / 2.0
    if (x2.real, x2.imag) < (x1.real, x1.imag):
        x1, x2 = x2, x1

    def y_of(x):
        # odd powers of S carry the opposite sign to the even ones: the
        # defining relation Y_k = -(X_k de1 - de2)/(2(X_k - A)) pins them,
        # in agreement with quadrature and with wp' at the recovered xi
        return ((x - pu) / (x - a) * s ** 3 + ppu / (x - a) * s ** 2
                - (2 * pu + a + (ppu ** 2 - ap ** 2) / (4 * (x - a) * dp)) * s
                + 0.5 * ppu)

    y1, y2 = y_of(x1), y_of(x2)
    g4, g6 = ec.gamma4, ec.gamma6
    memb = max(abs(y1 ** 2 - (x1 ** 3 + g4 * x1 + g6)),
               abs(y2 ** 2 - (x2 ** 3 + g4 * x2 + g6)))
    xi1 = _xi_from_point(ec, x1, y1)
    xi2 = _xi_from_point(ec, x2, y2)
    return InversionResult(e1=complex(e1), e2=complex(e2),
                           X1=complex(x1), X2=complex(x2),
                           Y1=complex(y1), Y2=complex(y2),
                           xi1=xi1, xi2=xi2,
                           residuals={"curve_membership": memb})


def _xi_from_point(ec, x, y):
    """Uniformizer with wp(xi) = x and Y = -wp'(xi)/2 matching y."""
    xi = el.invert_wp(ec, x)
    if abs(el.wp_prime(ec, xi) + 2 * y) > abs(el.wp_prime(ec, xi) - 2 * y):
        xi, _, _ = el._reduce(ec, -xi)
    return xi


def branch_point_inversion(ctx: sg.DegenSigmaContext, U1) -> InversionResult:
    """Explicit solution when A = wp(alpha) is a branch point (wp'(alpha)=0).

    One point freezes at the branch point (e_i, 0); the other moves as
    (wp(U1 + w_i), -wp'(U1 + w_i)/2) for the matching half period w_i.
    """
    if ctx.kind != "lambda1":
        raise NotOnStratum("inversion needs a Lambda1 context")
    if not ctx.branch_point:
        raise NotBranchPoint("wp'(alpha) does not vanish here")
    U1 = complex(U1)
    ec = ctx.ectx
    i = ctx.branch_index
    wi = ec.half_periods[i - 1]
    x1, y1 = ec.roots[i - 1], 0.0j
    x2 = el.wp(ec, U1 + wi)
    y2 = -0.5 * el.wp_prime(ec, U1 + wi)
    g4, g6 = ec.gamma4, ec.gamma6
    memb = abs(y2 ** 2 - (x2 ** 3 + g4 * x2 + g6))
    return InversionResult(e1=x1 + x2, e2=x1 * x2, X1=complex(x1), X2=complex(x2),
                           Y1=y1, Y2=complex(y2), xi1=wi, xi2=U1 + wi,
                           residuals={"curve_membership": memb})


# ---------------------------------------------------------------------------
# Bethe-type equation

def bethe_residual(ec: el.EllipticContext, alpha, beta, kappa, xi) -> float:
    """Relative defect of exp(kappa) = sigma(x-a)sigma(x+b)/(sigma(x+a)sigma(x-2a+b))."""
    num = el.sigma_w(ec, xi - alpha) * el.sigma_w(ec, xi + beta)
    den = el.sigma_w(ec, xi + alpha) * el.sigma_w(ec, xi - 2 * alpha + beta)
    if den == 0:
        raise SingularConfiguration("bethe_residual hit a sigma zero")
    lhs = np.exp(kappa)
    return abs(lhs - num / den) / abs(lhs)


def solve_bethe(ctx: sg.DegenSigmaContext, alpha, beta, kappa):
    """The two kappa-dependent roots of the sigma-quotient equation.

    alpha must be the context's Abel preimage (the equation's shift parameter
    and the marked point of the inversion problem coincide); beta and kappa
    map to (U1, U3) = (alpha - beta, (kappa + 2 zeta(a) U1)/wp'(a)).  The
    kappa-independent extra root (wp(alpha-beta), -wp'(alpha-beta)) of the
    rationalized form is never returned.
    """
    _require_generic_l1(ctx)
    alpha, beta, kappa = complex(alpha), complex(beta), complex(kappa)
    if abs(alpha - ctx.alpha) > 1e-8 * (1.0 + abs(ctx.alpha)):
        raise ValueError("alpha must match the context's Abel preimage")
    u1 = alpha - beta
    u3 = (kappa + 2.0 * ctx.zeta_alpha * u1) / ctx.wpp_alpha
    res = solve_inversion(ctx, u1, u3)
    return res.xi1, res.xi2


def bethe_linear_form(ec: el.EllipticContext, alpha, beta, kappa, wp_xi, wpp_xi):
    """The A*wp'(xi) + B*wp(xi) + C form of the rationalized equation.

    Vanishes at both kappa-dependent solutions and at the kappa-independent
    extra root (wp(xi), wp'(xi)) = (wp(alpha-beta), -wp'(alpha-beta)).
    """
    alpha, beta = complex(alpha), complex(beta)
    two_ab = 2 * alpha - beta
    pa, ppa = el.wp(ec, alpha), el.wp_prime(ec, alpha)
    pb, ppb = el.wp(ec, beta), el.wp_prime(ec, beta)
    pc, ppc = el.wp(ec, two_ab), el.wp_prime(ec, two_ab)

    def det3(r1, r2, r3):
        return (r1[0] * (r2[1] * r3[2] - r3[1] * r2[2])
                - r1[1] * (r2[0] * r3[2] - r3[0] * r2[2])
                + r1[2] * (r2[0] * r3[1] - r3[0] * r2[1]))

    top = (wpp_xi, wp_xi, 1.0)
    det1 = det3(top, (ppa, pa, 1.0), (-ppb, pb, 1.0))
    det2 = det3(top, (-ppa, pa, 1.0), (ppc, pc, 1.0))
    cfac = (el.sigma_w(ec, beta) / el.sigma_w(ec, two_ab)
            * (pa - pc) / (pa - pb))
    return np.exp(kappa) * det2 - cfac * det1


# ---------------------------------------------------------------------------
# rational limit (gamma = 0): sigma(x) = x, zeta(x) = 1/x, wp(x) = x^-2

def solve_inversion_rational(alpha, U1, U3):
    """Symmetric functions (xi1+xi2, xi1*xi2, X1+X2, X1*X2) at gamma = 0.

    Same S-route formulas with the rational-limit primitives; no elliptic
    context is involved.
    """
    alpha, U1, U3 = complex(alpha), complex(U1), complex(U3)
    pa, ppa = alpha ** -2, -2.0 * alpha ** -3
    pu, ppu = U1 ** -2, -2.0 * U1 ** -3
    pfun = ((alpha + U1) / (alpha - U1)
            * np.exp(ppa * U3 - 2.0 * U1 / alpha))
    if abs(pfun - 1.0) < 1e-12 * (1 + abs(pfun)):
        raise SingularConfiguration("P ~ 1 in the rational limit")
    s = (ppu - ppa * (pfun + 1.0) / (pfun - 1.0)) / (2.0 * (pu - pa))
    e1 = s * s - pu
    e2 = (pu * s * s - ppu * s - pa * (pu + pa)
          + (ppu ** 2 - ppa ** 2) / (4.0 * (pu - pa)))
    return {"sum_X": complex(e1), "prod_X": complex(e2), "sum_xi": complex(U1)}


def rational_pair_product(alpha, U1, U3):
    """Closed form xi1*xi2 = -alpha^2 + alpha*U1/tanh(U3/alpha^3 + U1/alpha)."""
    alpha, U1, U3 = complex(alpha), complex(U1), complex(U3)
    th = np.tanh(U3 / alpha ** 3 + U1 / alpha)
    if th == 0:
        raise SingularConfiguration("tanh vanishes: product diverges")
    return complex(-alpha ** 2 + alpha * U1 / th)
