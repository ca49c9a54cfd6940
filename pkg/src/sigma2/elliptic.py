"""Weierstrass function engine over a genus-1 curve X^3 - Y^2 + g4*X + g6 = 0.

The curve coefficients (gamma4, gamma6) fix the invariants
(g2, g3) = (-4*gamma4, -4*gamma6), so wp satisfies

    wp'^2 = 4*wp^3 + 4*gamma4*wp + 4*gamma6.

Periods come from Carlson symmetric integrals on the cubic roots; sigma, zeta,
wp, wp' are then evaluated through Jacobi theta q-series after reduction of the
argument to the fundamental cell.  The period pair is canonicalized (lattice
reduction, deterministic signs) so identical parameters always produce the
identical context.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.special import elliprf

from .errors import DegenerateCurve, NumericalFailure, PoleAtArgument
from .numerics import NumericsConfig, DEFAULT_CONFIG, continuous_log, require_finite

__all__ = [
    "EllipticCurveParams", "EllipticContext", "make_context", "delta_gamma",
    "wp", "wp_prime", "zeta_w", "sigma_w", "sigma_char", "invert_wp",
    "sigma_trig_limit", "sigma_ratio_log",
]


@dataclass(frozen=True)
class EllipticCurveParams:
    """Coefficients of the genus-1 curve X^3 - Y^2 + gamma4*X + gamma6."""

    gamma4: complex
    gamma6: complex

    def __post_init__(self):
        require_finite("EllipticCurveParams", self.gamma4, self.gamma6)


def delta_gamma(gamma4, gamma6):
    """Cubic discriminant-type quantity 4*gamma4^3 + 27*gamma6^2."""
    return 4 * gamma4**3 + 27 * gamma6**2


def _cubic_roots(g2, g3):
    r = np.roots([4.0, 0.0, -g2, -g3]).astype(complex)
    for _ in range(2):
        p = 4 * r**3 - g2 * r - g3
        dp = 12 * r**2 - g2
        mask = np.abs(dp) > 0
        r[mask] -= p[mask] / dp[mask]
    return [complex(x) for x in r]


def _gauss_reduce(a, b):
    for _ in range(256):
        if abs(a) > abs(b):
            a, b = b, a
        k = round((b * np.conj(a)).real / abs(a) ** 2)
        if k == 0:
            break
        b -= k * a
    return a, b


def _canonical_pair(a, b):
    """Deterministic full-period basis: shortest vector first, fixed signs."""
    a, b = _gauss_reduce(complex(a), complex(b))
    if abs(a) > abs(b):
        a, b = b, a
    s = abs(a)
    if a.real < -1e-12 * s or (abs(a.real) <= 1e-12 * s and a.imag < 0):
        a = -a
    if (b / a).imag < 0:
        b = -b
    b -= round((b / a).real) * a
    return a, b


def _lattice_from_roots(roots):
    """Full-period basis from the cubic roots via K(m), K(1-m).

    The root labelling is scanned so the cross-ratio m stays off the cut
    (-inf,0] u [1,inf); all labellings describe the same lattice.
    """
    for perm in itertools.permutations(range(3)):
        e1, e2, e3 = (roots[i] for i in perm)
        d13 = e1 - e3
        if d13 == 0:
            continue
        m = (e2 - e3) / d13
        if abs(m.imag) < 1e-13 * (1 + abs(m)) and (m.real <= 1e-13 or m.real >= 1 - 1e-13):
            continue
        big_k = complex(elliprf(0, 1 - m, 1))
        big_kp = complex(elliprf(0, m, 1))
        s = np.sqrt(d13)
        w1h, w3h = big_k / s, 1j * big_kp / s
        if (w3h / w1h).imag < 0:
            w3h = -w3h
        return 2 * w1h, 2 * w3h
    return None


def _theta_block(v, q):
    """theta1 and its first three v-derivatives at v (nome q)."""
    t = t1 = t2 = t3 = 0.0j
    for n in range(60):
        m = 2 * n + 1
        c = (-1) ** n * q ** ((n + 0.5) ** 2)
        s_, c_ = np.sin(m * v), np.cos(m * v)
        t += c * s_
        t1 += c * m * c_
        t2 -= c * m * m * s_
        t3 -= c * m ** 3 * c_
        if n > 3 and abs(c) * (abs(s_) + abs(c_) + 1.0) < 1e-19 * (abs(t1) + 1e-300):
            break
    return 2 * t, 2 * t1, 2 * t2, 2 * t3


def _theta_consts(q):
    th2 = 2 * sum(q ** ((n + 0.5) ** 2) for n in range(40))
    th3 = 1 + 2 * sum(q ** (n * n) for n in range(1, 40))
    th4 = 1 + 2 * sum((-1) ** n * q ** (n * n) for n in range(1, 40))
    return th2, th3, th4


@dataclass(frozen=True)
class EllipticContext:
    """Immutable evaluation context for one genus-1 curve.

    omega, omegaP are full periods with Im(omegaP/omega) > 0; eta, etaP the
    matching full-period zeta increments; roots = (e1, e2, e3) labelled by
    e1 = wp(omega/2), e2 = wp((omega+omegaP)/2), e3 = wp(omegaP/2).
    """

    params: EllipticCurveParams
    g2: complex
    g3: complex
    omega: complex
    omegaP: complex
    eta: complex
    etaP: complex
    nome: complex
    roots: tuple
    cfg: NumericsConfig
    _th1p0: complex

    @property
    def gamma4(self):
        return self.params.gamma4

    @property
    def gamma6(self):
        return self.params.gamma6

    @property
    def half_periods(self):
        """(omega/2, (omega+omegaP)/2, omegaP/2), matching the root order."""
        return (self.omega / 2, (self.omega + self.omegaP) / 2, self.omegaP / 2)

    def scale(self):
        return max(abs(self.omega), abs(self.omegaP))


def make_context(params, cfg: NumericsConfig | None = None,
                 degenerate_rel_tol: float = 1e-12) -> EllipticContext:
    """Build the Weierstrass context for curve parameters (gamma4, gamma6)."""
    if not isinstance(params, EllipticCurveParams):
        params = EllipticCurveParams(*params)
    cfg = cfg or DEFAULT_CONFIG
    g4, g6 = complex(params.gamma4), complex(params.gamma6)
    dlt = delta_gamma(g4, g6)
    scale = abs(g4) ** 3 + abs(g6) ** 2
    if scale == 0 or abs(dlt) <= degenerate_rel_tol * scale:
        raise DegenerateCurve(f"4*g4^3 + 27*g6^2 = {dlt!r} is (relatively) zero")
    g2, g3 = -4 * g4, -4 * g6
    roots = _cubic_roots(g2, g3)
    pair = _lattice_from_roots(roots)
    if pair is None:
        raise NumericalFailure("period construction failed: collinear root degeneracy")
    omega, omegaP = _canonical_pair(*pair)
    w1h = omega / 2
    tau = omegaP / omega
    q = np.exp(1j * np.pi * tau)
    _, t1, _, t3 = _theta_block(0.0j, q)
    eta1h = -np.pi ** 2 * t3 / (12 * w1h * t1)
    eta = 2 * eta1h
    etaP = 2 * (eta1h * (omegaP / 2) - 1j * np.pi / 2) / w1h
    th2, th3, th4 = _theta_consts(q)
    sc = (np.pi / w1h) ** 2 / 12
    e1 = sc * (th3 ** 4 + th4 ** 4)
    e2 = sc * (th2 ** 4 - th4 ** 4)
    e3 = -sc * (th2 ** 4 + th3 ** 4)
    rscale = max(1.0, max(abs(x) for x in roots))
    remaining = list(roots)
    worst = 0.0
    for e in (e1, e2, e3):
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - e))
        worst = max(worst, abs(remaining.pop(j) - e))
    if worst > 1e-8 * rscale:
        raise NumericalFailure("period iteration did not reproduce the cubic roots")
    return EllipticContext(params=params, g2=g2, g3=g3, omega=omega,
                           omegaP=omegaP, eta=eta, etaP=etaP, nome=q,
                           roots=(e1, e2, e3), cfg=cfg, _th1p0=t1)


def _reduce(ctx: EllipticContext, u):
    """u modulo the period lattice, with the integer shifts used."""
    om, omp = ctx.omega, ctx.omegaP
    det = om.real * omp.imag - om.imag * omp.real
    x = (u.real * omp.imag - u.imag * omp.real) / det
    y = (om.real * u.imag - om.imag * u.real) / det
    m, n = round(x), round(y)
    return u - m * om - n * omp, m, n


def _pole_guard(ctx, u0):
    if abs(u0) < ctx.cfg.cluster_tol * ctx.scale():
        raise PoleAtArgument(f"argument within {ctx.cfg.cluster_tol} of a lattice point")


def sigma_w(ctx: EllipticContext, u) -> complex:
    """Weierstrass sigma(u); entire, sigma(u) = u + O(u^5)."""
    u = complex(u)
    require_finite("sigma_w", u)
    u0, m, n = _reduce(ctx, u)
    w1h = ctx.omega / 2
    v = np.pi * u0 / (2 * w1h)
    t, _, _, _ = _theta_block(v, ctx.nome)
    s = (2 * w1h / np.pi) * np.exp((ctx.eta / 2) * u0 ** 2 / (2 * w1h)) * t / ctx._th1p0
    if m or n:
        lam = m * ctx.omega + n * ctx.omegaP
        s *= (-1) ** (m + n + m * n) * np.exp((m * ctx.eta + n * ctx.etaP) * (u0 + lam / 2))
    return complex(s)


def sigma_w_prime(ctx: EllipticContext, u) -> complex:
    """d sigma/du; entire (safe on the lattice, where sigma*zeta is 0*inf)."""
    u = complex(u)
    require_finite("sigma_w_prime", u)
    u0, m, n = _reduce(ctx, u)
    w1h = ctx.omega / 2
    v = np.pi * u0 / (2 * w1h)
    t, t1, _, _ = _theta_block(v, ctx.nome)
    pref = (2 * w1h / np.pi) * np.exp((ctx.eta / 2) * u0 ** 2 / (2 * w1h)) / ctx._th1p0
    s0 = pref * t
    s0p = pref * ((ctx.eta / 2) * u0 / w1h * t + (np.pi / (2 * w1h)) * t1)
    if m or n:
        lam = m * ctx.omega + n * ctx.omegaP
        etal = m * ctx.eta + n * ctx.etaP
        fac = (-1) ** (m + n + m * n) * np.exp(etal * (u0 + lam / 2))
        s0p = fac * (s0p + etal * s0)
    return complex(s0p)


def zeta_w(ctx: EllipticContext, u) -> complex:
    """Weierstrass zeta(u) = sigma'(u)/sigma(u); simple pole on the lattice."""
    u = complex(u)
    require_finite("zeta_w", u)
    u0, m, n = _reduce(ctx, u)
    _pole_guard(ctx, u0)
    w1h = ctx.omega / 2
    v = np.pi * u0 / (2 * w1h)
    t, t1, _, _ = _theta_block(v, ctx.nome)
    return complex((ctx.eta / 2) * u0 / w1h + (np.pi / (2 * w1h)) * t1 / t
                   + m * ctx.eta + n * ctx.etaP)


def wp(ctx: EllipticContext, u) -> complex:
    """Weierstrass wp(u) = -zeta'(u)."""
    u = complex(u)
    require_finite("wp", u)
    u0, _, _ = _reduce(ctx, u)
    _pole_guard(ctx, u0)
    w1h = ctx.omega / 2
    v = np.pi * u0 / (2 * w1h)
    t, t1, t2, _ = _theta_block(v, ctx.nome)
    big_l = t1 / t
    return complex(-(ctx.eta / 2) / w1h - (np.pi / (2 * w1h)) ** 2 * (t2 / t - big_l ** 2))


def wp_prime(ctx: EllipticContext, u) -> complex:
    """Derivative wp'(u); wp'^2 = 4 wp^3 + 4 gamma4 wp + 4 gamma6."""
    u = complex(u)
    require_finite("wp_prime", u)
    u0, _, _ = _reduce(ctx, u)
    _pole_guard(ctx, u0)
    w1h = ctx.omega / 2
    v = np.pi * u0 / (2 * w1h)
    t, t1, t2, t3 = _theta_block(v, ctx.nome)
    big_l = t1 / t
    return complex(-(np.pi / (2 * w1h)) ** 3
                   * (t3 / t - 3 * big_l * (t2 / t) + 2 * big_l ** 3))


def sigma_char(ctx: EllipticContext, u, i: int) -> complex:
    """Sigma with characteristic: exp(-u*eta_i)*sigma(u+w_i)/sigma(w_i).

    i in {1,2,3} selects the half period w_i in (omega/2, (omega+omegaP)/2,
    omegaP/2), with eta_i = zeta(w_i); even in u and sigma_char(0) = 1.
    """
    if i not in (1, 2, 3):
        raise ValueError("characteristic index must be 1, 2 or 3")
    u = complex(u)
    wi = ctx.half_periods[i - 1]
    etai = zeta_w(ctx, wi)
    return np.exp(-u * etai) * sigma_w(ctx, u + wi) / sigma_w(ctx, wi)


def curve_y(ctx: EllipticContext, x) -> complex:
    """Principal branch sqrt(X^3 + gamma4*X + gamma6)."""
    return complex(np.sqrt(x ** 3 + ctx.gamma4 * x + ctx.gamma6))


def invert_wp(ctx: EllipticContext, x, sign: int = +1) -> complex:
    """A preimage alpha with wp(alpha) = x, reduced to the fundamental cell.

    For sign=+1 the branch satisfies wp'(alpha) = -2*sqrt(X^3+g4*X+g6) with
    the principal square root (the branch the degenerate formulas assume);
    sign=-1 picks the opposite one.  At a cubic root the matching half period
    is returned exactly.
    """
    x = complex(x)
    require_finite("invert_wp", x)
    rscale = max(1.0, max(abs(e) for e in ctx.roots))
    for e, hp in zip(ctx.roots, ctx.half_periods):
        if abs(x - e) <= 1e-12 * rscale:
            return hp
    args = [x - e for e in ctx.roots]
    # keep Carlson arguments off the negative-real cut
    args = [a if abs(a.imag) > 1e-14 * abs(a) or a.real > 0
            else a + 1e-13j * max(abs(a), 1.0) for a in args]
    alpha = complex(elliprf(*args))
    target = -2 * sign * curve_y(ctx, x)
    best = None
    for cand in (alpha, -alpha, alpha + ctx.omega, alpha + ctx.omegaP):
        a = cand
        ok = True
        for _ in range(60):
            f = wp(ctx, a) - x
            if abs(f) < 1e-13 * (1 + abs(x)):
                break
            d = wp_prime(ctx, a)
            if abs(d) < 1e-14:
                ok = False
                break
            a -= f / d
        else:
            ok = False
        if not ok or abs(wp(ctx, a) - x) > 1e-9 * (1 + abs(x)):
            continue
        a, _, _ = _reduce(ctx, a)
        if abs(wp_prime(ctx, a) - target) <= abs(wp_prime(ctx, a) + target):
            best = a
        else:
            best, _, _ = _reduce(ctx, -a)
        break
    if best is None:
        raise NumericalFailure(f"invert_wp: Newton refinement failed for X={x!r}")
    return best


def sigma_ratio_log(ctx: EllipticContext, alpha, xi) -> complex:
    """log(sigma(alpha-xi)/sigma(alpha+xi)), branch continuous from xi=0.

    The branch matters wherever this log feeds an exponent that is compared
    against quadrature (Abel integrals, Bloch factors); the value at xi=0 is 0.
    """
    xi = complex(xi)
    if xi == 0:
        return 0.0j
    return continuous_log(
        lambda t: sigma_w(ctx, alpha - t * xi) / sigma_w(ctx, alpha + t * xi))


def sigma_trig_limit(a, u) -> complex:
    """Degenerate-sigma closed form at (g2, g3) = (12a^2, -8a^3).

    Normalized so the value is u + O(u^3); equals
    exp(-a*u^2/2) * sinh(sqrt(3a)*u)/sqrt(3a).
    """
    a, u = complex(a), complex(u)
    if a == 0:
        raise ValueError("sigma_trig_limit needs a != 0")
    r = np.sqrt(3 * a)
    z = r * u
    if abs(z) < 1e-4:
        sinhc = u * (1 + z ** 2 / 6 + z ** 4 / 120)
    else:
        sinhc = np.sinh(z) / r
    return complex(np.exp(-0.5 * a * u ** 2) * sinhc)
