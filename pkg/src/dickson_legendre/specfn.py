"""Double-precision special functions for the homogeneous third-kind solution.

The Legendre functions here are of order 1/2 and degree
``nu = sqrt(n^2 + 1) - 1/2``, evaluated on the real interval ``1 < z < 3``
through their hypergeometric series.  Principal branches are used for all
fractional powers, so ``P`` is complex there (``(1+z)/(1-z) < 0``) and ``Q``
is purely imaginary.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import dickson, ode
from .errors import (
    ConvergenceError,
    DomainError,
    IllConditioned,
    ParameterPole,
    PoleError,
)

# Lanczos approximation, g = 7, 9 coefficients
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_DELTA = 1e-3
SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 10_000
FD_STEP = 1e-4


def _check_finite(*values):
    for v in values:
        if isinstance(v, complex):
            ok = math.isfinite(v.real) and math.isfinite(v.imag)
        else:
            ok = math.isfinite(v)
        if not ok:
            raise DomainError(f"non-finite argument {v!r}")


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma_fn(x: float) -> float:
    """Gamma function via Lanczos, with reflection below 1/2."""
    x = float(x)
    _check_finite(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    out = 1.0
    for j in range(n):
        out *= a + j
    return out


def _two_sum_err(s: float, t: float, total: float) -> float:
    if abs(s) >= abs(t):
        return (s - total) + t
    return (t - total) + s


def hyp2f1(
    a: float,
    b: float,
    c: float,
    z: complex,
    *,
    delta: float = SERIES_DELTA,
    rtol: float = SERIES_RTOL,
    max_terms: int = SERIES_MAX_TERMS,
) -> complex:
    """Gauss series ``sum (a)_k (b)_k / (c)_k z^k / k!`` inside ``|z| <= 1 - delta``.

    Summation stops once three consecutive terms fall below ``rtol * |sum|``.
    """
    z = complex(z)
    _check_finite(a, b, c, z)
    if _is_nonpositive_integer(c):
        raise ParameterPole(f"c={c} is a non-positive integer")
    if abs(z) > 1 - delta:
        raise DomainError(f"|z|={abs(z):.6g} outside the series region |z| <= {1 - delta}")
    if z.imag == 0.0:
        return complex(_hyp2f1_real(a, b, c, z.real, rtol, max_terms), 0.0)
    # Neumaier-compensated sum; finite differences downstream amplify rounding noise
    total = 1.0 + 0.0j
    comp = 0.0j
    term = 1.0 + 0.0j
    small = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        t = total + term
        comp += _two_sum_err(total.real, term.real, t.real) + 1j * _two_sum_err(
            total.imag, term.imag, t.imag
        )
        total = t
        if abs(term) <= rtol * abs(total):
            small += 1
            if small == 3:
                return total + comp
        else:
            small = 0
    raise ConvergenceError(f"2F1 series not converged after {max_terms} terms")


def _hyp2f1_real(a, b, c, x, rtol, max_terms) -> np.longdouble:
    # extended-precision accumulation keeps the result within ~1 ulp of double
    a, b, c, x = (np.longdouble(v) for v in (a, b, c, x))
    one = np.longdouble(1)
    total = one
    term = one
    small = 0
    for k in range(max_terms):
        kk = np.longdouble(k)
        term = term * (a + kk) * (b + kk) / ((c + kk) * (kk + one)) * x
        total = total + term
        if abs(term) <= rtol * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise ConvergenceError(f"2F1 series not converged after {max_terms} terms")


@dataclass(frozen=True)
class LegendreParams:
    """Degree ``nu = sqrt(n^2+1) - 1/2`` and order ``mu = 1/2`` for index ``n``."""

    n: int
    mu: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.mu != 0.5:
            raise DomainError("only order 1/2 is supported")

    @property
    def s(self) -> float:
        return math.sqrt(self.n * self.n + 1)

    @property
    def nu(self) -> float:
        return self.s - 0.5


_SQRT_PI_LD = np.sqrt(np.longdouble(np.pi) + np.longdouble(1.2246467991473532e-16))
_EIGHTH_TURN = cmath.exp(0.25j * math.pi)
_COS_EIGHTH_LD = np.sqrt(np.longdouble(2)) / 2


def _check_series_arg(x: float, delta: float = SERIES_DELTA):
    if abs(x) > 1 - delta:
        raise DomainError(f"series argument {x:.6g} outside |z| <= {1 - delta}")


def legendre_p_half(params: LegendreParams, z: float) -> complex:
    """``P^{1/2}_nu(z)`` for ``1 < z < 3`` via the series in ``(1 - z)/2``."""
    z = float(z)
    _check_finite(z)
    if not 1.0 < z < 3.0:
        raise DomainError(f"P requires 1 < z < 3, got {z}")
    return float(_p_half_magnitude(params.s, z)) * _EIGHTH_TURN


def _p_half_magnitude(s: float, z) -> np.longdouble:
    # P = magnitude * e^{i pi/4}: (1+z)/(1-z) < 0 on the domain, principal root
    zl = np.longdouble(z)
    arg = (1 - zl) / 2
    _check_series_arg(float(arg))
    series = _hyp2f1_real(-s + 0.5, s + 0.5, 0.5, arg, SERIES_RTOL, SERIES_MAX_TERMS)
    ratio = (zl + 1) / (zl - 1)
    return ratio ** np.longdouble(0.25) * series / _SQRT_PI_LD


def legendre_q_half(params: LegendreParams, z: float) -> complex:
    """``Q^{1/2}_nu(z)`` for ``z > 1`` via the series in ``1/z^2``."""
    z = float(z)
    _check_finite(z)
    if not z > 1.0:
        raise DomainError(f"Q requires z > 1, got {z}")
    return complex(0.0, float(_q_half_magnitude(params.s, z)))


def _q_half_magnitude(s: float, z) -> np.longdouble:
    # Q = i * magnitude
    zl, sl = np.longdouble(z), np.longdouble(s)
    arg = 1 / (zl * zl)
    _check_series_arg(float(arg))
    series = _hyp2f1_real((s + 1) / 2, (s + 2) / 2, s + 1, arg, SERIES_RTOL, SERIES_MAX_TERMS)
    # log-space magnitude avoids overflow of z**(s+1) for large z
    log_mag = (
        np.log(_SQRT_PI_LD)
        - (sl + np.longdouble(0.5)) * np.log(np.longdouble(2))
        + np.longdouble(0.25) * np.log((zl - 1) * (zl + 1))
        - (sl + 1) * np.log(zl)
    )
    return np.exp(log_mag) * series


def _central(f: Callable[[float], complex], z: float, h: float) -> tuple[complex, complex, complex]:
    f0 = f(z)

    def diffs(step):
        fp, fm = f(z + step), f(z - step)
        return (fp - fm) / (2 * step), (fp - 2 * f0 + fm) / (step * step)

    d1h, d2h = diffs(h)
    d1w, d2w = diffs(2 * h)
    return f0, (4 * d1h - d1w) / 3, (4 * d2h - d2w) / 3


def assoc_legendre_ode_residual(
    params: LegendreParams, z: float, which: str, h: float = FD_STEP
) -> float:
    """Relative residual of the associated Legendre equation at ``z``.

    Derivatives come from central differences with step ``h`` and one
    Richardson step; returns ``|residual| / max(|u|, 1)``.
    """
    if not 1.05 <= z <= 2.9:
        raise DomainError(f"residual check requires 1.05 <= z <= 2.9, got {z}")
    fn = {"P": legendre_p_half, "Q": legendre_q_half}[which.upper()]
    u, d1, d2 = _central(lambda t: fn(params, t), z, h)
    nu = params.nu
    w = z * z - 1.0
    res = w * d2 + 2 * z * d1 - (nu * (nu + 1) + params.mu**2 / w) * u
    return abs(res) / max(abs(u), 1.0)


def _strip(a: float, x: float) -> float:
    _check_finite(a, x)
    if not a > 0:
        raise DomainError("a must be positive")
    root = 2.0 * math.sqrt(a)
    if not root < x < 3.0 * root:
        raise DomainError(f"x={x} outside ({root}, {3 * root})")
    return x / root


def homogeneous_eval(n: int, a: float, x: float, A: complex, B: complex) -> complex:
    """``(x^2-4a)^(-1/4) [A P(z) + B Q(z)]`` with ``z = x / (2 sqrt(a))``."""
    _strip(a, x)
    z = np.longdouble(x) / (2 * np.sqrt(np.longdouble(a)))
    A, B = complex(A), complex(B)
    _check_finite(A, B)
    s = LegendreParams(n).s
    ld = np.longdouble
    re, im = ld(0), ld(0)
    if A:
        # A * m e^{i pi/4} = m cos(pi/4) ((Ar - Ai) + i (Ar + Ai))
        m = _p_half_magnitude(s, z) * _COS_EIGHTH_LD
        re += m * (ld(A.real) - ld(A.imag))
        im += m * (ld(A.real) + ld(A.imag))
    if B:
        # B * i q = -Bi q + i Br q
        q = _q_half_magnitude(s, z)
        re -= q * ld(B.imag)
        im += q * ld(B.real)
    xl = ld(x)
    scale = (xl * xl - 4 * ld(a)) ** ld(-0.25)
    return complex(float(re * scale), float(im * scale))


def homogeneous_ode_residual(
    n: int, a: float, x: float, A: complex, B: complex, h: float = FD_STEP
) -> float:
    """Relative residual of ``(x^2-4a)F'' + 3xF' - n^2 F`` for the homogeneous solution.

    ``h`` is the step in the normalized variable ``z = x / (2 sqrt(a))``.
    """
    f, d1, d2 = _central(lambda t: homogeneous_eval(n, a, t, A, B), x, h * 2.0 * math.sqrt(a))
    res = (x * x - 4.0 * a) * d2 + 3.0 * x * d1 - n * n * f
    return abs(res) / max(abs(f), 1.0)


@dataclass(frozen=True)
class ConstantsFit:
    A: complex
    B: complex
    residual_norm: float
    condition: float


def fit_constants(
    n: int,
    a: float,
    sample_xs: Sequence[float],
    target: Callable[[float], complex] | Sequence[complex] | None = None,
    max_condition: float = 1e12,
) -> ConstantsFit:
    """Least-squares ``A``, ``B`` with ``A P(z) + B Q(z)`` matching ``target`` at the samples.

    The default target is ``(F_n - F_p)(x) * (x^2 - 4a)^(1/4)``, where ``F_p`` is
    the exact particular solution at ``a`` (the double ``a`` is converted exactly).
    """
    xs = [float(x) for x in sample_xs]
    if len(xs) < 4:
        raise DomainError("need at least 4 sample points")
    zs = [_strip(a, x) for x in xs]
    params = LegendreParams(n)
    design = np.array(
        [[legendre_p_half(params, z), legendre_q_half(params, z)] for z in zs], dtype=complex
    )
    if target is None:
        a_exact = Fraction(a)
        remainder = ode.decompose(n, a_exact).remainder
        rhs = [float(remainder.eval(Fraction(x), a_exact)) * (x * x - 4 * a) ** 0.25 for x in xs]
    elif callable(target):
        rhs = [target(x) for x in xs]
    else:
        rhs = list(target)
        if len(rhs) != len(xs):
            raise DomainError("target length must match sample_xs")
    rhs = np.array(rhs, dtype=complex)
    cond = float(np.linalg.cond(design))
    if not cond <= max_condition:
        raise IllConditioned(f"design matrix condition number {cond:.3g}")
    coef, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    resid = float(np.linalg.norm(design @ coef - rhs))
    return ConstantsFit(complex(coef[0]), complex(coef[1]), resid, cond)


def third_kind_float(n: int, a: float, x: float) -> float:
    return dickson.kth_kind(n, 2).eval_float(x, a)
