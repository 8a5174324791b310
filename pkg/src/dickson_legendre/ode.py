"""Second-order ODE forms with polynomial coefficients, checked exactly.

An :class:`OdeForm` represents ``p*y'' + q*y' + r*y = s``.  Residuals are
computed in Q[a][x], so a zero residual proves the identity for every ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import dickson
from .errors import EmptyBasis, UnsupportedIndex, ZeroParameter
from .exactalg import ParamPoly, Scalar, UniPolyA, as_rational, rational_nullspace

STOLL_NAMES = ("A4", "A2", "A0", "B3", "B1", "C2", "C0")


@dataclass(frozen=True)
class OdeForm:
    p: ParamPoly
    q: ParamPoly
    r: ParamPoly
    s: ParamPoly = ParamPoly.zero()

    def __post_init__(self):
        if self.p.is_zero():
            raise ValueError("leading coefficient p must not vanish identically")

    @property
    def homogeneous(self) -> "OdeForm":
        return OdeForm(self.p, self.q, self.r, ParamPoly.zero())

    def at_a(self, a: Scalar) -> "OdeForm":
        return OdeForm(self.p.at_a(a), self.q.at_a(a), self.r.at_a(a), self.s.at_a(a))


def ode_residual(y: ParamPoly, form: OdeForm) -> ParamPoly:
    """``p*y'' + q*y' + r*y - s``; zero certifies ``y`` solves the form."""
    d1 = y.derivative()
    d2 = d1.derivative()
    return form.p * d2 + form.q * d1 + form.r * y - form.s


def _x2_minus_4a() -> ParamPoly:
    return ParamPoly.from_terms({(2, 0): 1, (0, 1): -4})


def known_form(kind: str, n: int) -> OdeForm:
    """ODE satisfied by the first kind, second kind, or (non-homogeneous) third kind."""
    if n < 1:
        raise UnsupportedIndex("known ODE forms are stated for n >= 1")
    p = _x2_minus_4a()
    if kind == "first":
        return OdeForm(p, ParamPoly.x(), ParamPoly.const(-n * n))
    if kind == "second":
        return OdeForm(p, ParamPoly.x() * 3, ParamPoly.const(-n * (n + 2)))
    if kind == "third-nonhomogeneous":
        return OdeForm(
            p, ParamPoly.x() * 3, ParamPoly.const(-n * n), dickson.first_kind(n) * (2 * n)
        )
    raise ValueError(f"unknown ODE kind {kind!r}")


def verify_lemma_third(n: int) -> bool:
    """Exact check that ``F_n`` solves ``(x^2-4a)F'' + 3xF' - n^2 F = 2n D_n``."""
    return ode_residual(dickson.kth_kind(n, 2), known_form("third-nonhomogeneous", n)).is_zero()


def verify_classical(kind: str, n: int) -> bool:
    y = dickson.first_kind(n) if kind == "first" else dickson.second_kind(n)
    return ode_residual(y, known_form(kind, n)).is_zero()


@dataclass(frozen=True)
class StollBasis:
    n: int
    k: int
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.basis:
            raise EmptyBasis(f"no Stoll-form ODE for n={self.n}, k={self.k}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def as_dicts(self) -> list[dict[str, Fraction]]:
        return [dict(zip(STOLL_NAMES, v)) for v in self.basis]


def _stoll_columns(f: ParamPoly) -> list[ParamPoly]:
    # polynomial multiplying each of A4, A2, A0, B3, B1, C2, C0
    d1 = f.derivative()
    d2 = d1.derivative()
    a = UniPolyA((0, 1))
    a2 = UniPolyA((0, 0, 1))
    return [
        d2.shift_x(4),
        d2.shift_x(2).scale(a),
        d2.scale(a2),
        d1.shift_x(3),
        d1.shift_x(1).scale(a),
        -f.shift_x(2),
        -f.scale(a),
    ]


def stoll_residual(vector, f: ParamPoly) -> ParamPoly:
    """Expand the Stoll-form left-hand side for one coefficient vector, directly."""
    A4, A2, A0, B3, B1, C2, C0 = (as_rational(c) for c in vector)
    x = ParamPoly.x()
    a = ParamPoly.a()
    x2, x3, x4 = x * x, x * x * x, x * x * x * x
    lead = x4 * A4 + a * x2 * A2 + a * a * A0
    mid = x3 * B3 + a * x * B1
    tail = x2 * C2 + a * C0
    d1 = f.derivative()
    return lead * d1.derivative() + mid * d1 - tail * f


def _primitive(v: list[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*(c.denominator for c in v))
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    first = next(c for c in ints if c)
    if first < 0:
        g = -g
    return tuple(Fraction(c // g) for c in ints)


def fit_stoll(n: int, k: int) -> StollBasis:
    """Null-space basis of Stoll-form coefficient vectors annihilating ``D_{n,k}``.

    Every ``(x-degree, a-degree)`` coefficient of the expanded form gives one
    linear equation in the seven unknowns.  Basis vectors are scaled to
    primitive integer vectors.
    """
    if n < 2:
        raise UnsupportedIndex("fit_stoll requires n >= 2")
    cols = _stoll_columns(dickson.kth_kind(n, k))
    keys = sorted(set().union(*(c.terms().keys() for c in cols)))
    rows = [[c.coefficient(xd, ad) for c in cols] for xd, ad in keys]
    basis = rational_nullspace(rows, len(cols))
    return StollBasis(n, k, tuple(_primitive(v) for v in basis))


@dataclass(frozen=True)
class ParticularCoeffs:
    n: int
    a: Fraction
    b: tuple[Fraction, ...]

    def poly(self) -> ParamPoly:
        """``sum b_k x^k`` as a ParamPoly constant in ``a``."""
        return ParamPoly(self.b)


def _rhs_coefficients(n: int, a: Fraction) -> list[Fraction]:
    rhs = (dickson.first_kind(n) * (2 * n)).at_a(a)
    return [rhs[k].eval(0) for k in range(n + 1)]


def closed_rhs_coefficient(n: int, k: int, a: Scalar) -> Fraction:
    """Right-hand side of the x^k matching equation by parity case.

    Zero when ``n - k`` is odd; otherwise ``2n`` times the coefficient of
    ``x^(n-2i)`` in ``D_n``, with ``i = (n-k)/2``.
    """
    if (n - k) % 2:
        return Fraction(0)
    i = (n - k) // 2
    return 2 * n * dickson.first_kind(n).coefficient(n - 2 * i, i) * as_rational(a) ** i


def particular_solution(n: int, a: Scalar) -> ParticularCoeffs:
    """Polynomial particular solution of the third-kind ODE at fixed ``a``.

    Solved downward from ``b_n = 1``, ``b_{n-1} = 0``; the x^k equation reads
    ``(k(k+2) - n^2) b_k - 4a(k+2)(k+1) b_{k+2} = RHS_k``.
    """
    a = as_rational(a)
    if a == 0:
        raise ZeroParameter("a must be nonzero")
    if n < 1:
        raise UnsupportedIndex("particular solution requires n >= 1")
    rhs = _rhs_coefficients(n, a)
    b = [Fraction(0)] * (n + 3)
    # top two equations: 2n b_n = 2n, -b_{n-1} = 0
    b[n] = rhs[n] / (2 * n)
    for k in range(n - 1, -1, -1):
        b[k] = (rhs[k] + 4 * a * (k + 2) * (k + 1) * b[k + 2]) / (k * (k + 2) - n * n)
    return ParticularCoeffs(n, a, tuple(b[: n + 1]))


def upward_recurrence(n: int, a: Scalar, b0: Scalar, b1: Scalar) -> list[Fraction]:
    """Propagate ``b_{k+2}`` from ``b_k`` upward using the parity-case formulas."""
    a = as_rational(a)
    b = [as_rational(b0), as_rational(b1)]
    for k in range(n - 1):
        num = (k * (k + 2) - n * n) * b[k] - closed_rhs_coefficient(n, k, a)
        b.append(num / (4 * a * (k + 2) * (k + 1)))
    return b[: n + 1]


@dataclass(frozen=True)
class Decomposition:
    particular: ParticularCoeffs
    remainder: ParamPoly
    remainder_is_homogeneous_solution: bool


def homogeneous_form_at(n: int, a: Scalar) -> OdeForm:
    return known_form("third-nonhomogeneous", n).homogeneous.at_a(a)


def decompose(n: int, a: Scalar) -> Decomposition:
    """Split ``F_n(., a)`` into the particular solution and a remainder."""
    a = as_rational(a)
    if a == 0:
        raise ZeroParameter("a must be nonzero")
    fp = particular_solution(n, a)
    remainder = dickson.kth_kind(n, 2).at_a(a) - fp.poly()
    ok = ode_residual(remainder, homogeneous_form_at(n, a)).is_zero()
    return Decomposition(fp, remainder, ok)
