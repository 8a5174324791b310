"""Dickson polynomial families, their functional equations, and prime-field checks.

Every family is returned as a :class:`ParamPoly` symbolic in ``a``.  The
coefficient of ``x**(n-2i)`` in the (k+1)-th kind is
``(n - k*i)/(n - i) * C(n-i, i) * (-a)**i``; the first kind is ``k = 0``,
the second kind ``k = 1`` and the third kind ``F_n`` is ``k = 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import BoundExceeded, DegenerateInput, DomainError, ModulusMismatch
from .exactalg import ParamPoly, Scalar, UniPolyA, as_rational

DEFAULT_PERMUTATION_BOUND = 1 << 16


@dataclass(frozen=True)
class FirstKind:
    pass


@dataclass(frozen=True)
class SecondKind:
    pass


@dataclass(frozen=True)
class KthKind:
    """The (k+1)-th kind of Wang and Yucas."""

    k: int


@dataclass(frozen=True)
class DicksonType:
    """Stoll's two-parameter family with rational ``b`` (B = 2 - k)."""

    b: Fraction


Kind = Union[FirstKind, SecondKind, KthKind, DicksonType]


@dataclass(frozen=True)
class FamilySpec:
    kind: Kind
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("family index n must be non-negative")
        kind = self.kind
        if isinstance(kind, KthKind):
            if kind.k < 0:
                raise DomainError("k must be non-negative")
            if kind.k == 0:
                object.__setattr__(self, "kind", FirstKind())
            elif kind.k == 1:
                object.__setattr__(self, "kind", SecondKind())
        elif isinstance(kind, DicksonType):
            object.__setattr__(self, "kind", DicksonType(as_rational(kind.b)))

    @property
    def b_parameter(self) -> Fraction:
        """Stoll parameter B of this family (B = 2 - k)."""
        kind = self.kind
        if isinstance(kind, FirstKind):
            return Fraction(2)
        if isinstance(kind, SecondKind):
            return Fraction(1)
        if isinstance(kind, KthKind):
            return Fraction(2 - kind.k)
        return kind.b


def _build(n: int, weight) -> ParamPoly:
    """Sum of ``weight(i) * C(n-i, i) * (-a)**i * x**(n-2i)``."""
    coeffs = [UniPolyA()] * (n + 1)
    for i in range(n // 2 + 1):
        c = weight(i) * math.comb(n - i, i)
        if c:
            coeffs[n - 2 * i] = UniPolyA.monomial(c * (-1) ** i, i)
    return ParamPoly(coeffs)


def _integral(value: Fraction, n: int, i: int) -> Fraction:
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral coefficient at n={n}, i={i}: {value}")
    return value


@lru_cache(maxsize=512)
def first_kind(n: int) -> ParamPoly:
    """``D_n(x, a)`` from Waring's formula; ``D_0 = 2``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return ParamPoly.const(2)
    return _build(n, lambda i: Fraction(n, n - i))


@lru_cache(maxsize=512)
def second_kind(n: int) -> ParamPoly:
    """``E_n(x, a)``; ``E_0 = 1``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return _build(n, lambda i: 1)


@lru_cache(maxsize=2048)
def kth_kind(n: int, k: int) -> ParamPoly:
    """``D_{n,k}(x, a)``.  ``n = 0`` gives the constant ``2 - k`` (so ``F_0 = 0``)."""
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    if n == 0:
        return ParamPoly.const(2 - k)
    poly = _build(n, lambda i: Fraction(n - k * i, n - i))
    for (xd, ad), c in poly.terms().items():
        _integral(c, n, ad)
    return poly


def third_kind(n: int) -> ParamPoly:
    return kth_kind(n, 2)


def dickson_type(n: int, b: Scalar) -> ParamPoly:
    """Stoll's ``f_n`` with parameter ``B``; ``f_0 = B``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    b = as_rational(b)
    if n == 0:
        return ParamPoly.const(b)
    return _build(n, lambda i: (n + (b - 2) * i) / Fraction(n - i))


def closed_form(spec: FamilySpec) -> ParamPoly:
    kind = spec.kind
    if isinstance(kind, FirstKind):
        return first_kind(spec.n)
    if isinstance(kind, SecondKind):
        return second_kind(spec.n)
    if isinstance(kind, KthKind):
        return kth_kind(spec.n, kind.k)
    return dickson_type(spec.n, kind.b)


def by_recurrence(spec: FamilySpec) -> ParamPoly:
    """Build via ``f_n = x f_{n-1} - a f_{n-2}`` with ``(f_0, f_1) = (B, x)``."""
    f0 = ParamPoly.const(spec.b_parameter)
    if spec.n == 0:
        return f0
    x, a = ParamPoly.x(), UniPolyA((0, 1))
    prev, cur = f0, x
    for _ in range(spec.n - 1):
        prev, cur = cur, x * cur - prev.scale(a)
    return cur


def functional_residual(kind: str, n: int, u: Scalar, a: Scalar, sign: int = 1) -> Fraction:
    """LHS minus RHS of a functional equation at ``x = u + a/u``.

    ``kind`` is one of ``"first"``, ``"third"`` or ``"third-degenerate"``.
    For the degenerate case ``a`` must equal ``u**2``; the point is
    ``x = 2*sign*u`` and the right-hand side ``2 n (sign*u)**n``.
    """
    u = as_rational(u)
    a = as_rational(a)
    if u == 0:
        raise DegenerateInput("u must be nonzero")
    v = a / u
    x = u + v
    if kind == "first":
        return first_kind(n).eval(x, a) - (u**n + v**n)
    if kind == "third":
        if u * u == a:
            raise DegenerateInput("u**2 == a; use the degenerate form")
        return kth_kind(n, 2).eval(x, a) - x * (u**n - v**n) / (u - v)
    if kind == "third-degenerate":
        if a != u * u:
            raise DegenerateInput("degenerate form requires a == u**2")
        if sign not in (1, -1):
            raise DegenerateInput("sign must be +1 or -1")
        root = sign * u
        return kth_kind(n, 2).eval(2 * root, a) - 2 * root**n * n
    raise ValueError(f"unknown functional-equation kind {kind!r}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class PrimeFieldElem:
    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise DomainError(f"modulus {self.modulus} is not prime")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self):
        return self.value


@lru_cache(maxsize=4096)
def _integer_table(n: int, k: int) -> tuple[tuple[int, int, int], ...]:
    # (x_degree, a_degree, integer coefficient)
    return tuple(
        (xd, ad, int(c)) for (xd, ad), c in sorted(kth_kind(n, k).terms().items())
    )


def ff_coefficients(n: int, k: int, a: int, p: int) -> list[int]:
    """x-coefficients of ``D_{n,k}(x, a) mod p``, ascending."""
    out = [0] * (n + 1)
    for xd, ad, c in _integer_table(n, k):
        out[xd] = (out[xd] + c * pow(a, ad, p)) % p
    return out


def _horner_mod(coeffs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def ff_eval(n: int, k: int, a: PrimeFieldElem, x: PrimeFieldElem) -> PrimeFieldElem:
    """``D_{n,k}(x, a)`` over the prime field shared by ``a`` and ``x``."""
    if a.modulus != x.modulus:
        raise ModulusMismatch(f"moduli differ: {a.modulus} vs {x.modulus}")
    p = a.modulus
    return PrimeFieldElem(_horner_mod(ff_coefficients(n, k, a.value, p), x.value, p), p)


def ff_is_permutation(
    n: int, k: int, a: PrimeFieldElem, bound: int = DEFAULT_PERMUTATION_BOUND
) -> bool:
    """True iff ``x -> D_{n,k}(x, a)`` is a bijection of F_p (exhaustive image check)."""
    p = a.modulus
    if p > bound:
        raise BoundExceeded(f"p={p} exceeds permutation bound {bound}")
    coeffs = ff_coefficients(n, k, a.value, p)
    seen = bytearray(p)
    for x in range(p):
        y = _horner_mod(coeffs, x, p)
        if seen[y]:
            return False
        seen[y] = 1
    return True
