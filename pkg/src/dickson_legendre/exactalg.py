"""Exact polynomial algebra in x over Q[a].

Scalars are :class:`fractions.Fraction` (aliased ``BigRational``).  A
:class:`UniPolyA` is a dense polynomial in the parameter ``a``; a
:class:`ParamPoly` is a dense polynomial in ``x`` whose coefficients are
``UniPolyA``.  Both are immutable and kept in canonical (trimmed) form.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

BigRational = Fraction

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary value of the double
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_to_str(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_from_str(text: str) -> Fraction:
    return Fraction(text.strip())


def _trim(items: list, zero) -> tuple:
    end = len(items)
    while end and items[end - 1] == zero:
        end -= 1
    return tuple(items[:end])


class UniPolyA:
    """Dense polynomial in ``a`` with rational coefficients, ascending degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim([as_rational(c) for c in coeffs], _ZERO))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("UniPolyA is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPolyA":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "UniPolyA":
        return cls((c,))

    @classmethod
    def monomial(cls, c: Scalar, degree: int) -> "UniPolyA":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree in ``a``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else _ZERO

    def __eq__(self, other):
        if isinstance(other, UniPolyA):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == UniPolyA.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("UniPolyA", self.coeffs)))
        return self._hash

    def __repr__(self):
        return f"UniPolyA({[rational_to_str(c) for c in self.coeffs]})"

    def __add__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        p, q = self.coeffs, other.coeffs
        if len(p) < len(q):
            p, q = q, p
        out = list(p)
        for j, c in enumerate(q):
            out[j] += c
        return UniPolyA._raw(_trim(out, _ZERO))

    __radd__ = __add__

    def __neg__(self):
        return UniPolyA._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        p, q = self.coeffs, other.coeffs
        if not p or not q:
            return UniPolyA._raw(())
        out = [_ZERO] * (len(p) + len(q) - 1)
        for i, ci in enumerate(p):
            if ci:
                for j, cj in enumerate(q):
                    out[i + j] += ci * cj
        return UniPolyA._raw(_trim(out, _ZERO))

    __rmul__ = __mul__

    def eval(self, a: Scalar) -> Fraction:
        a = as_rational(a)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def to_json(self) -> list[str]:
        return [rational_to_str(c) for c in self.coeffs]


def _as_unipoly(value):
    if isinstance(value, UniPolyA):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return UniPolyA.const(value)
    return None


_UZERO = UniPolyA()


class ParamPoly:
    """Dense polynomial in ``x`` with coefficients in Q[a].

    ``coeffs[k]`` is the :class:`UniPolyA` multiplying ``x**k``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        items = []
        for c in coeffs:
            if isinstance(c, UniPolyA):
                items.append(c)
            elif isinstance(c, (list, tuple)):
                items.append(UniPolyA(c))
            else:
                items.append(UniPolyA.const(c))
        object.__setattr__(self, "coeffs", _trim(items, _UZERO))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple) -> "ParamPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls._raw(())

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "ParamPoly":
        return cls((0, 1))

    @classmethod
    def a(cls) -> "ParamPoly":
        return cls((UniPolyA((0, 1)),))

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], Scalar]) -> "ParamPoly":
        """Build from ``{(x_degree, a_degree): coefficient}``."""
        if not terms:
            return cls.zero()
        xdeg = max(k for k, _ in terms)
        rows: list[list[Fraction]] = [[] for _ in range(xdeg + 1)]
        for (k, j), c in terms.items():
            row = rows[k]
            if len(row) <= j:
                row.extend([_ZERO] * (j + 1 - len(row)))
            row[j] += as_rational(c)
        return cls(UniPolyA(r) for r in rows)

    @classmethod
    def from_json(cls, nested: Sequence[Sequence[str]]) -> "ParamPoly":
        return cls(UniPolyA(rational_from_str(c) for c in row) for row in nested)

    @property
    def degree(self) -> int:
        """Degree in ``x``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> UniPolyA:
        return self.coeffs[-1] if self.coeffs else _UZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> UniPolyA:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _UZERO

    def coefficient(self, x_degree: int, a_degree: int) -> Fraction:
        return self[x_degree][a_degree]

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """Nonzero coefficients keyed by ``(x_degree, a_degree)``."""
        return {
            (k, j): c
            for k, u in enumerate(self.coeffs)
            for j, c in enumerate(u.coeffs)
            if c
        }

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, UniPolyA)) and not isinstance(other, bool):
            return self.coeffs == ParamPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("ParamPoly", self.coeffs)))
        return self._hash

    def __repr__(self):
        return f"ParamPoly({self.to_json()})"

    def __str__(self):
        return format_param_poly(self)

    def __add__(self, other):
        other = _as_parampoly(other)
        if other is None:
            return NotImplemented
        p, q = self.coeffs, other.coeffs
        if len(p) < len(q):
            p, q = q, p
        out = list(p)
        for k, c in enumerate(q):
            out[k] = out[k] + c
        return ParamPoly._raw(_trim(out, _UZERO))

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_parampoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (UniPolyA, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        p, q = self.coeffs, other.coeffs
        if not p or not q:
            return ParamPoly.zero()
        out = [_UZERO] * (len(p) + len(q) - 1)
        for i, ci in enumerate(p):
            if ci:
                for j, cj in enumerate(q):
                    if cj:
                        out[i + j] = out[i + j] + ci * cj
        return ParamPoly._raw(_trim(out, _UZERO))

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, factor) -> "ParamPoly":
        """Multiply every x-coefficient by a UniPolyA or rational scalar."""
        factor = _as_unipoly(factor)
        if factor is None:
            raise TypeError("scale factor must be UniPolyA or rational")
        return ParamPoly._raw(_trim([c * factor for c in self.coeffs], _UZERO))

    def shift_x(self, power: int) -> "ParamPoly":
        """Multiply by ``x**power``."""
        if not self.coeffs:
            return self
        return ParamPoly._raw((_UZERO,) * power + self.coeffs)

    def derivative(self, order: int = 1) -> "ParamPoly":
        """Exact d/dx, applied ``order`` times."""
        out = self
        for _ in range(order):
            out = ParamPoly._raw(tuple(c * k for k, c in enumerate(out.coeffs) if k))
        return out

    def eval(self, x: Scalar, a: Scalar) -> Fraction:
        """Nested Horner evaluation: inner over ``a``, outer over ``x``."""
        x = as_rational(x)
        a = as_rational(a)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c.eval(a)
        return acc

    def at_a(self, a: Scalar) -> "ParamPoly":
        """Substitute a rational value for ``a``; result is constant in ``a``."""
        return ParamPoly(c.eval(a) for c in self.coeffs)

    def eval_float(self, x: float, a: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            inner = 0.0
            for v in reversed(c.coeffs):
                inner = inner * a + float(v)
            acc = acc * x + inner
        return acc

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]


def _as_parampoly(value):
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, (UniPolyA, int, Fraction)) and not isinstance(value, bool):
        return ParamPoly.const(value)
    return None


def param_poly_arith(p: ParamPoly, q, op: str) -> ParamPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` by tag."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def param_poly_derivative(p: ParamPoly) -> ParamPoly:
    return p.derivative()


def param_poly_eval(p: ParamPoly, x: Scalar, a: Scalar) -> Fraction:
    return p.eval(x, a)


def _format_unipoly(u: UniPolyA) -> str:
    parts = []
    for j, c in enumerate(u.coeffs):
        if not c:
            continue
        mono = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
        if mono and c == 1:
            parts.append(mono)
        elif mono and c == -1:
            parts.append("-" + mono)
        else:
            parts.append(rational_to_str(c) + (("*" + mono) if mono else ""))
    return " + ".join(parts).replace("+ -", "- ")


def format_param_poly(p: ParamPoly) -> str:
    """Human-readable form, highest x-degree first, e.g. ``x^3 - 3*a*x``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        u = p[k]
        if not u:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = _format_unipoly(u)
        if len(u.coeffs) > 1 and sum(1 for c in u.coeffs if c) > 1:
            coef = f"({coef})"
        if not mono:
            parts.append(coef)
        elif coef == "1":
            parts.append(mono)
        elif coef == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{coef}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def rational_nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}`` over Q by Gauss-Jordan elimination.

    Each basis vector has a 1 in one free column and zeros in the other
    free columns.
    """
    m = [[as_rational(c) for c in row] for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [c * inv for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [ci - f * cr for ci, cr in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * ncols
        v[fc] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
