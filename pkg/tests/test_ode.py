import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dickson_legendre import dickson as dk
from dickson_legendre import ode
from dickson_legendre.errors import EmptyBasis, UnsupportedIndex, ZeroParameter
from dickson_legendre.exactalg import ParamPoly

X = ParamPoly.x()
A = ParamPoly.a()
X2_4A = X * X - A * 4


def test_residual_of_zero_is_minus_rhs():
    form = ode.known_form("third-nonhomogeneous", 3)
    assert ode.ode_residual(ParamPoly.zero(), form) == -(dk.first_kind(3) * 6)


def test_first_kind_residual_n2():
    form = ode.OdeForm(X2_4A, X, ParamPoly.const(-4))
    assert ode.ode_residual(X * X - A * 2, form).is_zero()


def test_lemma_form_n2_both_sides():
    form = ode.known_form("third-nonhomogeneous", 2)
    y = X * X
    lhs = form.p * y.derivative(2) + form.q * y.derivative() + form.r * y
    assert lhs == X * X * 4 - A * 8 == form.s
    assert ode.ode_residual(y, form).is_zero()


def test_known_forms():
    f = ode.known_form("first", 3)
    assert (f.p, f.q, f.r, f.s) == (X2_4A, X, ParamPoly.const(-9), ParamPoly.zero())
    s = ode.known_form("second", 2)
    assert (s.p, s.q, s.r, s.s) == (X2_4A, X * 3, ParamPoly.const(-8), ParamPoly.zero())
    t = ode.known_form("third-nonhomogeneous", 2)
    assert t.s == X * X * 4 - A * 8
    with pytest.raises(UnsupportedIndex):
        ode.known_form("first", 0)


def test_oderform_rejects_zero_leading():
    with pytest.raises(ValueError):
        ode.OdeForm(ParamPoly.zero(), X, X)


@pytest.mark.parametrize("n", [1, 2, 64])
def test_verify_lemma_examples(n):
    assert ode.verify_lemma_third(n)


def test_lemma_cross_checked_by_rational_evaluation():
    rng = random.Random(7)
    for n in (5, 17, 64):
        f = dk.kth_kind(n, 2)
        d1, d2 = f.derivative(), f.derivative(2)
        for _ in range(5):
            x = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
            a = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
            lhs = (x * x - 4 * a) * d2.eval(x, a) + 3 * x * d1.eval(x, a) - n * n * f.eval(x, a)
            assert lhs == 2 * n * dk.first_kind(n).eval(x, a)


def test_lemma_fails_for_other_kinds():
    # the non-homogeneous third-kind ODE does not hold for k = 3
    form = ode.known_form("third-nonhomogeneous", 6)
    assert not ode.ode_residual(dk.kth_kind(6, 3), form).is_zero()


def test_classical_odes():
    for n in range(1, 65):
        assert ode.verify_classical("first", n)
        assert ode.verify_classical("second", n)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(-4, 4), max_size=3), max_size=7),
    st.lists(st.lists(st.integers(-4, 4), max_size=3), max_size=7),
    st.integers(1, 12),
)
def test_residual_linearity(c1, c2, n):
    y1, y2 = ParamPoly(c1), ParamPoly(c2)
    form = ode.known_form("third-nonhomogeneous", n).homogeneous
    assert ode.ode_residual(y1 + y2, form) == ode.ode_residual(y1, form) + ode.ode_residual(y2, form)


# Stoll form


def test_fit_stoll_n2_k0_contains_hand_family():
    basis = ode.fit_stoll(2, 0)
    assert basis.dimension >= 2
    f = dk.first_kind(2)
    for c in (-3, 0, 1, Fraction(5, 2)):
        hand = (1, c - 4, -4 * c, 1, c, 4, 4 * c)
        assert ode.stoll_residual(hand, f).is_zero()
        m = sympy.Matrix([list(v) for v in basis.basis] + [list(hand)])
        assert m.rank() == basis.dimension


@pytest.mark.parametrize("n, k", [(3, 1), (3, 2), (9, 2), (12, 3)])
def test_fit_stoll_vectors_verified(n, k):
    basis = ode.fit_stoll(n, k)
    assert basis.dimension >= 1
    for v in basis.basis:
        assert any(v)
        assert ode.stoll_residual(v, dk.kth_kind(n, k)).is_zero()


@pytest.mark.parametrize("n, k", [(2, 0), (5, 1), (8, 2), (11, 3)])
def test_fit_stoll_dimension_matches_sympy(n, k):
    # independent system assembly: symbolic expansion with sympy
    x, a = sympy.symbols("x a")
    coeffs = sympy.symbols("A4 A2 A0 B3 B1 C2 C0")
    A4, A2, A0, B3, B1, C2, C0 = coeffs
    f = sum(c * x**xd * a**ad for (xd, ad), c in dk.kth_kind(n, k).terms().items())
    expr = sympy.expand(
        (A4 * x**4 + a * A2 * x**2 + a**2 * A0) * sympy.diff(f, x, 2)
        + (B3 * x**3 + a * B1 * x) * sympy.diff(f, x)
        - (C2 * x**2 + a * C0) * f
    )
    eqs = sympy.Poly(expr, x, a).coeffs()
    mat, _ = sympy.linear_eq_to_matrix(eqs, coeffs)
    assert len(mat.nullspace()) == ode.fit_stoll(n, k).dimension


def test_fit_stoll_rejects_small_n():
    with pytest.raises(UnsupportedIndex):
        ode.fit_stoll(1, 0)


def test_empty_basis_raises():
    with pytest.raises(EmptyBasis):
        ode.StollBasis(3, 0, ())


# particular solution


@pytest.mark.parametrize(
    "n, a, b",
    [(2, 1, (0, 0, 1)), (3, 1, (0, -1, 0, 1)), (1, 5, (0, 1))],
)
def test_particular_examples(n, a, b):
    assert ode.particular_solution(n, a).b == tuple(Fraction(v) for v in b)


def test_particular_zero_parameter():
    with pytest.raises(ZeroParameter):
        ode.particular_solution(3, 0)
    with pytest.raises(ZeroParameter):
        ode.decompose(3, 0)


@pytest.mark.parametrize("a", [1, -1, 2, Fraction(3, 5)])
def test_particular_solves_form(a):
    for n in range(1, 33):
        fp = ode.particular_solution(n, a)
        form = ode.known_form("third-nonhomogeneous", n).at_a(a)
        assert ode.ode_residual(fp.poly(), form).is_zero()
        assert fp.b[n] == 1
        if n >= 2:
            assert fp.b[n - 1] == 0


def test_closed_rhs_formula_agrees_with_expansion():
    for n in range(1, 33):
        for a in (1, Fraction(-2, 3)):
            rhs = (dk.first_kind(n) * (2 * n)).at_a(a)
            for k in range(n + 1):
                assert ode.closed_rhs_coefficient(n, k, a) == rhs[k].eval(0)


def test_upward_recurrence_reproduces_downward_solution():
    for n in range(2, 25):
        for a in (1, -1, Fraction(3, 5)):
            b = ode.particular_solution(n, a).b
            assert tuple(ode.upward_recurrence(n, a, b[0], b[1])) == b


def test_upward_recurrence_parity_cases():
    # cases n odd / k even and n even / k odd are homogeneous two-term steps
    n, a = 7, Fraction(2)
    b = ode.particular_solution(n, a).b
    for k in range(0, n - 1, 2):
        assert b[k + 2] == -Fraction(n * n - k * (k + 2), 4 * a * (k + 2) * (k + 1)) * b[k]


def test_decompose_examples():
    for n, a in ((2, 1), (3, 1)):
        rep = ode.decompose(n, a)
        assert rep.remainder.is_zero()
        assert rep.remainder_is_homogeneous_solution
    assert ode.decompose(5, 2).remainder_is_homogeneous_solution


def test_particular_equals_third_kind():
    for n in range(1, 20):
        assert ode.particular_solution(n, 3).poly() == dk.kth_kind(n, 2).at_a(3)
