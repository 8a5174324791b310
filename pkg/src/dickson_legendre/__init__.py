"""Dickson polynomials of the third kind: exact ODE identities and Legendre-function solutions."""
from .dickson import (
    DicksonType,
    FamilySpec,
    FirstKind,
    KthKind,
    PrimeFieldElem,
    SecondKind,
    by_recurrence,
    dickson_type,
    ff_eval,
    ff_is_permutation,
    first_kind,
    functional_residual,
    kth_kind,
    second_kind,
    third_kind,
)
from .exactalg import BigRational, ParamPoly, UniPolyA
from .ode import (
    OdeForm,
    decompose,
    fit_stoll,
    known_form,
    ode_residual,
    particular_solution,
    verify_lemma_third,
)
from .specfn import (
    LegendreParams,
    assoc_legendre_ode_residual,
    fit_constants,
    gamma_fn,
    homogeneous_eval,
    hyp2f1,
    legendre_p_half,
    legendre_q_half,
    pochhammer,
)

__version__ = "0.1.0"
