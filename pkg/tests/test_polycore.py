import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernlab.polycore import (
    MAX_DEGREE,
    ZERO_CONST,
    DegreeError,
    InconsistentRootsError,
    Poly,
    PolyJSONError,
    RootMultiset,
    ZeroPolynomialError,
    blaschke_flip,
    conj_reciprocal,
    derivative,
    eval_at,
    from_roots,
    is_self_inversive,
    is_zero_const,
    poly_from_json,
    poly_to_json,
    rotate,
    scale,
)

finite_c = st.complex_numbers(
    allow_nan=False, allow_infinity=False, min_magnitude=0.0, max_magnitude=10.0
)


def coeff_lists(min_degree=0, max_degree=10):
    return (
        st.lists(finite_c, min_size=min_degree + 1, max_size=max_degree + 1)
        .filter(lambda cs: abs(cs[-1]) > 1e-6)
    )


# --- construction ------------------------------------------------------------

def test_constructor_rejects_empty():
    with pytest.raises(ZeroPolynomialError):
        Poly([])


def test_constructor_rejects_all_zero():
    with pytest.raises(ZeroPolynomialError):
        Poly([0, 0, 0])


def test_constructor_rejects_zero_leading():
    with pytest.raises(DegreeError):
        Poly([1, 2, 0])


def test_constructor_rejects_degree_above_cap():
    with pytest.raises(DegreeError):
        Poly([0] * (MAX_DEGREE + 1) + [1])


def test_degree_cap_boundary_is_allowed():
    P = Poly([0] * MAX_DEGREE + [1])
    assert P.n == MAX_DEGREE


def test_nominal_degree_and_n_agree():
    P = Poly([3, 0, 1j])
    assert P.n == 2
    assert P.nominal_degree == 2


def test_coeffs_are_complex_tuple():
    P = Poly([1, 2])
    assert isinstance(P.coeffs, tuple)
    assert all(isinstance(c, complex) for c in P.coeffs)


def test_zero_const_is_singular_escape():
    assert is_zero_const(ZERO_CONST)
    assert ZERO_CONST.n == 0
    assert not is_zero_const(Poly([1]))


def test_poly_is_hashable_and_frozen():
    P = Poly([1, 2])
    assert hash(P) == hash(Poly([1, 2]))
    with pytest.raises(Exception):
        P.coeffs = ()


# --- evaluation and calculus -------------------------------------------------

def test_eval_known_values():
    P = Poly([1, 0, 0, 0, 0, 2])  # 2z^5 + 1
    assert eval_at(P, 0) == 1
    assert eval_at(P, 1) == 3
    assert abs(eval_at(P, 1j) - (1 + 2j)) < 1e-15


def test_call_matches_eval_at():
    P = Poly([1, -2, 3j])
    for z in (0.3 + 0.4j, -1.0, 2j):
        assert P(z) == eval_at(P, z)


@given(coeff_lists(), finite_c)
@settings(max_examples=60)
def test_eval_matches_direct_sum(cs, z):
    P = Poly(cs)
    direct = sum(c * z**j for j, c in enumerate(cs))
    scale_ = max(1.0, *(abs(c) for c in cs)) * max(1.0, abs(z)) ** P.n
    assert abs(eval_at(P, z) - direct) <= 1e-9 * scale_


def test_derivative_drops_degree():
    P = Poly([5, 4, 3, 2])
    dP = derivative(P)
    assert dP.coeffs == (4, 6, 6)


def test_derivative_of_constant_is_zero_const():
    assert derivative(Poly([7])) is ZERO_CONST


# --- conjugate reciprocal ----------------------------------------------------

def test_conj_reciprocal_reverses_and_conjugates():
    P = Poly([1 + 2j, 3, 4j])
    Q = conj_reciprocal(P)
    assert Q.coeffs == (-4j, 3, 1 - 2j)


def test_conj_reciprocal_trims_when_a0_vanishes():
    P = Poly([0, 1, 2])  # 2z^2 + z
    Q = conj_reciprocal(P)
    assert Q.n == 1
    assert Q.coeffs == (2, 1)


@given(coeff_lists(max_degree=8))
@settings(max_examples=60)
def test_conj_reciprocal_preserves_modulus_on_circle(cs):
    P = Poly(cs)
    Q = conj_reciprocal(P)
    for k in range(7):
        z = cmath.exp(2j * math.pi * k / 7)
        assert math.isclose(
            abs(eval_at(P, z)), abs(eval_at(Q, z)), rel_tol=1e-9, abs_tol=1e-9
        )


def test_conj_reciprocal_is_involutive_when_a0_nonzero():
    P = Poly([2 - 1j, 0, 3, 1j])
    assert conj_reciprocal(conj_reciprocal(P)).coeffs == P.coeffs


# --- self-inversive detection ------------------------------------------------

def test_self_inversive_positive_case():
    # a_{n-j} = u * conj(a_j) with u = i
    u = 1j
    half = [1 + 2j, 0.5 - 1j]
    cs = half + [u * c.conjugate() for c in reversed(half)]
    ok, witness = is_self_inversive(Poly(cs))
    assert ok
    assert abs(witness - u) < 1e-12


def test_self_inversive_its_own_conj_reciprocal():
    P = Poly([1 - 1j, 0, 0, 0, 0, 1 + 1j])
    ok, u = is_self_inversive(P)
    assert ok
    Q = conj_reciprocal(P)
    # P == u * Q coefficientwise
    assert all(abs(a - u * b) < 1e-12 for a, b in zip(P.coeffs, Q.coeffs))


def test_monomial_is_not_self_inversive():
    ok, witness = is_self_inversive(Poly([0, 0, 0, 1]))
    assert not ok
    assert witness is None


def test_self_inversive_tolerance():
    P = Poly([1, 0.5, 1])  # palindromic, u = 1
    ok, _ = is_self_inversive(P)
    assert ok
    bumped = Poly([1 + 1e-6, 0.5, 1])
    assert not is_self_inversive(bumped)[0]
    assert is_self_inversive(bumped, tol=1e-4)[0]


@given(st.lists(finite_c, min_size=1, max_size=5).filter(lambda h: abs(h[0]) > 1e-3),
       st.floats(0, 2 * math.pi))
@settings(max_examples=60)
def test_self_inversive_construction_detected(half, phi):
    u = cmath.exp(1j * phi)
    cs = list(half) + [u * c.conjugate() for c in reversed(half)]
    if abs(cs[-1]) <= 1e-3:
        return
    ok, witness = is_self_inversive(Poly(cs))
    assert ok
    n = len(cs) - 1
    for j in range(n + 1):
        assert abs(cs[j] - witness * cs[n - j].conjugate()) < 1e-8 * max(
            abs(c) for c in cs
        )


# --- roots <-> coefficients --------------------------------------------------

def test_from_roots_expands_known_product():
    # (z - 1)(z - 2) = z^2 - 3z + 2
    P = from_roots(1, [1, 2])
    assert P.coeffs == (2, -3, 1)


def test_from_roots_rejects_zero_lead():
    with pytest.raises(DegreeError):
        from_roots(0, [1])


def test_root_multiset_round_trip():
    rm = RootMultiset(2.0, [0.5j, -0.5j])
    P = rm.to_poly()
    assert abs(eval_at(P, 0.5j)) < 1e-14
    assert abs(P.coeffs[-1] - 2.0) < 1e-15


@given(st.lists(st.complex_numbers(allow_nan=False, allow_infinity=False,
                                   max_magnitude=2.0), min_size=1, max_size=6))
@settings(max_examples=60)
def test_from_roots_produces_actual_roots(roots):
    P = from_roots(1.5, roots)
    bound = max(1.0, *(abs(r) for r in roots))
    for r in roots:
        assert abs(eval_at(P, r)) < 1e-8 * bound ** P.n


# --- Blaschke flip -----------------------------------------------------------

def test_blaschke_flip_known_quadratic():
    P = Poly([2, -3, 1])  # (z - 1)(z - 2)
    T = blaschke_flip(P, [2.0])
    assert T.coeffs == (-1, 3, -2)
    # root 2 replaced by 1/2
    assert abs(eval_at(T, 0.5)) < 1e-12
    assert abs(eval_at(T, 1.0)) < 1e-12


def test_blaschke_flip_preserves_circle_modulus():
    P = Poly([2, -3, 1])
    T = blaschke_flip(P, [2.0])
    for k in range(11):
        z = cmath.exp(2j * math.pi * k / 11)
        assert math.isclose(abs(eval_at(P, z)), abs(eval_at(T, z)), rel_tol=1e-12)


def test_blaschke_flip_empty_is_identity():
    P = Poly([1, 1])
    assert blaschke_flip(P, []) is P


def test_blaschke_flip_rejects_inside_root():
    with pytest.raises(InconsistentRootsError):
        blaschke_flip(Poly([2, -3, 1]), [0.5])


def test_blaschke_flip_rejects_non_root():
    with pytest.raises(InconsistentRootsError):
        blaschke_flip(Poly([2, -3, 1]), [5.0])


# --- rotate / scale ----------------------------------------------------------

def test_rotate_evaluates_at_rotated_point():
    P = Poly([1, 2, 3])
    phi = 0.7
    z = 0.3 - 0.2j
    assert abs(eval_at(rotate(P, phi), z) - eval_at(P, cmath.exp(1j * phi) * z)) < 1e-12


def test_scale_multiplies():
    P = scale(Poly([1, 2]), 3j)
    assert P.coeffs == (3j, 6j)
    with pytest.raises(ZeroPolynomialError):
        scale(Poly([1]), 0)


# --- JSON --------------------------------------------------------------------

def test_json_round_trip_exact():
    P = Poly([1 + 2j, -0.25, 3e-300, 4])
    assert poly_from_json(poly_to_json(P)).coeffs == P.coeffs


def test_json_shape():
    obj = poly_to_json(Poly([1, 2j]))
    assert obj == {"n": 1, "coeffs": [[1.0, 0.0], [0.0, 2.0]]}


@pytest.mark.parametrize(
    "obj,fragment",
    [
        ([], "object"),
        ({}, "n"),
        ({"n": 1}, "coeffs"),
        ({"n": True, "coeffs": [[1, 0], [1, 0]]}, "n"),
        ({"n": 1, "coeffs": [[1, 0]]}, "length"),
        ({"n": 1, "coeffs": [[1, 0], [0, 0]]}, "leading"),
        ({"n": 1, "coeffs": [[1, 0], "x"]}, "coeffs[1]"),
        ({"n": 1, "coeffs": [[1, 0], [1, 0, 0]]}, "coeffs[1]"),
        ({"n": 1, "coeffs": [[float("inf"), 0], [1, 0]]}, "coeffs[0]"),
    ],
)
def test_json_error_paths_name_the_field(obj, fragment):
    with pytest.raises(PolyJSONError) as exc:
        poly_from_json(obj)
    assert fragment in str(exc.value)


@given(coeff_lists(max_degree=12))
@settings(max_examples=60)
def test_json_round_trip_property(cs):
    P = Poly(cs)
    assert poly_from_json(poly_to_json(P)).coeffs == P.coeffs
