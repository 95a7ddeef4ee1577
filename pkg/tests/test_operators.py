import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given
from hypothesis import strategies as st

from janowski_lab.operators import (CoeffSystem, OperatorKind, OperatorPoleError, PsiPoint,
                                    apply_operator, coeff_system, composed_psi_parts,
                                    derived_coeff_system, inv_square_substitution, p_from_q,
                                    psi_parts, psi_value, re_psi_quartic, transform_q)
from janowski_lab.params import Parameters, janowski_image, region_contains
from janowski_lab.sampling import random_parameters

K = OperatorKind
FIVE = (K.LINEAR_DERIV, K.INV_SQUARE, K.LOG_DERIV)
EIGHT = (K.SQUARE_PLUS_DERIV, K.MIXED_QUADRATIC, K.CONVEX_COMBO)
P0 = Parameters(0.3, -0.4, 0.5, -0.2, 0.8, 0.7, 2, 0.5)


def test_lemma_mapping_roundtrip():
    for kind in K:
        assert K.from_lemma(kind.lemma) is kind


def test_apply_examples():
    assert apply_operator(K.LINEAR_DERIV, P0.replace(alpha=1.0), 1, 0) == 1
    assert apply_operator(K.INV_SQUARE, P0, 1.5, 0.5) == pytest.approx(1 + 0.5 / 2.25)
    assert apply_operator(K.MIXED_QUADRATIC, P0.replace(alpha=0.5, lam=1.0), 1, 0) == 1


def test_normalisation_at_constant():
    for kind in K:
        v = apply_operator(kind, P0, 1, 0)
        assert v == (P0.alpha if kind is K.SQUARE_PLUS_DERIV else 1)


@pytest.mark.parametrize("kind", [K.INV_SQUARE, K.LOG_DERIV, K.CONVEX_COMBO])
def test_pole(kind):
    with pytest.raises(OperatorPoleError, match="operator pole"):
        apply_operator(kind, P0, np.array([1.0, 0.0]), np.array([0.0, 1.0]))


def test_linear_coefficients_extremal():
    c = coeff_system(K.LINEAR_DERIV, Parameters(1, -1, 1, -1, 1, 1, 1, 2))
    assert c.form == "five"
    assert c.as_tuple() == (8, 8, 0, 0, 0)


def test_logderiv_a_vanishes_at_a_one():
    assert coeff_system(K.LOG_DERIV, Parameters(1, -1, 0.5, -0.5, 0.7, 1, 1, 1)).a == 0


def test_mixed_reduces_to_square_plus_deriv():
    # alpha p + (1 - alpha) p^2 at alpha = 0 is p^2, the alpha = 1 square operator
    a = coeff_system(K.MIXED_QUADRATIC, P0.replace(alpha=0.0))
    b = coeff_system(K.SQUARE_PLUS_DERIV, P0.replace(alpha=1.0))
    npt.assert_allclose(a.as_tuple(), b.as_tuple(), rtol=0, atol=1e-15)


def test_inv_square_is_linear_after_substitution():
    sub = inv_square_substitution(P0)
    assert (sub.A, sub.B, sub.alpha) == (-P0.B, -P0.A, -1.0)
    assert coeff_system(K.INV_SQUARE, P0) == coeff_system(K.LINEAR_DERIV, sub)


def test_inv_square_operator_matches_linear_on_reciprocal():
    rng = np.random.default_rng(1)
    p = 1 + 0.3 * rng.normal(size=8) + 0.3j * rng.normal(size=8)
    zp = rng.normal(size=8) + 1j * rng.normal(size=8)
    # for P = 1/p: z P' = -z p' / p^2, so 1 + z p'/p^2 = 1 - z P'
    lhs = apply_operator(K.INV_SQUARE, P0, p, zp)
    rhs = apply_operator(K.LINEAR_DERIV, P0.replace(alpha=-1.0), 1 / p, -zp / p**2)
    npt.assert_allclose(lhs, rhs, rtol=1e-13)


def test_unknown_source():
    with pytest.raises(ValueError):
        coeff_system(K.LINEAR_DERIV, P0, source="guess")


def test_five_form_normalisation():
    c = CoeffSystem(3.0, 1.0, -2.0, 0.5, -1.5)
    assert psi_value(c, PsiPoint(0.0, 0.0)) == 1


def test_five_form_direct_arithmetic():
    assert psi_value(CoeffSystem(8, 8, 0, 0, 0), PsiPoint(0.0, -1.0)) == 0


def test_eight_form_sigma_free_when_b_f_zero():
    c = CoeffSystem(1.0, 0.0, 2.0, 0.3, 1.5, 0.0, -1.0, 0.7)
    vals = [psi_value(c, PsiPoint(0.4, s)) for s in (-5.0, -1.0, 3.0)]
    npt.assert_allclose(vals, vals[0], rtol=1e-15)


def test_psi_pole():
    with pytest.raises(OperatorPoleError, match="pole on test set"):
        psi_value(CoeffSystem(1.0, 0.0, 0.0, 0.0, 1.0), PsiPoint(0.0, -1.0))


def test_quartic_origin_values():
    assert re_psi_quartic(CoeffSystem(3.0, 1.0, -2.0, 0.5, -1.5), PsiPoint(0, 0)) == 9
    assert re_psi_quartic(CoeffSystem(3.0, 1.0, -2.0, 0.5, -1.5, 1, 1, 1), 0.0, 0.0) == -4.5


def test_quartic_matches_numerator_times_conjugate():
    rng = np.random.default_rng(5)
    for form in (5, 8):
        c = CoeffSystem(*rng.normal(size=form))
        rho, sigma = rng.normal(size=50) * 3, rng.normal(size=50) * 3
        num, den = psi_parts(c, rho, sigma)
        npt.assert_allclose(re_psi_quartic(c, rho, sigma), np.real(num * np.conj(den)),
                            rtol=1e-10, atol=1e-10)


coeff = st.floats(-10, 10, allow_nan=False)


@given(st.lists(coeff, min_size=8, max_size=8), st.booleans(), st.floats(-20, 20), st.floats(-50, 5))
def test_quartic_sign_matches_re_psi(vals, eight, rho, sigma):
    c = CoeffSystem(*(vals if eight else vals[:5]))
    num, den = psi_parts(c, rho, sigma)
    if abs(den) < 1e-6:
        return
    re = (num / den).real
    if abs(re) > 1e-10:
        assert np.sign(re_psi_quartic(c, rho, sigma)) == np.sign(re)


@given(st.lists(coeff, min_size=8, max_size=8), st.floats(0, 20), st.floats(-50, 5))
def test_conjugate_symmetry(vals, rho, sigma):
    c = CoeffSystem(*vals)
    assert re_psi_quartic(c, rho, sigma) == re_psi_quartic(c, -rho, sigma)


def test_transform_detects_janowski_membership():
    rng = np.random.default_rng(3)
    for _ in range(20):
        P = random_parameters(rng)
        w = 1 + 2 * (rng.normal(size=200) + 1j * rng.normal(size=200))
        m = region_contains(janowski_image(P.A, P.B), w)
        q = transform_q(w, P.A, P.B)
        keep = np.abs(m) > 1e-9
        assert np.array_equal((m > 0)[keep], (q.real > 0)[keep])


def test_p_from_q_inverts_transform():
    p = np.array([0.5 + 0.2j, 1.3 - 0.4j, 2.0])
    npt.assert_allclose(p_from_q(transform_q(p, 0.4, -0.6), 0.4, -0.6), p, rtol=1e-13)


@pytest.mark.parametrize("kind", [K.LINEAR_DERIV, K.INV_SQUARE, K.LOG_DERIV])
def test_five_form_printed_equals_composition(kind):
    rng = np.random.default_rng(11)
    for _ in range(10):
        P = random_parameters(rng)
        npt.assert_allclose(derived_coeff_system(kind, P).as_tuple(),
                            coeff_system(kind, P).as_tuple(), atol=1e-9)


def _d_shift(kind, P):
    """Change in (e, f, g, h) when the denominator's (D - 1) becomes (D + 1)."""
    A, B = P.A, P.B
    if kind is K.CONVEX_COMBO:
        return 2 * (1 - A) * (1 - B), 0.0, -2 * (1 + A) * (1 + B), 4 * (1 - A * B)
    return 2 * (1 - B) ** 2, 0.0, -2 * (1 + B) ** 2, 4 * (1 - B * B)


@pytest.mark.parametrize("kind", EIGHT)
def test_eight_form_printed_differs_by_d_sign(kind):
    # composing the maps gives (D + 1) in the denominator where the printed systems have (D - 1)
    rng = np.random.default_rng(12)
    for _ in range(10):
        P = random_parameters(rng)
        derived = np.array(derived_coeff_system(kind, P).as_tuple())
        printed = np.array(coeff_system(kind, P).as_tuple())
        npt.assert_allclose(derived[:4], printed[:4], atol=1e-9)
        npt.assert_allclose(derived[4:] - printed[4:], _d_shift(kind, P), atol=1e-9)


def _psi_at_one(c):
    # on r = i rho the parts are a + b s - c r^2 + d r, so r = 1, s = 0 gives a - c + d
    e, f, g, h = c.denominator_coeffs()
    return (c.a - c.c + c.d) / (e - g + h)


@pytest.mark.parametrize("kind", [K.MIXED_QUADRATIC, K.CONVEX_COMBO])
def test_psi_at_one_zero_printed_vs_derived(kind):
    rng = np.random.default_rng(13)
    for _ in range(10):
        P = random_parameters(rng)
        # printed: (D - E)/(D - E - 2) <= 0, against the required Re psi(1, 0) > 0
        assert _psi_at_one(coeff_system(kind, P)) == pytest.approx((P.D - P.E) / (P.D - P.E - 2))
        assert _psi_at_one(derived_coeff_system(kind, P)) == pytest.approx(1.0)


@pytest.mark.parametrize("kind", [k for k in K if k is not K.SQUARE_PLUS_DERIV])
def test_composed_psi_at_one_zero(kind):
    num, den = composed_psi_parts(kind, P0, 1.0, 0.0)
    assert (num / den).real == pytest.approx(1.0)
