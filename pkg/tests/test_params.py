import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from janowski_lab.params import (Binding, DiskOrHalfPlane, FunctionFamily, ParameterError,
                                 Parameters, circle, is_subordinate_numeric, janowski_image,
                                 region_contains, region_inclusion_margin, validate_params)

unit = st.floats(-1, 1, allow_nan=False)


@st.composite
def pairs(draw, allow_minus_one=True):
    Y = draw(st.one_of(st.just(-1.0), unit) if allow_minus_one else st.floats(-0.999, 1))
    X = draw(unit)
    assume(Y < X - 1e-6)
    return X, Y


def test_validate_extremal_tuple():
    P = validate_params((1, -1, 1, -1, 1, 1, 1, 2))
    assert P.mu_prime == 2


def test_validate_mu_prime_arithmetic():
    P = validate_params((0.5, -0.5, 0.3, -0.1, 1, 1, 2, 1.0))
    assert P.mu_prime == 2.0
    assert P.n == 2


def test_validate_rejects_equal_ab():
    with pytest.raises(ParameterError, match="B must be strictly less than A"):
        validate_params((0.5, 0.5, 0.3, -0.1, 1, 1, 1, 0.1))


@pytest.mark.parametrize("raw", [
    (0.5, -0.5, 0.1, 0.1, 1, 1, 1, 0.5),   # E >= D
    (0.5, -0.5, 0.3, -0.1, 1, 1, 1, 0.0),  # mu <= 0
    (0.5, -0.5, 0.3, -0.1, 1, 1, 1, 1.5),  # mu > A - B
    (1.5, -0.5, 0.3, -0.1, 1, 1, 1, 0.5),  # A out of range
    (0.5, -0.5, 0.3, -0.1, 1, 1, 0, 0.5),  # n < 1
    (0.5, -0.5, 0.3, -0.1, 1, 1, 1.5, 0.5),
])
def test_validate_rejects(raw):
    with pytest.raises(ParameterError):
        validate_params(raw)


def test_validate_accepts_mapping_and_wrong_length():
    P = validate_params({"A": 0.5, "B": -0.5, "D": 0.3, "E": -0.1, "lambda": 2.0, "mu": 0.5})
    assert P.lam == 2.0
    with pytest.raises(ParameterError):
        validate_params((1, -1, 1))


def test_from_mu_prime_exact_at_two():
    P = Parameters.from_mu_prime(0.3, -0.7, 0.5, -0.5, mu_prime=2.0)
    assert P.mu == P.A - P.B
    assert P.mu_prime == 2.0


def test_function_family_bindings():
    assert FunctionFamily(2, 0.25).mu == 0.5
    assert FunctionFamily(2, 0.25, Binding.DERIVATIVE).mu == 0.75
    P = FunctionFamily(1, 0.5).parameters(0.5, -0.5, 0.2, -0.2)
    assert P.mu == 0.5
    with pytest.raises(ParameterError):
        FunctionFamily(1, -0.1)


def test_image_starlike_halfplane():
    r = janowski_image(1, -1)
    assert r.kind == "halfplane" and r.boundary_re == 0


def test_image_order_quarter():
    lam = 0.25
    r = janowski_image(1 - 2 * lam, -1)
    assert not r.is_disk
    assert r.boundary_re == pytest.approx(0.25, abs=1e-15)


def test_image_disk():
    r = janowski_image(0.5, 0)
    assert r.is_disk and r.center == 1 and r.radius == 0.5


def test_image_rejects_bad_order():
    with pytest.raises(ParameterError):
        janowski_image(0.2, 0.2)


def test_region_contains_examples():
    d = DiskOrHalfPlane.disk(1, 0.5)
    assert region_contains(d, 1) == 0.5
    assert region_contains(DiskOrHalfPlane.halfplane(0), -0.1) == pytest.approx(-0.1)
    assert region_contains(d, 1.5) == 0
    npt.assert_allclose(region_contains(d, np.array([1, 1.25])), [0.5, 0.25])


def test_region_kind_validation():
    with pytest.raises(ValueError):
        DiskOrHalfPlane("square")
    with pytest.raises(ValueError):
        DiskOrHalfPlane.disk(1, 0)


def test_subordinate_self():
    A, B = 0.6, -0.3
    z = circle(0.99)
    v = is_subordinate_numeric((1 + A * z) / (1 + B * z), janowski_image(A, B), points=z)
    assert v.holds and v.worst_margin > 0


def test_subordinate_fails_for_large_coefficient():
    z = circle(0.99)
    v = is_subordinate_numeric(1 + 2 * z, DiskOrHalfPlane.disk(1, 1), points=z)
    assert not v.holds
    assert v.worst_margin == pytest.approx(-0.98, abs=1e-12)


def test_subordinate_margin_direct_arithmetic():
    z = circle(0.99)
    v = is_subordinate_numeric(1 + 0.3 * z**2, DiskOrHalfPlane.disk(1, 0.5), points=z)
    assert v.holds
    assert v.worst_margin == pytest.approx(0.5 - 0.3 * 0.99**2, abs=1e-12)


def test_subordinate_empty():
    with pytest.raises(ValueError):
        is_subordinate_numeric([], DiskOrHalfPlane.disk(1, 1))


def test_worst_point_without_points_is_value():
    v = is_subordinate_numeric([1.0, 1.4], DiskOrHalfPlane.disk(1, 0.5))
    assert v.worst_point == 1.4


@given(pairs())
def test_boundary_images_lie_on_boundary(xy):
    X, Y = xy
    r = janowski_image(X, Y)
    w = (1 - X) / (1 - Y)
    assert abs(region_contains(r, w)) <= 1e-12 * max(1.0, abs(w))
    if Y > -1:  # z = 1 is sent to infinity when Y = -1
        w = (1 + X) / (1 + Y)
        assert abs(region_contains(r, w)) <= 1e-12 * max(1.0, abs(w))


@given(pairs(allow_minus_one=False))
def test_one_is_interior(xy):
    assert region_contains(janowski_image(*xy), 1.0) > 0


@given(pairs(), st.floats(0.1, 0.999))
def test_self_subordination_every_radius(xy, r):
    X, Y = xy
    z = circle(r, 512)
    v = is_subordinate_numeric((1 + X * z) / (1 + Y * z), janowski_image(X, Y), tol=1e-9)
    assert v.holds


@given(pairs(), st.floats(0, 1))
def test_shrinking_numerator_coefficient_nests(xy, t):
    A, B = xy
    A2 = B + (A - B) * max(t, 1e-3)
    assume(A2 > B)
    margin = region_inclusion_margin(janowski_image(A, B), janowski_image(A2, B))
    assert margin >= -1e-12
