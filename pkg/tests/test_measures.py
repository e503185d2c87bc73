import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optosqueeze.errors import DegenerateState, NonPhysicalState
from optosqueeze.measures import (
    TwoModeCovariance,
    classify_region,
    log_negativity,
    mode_index,
    nonlocality_report,
    pair_from_string,
    partial_transpose,
    physicality,
    quadrature_variances,
    reduce_two_mode,
    steering,
    symplectic_eigenvalues,
)
from optosqueeze.oracle import random_symplectic, random_two_mode_state, tmsv_covariance


def standard_form(a, b, c):
    """Squeezed-thermal two-mode state in standard form."""
    return np.array([[a, 0, c, 0], [0, a, 0, -c], [c, 0, b, 0], [0, -c, 0, b]], dtype=float)


@pytest.mark.parametrize("s", [0.0, 0.1, 0.25, 0.5, 1.0])
def test_tmsv_closed_forms(s):
    v = tmsv_covariance(s)
    e_n, eta = log_negativity(v)
    assert e_n == pytest.approx(2 * s, abs=1e-12)
    assert eta == pytest.approx(0.5 * math.exp(-2 * s), rel=1e-12)
    assert steering(v, "1->2") == pytest.approx(math.log(math.cosh(2 * s)), abs=1e-12)
    assert steering(v, "2->1") == pytest.approx(math.log(math.cosh(2 * s)), abs=1e-12)


@pytest.mark.parametrize("a,b,c", [(1.2, 0.8, 0.5), (3.0, 1.0, 1.5), (0.7, 2.0, 0.3)])
def test_standard_form_closed_forms(a, b, c):
    v = standard_form(a, b, c)
    det = a * b - c * c
    eta = ((a + b) - math.sqrt((a - b) ** 2 + 4 * c * c)) / 2
    e_n, got_eta = log_negativity(v)
    assert got_eta == pytest.approx(eta, rel=1e-12)
    assert e_n == pytest.approx(max(0.0, -math.log(2 * eta)), abs=1e-12)
    assert steering(v, "1->2") == pytest.approx(max(0.0, math.log(a / (2 * det))), abs=1e-12)
    assert steering(v, "2->1") == pytest.approx(max(0.0, math.log(b / (2 * det))), abs=1e-12)


def test_asymmetric_frozen_values():
    # a=3, b=1, c=1.5: det = 0.75, eta = (4 - sqrt(13))/2
    v = standard_form(3.0, 1.0, 1.5)
    assert log_negativity(v)[0] == pytest.approx(-math.log(4 - math.sqrt(13)), abs=1e-12)
    assert steering(v, "1->2") == pytest.approx(math.log(2.0), abs=1e-12)
    assert steering(v, "2->1") == 0.0


def test_symplectic_eigenvalues_two_mode_invariants(rng):
    for _ in range(50):
        v = random_two_mode_state(rng)
        big_delta = np.linalg.det(v[:2, :2]) + np.linalg.det(v[2:, 2:]) + 2 * np.linalg.det(v[:2, 2:])
        root = math.sqrt(big_delta**2 - 4 * np.linalg.det(v))
        expected = np.sqrt(np.array([big_delta - root, big_delta + root]) / 2)
        assert np.allclose(symplectic_eigenvalues(v), expected, rtol=1e-9)


def test_symplectic_invariance(rng):
    v = random_two_mode_state(rng)
    s = random_symplectic(rng)
    assert np.allclose(symplectic_eigenvalues(s @ v @ s.T), symplectic_eigenvalues(v), rtol=1e-8)


def test_pt_closed_form_matches_spectrum(rng):
    for _ in range(200):
        v = random_two_mode_state(rng)
        brute = symplectic_eigenvalues(partial_transpose(v))[0]
        assert log_negativity(v)[1] == pytest.approx(brute, rel=1e-9)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_random_states_physical_and_hierarchy(seed):
    v = random_two_mode_state(np.random.default_rng(seed))
    assert physicality(v).ok
    e_n, _ = log_negativity(v)
    g12, g21 = steering(v, "1->2"), steering(v, "2->1")
    if max(g12, g21) > 1e-9:
        assert e_n > 1e-9


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_mode_swap(seed):
    tm = TwoModeCovariance(random_two_mode_state(np.random.default_rng(seed)))
    sw = tm.swapped()
    assert log_negativity(sw)[0] == pytest.approx(log_negativity(tm)[0], rel=1e-9, abs=1e-12)
    assert steering(sw, "1->2") == pytest.approx(steering(tm, "2->1"), rel=1e-9, abs=1e-12)
    assert steering(sw, "2->1") == pytest.approx(steering(tm, "1->2"), rel=1e-9, abs=1e-12)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_local_rotation_invariance(seed, p1, p2):
    v = random_two_mode_state(np.random.default_rng(seed))
    rot = np.zeros((4, 4))
    for k, phi in ((0, p1), (2, p2)):
        rot[k:k + 2, k:k + 2] = [[math.cos(phi), math.sin(phi)], [-math.sin(phi), math.cos(phi)]]
    w = rot @ v @ rot.T
    assert log_negativity(w)[0] == pytest.approx(log_negativity(v)[0], abs=1e-9)
    assert steering(w, "2->1") == pytest.approx(steering(v, "2->1"), abs=1e-9)


def test_vacuum_and_product_states_are_zero():
    assert log_negativity(np.eye(4) / 2) == (0.0, 0.5)
    assert steering(np.eye(4) / 2) == 0.0
    thermal = np.diag([2.0, 2.0, 0.7, 0.7])
    assert log_negativity(thermal)[0] == 0.0
    assert steering(thermal, "2->1") == 0.0


def test_nonphysical_state_rejected():
    with pytest.raises(NonPhysicalState):
        log_negativity(np.diag([1.0, 1.0, 1.0, -1.0]))
    assert not physicality(np.diag([0.2, 0.2, 0.5, 0.5])).ok
    assert not physicality(np.diag([-1.0, 1.0, 1.0, 1.0])).ok


def test_degenerate_state_rejected():
    with pytest.raises(DegenerateState):
        steering(np.zeros((4, 4)))


def test_shape_and_direction_checks():
    with pytest.raises(ValueError):
        log_negativity(np.eye(6))
    with pytest.raises(ValueError):
        steering(np.eye(4) / 2, "1->3")
    assert steering(tmsv_covariance(0.3), "2→1") == pytest.approx(math.log(math.cosh(0.6)))


@pytest.mark.parametrize(
    "e_n,g12,g21,expected",
    [
        (0.0, 0.0, 0.0, ("A", None)),
        (1e-7, 0.0, 0.0, ("A", None)),
        (0.1, 0.0, 0.0, ("B", None)),
        (0.1, 0.05, 0.0, ("C", "1->2")),
        (0.1, 0.0, 0.05, ("C", "2->1")),
        (0.1, 0.05, 0.05, ("D", None)),
        (0.1, 1e-7, 0.05, ("C", "2->1")),
    ],
)
def test_classify_region(e_n, g12, g21, expected):
    assert tuple(classify_region(e_n, g12, g21)) == expected


def test_region_str():
    assert str(classify_region(0.1, 0.2, 0)) == "C(1->2)"
    assert str(classify_region(0.1, 0, 0)) == "B"


def test_reduce_and_report():
    v = np.diag([0.5, 0.5, 1.0, 1.0, 2.0, 2.0])
    v[2, 4] = v[4, 2] = 0.3
    tm = reduce_two_mode(v, "a2", "b")
    assert tm.modes == ("a2", "b")
    assert np.allclose(tm.V1, np.eye(2)) and np.allclose(tm.V2, 2 * np.eye(2))
    assert tm.Vc[0, 0] == 0.3
    rep = nonlocality_report(v, "a2", "b")
    assert rep.steering_label(True) == "G_a2_to_b"
    d = rep.to_dict()
    assert set(d) >= {"EN", "G_a2_to_b", "G_b_to_a2", "region", "direction", "eta_minus"}
    with pytest.raises(IndexError):
        reduce_two_mode(v, "a2", "a2")


def test_report_direction_label():
    v = np.eye(6) / 2
    v[2:6, 2:6] = standard_form(3.0, 1.0, 1.5)
    rep = nonlocality_report(v, "a2", "b")
    assert rep.region == "C" and rep.direction_label == "a2->b"
    rep = nonlocality_report(v, "b", "a2")
    assert rep.direction_label == "a2->b"


def test_quadrature_variances_and_modes():
    v = np.diag([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    assert quadrature_variances(v, "a2") == (3.0, 4.0)
    assert mode_index(2) == 2
    for bad in ("c", 3, True):
        with pytest.raises(IndexError):
            mode_index(bad)
    assert pair_from_string("a1-a2") == ("a1", "a2")
    for bad in ("a1", "a1-a1", "a1-x"):
        with pytest.raises((ValueError, IndexError)):
            pair_from_string(bad)
