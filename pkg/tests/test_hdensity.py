"""Integral representations over step densities, with an independent
quadrature oracle and the closed forms at the lattice extremes."""
import math

import numpy as np
import pytest
import scipy.integrate

from opmeans import (SELF_ADJOINT, SYMMETRIC, HDensity, StructuralError,
                     dagger_density, eval_selfadjoint_rep, eval_symmetric_rep,
                     h_order, lattice_meet_join, selfadjoint_rep_derivative,
                     symmetric_rep_derivative)
from opmeans.jsonio import dumps, loads

STEP_SYM = HDensity(SYMMETRIC, (0.0, 0.3, 0.7, 1.0), (0.9, 0.2, 0.55))
STEP_SA = HDensity(SELF_ADJOINT, (-1.0, -0.4, 0.0), (0.8, 0.15))


def _oracle_symmetric(h: HDensity, t: float) -> float:
    """Independent evaluation of the symmetric-class representation."""
    def integrand(lam):
        return ((lam * lam - 1.0) * (1.0 - t) ** 2 * h.value_at(lam)
                / ((t + lam) * (1.0 + t * lam) * (1.0 + lam) ** 2))

    total = 0.0
    for lo, hi in zip(h.breaks[:-1], h.breaks[1:]):
        val, err = scipy.integrate.quad(integrand, lo, hi, epsabs=1e-13,
                                        epsrel=1e-13, limit=200)
        total += val
    return 0.5 * (1.0 + t) * math.exp(total)


def _oracle_selfadjoint(h: HDensity, t: float) -> float:
    def integrand(lam):
        return (1.0 / (lam - t) + t / (1.0 - lam * t)) * h.value_at(lam)

    total = 0.0
    for lo, hi in zip(h.breaks[:-1], h.breaks[1:]):
        val, err = scipy.integrate.quad(integrand, lo, hi, epsabs=1e-13,
                                        epsrel=1e-13, limit=200)
        total += val
    return math.exp(total)


@pytest.mark.parametrize("t", [1e-3, 0.04, 0.5, 1.0, 2.5, 40.0, 1e3])
def test_symmetric_rep_matches_quadrature_oracle(t):
    mine = eval_symmetric_rep(STEP_SYM, t)
    ref = _oracle_symmetric(STEP_SYM, t)
    assert mine == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("t", [1e-3, 0.04, 0.5, 1.0, 2.5, 40.0, 1e3])
def test_selfadjoint_rep_matches_quadrature_oracle(t):
    mine = eval_selfadjoint_rep(STEP_SA, t)
    ref = _oracle_selfadjoint(STEP_SA, t)
    assert mine == pytest.approx(ref, rel=1e-9)


def test_symmetric_closed_forms_at_lattice_points():
    t = np.logspace(-3, 3, 200)
    half = eval_symmetric_rep(HDensity.constant(0.5, SYMMETRIC), t)
    zero = eval_symmetric_rep(HDensity.constant(0.0, SYMMETRIC), t)
    one = eval_symmetric_rep(HDensity.constant(1.0, SYMMETRIC), t)
    assert np.max(np.abs(half - np.sqrt(t)) / np.sqrt(t)) <= 1e-8
    assert np.max(np.abs(zero - 0.5 * (1.0 + t)) / (0.5 * (1.0 + t))) <= 1e-8
    harm = 2.0 * t / (1.0 + t)
    assert np.max(np.abs(one - harm) / harm) <= 1e-8


def test_selfadjoint_closed_forms_at_lattice_points():
    t = np.logspace(-3, 3, 200)
    half = eval_selfadjoint_rep(HDensity.constant(0.5, SELF_ADJOINT), t)
    zero = eval_selfadjoint_rep(HDensity.constant(0.0, SELF_ADJOINT), t)
    one = eval_selfadjoint_rep(HDensity.constant(1.0, SELF_ADJOINT), t)
    assert np.max(np.abs(half - np.sqrt(t)) / np.sqrt(t)) <= 1e-8
    assert np.max(np.abs(zero - 1.0)) <= 1e-8
    assert np.max(np.abs(one - t) / t) <= 1e-8


def test_constant_density_interpolates_powers_selfadjoint():
    # h == c gives t^c in the self-adjoint class
    t = np.logspace(-2, 2, 50)
    for c in (0.25, 0.3, 0.75):
        f = eval_selfadjoint_rep(HDensity.constant(c, SELF_ADJOINT), t)
        assert np.max(np.abs(f - t ** c) / t ** c) <= 1e-9


def test_symmetric_class_identity_holds_to_machine_precision():
    # t * f(1/t) == f(t), exact by kernel folding
    t = np.logspace(-6, 6, 121)
    f = eval_symmetric_rep(STEP_SYM, t)
    fr = eval_symmetric_rep(STEP_SYM, 1.0 / t)
    assert np.max(np.abs(t * fr - f) / np.abs(f)) <= 1e-14


def test_selfadjoint_class_identity_holds_to_machine_precision():
    t = np.logspace(-6, 6, 121)
    f = eval_selfadjoint_rep(STEP_SA, t)
    fr = eval_selfadjoint_rep(STEP_SA, 1.0 / t)
    assert np.max(np.abs(f * fr - 1.0)) <= 1e-13


@pytest.mark.parametrize("t", [0.02, 0.4, 0.999, 1.0, 1.001, 3.7, 250.0])
def test_symmetric_derivative_matches_central_difference(t):
    h = 1e-6 * max(1.0, t)
    numeric = (eval_symmetric_rep(STEP_SYM, t + h)
               - eval_symmetric_rep(STEP_SYM, t - h)) / (2.0 * h)
    assert symmetric_rep_derivative(STEP_SYM, t) == pytest.approx(
        numeric, rel=1e-6)


@pytest.mark.parametrize("t", [0.02, 0.4, 0.999, 1.0, 1.001, 3.7, 250.0])
def test_selfadjoint_derivative_matches_central_difference(t):
    h = 1e-6 * max(1.0, t)
    numeric = (eval_selfadjoint_rep(STEP_SA, t + h)
               - eval_selfadjoint_rep(STEP_SA, t - h)) / (2.0 * h)
    assert selfadjoint_rep_derivative(STEP_SA, t) == pytest.approx(
        numeric, rel=1e-6)


def test_normalization_at_one_is_exact():
    assert eval_symmetric_rep(STEP_SYM, 1.0) == 1.0
    assert eval_selfadjoint_rep(STEP_SA, 1.0) == 1.0


def test_density_validation():
    with pytest.raises(StructuralError):
        HDensity(SYMMETRIC, (0.0, 1.0), (1.5,))          # value out of [0,1]
    with pytest.raises(StructuralError):
        HDensity(SYMMETRIC, (0.0, 0.5), (0.5,))          # endpoint not 1
    with pytest.raises(StructuralError):
        HDensity(SYMMETRIC, (0.0, 0.5, 0.4, 1.0), (0.1, 0.2, 0.3))
    with pytest.raises(StructuralError):
        HDensity(SELF_ADJOINT, (0.0, 1.0), (0.5,))       # wrong domain
    with pytest.raises(StructuralError):
        HDensity("weird", (0.0, 1.0), (0.5,))
    with pytest.raises(StructuralError):
        eval_symmetric_rep(STEP_SA, 2.0)                 # class mismatch
    with pytest.raises(StructuralError):
        eval_selfadjoint_rep(STEP_SYM, 2.0)


def test_density_json_roundtrip():
    again = HDensity.from_json_dict(loads(dumps(STEP_SYM.to_json_dict())))
    assert again == STEP_SYM


def test_value_at_step_lookup():
    assert STEP_SYM.value_at(0.0) == 0.9
    assert STEP_SYM.value_at(0.29) == 0.9
    assert STEP_SYM.value_at(0.3) == 0.2
    assert STEP_SYM.value_at(1.0) == 0.55


def test_h_order_on_nested_and_crossing_densities():
    lo = HDensity.constant(0.2, SYMMETRIC)
    hi = HDensity.constant(0.8, SYMMETRIC)
    # symmetric class: larger density => smaller mean
    assert h_order(hi, lo) == "leq"
    assert h_order(lo, hi) == "geq"
    assert h_order(lo, lo) == "equal"
    crossing = HDensity(SYMMETRIC, (0.0, 0.5, 1.0), (0.0, 1.0))
    assert h_order(crossing, HDensity.constant(0.5, SYMMETRIC)) == "incomparable"
    # self-adjoint class: larger density => larger mean
    slo = HDensity.constant(0.2, SELF_ADJOINT)
    shi = HDensity.constant(0.8, SELF_ADJOINT)
    assert h_order(shi, slo) == "geq"
    assert h_order(slo, shi) == "leq"


def test_dagger_density_flips_and_is_involutive():
    d = dagger_density(STEP_SA)
    assert d.domain_class == STEP_SA.domain_class
    assert d.breaks == STEP_SA.breaks
    assert d.values == tuple(1.0 - v for v in STEP_SA.values)
    twice = dagger_density(d)
    assert twice.breaks == STEP_SA.breaks
    assert twice.values == pytest.approx(STEP_SA.values, abs=1e-15)


def test_lattice_meet_join_orientation():
    lo = HDensity.constant(0.2, SYMMETRIC)
    hi = HDensity.constant(0.8, SYMMETRIC)
    meet, join = lattice_meet_join(lo, hi)
    # meet is below both: in the symmetric class that is the larger density
    assert h_order(meet, lo) in ("leq", "equal")
    assert h_order(meet, hi) in ("leq", "equal")
    assert h_order(lo, join) in ("leq", "equal")
    assert h_order(hi, join) in ("leq", "equal")
    slo = HDensity.constant(0.2, SELF_ADJOINT)
    shi = HDensity.constant(0.8, SELF_ADJOINT)
    smeet, sjoin = lattice_meet_join(slo, shi)
    assert h_order(smeet, slo) in ("leq", "equal")
    assert h_order(sjoin, shi) in ("geq", "equal")
