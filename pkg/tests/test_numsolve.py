"""Finite-difference eigensolver: hand oracles, scipy cross-checks, order tests."""

import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from susyrad import (
    DomainError,
    NumericError,
    RadialGrid,
    cumulative_quadrature,
    discretize,
    eigenvector,
    isospectral_check,
    lowest_eigenvalues,
    oscillator_model,
    partner_potentials,
    quadrature,
    sextic_model,
    sturm_count,
    superpotential_from_model,
)
from susyrad.numsolve import TridiagonalOperator


def test_discretize_free_particle_entries():
    """V = 0 on [0,1] with 5 points: h = 1/4, diag = 2/h^2 = 32, off = -16."""
    grid = RadialGrid(0.0, 1.0, 5)
    op = discretize(np.zeros(5), grid)
    np.testing.assert_array_equal(op.diag, [32.0, 32.0, 32.0])
    np.testing.assert_array_equal(op.off, [-16.0, -16.0])
    assert op.size == 3


def test_discretize_shape_and_interior_checks():
    grid = RadialGrid(0.0, 1.0, 5)
    with pytest.raises(ValueError):
        discretize(np.zeros(4), grid)
    v = np.zeros(5)
    v[2] = np.inf
    with pytest.raises(DomainError):
        discretize(v, grid)
    # walls may be singular; Dirichlet never reads them
    v = np.zeros(5)
    v[0] = np.inf
    v[-1] = np.nan
    discretize(v, grid)


def test_constant_shift_moves_spectrum_exactly():
    rng = np.random.default_rng(7)
    grid = RadialGrid(0.0, 1.0, 42)
    v = rng.uniform(-5.0, 5.0, 42)
    base = lowest_eigenvalues(discretize(v, grid), 4, tol=1e-12)
    shifted = lowest_eigenvalues(discretize(v + 11.25, grid), 4, tol=1e-12)
    np.testing.assert_allclose(np.array(shifted) - np.array(base), 11.25, atol=1e-9)


def _toy_operator(diag, off):
    # grid is only carried along for quadrature; pick one matching the size
    n = len(diag) + 2
    grid = RadialGrid(0.0, float(n - 1), n)
    return TridiagonalOperator(diag=np.asarray(diag, float),
                               off=np.asarray(off, float), grid=grid)


def test_two_by_two_hand_case():
    """diag (2, 2), off -1 has eigenvalues 1 and 3."""
    op = _toy_operator([2.0, 2.0], [-1.0])
    assert sturm_count(op, 0.0) == 0
    assert sturm_count(op, 2.0) == 1
    assert sturm_count(op, 4.0) == 2
    eigs = lowest_eigenvalues(op, 2, tol=1e-12)
    np.testing.assert_allclose(eigs, [1.0, 3.0], atol=1e-10)


def test_sturm_count_monotone_in_lambda():
    rng = np.random.default_rng(123)
    op = _toy_operator(rng.uniform(-4, 4, 60), rng.uniform(-3, 3, 59))
    lams = np.sort(rng.uniform(-12, 12, 100))
    counts = [sturm_count(op, lam) for lam in lams]
    assert all(c2 >= c1 for c1, c2 in zip(counts, counts[1:]))
    assert counts[0] == 0 and counts[-1] == 60


def test_lowest_eigenvalues_against_scipy():
    rng = np.random.default_rng(2024)
    d = rng.uniform(-2, 6, 80)
    e = rng.uniform(-3, 3, 79)
    op = _toy_operator(d, e)
    ours = lowest_eigenvalues(op, 10, tol=1e-12)
    ref = eigh_tridiagonal(d, e, eigvals_only=True)[:10]
    np.testing.assert_allclose(ours, ref, atol=1e-9)


def test_lowest_eigenvalues_argument_validation():
    op = _toy_operator([2.0, 2.0], [-1.0])
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 0)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 3)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 1, tol=0.0)


def test_particle_in_a_box_lowest_level_second_order():
    """-f'' on [0, pi]: exact lowest eigenvalue is 1; the three-point stencil
    converges at order h^2."""
    errs = []
    for n_points in (101, 201, 401):
        grid = RadialGrid(0.0, math.pi, n_points)
        op = discretize(np.zeros(n_points), grid)
        lam = lowest_eigenvalues(op, 1, tol=1e-12)[0]
        errs.append(abs(lam - 1.0))
    order1 = math.log2(errs[0] / errs[1])
    order2 = math.log2(errs[1] / errs[2])
    assert 1.8 < order1 < 2.2
    assert 1.8 < order2 < 2.2


def test_box_eigenvector_matches_sine():
    grid = RadialGrid(0.0, math.pi, 201)
    op = discretize(np.zeros(201), grid)
    lam = lowest_eigenvalues(op, 1, tol=1e-12)[0]
    vec = eigenvector(op, lam)
    r = grid.points()
    exact = np.sin(r)
    exact /= math.sqrt(quadrature(exact**2, grid))
    assert np.max(np.abs(vec - exact)) < 5.0 * grid.h**2


def test_eigenvector_two_by_two_and_sign():
    op = _toy_operator([2.0, 2.0], [-1.0])
    vec = eigenvector(op, 1.0, tol=1e-12)
    # ground state of the toy: interior entries equal and positive
    assert vec[0] == 0.0 and vec[-1] == 0.0
    assert vec[1] == pytest.approx(vec[2], rel=1e-12)
    assert vec[1] > 0
    assert quadrature(vec**2, op.grid) == pytest.approx(1.0, abs=1e-13)


def test_eigenvector_residual_and_determinism():
    m = oscillator_model(1.0)
    grid = RadialGrid(1e-5, 12.0, 1201)
    pp = partner_potentials(superpotential_from_model(m), grid)
    op = discretize(pp.v_minus, grid)
    lam = lowest_eigenvalues(op, 2)[1]
    v1 = eigenvector(op, lam)
    v2 = eigenvector(op, lam)
    assert np.array_equal(v1, v2)  # bit-for-bit reproducible
    # residual of the full-grid vector on the interior
    interior = v1[1:-1]
    res = op.diag * interior
    res[:-1] += op.off * interior[1:]
    res[1:] += op.off * interior[:-1]
    res -= lam * interior
    assert np.linalg.norm(res) / np.linalg.norm(interior) < 1e-7


def test_eigenvector_rejects_bogus_shift():
    op = _toy_operator([2.0, 2.0], [-1.0])
    with pytest.raises(NumericError):
        eigenvector(op, 2.0, tol=1e-12)  # midgap, nowhere near an eigenvalue


def test_quadrature_polynomials_and_exponential():
    grid = RadialGrid(0.0, 1.0, 101)
    r = grid.points()
    assert quadrature(np.ones(101), grid) == pytest.approx(1.0, abs=1e-14)
    # Simpson is exact for cubics
    assert quadrature(r**3, grid) == pytest.approx(0.25, abs=1e-14)
    g40 = RadialGrid(0.0, 40.0, 4001)
    val = quadrature(np.exp(-g40.points()), g40)
    assert val == pytest.approx(1.0 - math.exp(-40.0), rel=1e-9)


def test_quadrature_even_point_fallback():
    # trapezoid tail: exact for a linear integrand even with an even count
    grid = RadialGrid(0.0, 1.0, 100)
    r = grid.points()
    assert quadrature(r, grid) == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(ValueError):
        quadrature(np.ones(99), grid)


def test_cumulative_quadrature_running_cosine():
    """Running integral of cos matches sin at every node to ~h^4."""
    grid = RadialGrid(0.0, 3.0, 3001)
    r = grid.points()
    run = cumulative_quadrature(np.cos(r), grid)
    assert np.max(np.abs(run - np.sin(r))) < 1e-10
    # final value agrees with the one-shot rule
    assert run[-1] == pytest.approx(quadrature(np.cos(r), grid), abs=1e-13)


def test_cumulative_quadrature_even_count_final_point():
    grid = RadialGrid(0.0, 2.0, 500)
    r = grid.points()
    run = cumulative_quadrature(r**2, grid)
    assert run[-1] == pytest.approx(8.0 / 3.0, rel=1e-10)


def test_isospectral_oscillator():
    """Partner towers of the oscillator interlace: eigs(V+)[i] = eigs(V-)[i+1],
    here to better than 1e-3 on a wall-safe window."""
    m = oscillator_model(1.0)
    grid = RadialGrid(1e-5, 12.0, 4801)
    pp = partner_potentials(superpotential_from_model(m), grid)
    rep = isospectral_check(pp.v_minus, pp.v_plus, grid, k=5, tol=1e-3)
    assert rep.passed
    assert rep.max_abs_deviation < 1e-3
    assert len(rep.deviations) == 4
    assert abs(rep.eigs_minus[0]) < 1e-3  # zero mode of the lower partner


def test_isospectral_sextic_ell1():
    m = sextic_model(1.0, 1.0, ell=1)
    grid = RadialGrid(1e-5, 6.0, 6001)
    pp = partner_potentials(superpotential_from_model(m), grid)
    rep = isospectral_check(pp.v_minus, pp.v_plus, grid, k=5, tol=1e-3)
    assert rep.passed, rep.deviations


def test_isospectral_check_needs_a_pair():
    grid = RadialGrid(0.0, 1.0, 11)
    with pytest.raises(ValueError):
        isospectral_check(np.zeros(11), np.zeros(11), grid, k=1)


def test_oscillator_levels_second_order_in_h():
    """Error against eps^2 = 4n at fixed window, three h-halvings.

    r_min = 1e-8 keeps the wall-truncation shift (which is O(r_min), not
    O(h^2)) far below the discretization error being measured."""
    m = oscillator_model(1.0)
    errs = []
    for n_points in (601, 1201, 2401):
        grid = RadialGrid(1e-8, 12.0, n_points)
        pp = partner_potentials(superpotential_from_model(m), grid)
        eigs = lowest_eigenvalues(discretize(pp.v_minus, grid), 3)
        errs.append(max(abs(e - 4.0 * n) for n, e in enumerate(eigs)))
    assert 3.5 < errs[0] / errs[1] < 4.5
    assert 3.5 < errs[1] / errs[2] < 4.5


@pytest.mark.xfail(
    strict=True,
    reason="with the wall pinned at r_min = 1e-3 the Dirichlet truncation "
    "shifts every level by ~|u'(0)|^2 * r_min ~ 2.3e-3 > 1e-3, independent "
    "of h; see the wall-sensitivity test in test_acceptance.py",
)
def test_oscillator_levels_on_pinned_coarse_window():
    """eps^2 = {0,4,8,12,16} within 1e-3 on the fixed [1e-3, 12] window with
    N = 2400 interior points."""
    m = oscillator_model(1.0)
    grid = RadialGrid(1e-3, 12.0, 2402)
    pp = partner_potentials(superpotential_from_model(m), grid)
    eigs = lowest_eigenvalues(discretize(pp.v_minus, grid), 5)
    assert max(abs(e - 4.0 * n) for n, e in enumerate(eigs)) < 1e-3
