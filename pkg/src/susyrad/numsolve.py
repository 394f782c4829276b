"""Independent finite-difference eigensolver and quadrature.

This module is the oracle the closed-form results are judged against, so it
deliberately shares no code with the analytic paths: a three-point Laplacian
with Dirichlet walls, Sturm-sequence bisection for eigenvalues, inverse
iteration for eigenvectors, and composite Simpson quadrature.  Plain numpy
only.

Convention: the operator is -d^2/dr^2 + V(r) acting on functions that vanish
at both ends of the grid; eigenvalues approximate epsilon^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, NumericError, RadialGrid

_MAX_BISECTIONS = 200
_INVERSE_ITERATIONS = 5
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal discretization on the interior grid points.

    diag has n_points - 2 entries (2/h^2 + V_i), off has one fewer (-1/h^2).
    """

    diag: np.ndarray
    off: np.ndarray
    grid: RadialGrid

    @property
    def size(self) -> int:
        return len(self.diag)


def discretize(v_samples, grid: RadialGrid) -> TridiagonalOperator:
    """Build the Dirichlet operator for -f'' + V f = eps^2 f from potential samples.

    The endpoint samples are never used (the wavefunction is pinned to zero
    there), so a potential that diverges exactly at a wall is fine; a
    non-finite value at any interior point is a domain error.
    """
    v = np.asarray(v_samples, dtype=float)
    if v.shape != (grid.n_points,):
        raise ValueError("v_samples must have one entry per grid point")
    interior = v[1:-1]
    if not np.all(np.isfinite(interior)):
        raise DomainError("potential is not finite on the interior of the grid")
    h = grid.h
    diag = 2.0 / h**2 + interior
    off = np.full(grid.n_points - 3, -1.0 / h**2)
    return TridiagonalOperator(diag=diag, off=off, grid=grid)


def sturm_count(op: TridiagonalOperator, lam: float) -> int:
    """Number of eigenvalues of the operator at or below lam.

    Standard Sturm sequence: count the nonpositive pivots of the LDL^T
    factorization of (T - lam I).  A pivot smaller in magnitude than pivmin
    is clamped to -pivmin *before* the sign test (the LAPACK convention);
    clamping after miscounts when lam hits an eigenvalue of a leading minor,
    and pivmin is scaled by max(e^2) so the following division cannot
    overflow.
    """
    d = op.diag.tolist()
    e2 = (op.off * op.off).tolist()
    pivmin = np.finfo(float).tiny * max(1.0, max(e2, default=1.0))
    count = 0
    q = d[0] - lam
    if abs(q) < pivmin:
        q = -pivmin
    if q <= 0.0:
        count += 1
    for i in range(1, len(d)):
        q = d[i] - lam - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q <= 0.0:
            count += 1
    return count


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float = 1e-10) -> list:
    """The k smallest eigenvalues by bisection on the Sturm count.

    Each eigenvalue is bracketed inside the Gershgorin interval and bisected
    until the bracket width falls below tol (floored at a few ulps of the
    spectral scale, which matters on very stiff grids).

    Returns a list of k floats in nondecreasing order.
    """
    n = op.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    max_off = float(np.max(np.abs(op.off))) if op.size > 1 else 0.0
    lo = float(np.min(op.diag)) - 2.0 * max_off
    hi = float(np.max(op.diag)) + 2.0 * max_off
    eff_tol = max(tol, 8.0 * _EPS * max(abs(lo), abs(hi), 1.0))

    eigs = []
    for idx in range(k):
        a = lo if not eigs else max(lo, eigs[-1] - eff_tol)
        b = hi
        iterations = 0
        while b - a > eff_tol:
            iterations += 1
            if iterations > _MAX_BISECTIONS:
                raise NumericError("bisection failed to shrink the eigenvalue bracket")
            mid = 0.5 * (a + b)
            if not a < mid < b:
                break  # float resolution reached
            if sturm_count(op, mid) >= idx + 1:
                b = mid
            else:
                a = mid
        eigs.append(0.5 * (a + b))
    return eigs


class _SingularShift(Exception):
    pass


def _solve_shifted(diag, off, shift, rhs):
    """Solve (T - shift*I) x = rhs by Gaussian elimination with partial pivoting.

    T is symmetric tridiagonal (diag, off).  Pivoting introduces one extra
    superdiagonal of fill, tracked in C.
    """
    n = len(diag)
    A = np.empty(n)
    B = np.zeros(n)
    C = np.zeros(n)
    A[0] = diag[0] - shift
    if n > 1:
        B[0] = off[0]
    y = np.array(rhs, dtype=float)
    for i in range(n - 1):
        r2_a = off[i]
        r2_b = diag[i + 1] - shift
        r2_c = off[i + 1] if i + 2 < n else 0.0
        r2_y = y[i + 1]
        if abs(r2_a) > abs(A[i]):
            A[i], r2_a = r2_a, A[i]
            B[i], r2_b = r2_b, B[i]
            C[i], r2_c = r2_c, C[i]
            y[i], r2_y = r2_y, y[i]
        if A[i] == 0.0:
            raise _SingularShift
        m = r2_a / A[i]
        A[i + 1] = r2_b - m * B[i]
        B[i + 1] = r2_c - m * C[i]
        y[i + 1] = r2_y - m * y[i]
    if A[n - 1] == 0.0:
        raise _SingularShift
    x = np.empty(n)
    x[n - 1] = y[n - 1] / A[n - 1]
    if n >= 2:
        x[n - 2] = (y[n - 2] - B[n - 2] * x[n - 1]) / A[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (y[i] - B[i] * x[i + 1] - C[i] * x[i + 2]) / A[i]
    return x


def _matvec(op: TridiagonalOperator, x):
    y = op.diag * x
    y[:-1] += op.off * x[1:]
    y[1:] += op.off * x[:-1]
    return y


def _first_extremum_sign(v: np.ndarray) -> float:
    """Sign of the first interior local extremum with non-negligible amplitude."""
    amax = np.max(np.abs(v))
    if amax == 0.0:
        return 1.0
    floor = 1e-6 * amax
    for i in range(1, len(v) - 1):
        if abs(v[i]) < floor:
            continue
        if (v[i] - v[i - 1]) * (v[i + 1] - v[i]) <= 0.0:
            return 1.0 if v[i] > 0 else -1.0
    peak = int(np.argmax(np.abs(v)))
    return 1.0 if v[peak] >= 0 else -1.0


def eigenvector(op: TridiagonalOperator, lam: float, tol: float = 1e-10) -> np.ndarray:
    """Eigenvector for a converged eigenvalue lam via inverse iteration.

    Deterministic: all-ones start, at most a handful of iterations, shift
    micro-perturbed if the factorization hits an exactly singular pivot.

    Returns the full-grid samples (zeros at the Dirichlet walls), normalized
    to unit quadrature norm, with the sign fixed so the first extremum is
    positive.  Raises NumericError if the residual check fails.
    """
    n = op.size
    scale = max(abs(lam), float(np.max(np.abs(op.diag))), 1.0)
    x = None
    for attempt in range(4):
        shift = lam + attempt * 64.0 * _EPS * scale
        try:
            x_try = np.ones(n)
            for _ in range(_INVERSE_ITERATIONS):
                x_new = _solve_shifted(op.diag, op.off, shift, x_try)
                nrm = float(np.linalg.norm(x_new))
                if nrm == 0.0 or not math.isfinite(nrm):
                    raise _SingularShift
                x_try = x_new / nrm
        except _SingularShift:
            continue
        x = x_try
        break
    if x is None:
        raise NumericError("inverse iteration could not factor the shifted operator")

    residual = float(np.linalg.norm(_matvec(op, x) - lam * x))
    if residual > 10.0 * max(tol, 64.0 * _EPS * scale):
        raise NumericError(
            f"inverse iteration residual {residual:.3e} too large for shift {lam!r}"
        )
    full = np.zeros(op.grid.n_points)
    full[1:-1] = x
    full *= _first_extremum_sign(full)
    full /= math.sqrt(quadrature(full * full, op.grid))
    return full


# --------------------------------------------------------------------------
# Quadrature


def quadrature(f_samples, grid: RadialGrid) -> float:
    """Integral of tabulated f over the grid by composite Simpson.

    Even sample counts fall back to the trapezoid rule on the last interval.
    """
    y = np.asarray(f_samples, dtype=float)
    if y.shape != (grid.n_points,):
        raise ValueError("f_samples must have one entry per grid point")
    h = grid.h
    if len(y) % 2 == 1:
        return _simpson_odd(y, h)
    return _simpson_odd(y[:-1], h) + 0.5 * h * (y[-2] + y[-1])


def _simpson_odd(y, h) -> float:
    w = np.ones(len(y))
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(h / 3.0 * (w @ y))


def cumulative_quadrature(f_samples, grid: RadialGrid) -> np.ndarray:
    """Running integral I[j] = int_{r_0}^{r_j} f, Simpson-accurate at every node.

    Even indices come from cumulated Simpson pairs; odd ones add a
    quadratic-interpolation half step, h/12 * (5 f_{j-1} + 8 f_j - f_{j+1}).
    """
    y = np.asarray(f_samples, dtype=float)
    if y.shape != (grid.n_points,):
        raise ValueError("f_samples must have one entry per grid point")
    n = len(y)
    h = grid.h
    out = np.zeros(n)
    m = (n - 1) // 2
    if m > 0:
        pairs = h / 3.0 * (y[0:2 * m - 1:2] + 4.0 * y[1:2 * m:2] + y[2:2 * m + 1:2])
        out[2:2 * m + 1:2] = np.cumsum(pairs)
    j = np.arange(1, n, 2)
    j_in = j[j <= n - 2]
    out[j_in] = out[j_in - 1] + h / 12.0 * (5.0 * y[j_in - 1] + 8.0 * y[j_in] - y[j_in + 1])
    if n % 2 == 0:
        out[n - 1] = out[n - 2] + h / 12.0 * (-y[n - 3] + 8.0 * y[n - 2] + 5.0 * y[n - 1])
    return out


# --------------------------------------------------------------------------
# Isospectrality


@dataclass(frozen=True)
class IsospectralReport:
    """Pairing of the partner spectra: eigs_plus[i] against eigs_minus[i+1]."""

    eigs_minus: tuple
    eigs_plus: tuple
    deviations: tuple
    max_abs_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation < self.tolerance


def isospectral_check(v_minus, v_plus, grid: RadialGrid, k: int = 5,
                      tol: float = 2e-3) -> IsospectralReport:
    """Verify the partner-spectrum shift: the i-th level of V+ matches the
    (i+1)-th level of V- for the first k-1 pairs."""
    if k < 2:
        raise ValueError("need k >= 2 to form at least one pair")
    op_m = discretize(v_minus, grid)
    op_p = discretize(v_plus, grid)
    eigs_m = lowest_eigenvalues(op_m, k)
    eigs_p = lowest_eigenvalues(op_p, k - 1)
    deviations = tuple(eigs_p[i] - eigs_m[i + 1] for i in range(k - 1))
    return IsospectralReport(
        eigs_minus=tuple(eigs_m),
        eigs_plus=tuple(eigs_p),
        deviations=deviations,
        max_abs_deviation=max(abs(d) for d in deviations),
        tolerance=tol,
    )
