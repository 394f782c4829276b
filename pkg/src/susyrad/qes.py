"""Quasi-exactly-solvable families: anharmonic, sextic, deformed Coulomb.

Only the lower-partner zero mode is known in closed form for these models
(epsilon^2 = 0 by construction); everything above it comes from the
finite-difference solver.  The closed-form f_0 written here is deliberately
independent of superpot.ground_state_from_w so the two construction paths
can be cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigurationError,
    DomainError,
    Family,
    ModelSpec,
    RadialGrid,
    Source,
    SpectrumResult,
    spectrum_result,
)
from .numsolve import discretize, lowest_eigenvalues, quadrature
from .superpot import PartnerPotentials, partner_potentials, superpotential_from_model

_DECAY_CEILING = 1e-6


def _require_qes(model: ModelSpec, what: str) -> None:
    if not model.is_qes:
        raise ConfigurationError(f"{what} requires a quasi-exactly-solvable family")


def qes_partner_potentials(model: ModelSpec, grid: RadialGrid) -> PartnerPotentials:
    """V_- and V_+ for a QES model, generated from W (not transcribed)."""
    _require_qes(model, "qes_partner_potentials")
    return partner_potentials(superpotential_from_model(model), grid)


@dataclass(frozen=True)
class QesGroundState:
    """Closed-form zero mode with its self-check residual.

    residual_sup is sup |(-f'' + V_- f)| / sup |f| over the grid interior,
    an O(h^2) discretization of how well f_0 annihilates the lower problem
    at epsilon^2 = 0.
    """

    grid: RadialGrid
    f0: np.ndarray
    epsilon_sq: float
    residual_sup: float


def _exponent(model: ModelSpec, r: np.ndarray) -> np.ndarray:
    p, ell = model.params, model.ell
    if model.family is Family.ANHARMONIC_QES:
        return -(p["b"] * r**3 / 3.0 + p["omega_T"] * r**2 / 2.0 + p["a"] * r)
    if model.family is Family.SEXTIC_QES:
        if np.min(r) <= 0.0:
            raise DomainError("sextic zero mode requires r_min > 0")
        return ell * np.log(r) - p["omega_T"] * r**2 / 2.0 - p["b"] * r**4 / 4.0
    # deformed Coulomb
    if np.min(r) <= 0.0:
        raise DomainError("deformed-coulomb zero mode requires r_min > 0")
    return ((ell + 1.0) * np.log(r) - p["omega_T"] * r**2 / 2.0
            - p["e2"] * r / (2.0 * (ell + 1.0)))


def qes_ground_state(model: ModelSpec, grid: RadialGrid) -> QesGroundState:
    """Normalized closed-form zero mode of V_- with its residual check.

    Raises DomainError if the mode fails to decay at r_max (window too short
    or non-normalizable parameters).
    """
    _require_qes(model, "qes_ground_state")
    r = grid.points()
    g = _exponent(model, r)
    g = g - np.max(g)
    f = np.exp(g)
    if f[-1] > _DECAY_CEILING:
        raise DomainError(
            "zero mode does not decay at r_max; enlarge the window or check parameters"
        )
    f = f / math.sqrt(quadrature(f * f, grid))

    v_minus = qes_partner_potentials(model, grid).v_minus
    h = grid.h
    lap = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h**2
    res = -lap + v_minus[1:-1] * f[1:-1]
    residual_sup = float(np.max(np.abs(res)) / np.max(np.abs(f)))
    return QesGroundState(grid=grid, f0=f, epsilon_sq=0.0, residual_sup=residual_sup)


def qes_numeric_spectrum(model: ModelSpec, grid: RadialGrid, k: int) -> SpectrumResult:
    """First k levels of the QES lower problem from the finite-difference solver.

    Level 0 should land at epsilon^2 ~ 0 up to O(h^2) and wall-truncation
    error whenever the zero mode is compatible with the Dirichlet window.
    """
    _require_qes(model, "qes_numeric_spectrum")
    if k < 1:
        raise ValueError("k must be at least 1")
    pp = qes_partner_potentials(model, grid)
    eigs = lowest_eigenvalues(discretize(pp.v_minus, grid), k)
    return spectrum_result(eigs, model.units, Source.NUMERIC)
