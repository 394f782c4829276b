"""Superpotentials W(r), partner potentials and the first-order ladder operators.

The radial problem factorizes through W = l/r + (e A(r) + v(r))/hbar: the
partner potentials are V_- = W^2 - W' and V_+ = W^2 + W', the lower-partner
zero mode is exp(-int W), and the operators (d/dr + W) / (-d/dr + W) map
between the partner towers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    DomainError,
    Family,
    ModelSpec,
    RadialGrid,
    omega_total,
)
from .numsolve import cumulative_quadrature, quadrature

#: relative size at r_max above which exp(-int W) is rejected as non-normalizable
_DECAY_CEILING = 1e-6


@dataclass(frozen=True)
class SuperpotentialPieces:
    """The three physical ingredients of W: angular, magnetic, scalar.

    `ell_over_r` is the coefficient of the 1/r angular piece; `a_field` and
    `v_field` are callables giving e*A(r)/hbar and v(r)/hbar.  They always
    satisfy W(r) = ell_over_r / r + a_field(r) + v_field(r).
    """

    ell_over_r: float
    a_field: Callable
    v_field: Callable


@dataclass(frozen=True)
class Superpotential:
    """W(r) with its derivative, decomposition and singular/regular split.

    `singular_coefficient` is the total coefficient of 1/r in W (angular plus
    any centrifugal-like part of v); `w_regular` is W minus that singular
    term, which stays finite at the origin and integrates cleanly.
    """

    w: Callable
    w_prime: Callable
    pieces: SuperpotentialPieces
    singular_coefficient: float
    w_regular: Callable


def _sample(fn: Callable, r: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.asarray(fn(r), dtype=float) + np.zeros_like(r)


def superpotential_from_model(model: ModelSpec) -> Superpotential:
    """Build the closed-form superpotential for a model family."""
    hbar, mass, e = model.units.hbar, model.units.mass, model.units.e_charge
    ell = model.ell
    p = model.params

    if model.family is Family.OSCILLATOR:
        w_t = omega_total(p["omega"], p["B"], model.units)
        lam = mass * w_t / hbar
        c = -(ell + 1.0)
        larmor = e * p["B"] / (2.0 * hbar)
        mech = mass * p["omega"] / hbar
        return Superpotential(
            w=lambda r: lam * r + c / r,
            w_prime=lambda r: lam - c / r**2,
            pieces=SuperpotentialPieces(
                ell_over_r=float(ell),
                a_field=lambda r: larmor * r,
                v_field=lambda r: mech * r - (2.0 * ell + 1.0) / r,
            ),
            singular_coefficient=c,
            w_regular=lambda r: lam * r,
        )

    if model.family is Family.COULOMB:
        kappa = p["kappa"]
        const = kappa / (ell + 1.0)
        c = -(ell + 1.0)
        return Superpotential(
            w=lambda r: const + c / r,
            w_prime=lambda r: -c / r**2,
            pieces=SuperpotentialPieces(
                ell_over_r=float(ell),
                a_field=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                v_field=lambda r: const - (2.0 * ell + 1.0) / r,
            ),
            singular_coefficient=c,
            w_regular=lambda r: const + 0.0 * r,
        )

    if model.family is Family.MORSE:
        a, alpha, b = p["a"], p["alpha"], p["b"]
        return Superpotential(
            w=lambda r: b - a * np.exp(-alpha * r),
            w_prime=lambda r: a * alpha * np.exp(-alpha * r),
            pieces=SuperpotentialPieces(
                ell_over_r=0.0,
                a_field=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                v_field=lambda r: b - a * np.exp(-alpha * r),
            ),
            singular_coefficient=0.0,
            w_regular=lambda r: b - a * np.exp(-alpha * r),
        )

    if model.family is Family.ANHARMONIC_QES:
        a, w_t, b = p["a"], p["omega_T"], p["b"]
        return Superpotential(
            w=lambda r: a + w_t * r + b * r**2,
            w_prime=lambda r: w_t + 2.0 * b * r,
            pieces=SuperpotentialPieces(
                ell_over_r=0.0,
                a_field=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                v_field=lambda r: a + w_t * r + b * r**2,
            ),
            singular_coefficient=0.0,
            w_regular=lambda r: a + w_t * r + b * r**2,
        )

    if model.family is Family.SEXTIC_QES:
        w_t, b = p["omega_T"], p["b"]
        c = -float(ell)
        return Superpotential(
            w=lambda r: c / r + w_t * r + b * r**3,
            w_prime=lambda r: -c / r**2 + w_t + 3.0 * b * r**2,
            pieces=SuperpotentialPieces(
                ell_over_r=float(ell),
                a_field=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                v_field=lambda r: -2.0 * ell / r + w_t * r + b * r**3,
            ),
            singular_coefficient=c,
            w_regular=lambda r: w_t * r + b * r**3,
        )

    if model.family is Family.DEFORMED_COULOMB_QES:
        e2, w_t = p["e2"], p["omega_T"]
        const = e2 / (2.0 * (ell + 1.0))
        c = -(ell + 1.0)
        return Superpotential(
            w=lambda r: const + c / r + w_t * r,
            w_prime=lambda r: -c / r**2 + w_t,
            pieces=SuperpotentialPieces(
                ell_over_r=float(ell),
                a_field=lambda r: w_t * np.asarray(r, dtype=float),
                v_field=lambda r: const - (2.0 * ell + 1.0) / r,
            ),
            singular_coefficient=c,
            w_regular=lambda r: const + w_t * r,
        )

    # custom: tabulated samples, linearly interpolated
    grid = p["grid"]
    rs = grid.points()
    ws = np.asarray(p["w_samples"], dtype=float)
    wps = np.asarray(p["w_prime_samples"], dtype=float)

    def w_interp(r, _rs=rs, _ws=ws):
        out = np.interp(np.asarray(r, dtype=float), _rs, _ws)
        return float(out) if np.isscalar(r) else out

    def wp_interp(r, _rs=rs, _wps=wps):
        out = np.interp(np.asarray(r, dtype=float), _rs, _wps)
        return float(out) if np.isscalar(r) else out

    return Superpotential(
        w=w_interp,
        w_prime=wp_interp,
        pieces=SuperpotentialPieces(
            ell_over_r=0.0,
            a_field=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            v_field=w_interp,
        ),
        singular_coefficient=0.0,
        w_regular=w_interp,
    )


@dataclass(frozen=True)
class PartnerPotentials:
    """V_- and V_+ sampled on a common grid."""

    grid: RadialGrid
    v_minus: np.ndarray
    v_plus: np.ndarray


def partner_potentials(sp: Superpotential, grid: RadialGrid) -> PartnerPotentials:
    """Sample V_-+ = W^2 -+ W' on the grid.

    Raises DomainError if the samples are not finite on the interior (a grid
    wall sitting exactly on a singularity of W is tolerated, since Dirichlet
    solvers never read the wall values).
    """
    r = grid.points()
    w = _sample(sp.w, r)
    wp = _sample(sp.w_prime, r)
    with np.errstate(invalid="ignore", over="ignore"):
        v_minus = w * w - wp
        v_plus = w * w + wp
    if not (np.all(np.isfinite(v_minus[1:-1])) and np.all(np.isfinite(v_plus[1:-1]))):
        raise DomainError("partner potentials are singular inside the grid")
    return PartnerPotentials(grid=grid, v_minus=v_minus, v_plus=v_plus)


def _central_derivative(f: np.ndarray, h: float) -> np.ndarray:
    d = np.empty_like(f)
    d[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    d[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return d


def apply_lowering(sp: Superpotential, f_samples, grid: RadialGrid) -> np.ndarray:
    """Apply (d/dr + W) to tabulated f; O(h^2) finite-difference derivative."""
    f = np.asarray(f_samples, dtype=float)
    if f.shape != (grid.n_points,):
        raise ValueError("f_samples must have one entry per grid point")
    w = _sample(sp.w, grid.points())
    out = _central_derivative(f, grid.h) + w * f
    # W may blow up at a wall where f has an exact zero; that wall value is
    # meaningless downstream, so pin it instead of propagating inf * 0.
    out[~np.isfinite(out)] = 0.0
    return out


def apply_raising(sp: Superpotential, f_samples, grid: RadialGrid) -> np.ndarray:
    """Apply (-d/dr + W) to tabulated f; adjoint partner of apply_lowering."""
    f = np.asarray(f_samples, dtype=float)
    if f.shape != (grid.n_points,):
        raise ValueError("f_samples must have one entry per grid point")
    w = _sample(sp.w, grid.points())
    out = -_central_derivative(f, grid.h) + w * f
    out[~np.isfinite(out)] = 0.0
    return out


def ground_state_from_w(sp: Superpotential, grid: RadialGrid) -> np.ndarray:
    """Normalized lower-partner zero mode f_0 = exp(-int W) from W alone.

    The 1/r part of W is integrated in closed form (a power-law prefactor);
    the regular remainder goes through cumulative Simpson quadrature, which
    is exact for the polynomial superpotentials.  Raises DomainError when the
    result fails to decay at r_max (non-normalizable zero mode on this
    window, e.g. a sign-flipped W).
    """
    r = grid.points()
    exponent = -cumulative_quadrature(_sample(sp.w_regular, r), grid)
    c = sp.singular_coefficient
    if c != 0.0:
        if grid.r_min <= 0.0:
            raise DomainError("singular superpotential requires r_min > 0")
        exponent = exponent - c * np.log(r / grid.r_min)
    exponent -= np.max(exponent)
    f = np.exp(exponent)
    if f[-1] > _DECAY_CEILING:
        raise DomainError(
            "exp(-int W) does not decay at r_max; the zero mode is not "
            "normalizable on this window"
        )
    return f / math.sqrt(quadrature(f * f, grid))
