"""Shared domain types: units, radial grids, model specifications, spectra.

Everything downstream (superpotentials, closed-form spectra, the numerical
solver, the CLI) works in terms of the values defined here.  All types are
immutable; natural units (hbar = m = c = e = 4*pi*eps0 = 1) are the default
and every formula in the package is quoted in that convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np


class DomainError(ValueError):
    """An input lies outside the physical/mathematical domain of an operation."""


class NoBoundStateError(DomainError):
    """The requested level does not exist as a bound state."""


class ConfigurationError(ValueError):
    """A model or grid configuration is structurally invalid."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or to verify its own result."""


@dataclass(frozen=True)
class Units:
    """Physical constants entering the radial equations.

    Defaults are natural units.  `eps0` is the permittivity absorbed into the
    Coulomb coupling; it only matters if you build kappa yourself.
    """

    hbar: float = 1.0
    mass: float = 1.0
    c: float = 1.0
    e_charge: float = 1.0
    eps0: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "c", "e_charge", "eps0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"units field {name!r} must be strictly positive")


NATURAL_UNITS = Units()


@dataclass(frozen=True)
class RadialGrid:
    """Uniform one-dimensional mesh on [r_min, r_max] with n_points samples."""

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise ConfigurationError("a radial grid needs at least 3 points")
        if not self.r_min < self.r_max:
            raise ConfigurationError("grid requires r_min < r_max")

    @property
    def h(self) -> float:
        """Uniform spacing."""
        return (self.r_max - self.r_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)


class Family(enum.Enum):
    """The six potential families plus user-tabulated superpotentials."""

    OSCILLATOR = "oscillator"
    COULOMB = "coulomb"
    MORSE = "morse"
    ANHARMONIC_QES = "anharmonic"
    SEXTIC_QES = "sextic"
    DEFORMED_COULOMB_QES = "deformed-coulomb"
    CUSTOM = "custom"


#: Families with only the ground state known in closed form.
QES_FAMILIES = frozenset(
    {Family.ANHARMONIC_QES, Family.SEXTIC_QES, Family.DEFORMED_COULOMB_QES}
)

#: Families whose superpotential is singular at the origin; grids must keep r_min > 0.
SINGULAR_FAMILIES = frozenset(
    {Family.OSCILLATOR, Family.COULOMB, Family.SEXTIC_QES, Family.DEFORMED_COULOMB_QES}
)


def omega_total(omega: float, B: float, units: Units = NATURAL_UNITS) -> float:
    """Total oscillator frequency: mechanical omega plus the Larmor term e*B/(2m)."""
    if omega < 0 or B < 0:
        raise DomainError("omega and B must be nonnegative")
    return omega + units.e_charge * B / (2.0 * units.mass)


def _validate_oscillator(spec: "ModelSpec") -> None:
    p = spec.params
    omega, B = p["omega"], p["B"]
    if omega < 0 or B < 0:
        raise ConfigurationError("oscillator requires omega >= 0 and B >= 0")
    if not omega_total(omega, B, spec.units) > 0:
        raise ConfigurationError("oscillator requires omega_T = omega + eB/2m > 0")
    if spec.ell < 0:
        raise ConfigurationError("oscillator requires ell >= 0")


def _validate_coulomb(spec: "ModelSpec") -> None:
    if not spec.params["kappa"] > 0:
        raise ConfigurationError("coulomb requires kappa > 0")
    if spec.ell < 0:
        raise ConfigurationError("coulomb requires ell >= 0")


def _validate_morse(spec: "ModelSpec") -> None:
    p = spec.params
    if not (p["a"] > 0 and p["alpha"] > 0 and p["b"] > 0):
        raise ConfigurationError("morse requires a > 0, alpha > 0, b > 0")


def _validate_anharmonic(spec: "ModelSpec") -> None:
    p = spec.params
    # b = 0 is admitted as the harmonic limit (omega_T > 0 keeps the zero
    # mode normalizable); it is needed as a comparator configuration.
    if not p["omega_T"] > 0:
        raise ConfigurationError("anharmonic requires omega_T > 0")
    if p["b"] < 0:
        raise ConfigurationError("anharmonic requires b >= 0")


def _validate_sextic(spec: "ModelSpec") -> None:
    p = spec.params
    if not p["omega_T"] > 0:
        raise ConfigurationError("sextic requires omega_T > 0")
    if p["b"] < 0:
        raise ConfigurationError("sextic requires b >= 0")
    if spec.ell < 0:
        raise ConfigurationError("sextic requires ell >= 0")


def _validate_deformed_coulomb(spec: "ModelSpec") -> None:
    p = spec.params
    if not p["e2"] > 0:
        raise ConfigurationError("deformed-coulomb requires e2 > 0")
    if p["omega_T"] < 0:
        raise ConfigurationError("deformed-coulomb requires omega_T >= 0")
    if spec.ell < 0:
        raise ConfigurationError("deformed-coulomb requires ell >= 0")


def _validate_custom(spec: "ModelSpec") -> None:
    p = spec.params
    for key in ("grid", "w_samples", "w_prime_samples"):
        if key not in p or p[key] is None:
            raise ConfigurationError(
                "custom family requires tabulated 'grid', 'w_samples' and 'w_prime_samples'"
            )
    grid = p["grid"]
    if not isinstance(grid, RadialGrid):
        raise ConfigurationError("custom 'grid' must be a RadialGrid")
    for key in ("w_samples", "w_prime_samples"):
        if len(p[key]) != grid.n_points:
            raise ConfigurationError(f"custom {key} must have grid.n_points entries")


_VALIDATORS = {
    Family.OSCILLATOR: _validate_oscillator,
    Family.COULOMB: _validate_coulomb,
    Family.MORSE: _validate_morse,
    Family.ANHARMONIC_QES: _validate_anharmonic,
    Family.SEXTIC_QES: _validate_sextic,
    Family.DEFORMED_COULOMB_QES: _validate_deformed_coulomb,
    Family.CUSTOM: _validate_custom,
}

_REQUIRED_PARAMS = {
    Family.OSCILLATOR: ("omega", "B"),
    Family.COULOMB: ("kappa",),
    Family.MORSE: ("a", "alpha", "b"),
    Family.ANHARMONIC_QES: ("a", "omega_T", "b"),
    Family.SEXTIC_QES: ("omega_T", "b"),
    Family.DEFORMED_COULOMB_QES: ("e2", "omega_T"),
    Family.CUSTOM: (),
}


@dataclass(frozen=True)
class ModelSpec:
    """One of the potential families with its parameters, angular label and units.

    Parameter records are plain mappings; use the per-family constructors
    below rather than building the dict by hand.
    """

    family: Family
    params: Mapping
    ell: int = 0
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        missing = [k for k in _REQUIRED_PARAMS[self.family] if k not in self.params]
        if missing:
            raise ConfigurationError(
                f"{self.family.value} model missing parameters: {', '.join(missing)}"
            )
        _VALIDATORS[self.family](self)

    @property
    def is_qes(self) -> bool:
        return self.family in QES_FAMILIES


def oscillator_model(omega: float, B: float = 0.0, ell: int = 0,
                     units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.OSCILLATOR, {"omega": float(omega), "B": float(B)}, ell, units)


def coulomb_model(kappa: float, ell: int = 0, units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.COULOMB, {"kappa": float(kappa)}, ell, units)


def morse_model(a: float, alpha: float, b: float, units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.MORSE, {"a": float(a), "alpha": float(alpha), "b": float(b)},
                     0, units)


def anharmonic_model(a: float, omega_T: float, b: float,
                     units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.ANHARMONIC_QES,
                     {"a": float(a), "omega_T": float(omega_T), "b": float(b)}, 0, units)


def sextic_model(omega_T: float, b: float, ell: int = 0,
                 units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.SEXTIC_QES, {"omega_T": float(omega_T), "b": float(b)}, ell, units)


def deformed_coulomb_model(e2: float, omega_T: float, ell: int = 0,
                           units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(Family.DEFORMED_COULOMB_QES,
                     {"e2": float(e2), "omega_T": float(omega_T)}, ell, units)


def custom_model(grid: RadialGrid, w_samples, w_prime_samples,
                 units: Units = NATURAL_UNITS) -> ModelSpec:
    return ModelSpec(
        Family.CUSTOM,
        {
            "grid": grid,
            "w_samples": np.asarray(w_samples, dtype=float),
            "w_prime_samples": np.asarray(w_prime_samples, dtype=float),
        },
        0,
        units,
    )


# --------------------------------------------------------------------------
# Energies


def epsilon_to_energy(epsilon_sq: float, units: Units = NATURAL_UNITS) -> tuple[float, float]:
    """Map the shifted squared eigenvalue to the (+E, -E) energy pair.

    E = sqrt(m^2 c^4 + hbar^2 c^2 * epsilon_sq); both signs are physical
    branches of the relativistic dispersion.

    Raises:
        DomainError: for negative epsilon_sq (non-physical level).
    """
    if epsilon_sq < 0:
        raise DomainError("epsilon_sq must be nonnegative")
    return _energy_pair(epsilon_sq, units)


def _energy_pair(epsilon_sq: float, units: Units) -> tuple[float, float]:
    """Energy pair without the sign gate.

    Numerical spectra legitimately produce tiny negative epsilon_sq for an
    exact zero mode; this helper only requires the total squared energy to
    stay nonnegative so the E^2 - m^2 c^4 = hbar^2 c^2 eps^2 identity holds
    exactly on every emitted row.
    """
    m, c, hbar = units.mass, units.c, units.hbar
    arg = (m * c * c) ** 2 + (hbar * c) ** 2 * epsilon_sq
    if arg < 0:
        raise DomainError("epsilon_sq below the sub-rest-mass bound; no real energy")
    e = math.sqrt(arg)
    return (e, -e)


def nonrelativistic_limit(epsilon_sq: float, units: Units = NATURAL_UNITS) -> float:
    """First-order expansion of E - mc^2: returns hbar^2 * epsilon_sq / (2m)."""
    if epsilon_sq < 0:
        raise DomainError("epsilon_sq must be nonnegative")
    return units.hbar ** 2 * epsilon_sq / (2.0 * units.mass)


# --------------------------------------------------------------------------
# Spectra


class Source(enum.Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class SpectrumLevel:
    n: int
    epsilon_sq: float
    energy_plus: float
    energy_minus: float
    source: Source


@dataclass(frozen=True)
class SpectrumResult:
    """Ordered bound-state levels with provenance."""

    levels: tuple

    def __post_init__(self):
        prev = None
        for lvl in self.levels:
            if prev is not None and lvl.epsilon_sq < prev - 1e-9 * max(1.0, abs(prev)):
                raise ValueError("epsilon_sq must be nondecreasing in n")
            prev = lvl.epsilon_sq

    def epsilon_sq_values(self) -> np.ndarray:
        return np.array([lvl.epsilon_sq for lvl in self.levels])


def spectrum_result(epsilon_sqs, units: Units, source: Source) -> SpectrumResult:
    """Assemble a SpectrumResult from epsilon^2 values for n = 0, 1, ..."""
    levels = []
    for n, eps2 in enumerate(epsilon_sqs):
        ep, em = _energy_pair(float(eps2), units)
        levels.append(SpectrumLevel(n, float(eps2), ep, em, source))
    return SpectrumResult(tuple(levels))
