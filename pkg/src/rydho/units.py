"""Quantities with explicit units and the conversions the package needs.

Internal canonical system is SI. Spectroscopic units are converted at the
boundary: wavenumbers via E = h c nu_tilde, frequencies via E = h nu,
angular frequencies via E = hbar omega. Energy, frequency and angular
frequency are treated as one dimension since the package exchanges them
freely; rates (decay constants, 1/s) are deliberately kept separate so a
linewidth can never silently acquire a 2 pi.

This is not a general units framework. Only the dimensions the package
actually exchanges are here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .constants import HBAR, PLANCK, SPEED_OF_LIGHT


class Dimension(Enum):
    LENGTH = "length"
    ENERGY = "energy"  # includes frequency and angular-frequency units
    TIME = "time"
    RATE = "rate"
    TEMPERATURE = "temperature"
    MAGNETIC_FIELD = "magnetic_field"
    INTENSITY = "intensity"
    POWER = "power"
    VDW_COEFFICIENT = "vdw_coefficient"
    NUMBER_DENSITY = "number_density"


class Unit(Enum):
    """Supported units. value = (dimension, scale to canonical SI unit)."""

    # length, canonical m
    M = (Dimension.LENGTH, 1.0)
    UM = (Dimension.LENGTH, 1e-6)
    NM = (Dimension.LENGTH, 1e-9)
    # energy / frequency, canonical J
    J = (Dimension.ENERGY, 1.0)
    CM1 = (Dimension.ENERGY, PLANCK * SPEED_OF_LIGHT * 100.0)
    GHZ = (Dimension.ENERGY, PLANCK * 1e9)
    MHZ = (Dimension.ENERGY, PLANCK * 1e6)
    KHZ = (Dimension.ENERGY, PLANCK * 1e3)
    HZ = (Dimension.ENERGY, PLANCK)
    RAD_PER_S = (Dimension.ENERGY, HBAR)
    # time, canonical s
    S = (Dimension.TIME, 1.0)
    US = (Dimension.TIME, 1e-6)
    NS = (Dimension.TIME, 1e-9)
    # rate, canonical 1/s
    PER_S = (Dimension.RATE, 1.0)
    # temperature, canonical K
    K = (Dimension.TEMPERATURE, 1.0)
    UK = (Dimension.TEMPERATURE, 1e-6)
    # magnetic field, canonical T
    T = (Dimension.MAGNETIC_FIELD, 1.0)
    G = (Dimension.MAGNETIC_FIELD, 1e-4)
    # intensity, canonical W/m^2
    W_PER_M2 = (Dimension.INTENSITY, 1.0)
    # power, canonical W
    W = (Dimension.POWER, 1.0)
    # van der Waals C6, canonical J m^6
    J_M6 = (Dimension.VDW_COEFFICIENT, 1.0)
    # number density, canonical 1/m^3
    PER_M3 = (Dimension.NUMBER_DENSITY, 1.0)
    PER_CM3 = (Dimension.NUMBER_DENSITY, 1e6)

    @property
    def dimension(self) -> Dimension:
        return self.value[0]

    @property
    def si_scale(self) -> float:
        return self.value[1]


class UnitError(ValueError):
    """Raised for conversions between incompatible dimensions."""


@dataclass(frozen=True)
class Quantity:
    """A real value tagged with a physical unit."""

    value: float
    unit: Unit

    def to(self, target: Unit) -> "Quantity":
        return convert(self, target)

    @property
    def si(self) -> float:
        """Magnitude in the canonical SI unit of this quantity's dimension."""
        return self.value * self.unit.si_scale

    def __format__(self, spec: str) -> str:
        return f"{self.value:{spec}} {self.unit.name}"


def convert(q: Quantity, target: Unit) -> Quantity:
    """Convert a quantity to a compatible unit.

    Raises UnitError naming both units if the dimensions differ. Zero is
    converted like any other magnitude (it is unit-free in effect).
    """
    if q.unit.dimension is not target.dimension:
        raise UnitError(
            f"cannot convert {q.unit.name} ({q.unit.dimension.value}) "
            f"to {target.name} ({target.dimension.value})"
        )
    if q.unit is target:
        return q
    return Quantity(q.value * q.unit.si_scale / target.si_scale, target)


def magnitude(x: "Quantity | float", unit: Unit) -> float:
    """Magnitude of x in the given unit.

    Quantities are converted (with dimension checking); bare floats are
    assumed to already carry the requested unit.
    """
    if isinstance(x, Quantity):
        return convert(x, unit).value
    return float(x)
