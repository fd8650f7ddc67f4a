"""CODATA 2018 physical constants, SI units throughout.

Values are pinned at build time rather than imported from scipy so that
every derived number in this package is reproducible to the last digit
independent of the installed scipy release.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# exact (SI redefinition) values
PLANCK = 6.62607015e-34           # J s
HBAR = PLANCK / (2.0 * math.pi)   # J s, exact relation, not the rounded display value
SPEED_OF_LIGHT = 299_792_458.0    # m / s
ELEMENTARY_CHARGE = 1.602176634e-19  # C
BOLTZMANN = 1.380649e-23          # J / K

# measured values
BOHR_RADIUS = 5.29177210903e-11   # m
VACUUM_PERMITTIVITY = 8.8541878128e-12  # F / m
RYDBERG_ENERGY = 2.1798723611035e-18    # J, hc R_infinity
BOHR_MAGNETON = 9.2740100783e-24  # J / T
FINE_STRUCTURE = 7.2973525693e-3
ELECTRON_MASS = 9.1093837015e-31  # kg

COULOMB_CONSTANT = 1.0 / (4.0 * math.pi * VACUUM_PERMITTIVITY)  # N m^2 / C^2


@dataclass(frozen=True)
class Constants:
    """Bundle of the constants used across the package.

    Internal consistency (checked by the test suite):
    rydberg_energy == fine_structure^2 * electron_mass * c^2 / 2 to 1e-9
    relative, and bohr_magneton / h == 1.3996 MHz/G to 1e-4 relative.
    """

    hbar: float = HBAR
    c: float = SPEED_OF_LIGHT
    elementary_charge: float = ELEMENTARY_CHARGE
    bohr_radius: float = BOHR_RADIUS
    vacuum_permittivity: float = VACUUM_PERMITTIVITY
    rydberg_energy: float = RYDBERG_ENERGY
    boltzmann: float = BOLTZMANN
    bohr_magneton: float = BOHR_MAGNETON
    fine_structure: float = FINE_STRUCTURE
    electron_mass: float = ELECTRON_MASS


CODATA2018 = Constants()

# Bohr magneton in frequency units, Hz per gauss. Used for every Zeeman
# shift in the package (mu_B B m is quoted in MHz at gauss-level fields).
MU_B_HZ_PER_G = BOHR_MAGNETON / PLANCK * 1e-4
