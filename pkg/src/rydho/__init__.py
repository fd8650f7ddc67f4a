"""Feasibility engine and desk-scale simulator for a collectively encoded
Rydberg-array quantum processor built on holmium hyperfine structure.

Submodules:
    constants   CODATA 2018 values
    units       Quantity type and unit conversions
    scaling     van der Waals / gate-error / site-count scaling laws
    hyperfine   Ho ground-state structure, register map, selectivity
    transitions optical transition catalog
    trap        level-table-driven dipole trap model
    register    state-vector simulator of the encoded register protocol
    loading     Monte Carlo lattice-loading statistics
    config, cli run configuration and the command-line interface
"""

__version__ = "0.1.0"

from .units import Quantity, Unit, UnitError, convert  # noqa: F401
