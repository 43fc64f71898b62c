"""Physical constants and unit helpers.

All frequency-valued inputs (config files, CLI flags, CSV columns) are
ordinary frequencies in Hz (cycles per second).  Solver internals work in
angular units (rad/s); the helpers below are the single conversion point.
"""

import math

HBAR = 1.054571817e-34  # reduced Planck constant, J s (CODATA 2018)
C_LIGHT = 299792458.0   # speed of light in vacuum, m/s
TWO_PI = 2.0 * math.pi


def angular(f_hz: float) -> float:
    """Ordinary frequency in Hz to angular frequency in rad/s."""
    return TWO_PI * f_hz


def ordinary(w_rad: float) -> float:
    """Angular frequency in rad/s to ordinary frequency in Hz."""
    return w_rad / TWO_PI
