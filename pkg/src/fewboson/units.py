"""Conversion of physical scattering parameters to the dimensionless 1D coupling.

All lengths are measured in units of the longitudinal oscillator length, all
energies in units of the longitudinal trap frequency.  The only knobs that
survive the rescaling are the scaled 3D scattering length a0' and the scaled
transverse confinement length aperp'.
"""

from dataclasses import dataclass

# Confinement-induced-resonance constant, C = -zeta(1/2).
C_RESONANCE = 1.4603545088095868


class ResonanceError(ValueError):
    """Raised when the parameters sit on the confinement-induced resonance."""


@dataclass(frozen=True)
class PhysicalParams:
    """Scaled scattering length and transverse length (both in units of the
    longitudinal oscillator length)."""

    a0_scaled: float
    aperp_scaled: float

    def __post_init__(self):
        if self.a0_scaled < 0:
            raise ValueError(f"a0_scaled must be >= 0, got {self.a0_scaled}")
        if self.aperp_scaled <= 0:
            raise ValueError(f"aperp_scaled must be > 0, got {self.aperp_scaled}")


def coupling_strength_1d(p: PhysicalParams) -> float:
    """Effective 1D coupling g' = (4 a0'/aperp'^2) / (1 - C a0'/aperp').

    The value diverges at a0' = aperp'/C and is negative past that resonance;
    negative results are returned as-is (rejecting attractive couplings is the
    solver's job, not this function's).
    """
    denom = 1.0 - C_RESONANCE * p.a0_scaled / p.aperp_scaled
    if abs(denom) < 1e-9:
        raise ResonanceError(
            f"a0'={p.a0_scaled}, aperp'={p.aperp_scaled} lies on the "
            "confinement-induced resonance (denominator "
            f"{denom:.3e})"
        )
    return 4.0 * p.a0_scaled / p.aperp_scaled**2 / denom
