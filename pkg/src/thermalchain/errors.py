"""Exception types shared across the package."""


class ThermalChainError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(ThermalChainError):
    """Operands have incompatible dimensions."""


class NotHermitianError(ThermalChainError):
    """A matrix required to be Hermitian is not, within tolerance."""


class IndexOutOfRangeError(ThermalChainError, IndexError):
    """A site index falls outside the chain."""


class FrequencyTooSmallError(ThermalChainError):
    """A transition frequency is too close to zero for the Bose occupancy
    (or a jump channel would sit at a vanishing Bohr frequency)."""


class NearDegenerateGapError(ThermalChainError):
    """Two Bohr frequencies are close enough to make secular binning
    unreliable, but not close enough to merge."""


class DegenerateSteadyStateError(ThermalChainError):
    """The Liouvillian null space is not one-dimensional."""


class ToleranceNotMetError(ThermalChainError):
    """The time integrator could not meet the requested accuracy."""


class PositivityLostError(ThermalChainError):
    """An evolved state developed a significantly negative eigenvalue."""


class ConfigError(ThermalChainError):
    """An experiment configuration is invalid."""
