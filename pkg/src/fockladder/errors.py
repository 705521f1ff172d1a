"""Exception types shared across the package."""


class DomainError(ValueError):
    """A native channel parameter lies outside its admissible domain."""

    def __init__(self, name, value, requirement):
        self.name = name
        self.value = value
        self.requirement = requirement
        super().__init__(f"{name}={value!r} violates {requirement}")


class TruncationError(RuntimeError):
    """The photon-number cutoff needed to reach the requested tail mass
    exceeds the configured hard cap."""


class NormalizationError(ValueError):
    """Weights plus tail do not form a probability distribution within
    tolerance."""


class WitnessError(RuntimeError):
    """An operator identity that certifies a majorization relation failed
    numerically (beyond tolerance)."""
