"""Domain errors raised by the ladder library.

Validation problems (bad arguments, malformed input) raise plain ValueError;
everything here signals a physics-level precondition failure and maps to CLI
exit code 3.
"""


class CreutzError(Exception):
    """Base class for domain errors."""


class MetallicSystem(CreutzError):
    """Band gap closes on the probe grid; band eigenvectors are ill-defined."""


class PathThroughOrigin(CreutzError):
    """The (dz, dx) curve passes through the origin; winding undefined."""


class FlatBandRequired(CreutzError):
    """Operation only valid in the flat-band limit m = 0, phi = +/-pi."""


class BulkOnly(CreutzError):
    """Operation only valid on bulk sites (end rungs excluded)."""


class RungsPresent(CreutzError):
    """Closed-form state requires m = 0 (no rung hoppings)."""


class DimensionMismatch(CreutzError):
    """Operator and state dimensions disagree."""


class NonHermitian(CreutzError):
    """Matrix fails the Hermiticity check."""


class NoMinimumFound(CreutzError):
    """Occupation series has no interior minimum."""


class NoMidgapState(CreutzError):
    """No eigenstate lies inside the bulk gap."""


class SymmetryViolation(CreutzError):
    """Two-particle amplitudes are not exchange symmetric."""
