"""Exception taxonomy shared across the package.

Two broad families matter to callers: input/usage problems (bad grids,
malformed expressions) and numerical problems discovered mid-computation
(poles, degenerate geometry, integrator drift). The CLI maps the former
to exit code 2 and the latter to exit code 3.
"""


class CurveRecError(Exception):
    """Base class for all curverec-specific errors."""


class InputError(CurveRecError, ValueError):
    """Invalid argument or configuration detected before any numerics run."""


class GridError(InputError):
    """Grid violates a structural requirement (odd interval count, s1 <= s0, ...)."""


class NonOrthonormalFrameError(InputError):
    """Initial frame fails the orthonormality / right-handedness check."""


class ProfileRangeError(InputError):
    """Evaluation point lies outside a tabulated profile's covered range."""


class NumericalError(CurveRecError, ArithmeticError):
    """Problem discovered while computing (pole, drift, degeneracy, ...)."""


class PoleError(NumericalError):
    """Stereographic map evaluated at or too near its pole."""


class CoincidentSolutionsError(NumericalError):
    """The two Moebius-pair solutions coincide; the frame map is singular."""


class SingularMatrixError(NumericalError):
    """2x2 matrix determinant vanishes where an inverse or quotient is needed."""


class DegenerateInputError(NumericalError):
    """Point set carries no usable geometry for the requested fit (e.g. a straight line for a cylinder-axis fit)."""


class GridMismatchError(NumericalError):
    """Two sample sets that must share a grid do not."""


class IntegrationDriftError(NumericalError):
    """An internal consistency bound was exceeded (e.g. imaginary residue of a reconstructed tangent)."""
