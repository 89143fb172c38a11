"""Exception hierarchy.

``InputError`` subclasses signal malformed or inconsistent user input and map
to CLI exit code 2. Everything else is a runtime finding (a check that cannot
be completed, a tolerance that cannot be met, ...).
"""


class CfrootsError(Exception):
    """Base class for all package errors."""


class InputError(CfrootsError):
    """Invalid input (spec, config, grid geometry, phase indices)."""


# support geometry
class NonPositiveB0(InputError):
    """Central component half-width must be strictly positive."""


class OrderingViolation(InputError):
    """Component endpoints violate the strict interleaving order."""


class InfiniteNonLast(InputError):
    """Only the last positive component may extend to +infinity."""


# kernel
class NonPositiveRho(InputError):
    """Kernel half-width must be strictly positive."""


class KernelViolation(CfrootsError):
    """A seed-kernel property check failed; the message names the property."""


# construction / family
class PhaseOutOfRange(InputError):
    """Phase index outside 0..n-1."""


class DimensionMismatch(InputError):
    """Phase vectors of different length or different modulus."""


class EnumerationOverflow(InputError):
    """Family size n**k exceeds the configured enumeration cap."""


class ProbeAtZero(CfrootsError):
    """The base characteristic function vanishes at a probe point."""


class NotARoot(CfrootsError):
    """A probe ratio is not close to any n-th root of unity."""


# sampled-grid analysis
class AsymmetricGrid(InputError):
    """Grid abscissas are not symmetric about 0."""


class GridMismatch(InputError):
    """Two grids that must share abscissas do not."""


class ResolutionTooCoarse(InputError):
    """Grid step too large to resolve the gaps between components."""


class UnboundedSupport(InputError):
    """Quadrature requested for a function without compact support."""


class ModulusMismatch(CfrootsError):
    """|f| and |g| differ on the essential support."""


class NonConstantRatio(CfrootsError):
    """g/f is not constant on a support component."""


# distribution
class ToleranceUnreachable(CfrootsError):
    """Requested accuracy needs a quadrature window beyond the configured cap."""
