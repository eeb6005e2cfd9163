"""Exception hierarchy for the blochgf package.

Numerical refusals are distinguished from plain bugs: every error below is a
statement about the *problem data* (a degeneracy hit, an inadmissible
deformation, a diverging limit), never about broken invariants of the code.
The CLI maps them onto exit codes: degeneracy refusals -> 3, numerical
failures -> 4.
"""


class BlochgfError(Exception):
    """Base class for all package errors."""


class SingularEvaluation(BlochgfError):
    """Spectral function evaluated on (or too close to) its polar set."""


class DegenerateWavenumber(BlochgfError):
    """Operation refused because k sits at a trace-topology degeneracy."""


class NonconvergentQuadrature(BlochgfError):
    """Grid refinement failed to stabilise the Brillouin-zone integral."""


class QuadratureFailure(BlochgfError):
    """Adaptive 1D quadrature exhausted its refinement budget."""


class ExtrapolationDiverged(BlochgfError):
    """Successive absorption-limit extrapolants do not contract."""


class SurfaceHitsSingularity(BlochgfError):
    """A deformed-surface quadrature node landed on the polar set."""


class InadmissibleSurface(BlochgfError):
    """Deformed surface violates the bypass admissibility conditions."""


class RegularityViolation(BlochgfError):
    """A real-trace point has vanishing defining-function gradient."""


class InconsistentOrientation(BlochgfError):
    """Group-velocity bypass rule gives contradictory signs along a trace."""


class ZeroCurvature(BlochgfError):
    """Trace curvature vanishes at a saddle point (flat segment suspected)."""


class TangentialCrossing(BlochgfError):
    """Two traces cross with parallel gradients; no transverse formula applies."""


class OnActivityBoundary(BlochgfError):
    """Observation direction sits on a crossing's activity boundary (penumbra)."""


class NotPerpendicular(BlochgfError):
    """Observation direction is not normal to the flat segment."""


class UnsupportedSpecialPoint(BlochgfError):
    """Detected configuration has no asymptotic formula in scope."""


class AtDegeneracy(BlochgfError):
    """Canonical integral requested exactly at its degenerate parameter."""


class OnQuadrantBoundary(BlochgfError):
    """Hyperbolic canonical integral requested on an activity boundary."""


class ZeroRho(BlochgfError):
    """Dirac canonical triple requested at vanishing gap parameter."""


class InvalidModel(BlochgfError):
    """Local-model data violates its structural constraints."""


class DomainError(BlochgfError):
    """Scalar special-function argument outside the supported domain."""


class DegenerateTriangle(BlochgfError):
    """Mesh triangle with (near-)zero area."""


class BlockMismatch(BlochgfError):
    """Quasi-periodic reduction given inconsistent index partitions."""


class SolverFailure(BlochgfError):
    """Eigenvalue solver failed to converge."""


class NoDoublePoint(BlochgfError):
    """Band-gap minimisation found no double eigenvalue in the search box."""


class NotElliptic(BlochgfError):
    """Degenerate point is not an elliptic (circularisable) cone."""


class Instability(BlochgfError):
    """Time-domain integration exceeded its energy growth bound."""


class ConfigError(BlochgfError):
    """Invalid run configuration (CLI exit code 2)."""
