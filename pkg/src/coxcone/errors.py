"""Exception types raised across the package."""


class CoxconeError(Exception):
    """Base class for all errors raised by this package."""


# --- datum construction ---

class DatumError(CoxconeError):
    """Invalid Coxeter matrix / bilinear form data."""


class DuplicateGenerator(DatumError):
    pass


class AsymmetricEntry(DatumError):
    """Conflicting bond values were supplied for the same generator pair."""


class InvalidBond(DatumError):
    """Off-diagonal bond order below 2, or otherwise malformed."""


class InvalidInfiniteBondValue(DatumError):
    """Infinite-bond form value above -1, or given for a finite bond."""


# --- linear algebra / actions ---

class DimensionMismatch(CoxconeError):
    pass


class IsotropicMirror(CoxconeError):
    """Reflection requested in a vector x with (x, x) = 0."""


class BudgetExceeded(CoxconeError):
    """A breadth-first enumeration grew past its configured cap."""


# --- normalization ---

class OnV0(CoxconeError):
    """Vector has coordinate sum 0 and cannot be normalized."""


class LeftDomain(CoxconeError):
    """Group image of the point fell on the coordinate-sum-zero hyperplane."""


class FiniteGroup(CoxconeError):
    """Operation requires an infinite group but the root system is finite."""


# --- parabolic subgroups ---

class RankTooLarge(CoxconeError):
    """Subset enumeration refused beyond the supported rank."""


class NotSpherical(CoxconeError):
    """Subset does not generate a finite parabolic subgroup."""


# --- cone geometry ---

class NotApplicable(CoxconeError):
    """Group is finite, affine or reducible; the cone has no interior point."""


class Infeasible(CoxconeError):
    """The feasibility search failed to produce a point."""


class PreconditionViolated(CoxconeError):
    pass


class NotInterior(CoxconeError):
    """Base point is not in the interior of the fundamental cone region."""


class DegenerateSimplex(CoxconeError):
    """Vertex images of a chain failed the affine-independence check."""


class InvariantViolation(CoxconeError):
    """A checked postcondition failed; signals numerical trouble."""
