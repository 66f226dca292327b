"""Exception hierarchy shared by all facseries modules.

Numerical failures are deliberately loud: every routine raises instead of
returning NaN/inf, and the CLI maps these onto exit code 2 with a
machine-readable error object.
"""


class FacseriesError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DomainError(FacseriesError):
    """Argument outside the mathematical domain of an operation."""

    code = "domain"


class PoleError(FacseriesError):
    """Evaluation point coincides (to working precision) with a pole."""

    code = "pole"


class PoleInDomainError(PoleError):
    """A rebuilt rational approximant has a pole inside the integration interval."""

    code = "pole_in_domain"


class InstabilityError(FacseriesError):
    """Denominator of a sequence transformation vanished to working precision."""

    code = "instability"


class DegeneracyError(FacseriesError):
    """Singular Pade system.  ``largest_m`` is the largest solvable denominator degree."""

    code = "degeneracy"

    def __init__(self, message: str, largest_m: int):
        super().__init__(message)
        self.largest_m = largest_m

    def to_json(self) -> dict:
        d = super().to_json()
        d["largest_m"] = self.largest_m
        return d


class IntegrityError(FacseriesError):
    """A structural invariant (triangularity, orthogonality, schema) is violated."""

    code = "integrity"


class IntegrationError(FacseriesError):
    """Quadrature sampled a non-finite integrand value."""

    code = "integration"


class EstimateError(FacseriesError):
    """A remainder-estimate strategy hit a zero term."""

    code = "estimate"
