"""Exception hierarchy.

Every domain failure derives from :class:`LogentError` so callers (and the
CLI) can separate domain errors from malformed input, which raises
:class:`SchemaError`.
"""


class LogentError(Exception):
    """Base class for domain errors."""

    code = "domain_error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class SchemaError(LogentError, ValueError):
    """Input does not parse against the expected schema."""

    code = "schema_error"


class UniverseMismatch(LogentError):
    code = "universe_mismatch"


class NotEquivalence(LogentError):
    """A relation fails reflexivity, symmetry or transitivity."""

    code = "not_equivalence"

    def __init__(self, prop, witness):
        self.prop = prop
        self.witness = witness
        super().__init__(f"relation fails {prop}: witness {witness}")


class RelationTooLarge(LogentError):
    code = "relation_too_large"


class AxisCount(LogentError):
    code = "axis_count"


class MalformedExpr(LogentError):
    code = "malformed_expr"


class DomainError(LogentError):
    code = "domain"


class LengthMismatch(LogentError):
    code = "length_mismatch"


class DimensionMismatch(LogentError):
    code = "dimension_mismatch"


class InfeasibleMean(LogentError):
    code = "infeasible_mean"


class NoConvergence(LogentError):
    code = "no_convergence"


class Infeasible(LogentError):
    code = "infeasible"


class NotCoarsening(LogentError):
    code = "not_coarsening"


class NotNormalized(LogentError):
    code = "not_normalized"


class BasisMismatch(LogentError):
    code = "basis_mismatch"
