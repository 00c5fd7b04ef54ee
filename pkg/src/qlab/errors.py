"""Exception types shared by all modules.

Every law violation carries the name of the law and a witness tuple so that
callers (and the CLI) can report exactly where a check failed.
"""

from __future__ import annotations

from typing import Any


class QlabError(Exception):
    """Base class; ``law`` names the violated condition, ``witness`` locates it."""

    code = "Error"

    def __init__(self, message: str = "", witness: Any = None, law: str | None = None):
        super().__init__(message or self.code)
        self.witness = witness
        self.law = law or self.code

    def to_dict(self) -> dict:
        return {"error": self.code, "law": self.law, "message": str(self), "witness": _jsonable(self.witness)}


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    return value


class ValidationError(QlabError):
    code = "ValidationError"


# quantale laws
class NotAPoset(ValidationError):
    code = "NotAPoset"


class NotALattice(ValidationError):
    code = "NotALattice"


class NotAssociative(ValidationError):
    code = "NotAssociative"


class NotCommutative(ValidationError):
    code = "NotCommutative"


class UnitLaw(ValidationError):
    code = "UnitLaw"


class NotJoinPreserving(ValidationError):
    code = "NotJoinPreserving"


class Trivial(ValidationError):
    code = "Trivial"


class NotMonotone(ValidationError):
    code = "NotMonotone"


class NotLax(ValidationError):
    code = "NotLax"


class NotAMonad(ValidationError):
    code = "NotAMonad"


class ResultNotQuantale(ValidationError):
    code = "ResultNotQuantale"


# shape errors
class DimensionMismatch(ValidationError):
    code = "DimensionMismatch"


class QuantaleMismatch(ValidationError):
    code = "QuantaleMismatch"


class NotParallel(ValidationError):
    code = "NotParallel"


# enriched-category laws
class ReflexivityFail(ValidationError):
    code = "ReflexivityFail"


class TransitivityFail(ValidationError):
    code = "TransitivityFail"


class NotAFunctor(ValidationError):
    code = "NotAFunctor"


class UnitFail(ValidationError):
    code = "UnitFail"


class NotADistributor(ValidationError):
    code = "NotADistributor"


class NoColimit(ValidationError):
    code = "NoColimit"


class NoLimit(ValidationError):
    code = "NoLimit"


class NotPromonoidal(ValidationError):
    code = "NotPromonoidal"


class NotAQBA(ValidationError):
    code = "NotAQBA"


class NotRepresentable(ValidationError):
    code = "NotRepresentable"


class AmbiguousNonSeparated(ValidationError):
    code = "AmbiguousNonSeparated"


class PropLaxViolation(ValidationError):
    code = "PropLaxViolation"


class ResidualMismatch(ValidationError):
    code = "ResidualMismatch"


class AdjunctionFail(ValidationError):
    code = "AdjunctionFail"


class FixpointJoinMismatch(ValidationError):
    code = "FixpointJoinMismatch"


class ApproximationUnstable(QlabError):
    code = "ApproximationUnstable"


class NotAVQuantale(ValidationError):
    code = "NotAVQuantale"


class NotATopology(ValidationError):
    code = "NotATopology"


class ParseError(QlabError):
    code = "ParseError"


class ResourceCap(QlabError):
    """A configured size bound would be exceeded; raised instead of degrading."""

    code = "ResourceCap"
