"""Finite quantale-enriched categories, their completions and injective hulls."""

from .errors import QlabError, ValidationError
from .quantale import Quantale, validate_quantale
from .vcat import MonoidalVCat, VCategory, validate_monoidal, validate_vcategory

__version__ = "0.1.0"

__all__ = ["QlabError", "ValidationError", "Quantale", "validate_quantale", "VCategory", "MonoidalVCat",
           "validate_vcategory", "validate_monoidal", "__version__"]
