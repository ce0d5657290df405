"""Finite-field toolkit for higher order MDS codes, zero patterns and their equivalents."""

__version__ = "0.1.0"

from .errors import GmmdsError, MalformedInput, Refused  # noqa: E402
from .gf import GF, build_field, field_of_order  # noqa: E402
from .exactla import Mat  # noqa: E402

__all__ = ["GF", "Mat", "build_field", "field_of_order", "GmmdsError", "MalformedInput", "Refused", "__version__"]
