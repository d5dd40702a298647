"""JSJ decompositions of tubular graphs of graphs."""
from __future__ import annotations

__version__ = "0.1.0"

from .complex import TubularComplex, brady_meier_check  # noqa: E402
from .config import Limits, PipelineConfig  # noqa: E402
from .errors import (ClosedSurfaceError, JSJError, ParseError, PreconditionError,  # noqa: E402
                     ResourceCapError, ValidationError)
from .pipeline import JSJResult, run_jsj  # noqa: E402
from .relative import general_jsj, relative_jsj  # noqa: E402
from .separation import is_splitting_cycle, splitting_cycle_list  # noqa: E402

__all__ = [
    "ClosedSurfaceError", "JSJError", "JSJResult", "Limits", "ParseError", "PipelineConfig",
    "PreconditionError", "ResourceCapError", "TubularComplex", "ValidationError", "__version__",
    "brady_meier_check", "general_jsj", "is_splitting_cycle", "relative_jsj", "run_jsj",
    "splitting_cycle_list",
]
