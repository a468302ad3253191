"""coverkit: covering array bounds, group-action constructions, and verification.

A covering array CA(N; t, k, v) is an N x k array over v symbols in which
every selection of t columns exhibits all v**t symbol combinations.  This
package computes upper bounds on the minimum size CAN(t, k, v), builds
arrays realizing the constructive bounds, and verifies coverage with an
independent checker.

Quick start::

    from coverkit import CAParams, bounds, construct, verify

    p = CAParams(t=3, k=8, v=3)
    print(bounds.two_stage_bound(p).value)
    array, log = construct.two_stage_build(p)
    assert verify.full_check(array).is_covering
"""

from . import arrayfile, bounds, construct, core, groups, limits, verify
from .bounds import BoundReport, DiscreteSljTrace
from .construct import BuildConfig, BuildLog, DEFAULT_SEED
from .core import CAParams, ColumnSet, Interaction, SymbolArray
from .errors import BudgetExceededError, ResourceLimitError, UnsupportedParameterError
from .groups import FiniteField, GroupAction, OrbitTable

__version__ = "0.1.0"

__all__ = [
    "CAParams",
    "SymbolArray",
    "Interaction",
    "ColumnSet",
    "BoundReport",
    "DiscreteSljTrace",
    "BuildConfig",
    "BuildLog",
    "DEFAULT_SEED",
    "FiniteField",
    "GroupAction",
    "OrbitTable",
    "UnsupportedParameterError",
    "ResourceLimitError",
    "BudgetExceededError",
    "arrayfile",
    "bounds",
    "construct",
    "core",
    "groups",
    "limits",
    "verify",
    "__version__",
]
