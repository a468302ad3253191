"""Resource caps for operations that scale with v**t or C(k, t).

Both caps can be configured through the environment:

* ``COVERKIT_MEMORY_CAP_MIB``    - cap on any single coverage table
  (default 256 MiB).  Operations that need a table of v**t entries check
  their estimated footprint against this before allocating.
* ``COVERKIT_MAX_COLUMN_SETS``   - cap on the number of column t-sets an
  operation may stream over (default 50 million).
"""

import math
import os

from .errors import ResourceLimitError

_DEFAULT_MEMORY_CAP_MIB = 256
_DEFAULT_COLUMN_SET_CAP = 50_000_000


def memory_cap_bytes() -> int:
    mib = int(os.environ.get("COVERKIT_MEMORY_CAP_MIB", _DEFAULT_MEMORY_CAP_MIB))
    return mib * (1 << 20)


def column_set_cap() -> int:
    return int(os.environ.get("COVERKIT_MAX_COLUMN_SETS", _DEFAULT_COLUMN_SET_CAP))


def check_table_bytes(n_entries: int, bytes_per_entry: int, what: str) -> None:
    """Raise ResourceLimitError if a table would exceed the memory cap."""
    need = n_entries * bytes_per_entry
    cap = memory_cap_bytes()
    if need > cap:
        raise ResourceLimitError(
            f"{what} needs {need} bytes for {n_entries} entries, "
            f"above the configured cap of {cap} bytes"
        )


def check_column_sets(k: int, t: int, what: str) -> None:
    """Raise ResourceLimitError if streaming C(k, t) column sets is over cap."""
    total = math.comb(k, t)
    cap = column_set_cap()
    if total > cap:
        raise ResourceLimitError(
            f"{what} would stream {total} column sets, above the cap of {cap}"
        )
