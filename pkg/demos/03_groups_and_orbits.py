#!/usr/bin/env python3
"""Symbol groups, orbit structure, and development.

Shows the three sharply transitive actions, how they partition symbol
tuples into orbits, and why covering one representative per orbit and
developing the rows over the group yields a covering array.
"""

from collections import Counter

import numpy as np

from coverkit import CAParams
from coverkit.groups import (
    constant_rows,
    develop,
    enumerate_orbits,
    make_cyclic,
    make_frobenius,
    make_pgl,
)
from coverkit.verify import full_check
from coverkit.core import SymbolArray


def census(action, t):
    table = enumerate_orbits(action, t)
    counts = Counter(table.lengths)
    sizes = ", ".join(f"{c} of length {L}" for L, c in sorted(counts.items()))
    print(f"  {action.kind:<10} |G|={action.order:<4} orbits on tuples of length {t}: {sizes}")
    return table


def main() -> None:
    print("Orbit structure of symbol pairs (t=2) and triples (t=3), v=5:")
    for make in (make_cyclic, make_frobenius, make_pgl):
        action = make(5)
        for t in (2, 3):
            census(action, t)

    print("\nDevelopment in action: one seed row, t=k=2 over three symbols.")
    p = CAParams(2, 2, 3)
    action = make_frobenius(3)
    table = enumerate_orbits(action, 2)
    print(f"  orbits: {table.representatives} with lengths {table.lengths}")

    seed = SymbolArray.from_rows(p, [(0, 1)])  # a full-orbit representative
    developed = develop(seed, action)
    print(f"  the single row (0,1) develops into {developed.n_rows} rows:")
    print("  " + ", ".join(str(tuple(r)) for r in developed.cells.tolist()))

    full = SymbolArray(p, np.vstack([developed.cells, constant_rows(p).cells]))
    report = full_check(full)
    print(
        f"  plus {p.v} constant rows -> {full.n_rows} rows, covering={report.is_covering}"
    )


if __name__ == "__main__":
    main()
