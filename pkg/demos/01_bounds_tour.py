#!/usr/bin/env python3
"""Tour of the covering array size bounds.

Computes every bound family for a reference parameter set and prints a
comparison table, then shows how the picture changes with k.
"""

from coverkit import CAParams, bounds

REFERENCE = CAParams(t=6, k=54, v=3)


def bound_table(p: CAParams) -> list[tuple[str, int, str]]:
    rows = []
    rows.append(("slj", bounds.slj_bound(p).value, "random array, union bound"))
    dslj, _ = bounds.discrete_slj_bound(p)
    rows.append(("discrete_slj", dslj.value, "row-at-a-time floors"))
    two = bounds.two_stage_bound(p)
    rows.append(
        ("two_stage", two.value, f"random {two.stage1_rows} rows + one patch row each")
    )
    rows.append(("gss", bounds.gss_lll_bound(p).value, "local lemma, no group"))
    cyc = bounds.cyclic_lll_bound(p)
    rows.append(("cyclic", cyc.value, f"{cyc.stage1_rows} rows developed over C_v"))
    frob = bounds.frobenius_lll_bound(p)
    rows.append(
        ("frobenius", frob.value, f"{frob.stage1_rows} rows developed over x->ax+b")
    )
    cond = bounds.conditional_lll_two_stage_bound(p)
    rows.append(("conditional_lll", cond.value, "local lemma stage 1 + patches"))
    return rows


def main() -> None:
    p = REFERENCE
    print(f"Upper bounds on the minimum covering array size for t={p.t}, k={p.k}, v={p.v}")
    print(f"(interaction space: {p.interaction_space_size:,} t-way interactions)\n")
    for name, value, how in bound_table(p):
        print(f"  {name:<16} {value:>8,}   {how}")

    print("\nAsymptotic coefficients of log k at (t=6, v=3):")
    for method in ("slj", "gss", "cyclic", "frobenius"):
        coef = bounds.asymptotic_coefficient(method, 6, 3)
        print(f"  {method:<10} {coef:,.1f}")

    print("\nExact values for the one solved case, strength-2 binary arrays:")
    for k in (4, 10, 20, 100, 1000):
        print(f"  CAN(2, {k:>4}, 2) = {bounds.katona_kleitman_exact(k)}")


if __name__ == "__main__":
    main()
