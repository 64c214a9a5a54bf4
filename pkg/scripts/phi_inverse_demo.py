"""Invert phi on a truncation and expand ordinary monomials as circle polynomials.

Prints the phi matrix for the chosen mode, then for every basis vector of the
top grade the coefficients a_k with  basis = sum_k a_k phi(basis_k).

    python3 scripts/phi_inverse_demo.py --mode sym --dim 2 --max-grade 3
"""

import argparse

from circleprod import make_space
from circleprod.products import basis_label, phi_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=("tensor", "sym", "asym"), default="sym")
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--max-grade", type=int, default=3)
    ap.add_argument("--gram", nargs="*", default=None,
                    help="row-major Gram entries (default: identity)")
    args = ap.parse_args()

    d = args.dim
    if args.gram:
        vals = args.gram
        gram = [vals[i * d:(i + 1) * d] for i in range(d)]
    else:
        gram = [[int(i == j) for j in range(d)] for i in range(d)]
    spec = make_space(d, d, gram, True)
    pm = phi_matrix(spec, args.mode, args.max_grade)
    print(pm.format())
    inv = pm.inverse()
    print()
    for j, idx in enumerate(pm.basis):
        if len(idx) != args.max_grade:
            continue
        terms = [f"{inv[i][j]}*phi({basis_label(pm.mode, pm.basis[i])})"
                 for i in range(len(pm.basis)) if inv[i][j]]
        print(f"{basis_label(pm.mode, idx)} = " + " + ".join(terms))


if __name__ == "__main__":
    main()
