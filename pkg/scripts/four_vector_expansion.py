"""Compare (x^y) o (z^w) with the printed four-vector expansion on random inputs.

For each trial the exact value ASymm((x^y)[](z^w)) is compared against the
all-positive expansion and against every sign assignment on the four pairing
terms.  Prints one line per trial and a tally.

    python3 scripts/four_vector_expansion.py --dim 4 --trials 20 --seed 1
"""

import argparse
import random

from circleprod import identity_space, make_space
from circleprod.checks import four_vector_report, rand_vector


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--gram", choices=("identity", "random"), default="identity")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    if args.gram == "identity":
        spec = identity_space(args.dim)
    else:
        rows = [[rng.randint(-3, 3) for _ in range(args.dim)] for _ in range(args.dim)]
        sym = [[rows[i][j] + rows[j][i] for j in range(args.dim)] for i in range(args.dim)]
        spec = make_space(args.dim, args.dim, sym, True)

    tally = {"printed": 0, "some_signs": 0, "none": 0}
    for t in range(args.trials):
        x, y, z, w = (rand_vector(rng, args.dim) for _ in range(4))
        rep = four_vector_report(spec, x, y, z, w)
        kind = "printed" if rep["printed_matches"] else "some_signs" if rep["sign_patterns"] else "none"
        tally[kind] += 1
        print(f"trial {t}: printed form {'matches' if rep['printed_matches'] else 'differs'}; "
              f"{len(rep['sign_patterns'])}/16 sign patterns match")
    print(f"matches as printed: {tally['printed']}, only with other signs: {tally['some_signs']}, "
          f"no sign pattern: {tally['none']}")


if __name__ == "__main__":
    main()
