"""Invariant factors from gcds of minors, for seeded random integer matrices.

d_1 ... d_i = gcd of all i x i minors. Writes ../data/snf_cases.json.
"""
import itertools
import json
import math
import random
from pathlib import Path


def det(m):
    """Bareiss elimination on Python integers."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor_gcd_factors(a):
    rows, cols = len(a), len(a[0])
    factors, prev = [], 1
    for i in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), i):
            for cs in itertools.combinations(range(cols), i):
                g = math.gcd(g, det([[a[r][c] for c in cs] for r in rs]))
        if g == 0:
            factors.extend([0] * (min(rows, cols) - i + 1))
            break
        factors.append(g // prev)
        prev = g
    return factors


def main():
    rng = random.Random(8)
    cases = []
    for _ in range(50):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        entries = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.3 and rows > 1:
            # rank-deficient: last row a combination of the first
            entries[-1] = [2 * x for x in entries[0]]
        cases.append({"rows": rows, "cols": cols, "entries": entries,
                      "invariant_factors": minor_gcd_factors(entries)})
    out = Path(__file__).resolve().parent.parent / "data" / "snf_cases.json"
    out.write_text(json.dumps(cases, indent=1) + "\n")


if __name__ == "__main__":
    main()
