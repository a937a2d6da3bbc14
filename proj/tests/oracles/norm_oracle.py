"""N(alpha) = Res(Phi_p, f_alpha) for alpha = f_alpha(zeta) in the power basis.

Writes ../data/norms.json.
"""
import json
import random
from pathlib import Path

import sympy

PRIMES = [3, 5, 7, 11, 13]


def main():
    x = sympy.symbols("x")
    rng = random.Random(5)
    rows = []
    for p in PRIMES:
        phi = sympy.cyclotomic_poly(p, x)
        for _ in range(30):
            coords = [rng.randint(-5, 5) for _ in range(p - 1)]
            f = sum(c * x ** k for k, c in enumerate(coords))
            rows.append({"p": p, "coords": coords, "norm": str(sympy.resultant(phi, f, x))})
    out = Path(__file__).resolve().parent.parent / "data" / "norms.json"
    out.write_text(json.dumps(rows) + "\n")


if __name__ == "__main__":
    main()
