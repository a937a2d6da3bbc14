"""Total positivity in Q(zeta_p)^+ from high-precision embeddings.

Elements are written in the basis 1, eta, ..., eta^((p-3)/2) with
eta = zeta + zeta^-1; the real embeddings send eta to 2cos(2 pi j / p).
Writes ../data/tp_samples.json.
"""
import json
import random
from pathlib import Path

import mpmath

mpmath.mp.dps = 80
PRIMES = [3, 5, 7, 11]


def embeddings(coords, p):
    vals = []
    for j in range(1, (p - 1) // 2 + 1):
        e = 2 * mpmath.cos(2 * mpmath.pi * j / p)
        vals.append(sum(mpmath.mpf(c) * e ** k for k, c in enumerate(coords)))
    return vals


def main():
    rng = random.Random(11)
    samples = []
    for p in PRIMES:
        m = (p - 1) // 2
        count = 0
        while count < 200:
            coords = [rng.randint(-5, 5) for _ in range(m)]
            if count % 4 == 0:
                coords[0] = rng.randint(3, 12)  # bias towards positive elements
            vals = embeddings(coords, p)
            if min(abs(v) for v in vals) < mpmath.mpf(10) ** -40:
                continue  # zero, or too close to a wall to be a fair oracle
            samples.append({"p": p, "coords": coords, "tp": all(v > 0 for v in vals)})
            count += 1
    out = Path(__file__).resolve().parent.parent / "data" / "tp_samples.json"
    out.write_text(json.dumps(samples) + "\n")


if __name__ == "__main__":
    main()
