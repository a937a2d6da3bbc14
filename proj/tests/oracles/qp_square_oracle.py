"""Squares in Q_p by brute force: strip p by trial division, then search
for square roots mod p^6 and require the answer to be stable mod p^5.

Writes ../data/qp_squares.json.
"""
import json
from fractions import Fraction
from pathlib import Path

PRIMES = [2, 3, 5, 7, 11]


def strip(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return n, v


def square_mod(u, m):
    u %= m
    return any(x * x % m == u for x in range(m))


def is_square(q, p):
    num, vn = strip(abs(q.numerator), p)
    den, vd = strip(q.denominator, p)
    if (vn - vd) % 2:
        return False
    u = (num if q > 0 else -num) * den  # same square class as num/den
    hi = square_mod(u, p ** 6)
    lo = square_mod(u, p ** 5)
    if hi != lo:
        raise RuntimeError(f"unstable square class for {q} at {p}")
    return hi


def main():
    values = [Fraction(q) for q in range(-100, 101) if q != 0]
    values += [Fraction(a, b) for a in range(-12, 13) for b in range(2, 13)
               if a != 0 and Fraction(a, b).denominator == b]
    table = []
    for p in PRIMES:
        for q in values:
            table.append({"q": str(q), "p": p, "square": is_square(q, p)})
    out = Path(__file__).resolve().parent.parent / "data" / "qp_squares.json"
    out.write_text(json.dumps(table) + "\n")


if __name__ == "__main__":
    main()
