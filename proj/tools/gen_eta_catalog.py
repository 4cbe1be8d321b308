#!/usr/bin/env python3
"""Write configs/eta_catalog.toml: holomorphic eta quotients on Gamma_0(N),
N = 2..36, with trivial character and even weight at most 12.

Search space per level: supports of size <= 2 with |r| <= 24, and supports
of size 3 with r in [-6, 12]. Up to PER_LEVEL quotients are kept per level,
lowest weight first.
"""

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

PER_LEVEL = 3
MAX_WEIGHT = 12


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_valuations(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def certified(level, exps):
    s = sum(exps.values())
    if s <= 0 or s % 4:
        return False
    if sum(d * r for d, r in exps.items()) % 24:
        return False
    if sum((level // d) * r for d, r in exps.items()) % 24:
        return False
    parity = {}
    for d, r in exps.items():
        for p, v in prime_valuations(d).items():
            parity[p] = parity.get(p, 0) + v * r
    if any(v % 2 for v in parity.values()):
        return False
    for c in divisors(level):
        o = Fraction(level, 24 * math.gcd(c * c, level)) * sum(
            Fraction(math.gcd(c, d) ** 2 * r, d) for d, r in exps.items())
        if o < 0 or o.denominator != 1:
            return False
    return True


def candidates(level):
    divs = divisors(level)
    small = range(-24, 25)
    for size, rng in ((1, small), (2, small), (3, range(-6, 13))):
        for support in itertools.combinations(divs, size):
            for rs in itertools.product(rng, repeat=size):
                if 0 in rs or sum(rs) > 2 * MAX_WEIGHT:
                    continue
                yield dict(zip(support, rs))


def main():
    root = Path(__file__).resolve().parent.parent
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "configs" / "eta_catalog.toml"
    lines = ["# Generated by tools/gen_eta_catalog.py; do not edit by hand.", ""]
    total = 0
    for level in range(2, 37):
        found = [e for e in candidates(level) if certified(level, e)]
        found.sort(key=lambda e: (sum(e.values()), len(e), sorted(e.items())))
        for i, e in enumerate(found[:PER_LEVEL]):
            pairs = ", ".join(f"[{d}, {r}]" for d, r in sorted(e.items()))
            lines += [f"[forms.N{level}_{i}]", f"level = {level}", f"eta = [{pairs}]", ""]
            total += 1
    out.write_text("\n".join(lines))
    print(f"wrote {total} eta quotients to {out}", file=sys.stderr)


if __name__ == "__main__":
    main()
