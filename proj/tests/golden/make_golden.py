#!/usr/bin/env python3
"""Regenerates the construct goldens with 60-digit arithmetic.

Run from this directory: python3 make_golden.py
"""
from fractions import Fraction

import gmpy2
from mpmath import mp, mpf, floor, log, power

mp.dps = 60


def write(name, values):
    with open(name, "w") as f:
        f.write("n,a_n\n")
        for i, v in enumerate(values, 1):
            f.write(f"{i},{v}\n")


def power_terms(s, terms):
    # floor(n^(den/num)) as an exact integer root; a decimal 1/s would
    # land just below integers such as 8^(4/3) = 16
    f = Fraction(s)
    return [int(gmpy2.iroot(gmpy2.mpz(n) ** f.denominator, f.numerator)[0]) for n in range(1, terms + 1)]


def logpower_terms(q, terms):
    q = mpf(q)
    return [int(floor(power(n, 1 / q) * power(log(n + 1), 2 / q))) + 1 for n in range(1, terms + 1)]


def smooth_terms(primes, terms):
    vals = {1}
    frontier = [1]
    bound = 10**40
    while frontier:
        nxt = []
        for v in frontier:
            for p in primes:
                w = v * p
                if w <= bound and w not in vals:
                    vals.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(vals)[:terms]


if __name__ == "__main__":
    write("logpower_0.5_3.csv", logpower_terms("0.5", 3))
    write("logpower_0.5_30.csv", logpower_terms("0.5", 30))
    write("logpower_0.3_30.csv", logpower_terms("0.3", 30))
    write("power_0.75_30.csv", power_terms("0.75", 30))
    write("power_0.3_30.csv", power_terms("0.3", 30))
    write("smooth_2_3_5_30.csv", smooth_terms([2, 3, 5], 30))
