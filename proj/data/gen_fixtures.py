#!/usr/bin/env python3
"""Regenerate the newform fixtures in data/newforms with PARI/GP (cypari2).

Usage: python3 data/gen_fixtures.py [nmax]
"""
import sys
from fractions import Fraction

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

NMAX = int(sys.argv[1]) if len(sys.argv) > 1 else 600
OUT = "data/newforms"


def coords(expr, var, deg):
    """Power-basis coordinates of a pari polmod/polynomial in `var`."""
    pol = pari(f"lift(Pol({expr}, {var}))") if not isinstance(expr, str) else pari(expr)
    cs = [Fraction(0)] * deg
    for i in range(deg):
        c = pari.polcoef(pol, i, var)
        cs[i] = Fraction(int(pari.numerator(c)), int(pari.denominator(c)))
    return cs


def fmt(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def write(name, level, weight, conrey, poly, var, basis, gens, coeffs, note):
    deg = len(poly) - 1
    with open(f"{OUT}/{name}.txt", "w") as fh:
        fh.write(f"# {note}\n")
        fh.write("# generated by data/gen_fixtures.py (PARI/GP mfinit + mfeigenbasis)\n")
        fh.write("format 1\n")
        fh.write(f"label {name}\n")
        fh.write(f"level {level}\nweight {weight}\ncharacter {level}.{conrey}\n")
        fh.write("field " + " ".join(str(c) for c in poly) + "\n")
        fh.write(f"var {var}\n")
        fh.write(f"basis {deg}\n")
        for row in basis:
            fh.write(" ".join(fmt(c) for c in row) + "\n")
        fh.write(f"chargens {len(gens)}\n")
        for g, v in gens:
            fh.write(f"{g} : " + " ".join(fmt(c) for c in v) + "\n")
        fh.write(f"nmax {len(coeffs) - 1}\n")
        for n, v in enumerate(coeffs):
            fh.write(f"a {n} : " + " ".join(fmt(c) for c in v) + "\n")


def level7():
    pari("mf7 = mfinit([7,7,Mod(3,7)],0); L7 = mfeigenbasis(mf7)")
    c1 = pari(f"liftall(mfcoefs(L7[1],{NMAX}))")
    rows = [coords(str(c), "t", 2) for c in c1]
    write("7.7.b.a", 7, 7, 3, [1, -1, 1], "t", [[1, 0], [0, 1]],
          [(3, [Fraction(0), Fraction(1)])], rows,
          "newform f1 of S_7^new(7, chi_7(3)), K = Q[t]/(t^2-t+1), chi(3) = t")
    # second orbit: relative field y^2 + 2t over Q(t); absolute field x^4+2x^2+4
    # with t = -x^2/2 and y = x
    c2 = pari(f"liftall(mfcoefs(L7[2],{NMAX}))")
    rows = []
    for c in c2:
        e = pari(f"subst(subst(lift({c}), y, x), t, -x^2/2)")
        e = pari(f"lift(Mod({e}, x^4+2*x^2+4))")
        rows.append(coords(str(e), "x", 4))
    basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, Fraction(1, 2), 0], [0, 0, 0, Fraction(1, 2)]]
    write("7.7.b.b", 7, 7, 3, [4, 0, 2, 0, 1], "x", basis,
          [(3, [Fraction(0), Fraction(0), Fraction(-1, 2), Fraction(0)])], rows,
          "newform f2 of S_7^new(7, chi_7(3)), K = Q[x]/(x^4+2x^2+4), chi(3) = -x^2/2")


def level35():
    pari("mf35 = mfinit([35,4,1],0); L35 = mfeigenbasis(mf35)")
    idx = None
    for i in range(1, 4):
        a2 = pari(f"liftall(mfcoef(L35[{i}],2))")
        if str(a2) == "y + 4":
            idx = i
    assert idx is not None
    c = pari(f"liftall(mfcoefs(L35[{idx}],{NMAX}))")
    rows = [coords(str(v), "y", 2) for v in c]
    # generators of (Z/35)^x: 2 mod 5 and 3 mod 7, lifted by CRT
    write("35.4.a", 35, 4, 1, [-2, 0, 1], "y", [[1, 0], [0, 1]],
          [(22, [Fraction(1), Fraction(0)]), (31, [Fraction(1), Fraction(0)])], rows,
          "newform of S_4^new(35), K = Q[y]/(y^2-2), a_2 = y+4")


if __name__ == "__main__":
    level7()
    level35()
