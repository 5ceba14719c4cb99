#!/usr/bin/env python3
"""Extract prime knots through 9 crossings from the KnotInfo database.

Writes two files:
  data/prime_knots.tsv        name, crossing_number, symmetry, pd_code
  tests/data/knotinfo_homfly.tsv
                              name, HOMFLYPT of the listed PD diagram in the
                              (a, z) convention a*P(L+) - a^-1*P(L-) = z*P(L0)

KnotInfo uses v^-1*P(L+) - v*P(L-) = z*P(L0), so a = v^-1.

Requires: pip install database_knotinfo sympy
"""
import argparse
import pathlib

import sympy
from database_knotinfo import link_list


def canonical(expr, v, z):
    a = sympy.Symbol("a")
    e = sympy.expand(expr.subs(v, 1 / a))
    terms = {}
    for term in sympy.Add.make_args(e):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        pa = int(powers.get(a, 0))
        pz = int(powers.get(z, 0))
        terms[(pa, pz)] = terms.get((pa, pz), 0) + int(coeff)
    parts = [f"{c}a^{i}z^{j}" for (i, j), c in sorted(terms.items()) if c != 0]
    return " + ".join(parts)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=pathlib.Path(__file__).resolve().parents[1])
    ap.add_argument("--max-crossings", type=int, default=9)
    args = ap.parse_args()
    root = pathlib.Path(args.root)
    v, z = sympy.symbols("v z")
    rows = link_list()[1:]
    with open(root / "data" / "prime_knots.tsv", "w") as pd_out, \
         open(root / "tests" / "data" / "knotinfo_homfly.tsv", "w") as hf_out:
        pd_out.write("# name\tcrossing_number\tsymmetry\tpd_code\n")
        hf_out.write("# name\thomfly_of_listed_diagram\n")
        for r in rows:
            n = int(r["crossing_number"])
            if n == 0 or n > args.max_crossings:
                continue
            sym = r["symmetry_type"].strip()
            kind = "amphichiral" if "amphicheiral" in sym else "chiral"
            pd = r["pd_notation"].replace(" ", "")
            pd_out.write(f"{r['name']}\t{n}\t{kind}\t{pd}\n")
            expr = sympy.sympify(r["homfly_polynomial"].replace("^", "**"),
                                 locals={"v": v, "z": z})
            hf_out.write(f"{r['name']}\t{canonical(expr, v, z)}\n")


if __name__ == "__main__":
    main()
