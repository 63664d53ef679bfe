#!/usr/bin/env python3
"""Regenerates fixtures/*.json. Run from the repository root."""
import json
from fractions import Fraction as F
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def s(x):
    x = F(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lst(v):
    return [s(x) for x in v]


def padd(a, b, sb=1):
    n = max(len(a), len(b))
    a = list(a) + [F(0)] * (n - len(a))
    b = list(b) + [F(0)] * (n - len(b))
    return [x + sb * y for x, y in zip(a, b)]


def pmul(a, b):
    r = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            r[i + j] += x * y
    return r


def delta(a, nu):
    # x^{nu+1} d/dx
    return [F(0)] * (nu + 1) + [F(i) * c for i, c in enumerate(a)][1:] if len(a) > 1 else [F(0)]


def irregular_normal_form(nu, l1, l2):
    """p, q of the equation with basis exp(int lambda_j delta^{-1}) as num/den."""
    l1 = [F(x) for x in l1]
    l2 = [F(x) for x in l2]
    sm = padd(l1, l2)
    d = padd(l2, l1, -1)
    dd = delta(d, nu)  # L = dd / d
    p_num = padd(pmul(sm, d), dd)
    q_num = padd(pmul(padd([-c for c in pmul(l1, l2)], [c / 2 for c in delta(sm, nu)]), d), [c / 2 for c in pmul(sm, dd)], -1)
    return {"num": lst(p_num), "den": lst(d)}, {"num": lst(q_num), "den": lst(d)}


def write(name, doc):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


def main():
    # regular normal forms: (delta - alpha2)(delta - alpha1)
    write("b1a.json", {"form": "factored", "nu": 0, "alpha1": ["1/3"], "alpha2": ["-1/4"]})
    write("b1a_x3.json", {"form": "factored", "nu": 0, "alpha1": ["10/3"], "alpha2": ["11/4"]})
    write("b1b.json", {"form": "factored", "nu": 0, "alpha1": ["2/3"], "alpha2": ["2/3"]})
    write("b1c.json", {"form": "factored", "nu": 0, "alpha1": ["4/3"], "alpha2": {"num": ["1/3", "-4/3"], "den": ["1", "-1"]}})
    write("b1d.json", {"form": "factored", "nu": 0, "alpha1": ["4/3"], "alpha2": ["1/3", "-1"]})
    write("b1_resonant_diagonal.json", {"form": "factored", "nu": 0, "alpha1": ["5/2"], "alpha2": ["1/2"]})

    # irregular normal forms with lambda2 - lambda1 = 1 + mu x^nu
    p, q = irregular_normal_form(1, ["-1/2", "1/3"], ["1/2", "7/12"])
    write("irregnormalform_nu1.json", {"form": "delta", "nu": 1, "p": p, "q": q})
    p, q = irregular_normal_form(1, ["-1/2", "10/3"], ["1/2", "43/12"])
    write("irregnormalform_nu1_x3.json", {"form": "delta", "nu": 1, "p": p, "q": q})
    p, q = irregular_normal_form(2, ["0", "1/3", "0"], ["1", "1/3", "1/5"])
    write("irregnormalform_nu2.json", {"form": "delta", "nu": 2, "p": p, "q": q})

    for name, mu in (("reduciblenf1_mu_1_4", "1/4"), ("reduciblenf1_mu_1_2", "1/2"), ("reduciblenf1_mu_1_3", "1/3")):
        write(f"{name}.json", {"form": "factored", "nu": 1, "alpha1": ["0"], "alpha2": ["1", mu]})
    write("reduciblenf1_mu_0.json", {"form": "factored", "nu": 1, "alpha1": ["0"], "alpha2": ["1"]})
    write("reduciblenf2.json", {"form": "factored", "nu": 1, "alpha1": ["0"], "alpha2": ["1", "-1", "-1"]})

    # resonant normal form, nu = 1, P = 0
    write("nf_resonant_nu1.json", {"form": "delta", "nu": 1, "p": ["0"], "q": ["0", "1/4", "-3/16"]})

    # polynomial rank-1 equation with a nonzero Stokes product
    write("rank1_polynomial.json", {"form": "delta", "nu": 1, "p": ["1", "1/3"], "q": ["0", "1/5", "2/7"]})

    # the degenerate rank-2 example: alpha2 = 1 + x + x^2 + c x^3 / (1 + c x)
    for name, c in (("example1_c1", 1), ("example1_c2", 2)):
        num = padd(pmul([1, 1, 1], [1, c]), [0, 0, 0, c])
        write(f"{name}.json", {"form": "factored", "nu": 2, "alpha1": ["1"], "alpha2": {"num": lst(num), "den": lst([1, c])}})

    # rank 2, not in normal form: needs Stokes data for its symmetry algebra
    base = {"form": "delta", "nu": 2, "p": ["1/2", "1/3", "-1/5"], "q": ["3/16", "1/7", "2/9", "1/11"]}
    write("rank2_general.json", base)
    write("rank2_stokes_trivial.json", dict(base, stokes={"multipliers": ["0", "0", "0", "0"]}))
    write("rank2_stokes_nontrivial.json",
          dict(base, stokes={"mu": "0", "variant": "nonres",
                             "multipliers": [{"index": 0, "type": "moebius", "value": "0"},
                                             {"index": 1, "type": "translation", "value": ["1/2", "1"]},
                                             "0", "0"]}))

    # raw Laurent input: y'' + (1/x) y' + (1/x^2 - 1/9 /x^2) y, a Bessel-type point
    write("raw_bessel.json", {"form": "raw", "a1": {"valuation": -1, "coeffs": ["1"]},
                              "a0": {"valuation": -2, "coeffs": ["-1/9", "0", "1"]}})
    # float input
    write("float_b1a.json", {"form": "factored", "nu": 0, "mode": "float", "alpha1": [0.3], "alpha2": ["-0.25"]})

    (OUT / "malformed.json").write_text('{\n  "form": "delta",\n  "nu": 1,\n  "p": ["1", "1/3"\n  "q": ["0"]\n}\n')
    write("decimal_in_exact.json", {"form": "delta", "nu": 1, "p": ["1", "0.5"], "q": ["0"]})
    write("bad_parity.json", dict(base, stokes={"multipliers": [{"index": 0, "type": "translation", "value": "1"}]}))


if __name__ == "__main__":
    main()
