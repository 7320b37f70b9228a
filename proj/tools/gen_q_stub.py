#!/usr/bin/env python3
"""Write the Q stub zeta data: xi(s) = pi^(-s/2) Gamma(s/2) zeta(s) and a toy
Lambda(s, pi0 x pi0~) = xi(s) * A exp(b (s - 1))."""
import argparse
import json

import mpmath as mp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/q_stub.json")
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--adjoint", default="0.8")
    ap.add_argument("--slope", default="0.25")
    args = ap.parse_args()
    mp.mp.dps = args.digits + 20
    K = args.depth

    gam = lambda s: mp.pi ** (-s / 2) * mp.gamma(s / 2)
    a = mp.taylor(gam, 1, K + 1)
    # zeta(1+t) = 1/t + sum (-1)^n gamma_n / n! t^n
    z = [(-1) ** n * mp.stieltjes(n) / mp.factorial(n) for n in range(K + 1)]
    res = a[0]
    g = [a[k + 1] + sum(a[i] * z[k - i] for i in range(k + 1)) for k in range(K)]

    A, b = mp.mpf(args.adjoint), mp.mpf(args.slope)
    e = [b**j / mp.factorial(j) for j in range(K + 2)]
    lam_res = A * res
    lam = [A * (res * e[k + 1] + sum(g[i] * e[k - i] for i in range(k + 1))) for k in range(K)]

    xi = lambda s: gam(s) * mp.zeta(s)
    t2 = mp.taylor(xi, 2, K)

    fmt = lambda x: mp.nstr(x, args.digits, min_fixed=-mp.inf, max_fixed=mp.inf)
    doc = {
        "xi_residue": fmt(res),
        "xi_regular": [fmt(x) for x in g],
        "xi_at_2": fmt(t2[0]),
        "xi_at_2_taylor": [fmt(x) for x in t2],
        "lambda_pi0_residue": fmt(lam_res),
        "lambda_pi0_regular": [fmt(x) for x in lam],
        "adjoint_L_value": fmt(A),
        "norm_different": 1,
    }
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
