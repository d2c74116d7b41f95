"""Brute-force symbolic expansion of the even-sigma special Lagrangian PDE.

Substitutes phi = f0 + f1 s^2/2 + F s^4/24 (F an unknown function of t) into

    Im((1 + i phi_s/s)^(n-1) ((1 + i phi_tt)(1 + i phi_ss) + phi_st^2)) = 0,

collects the sigma^2 coefficient, solves it for F and prints the Taylor
coefficients of F in t.  The printed values are frozen into
tests/test_extension_engine.cpp; this script is not run by ctest.
"""
import sys
import sympy as sp

t, s = sp.symbols("t s", real=True)
Fs = sp.Function("F", real=True)(t)


def f2_series(n, f0, degree):
    f1 = -sp.tan(sp.atan(sp.diff(f0, t, 2)) / n)
    phi = f0 + f1 * s**2 / 2 + Fs * s**4 / 24
    a = sp.diff(phi, s) / s
    b = sp.diff(phi, t, 2)
    c = sp.diff(phi, s, 2)
    p = sp.diff(phi, s, t)
    expr = (1 + sp.I * a) ** (n - 1) * ((1 + sp.I * b) * (1 + sp.I * c) + p**2)
    im_part = sp.im(sp.expand_complex(sp.expand(expr)))
    c2 = sp.expand(im_part).coeff(s, 2)
    X = sp.Symbol("X", real=True)
    c2 = sp.expand(c2.subs(Fs, X))
    alpha = c2.coeff(X, 1)
    beta = c2.coeff(X, 0)
    assert sp.simplify(c2 - alpha * X - beta) == 0
    sol = -beta / alpha
    ser = sp.series(sol, t, 0, degree + 1).removeO()
    return [sp.nsimplify(ser.coeff(t, d)) for d in range(degree + 1)]


if __name__ == "__main__":
    degree = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    for n, f0 in [(2, t**3 / 6), (3, t**3 / 6 + t**4 / 12)]:
        coeffs = f2_series(n, f0, degree)
        print(f"n={n} f0={f0}")
        for d, cf in enumerate(coeffs):
            print(f"  t^{d}: {cf} = {sp.N(cf, 20)}")
