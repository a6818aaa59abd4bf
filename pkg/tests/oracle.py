"""Independent sympy oracles: differential polynomials become expressions in
undefined functions of t, so derivatives and substitutions are done by sympy."""
import sympy as sp

from diffrep.diffpoly import mono_factors
from diffrep.field import numer_denom

T = sp.Symbol("t")


def kelem(c):
    n, d = numer_denom(c)
    num = sum(sp.Rational(int(x.p), int(x.q)) * T ** k for k, x in enumerate(n.coeffs()))
    den = sum(sp.Rational(int(x.p), int(x.q)) * T ** k for k, x in enumerate(d.coeffs()))
    return num / den


def fn(name, group="m"):
    prefix = {"m": "", "gr": "", "gl": "L_", "a": "A_"}[group]
    return sp.Function(prefix + name)(T)


def to_sympy(f):
    out = 0
    for m, c in f.items():
        term = kelem(c)
        for v, e in mono_factors(m):
            term *= sp.diff(fn(v.name, v.group), T, v.order) ** e
        out += term
    return sp.expand(out)


def sl2_image(expr):
    """x -> x*c11 + y*c21, y -> x*c12 + y*c22 as a substitution of functions."""
    x, y = fn("x"), fn("y")
    c11, c12, c21, c22 = (fn(n) for n in ("c11", "c12", "c21", "c22"))
    return sp.expand(expr.subs({x: x * c11 + y * c21, y: x * c12 + y * c22}, simultaneous=True).doit())


def on_sl2(expr):
    """Restrict to SL2 by c22 = (1 + c12 c21) / c11 (valid where c11 is invertible)."""
    c11, c12, c21, c22 = (fn(n) for n in ("c11", "c12", "c21", "c22"))
    return sp.simplify(expr.subs(c22, (1 + c12 * c21) / c11).doit())
