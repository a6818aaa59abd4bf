"""Coactions of SL2 and G_m on K{x, y}, comultiplication on C, and G_a^n
representations given by arrays of commuting nilpotent matrices."""
from __future__ import annotations

from itertools import combinations_with_replacement
from math import factorial
from typing import NamedTuple

from flint import fmpq

from .diffpoly import (DerivVar, DiffPoly, Term, as_term, dvalue, mono_factors, mono_from_factors,
                       mono_mul, mono_split, term_poly, var, weight)
from .errors import NonConstantRequired, NotCommuting, NotNilpotent, ZeroScalar, ZeroWeight
from .field import K, field_derive
from .linalg import is_zero_matrix, mat_mul, mat_sub
from .ordering import Cmp, compare_terms, term_key

MODULE_GROUPS = ("m",)


def sl2_coaction(f: DiffPoly) -> DiffPoly:
    """x -> x*c11 + y*c21, y -> x*c12 + y*c22 with c_ij in the right factor."""
    x, y = var("x"), var("y")
    c = {n: var(n, 0, "gr") for n in ("c11", "c12", "c21", "c22")}
    return f.substitute({("m", "x"): x * c["c11"] + y * c["c21"],
                         ("m", "y"): x * c["c12"] + y * c["c22"]}, strict=False)


def comultiply_C(f: DiffPoly) -> DiffPoly:
    """c_ij -> sum_k c_ik (left copy) * c_kj (right copy)."""
    L = {(i, j): var(f"c{i}{j}", 0, "gl") for i in (1, 2) for j in (1, 2)}
    R = {(i, j): var(f"c{i}{j}", 0, "gr") for i in (1, 2) for j in (1, 2)}
    images = {("gr", f"c{i}{j}"): sum((L[i, k] * R[k, j] for k in (1, 2)), DiffPoly())
              for i in (1, 2) for j in (1, 2)}
    return f.substitute(images, strict=False)


def gm_coaction(f: DiffPoly) -> DiffPoly:
    """x -> x*z, y -> y/z; z is a right-factor variable with formal inverse."""
    z = var("z", 0, "gr")
    return f.substitute({("m", "x"): var("x") * z, ("m", "y"): var("y") * z ** -1}, strict=False)


def tensor_split(f: DiffPoly, left_groups=MODULE_GROUPS) -> dict:
    """Write f = sum_mu mu (x) r_mu over left monomials mu; returns {mu: r_mu}."""
    out: dict = {}
    for m, c in f.items():
        left, right = mono_split(m, left_groups)
        out.setdefault(left, {})[right] = c
    return {k: DiffPoly(v) for k, v in out.items()}


def gm_evaluate(f: DiffPoly, a) -> DiffPoly:
    a = K(a)
    if not a:
        raise ZeroScalar("the G_m parameter must be nonzero")
    return f.substitute({("m", "x"): var("x") * a, ("m", "y"): var("y") * (1 / a)}, strict=False)


# -- the weight-drop witness ---------------------------------------------------
class MaxWitness(NamedTuple):
    residual: DiffPoly
    htilde: Term
    weight_drop: bool
    in_support: bool
    below_h: bool
    maximality_violation: Term | None


def _factor_data(h: Term, name: str):
    return sorted((v.order, e) for v, e in mono_factors(h.mono) if v.group == "m" and v.name == name)


def witness_term(h: Term, a) -> Term:
    """The predicted weight-(w-1) term of gm_evaluate(h, a) - a^d(h) h."""
    a = K(a)
    da = field_derive(a)
    d = dvalue(h)
    for name, sign in (("x", 1), ("y", -1)):
        data = [(p, m) for p, m in _factor_data(h, name) if p > 0]
        if not data:
            continue
        p, mult = data[0]
        coeff = h.coeff * (sign * mult * p) * a ** (d - 1) * da
        mono = mono_from_factors([(DerivVar("m", name, p), -1), (DerivVar("m", name, p - 1), 1)])
        return Term(coeff, mono_mul(h.mono, mono))
    raise ZeroWeight("term has weight zero")


def terms_same_shape(h: Term, max_weight: int) -> list:
    """All monomials with the x- and y-degrees of ``h`` and weight <= max_weight."""
    nx = sum(m for _, m in _factor_data(h, "x"))
    ny = sum(m for _, m in _factor_data(h, "y"))
    out = []

    def parts(name, count):
        res = []
        for combo in combinations_with_replacement(range(max_weight + 1), count):
            if sum(combo) <= max_weight:
                res.append((sum(combo), [(DerivVar("m", name, p), 1) for p in combo]))
        return res

    for wx, fx in parts("x", nx):
        for wy, fy in parts("y", ny):
            if wx + wy <= max_weight:
                out.append(Term(fmpq(1), mono_from_factors(fx + fy)))
    return out


def lemma_max_witness(h, a) -> MaxWitness:
    if isinstance(h, DiffPoly):
        h = as_term(h)
    a = K(a)
    if not field_derive(a):
        raise NonConstantRequired("the parameter must have nonzero derivative")
    w = weight(h)
    if w == 0:
        raise ZeroWeight("term has weight zero")
    hp = term_poly(h)
    residual = gm_evaluate(hp, a) - hp * (a ** dvalue(h))
    ht = witness_term(h, a)
    weight_drop = bool(residual) and weight(residual) == w - 1
    in_support = residual.coeff(ht.mono) == ht.coeff
    below_h = compare_terms(ht, h) == Cmp.LESS
    # search the finite family of same-shape terms for a violation of maximality
    violation = None
    d = dvalue(h)
    kh, kt = term_key(h), term_key(ht)
    for f in sorted(terms_same_shape(h, w), key=term_key):
        if dvalue(f) != d:
            continue
        kf = term_key(f)
        if kf < kh and kf > kt:
            violation = f
            break
    return MaxWitness(residual, ht, weight_drop, in_support, below_h, violation)


def isotypic_top_part(f: DiffPoly) -> DiffPoly:
    """Terms of maximal weight sharing d with a maximal-weight term of f."""
    w = weight(f)
    top = [t for t in f.terms() if weight(t) == w]
    d = dvalue(max(top, key=term_key))
    return DiffPoly.from_terms((c, m) for c, m in f.terms() if dvalue(Term(c, m)) == d)


# -- logarithmic derivative and G_a^n -----------------------------------------------
def xname(i: int) -> str:
    return f"x{i}"


def log_derivative(n: int) -> list:
    """[x_i' * x_i^-1 for i = 1..n]."""
    return [var(xname(i), 1) * var(xname(i)) ** -1 for i in range(1, n + 1)]


def _is_nilpotent(M) -> bool:
    r = len(M)
    P = M
    for _ in range(r):
        if is_zero_matrix(P):
            return True
        P = mat_mul(P, M)
    return is_zero_matrix(P)


class NilArray:
    """Commuting nilpotent r x r matrices N[(i, j)], i = 1..n, j >= 0."""

    def __init__(self, n: int, r: int, entries: dict | None = None):
        self.n = n
        self.r = r
        ents = {}
        for (i, j), M in (entries or {}).items():
            if not 1 <= i <= n or j < 0:
                raise ValueError(f"bad index {(i, j)}")
            M = [[K(x) for x in row] for row in M]
            if len(M) != r or any(len(row) != r for row in M):
                raise ValueError("matrix has the wrong size")
            if is_zero_matrix(M):
                continue
            if not _is_nilpotent(M):
                raise NotNilpotent(f"N{(i, j)} is not nilpotent")
            ents[(i, j)] = M
        keys = sorted(ents)
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                P, Q = ents[keys[a]], ents[keys[b]]
                if not is_zero_matrix(mat_sub(mat_mul(P, Q), mat_mul(Q, P))):
                    raise NotCommuting(f"N{keys[a]} and N{keys[b]} do not commute")
        self.entries = ents

    def __eq__(self, other):
        return isinstance(other, NilArray) and (self.n, self.r) == (other.n, other.r) and \
            self.entries.keys() == other.entries.keys() and \
            all(not any(x - y for ra, rb in zip(self.entries[k], other.entries[k]) for x, y in zip(ra, rb))
                for k in self.entries)

    def max_j(self) -> int:
        return max((j for _, j in self.entries), default=-1)

    def conjugate(self, Q, Qinv) -> "NilArray":
        return NilArray(self.n, self.r, {k: mat_mul(mat_mul(Q, M), Qinv) for k, M in self.entries.items()})

    def __repr__(self):
        return f"NilArray(n={self.n}, r={self.r}, keys={sorted(self.entries)})"


# -- matrices of differential polynomials ---------------------------------------
def pmat_identity(r: int) -> list:
    return [[DiffPoly.const(1) if i == j else DiffPoly() for j in range(r)] for i in range(r)]


def pmat_mul(A, B) -> list:
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [DiffPoly() for _ in range(n)]
        for k, a in enumerate(row):
            if not a:
                continue
            for j, b in enumerate(B[k]):
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def pmat_add(A, B) -> list:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pmat_scale(A, c) -> list:
    return [[a * c for a in row] for row in A]


def pmat_equal(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def pmat_from_K(M) -> list:
    return [[DiffPoly.const(x) for x in row] for row in M]


def pmat_substitute(A, images: dict) -> list:
    return [[a.substitute(images, strict=False) for a in row] for row in A]


def pmat_exp_nilpotent(S) -> list:
    """exp(S) for nilpotent S as the finite sum of S^k / k!."""
    r = len(S)
    out = pmat_identity(r)
    P = pmat_identity(r)
    for k in range(1, r + 1):
        P = pmat_mul(P, S)
        if all(not a for row in P for a in row):
            break
        out = pmat_add(out, pmat_scale(P, fmpq(1, factorial(k))))
    return out


def ga_rep(N: NilArray, args: list | None = None) -> list:
    """exp(sum_{i,j} N_{i,j} * d^j x_i); ``args`` replaces x_1..x_n."""
    if args is None:
        args = [var(xname(i)) for i in range(1, N.n + 1)]
    S = [[DiffPoly() for _ in range(N.r)] for _ in range(N.r)]
    for (i, j), M in sorted(N.entries.items()):
        arg = args[i - 1].derive(j)
        S = pmat_add(S, [[arg * x if x else DiffPoly() for x in row] for row in M])
    return pmat_exp_nilpotent(S)
