"""Classification of torus representations and of two-step SL2 extensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from flint import fmpq

from .actions import (NilArray, ga_rep, log_derivative, pmat_add, pmat_identity, pmat_mul, pmat_scale,
                      pmat_equal, xname)
from .diffpoly import DiffPoly, var, var_of
from .errors import (ClassificationFailure, LogExpressionFailure, NotTwoStepModule,
                     NotUnipotentAfterTwist)
from .field import K
from .linalg import ONE, ZERO, RowReducer, inverse, is_zero_matrix, mat_equal, mat_mul, nullspace, span_basis, transpose
from .modules import (FinModule, const_lie_action, construct_Ud, construct_Wd, dual, find_invertible,
                      generated_submodule, highest_weight_spaces, iso_test, socle, split_test, quotient)


# -- torus representations ---------------------------------------------------------
@dataclass
class GmRep:
    n: int
    matrix: list  # r x r of DiffPoly in x1..xn (formal inverses allowed)

    @property
    def r(self) -> int:
        return len(self.matrix)

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": [[e.to_json() for e in row] for row in self.matrix]}

    @staticmethod
    def from_json(data: dict) -> "GmRep":
        return GmRep(int(data["n"]), [[DiffPoly.from_json(e) for e in row] for row in data["matrix"]])


@dataclass
class GmComponent:
    d: tuple
    N: NilArray
    basis: list = field(default_factory=list)  # columns spanning the isotypic component

    def to_json(self) -> dict:
        return {"d": list(self.d),
                "N": [{"i": i, "j": j, "matrix": [[str(x) for x in row] for row in M]}
                      for (i, j), M in sorted(self.N.entries.items())]}


def character(d) -> DiffPoly:
    out = DiffPoly.const(1)
    for i, e in enumerate(d, start=1):
        if e:
            out = out * var(xname(i)) ** e
    return out


def synthesize_gm(d, N: NilArray) -> list:
    """chi^d * exp(sum N_ij d^j(x_i'/x_i))."""
    U = ga_rep(N, log_derivative(N.n))
    chi = character(d)
    return [[e * chi for e in row] for row in U]


def _torus_exponents(mono: tuple, n: int):
    """Exponent vector when the monomial involves only order-zero x_i, else None."""
    d = [0] * n
    for i, e in mono:
        v = var_of(i)
        if v.order != 0 or v.group != "m" or not v.name.startswith("x"):
            return None
        d[int(v.name[1:]) - 1] = e
    return tuple(d)


def _kmat_to_poly(M) -> list:
    return [[DiffPoly.const(x) if x else DiffPoly() for x in row] for row in M]


def _conjugate(P, A, Pinv) -> list:
    return pmat_mul(pmat_mul(_kmat_to_poly(Pinv), A), _kmat_to_poly(P))


def _log_unipotent(U) -> list:
    r = len(U)
    S = pmat_add(U, pmat_scale(pmat_identity(r), -1))
    out = [[DiffPoly() for _ in range(r)] for _ in range(r)]
    P = pmat_identity(r)
    for k in range(1, r + 1):
        P = pmat_mul(P, S)
        out = pmat_add(out, pmat_scale(P, fmpq((-1) ** (k + 1), k)))
    if any(e for row in pmat_mul(P, S) for e in row):
        raise NotUnipotentAfterTwist("twisted component is not unipotent")
    return out


def _express_log(Lm, n: int) -> NilArray:
    """Write L = sum N_ij * d^j(x_i'/x_i) by a linear solve on monomial supports."""
    r = len(Lm)
    J = max((e.max_order() for row in Lm for e in row if e), default=0)
    keys = [(i, j) for i in range(1, n + 1) for j in range(max(J, 1))]
    lam = log_derivative(n)
    funcs = [lam[i - 1].derive(j) for i, j in keys]
    cols: dict = {}
    fvecs = []
    for f in funcs:
        fvecs.append({cols.setdefault(m, len(cols)): c for m, c in f.items()})
    entries = {k: [[ZERO] * r for _ in range(r)] for k in keys}
    nk = len(keys)
    for a in range(r):
        for b in range(r):
            e = Lm[a][b]
            if not e:
                continue
            rows: dict = {}
            for k, v in enumerate(fvecs):
                for c, x in v.items():
                    rows.setdefault(c, {})[k] = x
            for m, c in e.items():
                if m not in cols:
                    raise LogExpressionFailure(f"log entry ({a}, {b}) has a term outside the span: {m}")
                rows.setdefault(cols[m], {})[nk] = c
            rr = RowReducer()
            for row in rows.values():
                rr.add(row)
            if nk in rr.pivots:
                raise LogExpressionFailure(f"log entry ({a}, {b}) is not a combination of d^j(x_i'/x_i)")
            for c, pr in rr.pivots.items():
                entries[keys[c]][a][b] = pr.get(nk, ZERO)
    return NilArray(n, r, entries)


def classify_gm(rep: GmRep) -> list:
    n, r = rep.n, rep.r
    # constant points: only derivative-free monomials survive, giving sum_d P_d c^d
    proj: dict = {}
    for a in range(r):
        for b in range(r):
            for m, c in rep.matrix[a][b].items():
                d = _torus_exponents(m, n)
                if d is not None:
                    proj.setdefault(d, [[ZERO] * r for _ in range(r)])[a][b] = c
    total = [[ZERO] * r for _ in range(r)]
    for P in proj.values():
        total = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(total, P)]
        if not mat_equal(mat_mul(P, P), P):
            raise NotUnipotentAfterTwist("constant-point coefficients are not idempotent")
    if not mat_equal(total, [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]):
        raise NotUnipotentAfterTwist("constant-point coefficients do not sum to the identity")
    ds = sorted(proj)
    blocks = []
    for d in ds:
        cols = span_basis(transpose(proj[d]))
        blocks.append((d, cols))
    Q = transpose([v for _, cols in blocks for v in cols])
    Qinv = inverse(Q)
    if Qinv is None:
        raise NotUnipotentAfterTwist("isotypic components do not span")
    B = _conjugate(Q, rep.matrix, Qinv)
    out = []
    start = 0
    for d, cols in blocks:
        k = len(cols)
        for a in range(r):
            for b in range(start, start + k):
                if not start <= a < start + k and B[a][b]:
                    raise NotUnipotentAfterTwist("isotypic components are not invariant")
        block = [row[start:start + k] for row in B[start:start + k]]
        inv_chi = character([-e for e in d])
        U = [[e * inv_chi for e in row] for row in block]
        N = _express_log(_log_unipotent(U), n)
        if not pmat_equal(synthesize_gm(d, N), block):
            raise LogExpressionFailure("re-synthesized component differs from the input")
        out.append(GmComponent(d, N, cols))
        start += k
    return out


def nilarray_equiv(N: NilArray, M: NilArray, seed: int = 0):
    """Q in GL_r(K) with M_ij = Q N_ij Q^-1 for all (i, j), or None."""
    if (N.n, N.r) != (M.n, M.r):
        return None
    r = N.r
    rows = []
    for key in set(N.entries) | set(M.entries):
        A = N.entries.get(key, [[ZERO] * r for _ in range(r)])
        B = M.entries.get(key, [[ZERO] * r for _ in range(r)])
        # (Q A - B Q)[a][b] = sum_k Q[a][k] A[k][b] - sum_k B[a][k] Q[k][b]
        for a in range(r):
            for b in range(r):
                row = {}
                for k in range(r):
                    if A[k][b]:
                        row[a * r + k] = row.get(a * r + k, ZERO) + A[k][b]
                    if B[a][k]:
                        row[k * r + b] = row.get(k * r + b, ZERO) - B[a][k]
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    sols = nullspace(rows, r * r)
    mats = [[v[a * r:(a + 1) * r] for a in range(r)] for v in sols]
    return find_invertible(mats, seed)


# -- two-step SL2 extensions ----------------------------------------------------------
@dataclass
class ExtClassification:
    tag: str
    d: int
    witness: list | None

    def to_json(self) -> dict:
        return {"tag": self.tag, "d": self.d,
                "witness": [[str(x) for x in row] for row in self.witness] if self.witness else None}


def _hw_lines(M: FinModule, vectors=None) -> dict:
    E, _, H = const_lie_action(M)
    return highest_weight_spaces(E, H, vectors)


def classify_extension(M: FinModule) -> ExtClassification:
    S = socle(M)
    k, q = S.dim, M.dim - S.dim
    hw = _hw_lines(M, S.vectors)
    lines = [(lam, v) for lam, vs in hw.items() for v in vs]
    if q == 0:
        if len(lines) != 2:
            raise NotTwoStepModule(f"semisimple module with {len(lines)} simple summands")
        lam, v = lines[0]
        sub = generated_submodule(M, v)
        witness = split_test(M, sub)
        if witness is None:
            raise ClassificationFailure("semisimple module failed to split")
        return ExtClassification("split", max(l for l, _ in lines), witness)
    if len(lines) != 1:
        raise NotTwoStepModule("socle is not simple")
    Qm = quotient(M, S.vectors)
    QS = socle(Qm)
    if QS.dim != Qm.dim or sum(len(v) for v in _hw_lines(Qm).values()) != 1:
        raise NotTwoStepModule("quotient by the socle is not simple")
    if k == q:
        tag, d, ref = "Ud", k - 1, lambda d: construct_Ud(d)
    elif k == q + 2:
        tag, d, ref = "Wd", k - 1, lambda d: construct_Wd(d)
    elif q == k + 2:
        tag, d, ref = "Wd_dual", q - 1, lambda d: dual(construct_Wd(d))
    else:
        raise ClassificationFailure(f"dimension pattern ({k}, {q}) matches no known extension")
    if d < 1 or (tag != "Ud" and d < 2):
        raise ClassificationFailure(f"dimension pattern ({k}, {q}) gives an invalid d")
    T = iso_test(M, ref(d))
    if T is None:
        raise ClassificationFailure(f"module matches the {tag} pattern with d={d} but is not isomorphic")
    return ExtClassification(tag, d, T)
