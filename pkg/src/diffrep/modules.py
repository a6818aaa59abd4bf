"""Finite-dimensional differential SL2-modules given by coaction matrices.

Convention: rho(e_j) = sum_i e_i (x) a_ij with a_ij in A.  Writing each
entry in the canonical Laurent form and collecting monomials gives
rho = sum_mu A_mu (x) mu with K-matrices A_mu over linearly independent
mu, so every structural question (closure, invariants, intertwiners,
splittings, socles) becomes linear algebra over K on the family {A_mu}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

import numpy as np
from flint import fmpq

from .actions import sl2_coaction, tensor_split, comultiply_C
from .config import config
from .diffpoly import DerivVar, DiffPoly, mono_degree, mono_from_factors, var, var_of
from .errors import (InvalidD, LinearlyDependent, NotASubmodule, NotClosed, NotEquivariant,
                     NotInjective, NotSurjective, SocleNotSimple, ZeroOnSocle, ZeroVector)
from .field import K
from .linalg import (ONE, ZERO, RowReducer, complete_basis, det, independent_subset, inverse,
                     nullspace, rank, solve, span_basis, transpose)
from .quotient import QuotElem, antipode, laurent_degree, to_laurent

# -- coefficient helpers ----------------------------------------------------------


def _qlin(pairs) -> QuotElem:
    """sum c * q over (c, q) pairs, propagating representatives and normal forms."""
    pairs = [(K(c), q) for c, q in pairs if c]
    have_rep = all(q._rep is not None for _, q in pairs)
    have_lau = all(q._lau is not None for _, q in pairs) or not have_rep
    rep = {} if have_rep else None
    lau = {} if have_lau else None
    for c, q in pairs:
        if rep is not None:
            for m, v in q._rep.items():
                s = rep.get(m)
                rep[m] = c * v if s is None else s + c * v
        if lau is not None:
            for m, v in q.laurent.items():
                s = lau.get(m)
                lau[m] = c * v if s is None else s + c * v
    rp = DiffPoly({m: v for m, v in rep.items() if v}) if rep is not None else None
    lp = DiffPoly({m: v for m, v in lau.items() if v}) if lau is not None else None
    return QuotElem("A", rp, lp)


def _zero() -> QuotElem:
    return QuotElem("A", DiffPoly(), DiffPoly())


def _one() -> QuotElem:
    return QuotElem("A", DiffPoly.const(1), DiffPoly.const(1))


def _is_derivative_free(mu: tuple) -> bool:
    return all(var_of(i).order == 0 for i, _ in mu)


def _c11_power(mu: tuple):
    """Exponent a if mu == c11^a (a may be 0 or negative), else None."""
    if not mu:
        return 0
    if len(mu) == 1:
        v = var_of(mu[0][0])
        if v.name == "c11" and v.order == 0:
            return mu[0][1]
    return None


def _single(mu: tuple, name: str):
    """Exponent a if mu == c11^a * name (with name to the first power), else None."""
    a = 0
    seen = False
    for i, e in mu:
        v = var_of(i)
        if v.order != 0:
            return None
        if v.name == "c11":
            a = e
        elif v.name == name and e == 1:
            seen = True
        else:
            return None
    return a if seen else None


class FinModule:
    """Coaction matrix with entries in A, plus an optional embedding basis in K{x, y}."""

    def __init__(self, coaction, basis=None, name: str | None = None):
        rows = []
        for row in coaction:
            rows.append([q if isinstance(q, QuotElem) else QuotElem("A", q if isinstance(q, DiffPoly)
                                                                    else DiffPoly.const(K(q))) for q in row])
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("coaction must be a non-empty square matrix")
        self.coaction = rows
        self.dim = n
        self.basis = list(basis) if basis is not None else None
        self.name = name
        self._mats = None
        self.a_basis = None

    def entry(self, i: int, j: int) -> QuotElem:
        return self.coaction[i][j]

    def mats(self) -> dict:
        """{mu: {i: {j: coeff}}} with rho = sum_mu A_mu (x) mu."""
        if self._mats is None:
            out: dict = {}
            for i, row in enumerate(self.coaction):
                for j, q in enumerate(row):
                    for mu, c in q.laurent.items():
                        out.setdefault(mu, {}).setdefault(i, {})[j] = c
            self._mats = out
        return self._mats

    def __repr__(self):
        return f"FinModule(dim={self.dim}{', ' + self.name if self.name else ''})"

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "basis": [b.to_json() for b in self.basis] if self.basis is not None else None,
                "coaction": [[q.to_json() for q in row] for row in self.coaction]}

    @staticmethod
    def from_json(data: dict) -> "FinModule":
        coaction = [[QuotElem.from_json(q) for q in row] for row in data["coaction"]]
        basis = [DiffPoly.from_json(b) for b in data["basis"]] if data.get("basis") is not None else None
        M = FinModule(coaction, basis)
        if M.dim != data.get("dim", M.dim):
            raise ValueError("dim does not match the coaction matrix")
        return M


def _apply(rows: dict, v, n: int) -> list:
    out = [ZERO] * n
    for i, r in rows.items():
        s = ZERO
        for j, c in r.items():
            x = v[j]
            if x:
                s = s + c * x
        out[i] = s
    return out


def _dense(rows: dict, n: int) -> list:
    M = [[ZERO] * n for _ in range(n)]
    for i, r in rows.items():
        for j, c in r.items():
            M[i][j] = c
    return M


# -- construction ----------------------------------------------------------------
def _coeff_vectors(polys):
    cols: dict = {}
    vecs = []
    for p in polys:
        v = {}
        for m, c in p.items():
            k = cols.setdefault(m, len(cols))
            v[k] = c
        vecs.append(v)
    return vecs, list(cols)


def coaction_matrix(basis, name: str | None = None) -> FinModule:
    """The SL2-module spanned by ``basis`` inside K{x, y}."""
    basis = [b if isinstance(b, DiffPoly) else DiffPoly.const(K(b)) for b in basis]
    n = len(basis)
    vecs, monos = _coeff_vectors(basis)
    # rows of the coefficient matrix are monomials; choose n independent ones
    col_of = {m: k for k, m in enumerate(monos)}
    rr = RowReducer()
    for v in vecs:
        if rr.add(v) is None:
            raise LinearlyDependent("basis polynomials are linearly dependent")
    piv = sorted(rr.pivots)
    sq = [[vecs[j].get(p, ZERO) for j in range(n)] for p in piv]
    inv = inverse(sq)
    coaction = [[None] * n for _ in range(n)]
    for j, b in enumerate(basis):
        parts = tensor_split(sl2_coaction(b))
        rhs = [parts.get(monos[p], DiffPoly()) for p in piv]
        col = []
        for i in range(n):
            acc = DiffPoly()
            for k, r in enumerate(rhs):
                if inv[i][k] and r:
                    acc = acc + r.scale(inv[i][k])
            col.append(acc)
        # the remaining monomials must be matched exactly
        resid = {mu: r for mu, r in parts.items()}
        for i, a in enumerate(col):
            if not a:
                continue
            for m, c in basis[i].items():
                r = resid.get(m, DiffPoly()) - a.scale(c)
                if r:
                    resid[m] = r
                else:
                    resid.pop(m, None)
        resid = {m: r for m, r in resid.items() if r}
        if resid:
            witness = DiffPoly()
            for m, r in resid.items():
                witness = witness + r.mul_term(ONE, m)
            raise NotClosed(f"image of basis element {j} leaves the span", witness)
        for i in range(n):
            coaction[i][j] = QuotElem("A", col[i])
    return FinModule(coaction, basis, name)


def monomials_P(d: int, k: int) -> list:
    """Differential monomials in x, y of degree d and weight <= k, by weight."""
    out = []
    for w in range(k + 1):
        names = [(nm, p) for p in range(w + 1) for nm in ("x", "y")]
        for combo in combinations_with_replacement(names, d):
            if sum(p for _, p in combo) == w:
                out.append(DiffPoly.monomial([(("m", nm, p), 1) for nm, p in combo]))
    return out


def construct_Pdk(d: int, k: int) -> FinModule:
    if d < 0 or k < 0:
        raise InvalidD("d and k must be non-negative")
    return coaction_matrix(monomials_P(d, k), name=f"P_{d}^{k}")


def _P0(d: int) -> list:
    x, y = var("x"), var("y")
    return [x ** (d - i) * y ** i for i in range(d + 1)]


def Ud_basis(d: int) -> list:
    p0 = _P0(d)
    return p0 + [b.derive() for b in p0]


def Wd_basis(d: int) -> list:
    x, y = var("x"), var("y")
    wr = x.derive() * y - x * y.derive()
    return _P0(d) + [wr * b for b in _P0(d - 2)]


def construct_Ud(d: int) -> FinModule:
    if d < 1:
        raise InvalidD("U_d needs d >= 1")
    return coaction_matrix(Ud_basis(d), name=f"U_{d}")


def construct_Wd(d: int) -> FinModule:
    if d < 2:
        raise InvalidD("W_d needs d >= 2")
    return coaction_matrix(Wd_basis(d), name=f"W_{d}")


def trivial_module() -> FinModule:
    return coaction_matrix([DiffPoly.const(1)], name="K")


def _independent_polys(polys) -> bool:
    vecs, _ = _coeff_vectors(polys)
    return all(polys) and len(independent_subset(vecs)) == len(polys)


def prolongation(M: FinModule) -> FinModule:
    n = M.dim
    Z = _zero()
    rows = []
    for i in range(n):
        rows.append(M.coaction[i] + [q.derive() for q in M.coaction[i]])
    for i in range(n):
        rows.append([Z] * n + M.coaction[i])
    basis = None
    if M.basis is not None:
        cand = M.basis + [b.derive() for b in M.basis]
        if _independent_polys(cand):
            basis = cand
    return FinModule(rows, basis, name=f"F({M.name})" if M.name else None)


def direct_sum(M1: FinModule, M2: FinModule) -> FinModule:
    Z = _zero()
    rows = [r + [Z] * M2.dim for r in M1.coaction] + [[Z] * M1.dim + r for r in M2.coaction]
    basis = None
    if M1.basis is not None and M2.basis is not None and _independent_polys(M1.basis + M2.basis):
        basis = M1.basis + M2.basis
    name = f"{M1.name}+{M2.name}" if M1.name and M2.name else None
    return FinModule(rows, basis, name)


def dual(M: FinModule) -> FinModule:
    n = M.dim
    rows = [[antipode(M.coaction[j][i]) for j in range(n)] for i in range(n)]
    return FinModule(rows, None, name=f"{M.name}^v" if M.name else None)


# -- linear maps and subspaces ---------------------------------------------------------
def _to_K_matrix(T) -> list:
    return [[K(x) for x in row] for row in T]


def transform(M: FinModule, L, R) -> list:
    """Entries of L * rho * R (L: k x n, R: n x m over K)."""
    n = M.dim
    m = len(R[0]) if R else 0
    AR = []
    for a in range(n):
        AR.append([_qlin((R[b][j], M.coaction[a][b]) for b in range(n) if R[b][j]) for j in range(m)])
    out = []
    for row in L:
        out.append([_qlin((row[a], AR[a][j]) for a in range(n) if row[a]) for j in range(m)])
    return out


def _columns(vectors) -> list:
    """n x k matrix whose columns are the given vectors."""
    return transpose([[K(x) for x in v] for v in vectors])


def is_closed(M: FinModule, vectors) -> bool:
    if not vectors:
        return True
    rr = RowReducer()
    for v in vectors:
        rr.add({j: K(x) for j, x in enumerate(v) if x})
    for rows in M.mats().values():
        for v in vectors:
            if not rr.contains({j: x for j, x in enumerate(_apply(rows, v, M.dim)) if x}):
                return False
    return True


def _left_inverse(S) -> list:
    """k x n matrix L with L * S = I for an n x k matrix S of full column rank."""
    n = len(S)
    k = len(S[0]) if S else 0
    rr = RowReducer()
    piv_rows = []
    for i in range(n):
        if rr.add({j: S[i][j] for j in range(k) if S[i][j]}) is not None:
            piv_rows.append(i)
        if len(piv_rows) == k:
            break
    if len(piv_rows) < k:
        raise LinearlyDependent("vectors are linearly dependent")
    sq = [S[i] for i in piv_rows]
    inv = inverse(sq)
    L = [[ZERO] * n for _ in range(k)]
    for a in range(k):
        for b, i in enumerate(piv_rows):
            L[a][i] = inv[a][b]
    return L


@dataclass
class SubmoduleDescr:
    ambient: FinModule
    vectors: list

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def module(self) -> FinModule:
        return restrict(self.ambient, self.vectors)

    def contains(self, v) -> bool:
        if not self.vectors:
            return all(not x for x in v)
        rr = RowReducer()
        for w in self.vectors:
            rr.add({j: x for j, x in enumerate(w) if x})
        return rr.contains({j: K(x) for j, x in enumerate(v) if x})

    def same_span(self, other) -> bool:
        vs = other.vectors if isinstance(other, SubmoduleDescr) else other
        return rank(self.vectors + list(vs)) == rank(self.vectors) == rank(list(vs)) if (self.vectors or vs) else True

    def polys(self):
        """Elements of K{x, y} spanned, when the ambient module is embedded."""
        if self.ambient.basis is None:
            return None
        out = []
        for v in self.vectors:
            p = DiffPoly()
            for c, b in zip(v, self.ambient.basis):
                if c:
                    p = p + b.scale(c)
            out.append(p)
        return out


def submodule(M: FinModule, vectors) -> SubmoduleDescr:
    vectors = span_basis([[K(x) for x in v] for v in vectors]) if vectors else []
    if not is_closed(M, vectors):
        raise NotASubmodule("span is not closed under the coaction")
    return SubmoduleDescr(M, vectors)


def restrict(M: FinModule, vectors) -> FinModule:
    vectors = [[K(x) for x in v] for v in vectors]
    if not is_closed(M, vectors):
        raise NotASubmodule("span is not closed under the coaction")
    S = _columns(vectors)
    L = _left_inverse(S)
    rows = transform(M, L, S)
    basis = None
    if M.basis is not None:
        basis = []
        for v in vectors:
            p = DiffPoly()
            for c, b in zip(v, M.basis):
                if c:
                    p = p + b.scale(c)
            basis.append(p)
    return FinModule(rows, basis)


def change_basis(M: FinModule, P) -> FinModule:
    """Module in the basis given by the columns of P."""
    P = _to_K_matrix(P)
    Pinv = inverse(P)
    if Pinv is None:
        raise LinearlyDependent("change-of-basis matrix is singular")
    rows = transform(M, Pinv, P)
    basis = None
    if M.basis is not None:
        basis = []
        for j in range(M.dim):
            p = DiffPoly()
            for i, b in enumerate(M.basis):
                if P[i][j]:
                    p = p + b.scale(P[i][j])
            basis.append(p)
    return FinModule(rows, basis)


def quotient(M: FinModule, vectors, complement=None) -> FinModule:
    """M / span(vectors), in the basis induced by ``complement`` (chosen if None)."""
    vectors = [[K(x) for x in v] for v in vectors]
    k = len(vectors)
    if complement is None:
        full = complete_basis(vectors, M.dim)
    else:
        full = vectors + [[K(x) for x in v] for v in complement]
    P = _columns(full)
    Pinv = inverse(P)
    if Pinv is None:
        raise LinearlyDependent("complement does not complete the subspace")
    new = transform(M, Pinv, P)
    for i in range(k, M.dim):
        for j in range(k):
            if new[i][j]:
                raise NotASubmodule("span is not closed under the coaction")
    return FinModule([row[k:] for row in new[k:]])


# -- analysis -----------------------------------------------------------------------
def generated_submodule(M: FinModule, v) -> SubmoduleDescr:
    v = [K(x) for x in v]
    if all(not x for x in v):
        raise ZeroVector("cannot generate from the zero vector")
    vecs = [_apply(rows, v, M.dim) for rows in M.mats().values()]
    return SubmoduleDescr(M, span_basis([w for w in vecs if any(w)]))


def invariants(M: FinModule) -> SubmoduleDescr:
    n = M.dim
    eqs = []
    mats = M.mats()
    for mu, rows in mats.items():
        D = _dense(rows, n)
        if mu == ():
            for i in range(n):
                D[i][i] = D[i][i] - ONE
        eqs.extend(D)
    if () not in mats:
        eqs.extend([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])
    return SubmoduleDescr(M, span_basis(nullspace(eqs, n)) if nullspace(eqs, n) else [])


def const_lie_action(M: FinModule):
    """(E, F, H) of the constant points: tau-linear parts of the unipotent
    one-parameter subgroups and the logarithmic weight of the diagonal torus."""
    n = M.dim
    E = [[ZERO] * n for _ in range(n)]
    F = [[ZERO] * n for _ in range(n)]
    H = [[ZERO] * n for _ in range(n)]
    for mu, rows in M.mats().items():
        a = _c11_power(mu)
        if a is not None:
            for i, r in rows.items():
                for j, c in r.items():
                    H[i][j] = H[i][j] + c * a
            continue
        if _single(mu, "c12") is not None:
            tgt = E
        elif _single(mu, "c21") is not None:
            tgt = F
        else:
            continue
        for i, r in rows.items():
            for j, c in r.items():
                tgt[i][j] = tgt[i][j] + c
    return E, F, H


def counit_matrix(M: FinModule) -> list:
    n = M.dim
    out = [[ZERO] * n for _ in range(n)]
    for mu, rows in M.mats().items():
        if _c11_power(mu) is not None:
            for i, r in rows.items():
                for j, c in r.items():
                    out[i][j] = out[i][j] + c
    return out


def _matmul(A, B):
    from .linalg import mat_mul
    return mat_mul(A, B)


def lie_relations_hold(E, F, H) -> bool:
    from .linalg import mat_equal, mat_scale, mat_sub
    EF = mat_sub(_matmul(E, F), _matmul(F, E))
    HE = mat_sub(_matmul(H, E), _matmul(E, H))
    HF = mat_sub(_matmul(H, F), _matmul(F, H))
    return mat_equal(EF, H) and mat_equal(HE, mat_scale(E, 2)) and mat_equal(HF, mat_scale(F, -2))


def highest_weight_spaces(E, H, vectors=None) -> dict:
    """{lambda: basis of ker E cap ker(H - lambda)} inside span(vectors)."""
    n = len(H)
    out = {}
    for lam in range(n, -1, -1):
        rows = [list(r) for r in E] + [[H[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        ns = nullspace(rows, n)
        if vectors is not None:
            ns = [v for v in _intersect(ns, vectors, n)]
        if ns:
            out[lam] = ns
    return out


def _intersect(U, V, n) -> list:
    """Basis of span(U) cap span(V)."""
    if not U or not V:
        return []
    k = len(U)
    # solve sum a_i U_i - sum b_j V_j = 0
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    ns = nullspace(transpose(cols), len(cols))
    out = []
    for s in ns:
        w = [ZERO] * n
        for i in range(k):
            if s[i]:
                w = [a + s[i] * b for a, b in zip(w, U[i])]
        if any(w):
            out.append(w)
    return span_basis(out) if out else []


def socle(M: FinModule) -> SubmoduleDescr:
    """Largest submodule whose matrix coefficients are derivative free.

    A vector lies in an algebraic submodule iff every vector of the
    submodule it generates has order-zero coefficients; that set is cut out
    by the linear conditions Q * A_mu * v = 0 with Q spanning the
    constraints on order-zero coefficients.  Algebraic SL2-modules are
    semisimple, so this submodule is the socle.
    """
    n = M.dim
    mats = M.mats()
    deriv_rows = []
    for mu, rows in mats.items():
        if not _is_derivative_free(mu):
            deriv_rows.extend(_dense(rows, n))
    Q = span_basis(deriv_rows) if deriv_rows else []
    eqs = []
    for rows in mats.values():
        A_mu = _dense(rows, n)
        eqs.extend(_matmul(Q, A_mu))
    X = nullspace(eqs, n) if eqs else [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    X = span_basis(X) if X else []
    S = SubmoduleDescr(M, X)
    _check_semisimple(S)
    return S


def _check_semisimple(S: SubmoduleDescr):
    """Each highest-weight vector of the socle must generate a simple module of dim lambda+1."""
    if not S.vectors:
        return
    E, _, H = const_lie_action(S.ambient)
    for lam, vecs in highest_weight_spaces(E, H, S.vectors).items():
        for v in vecs:
            if generated_submodule(S.ambient, v).dim != lam + 1:
                raise ArithmeticError("socle computation produced a non-simple highest-weight vector")


def is_simple_algebraic(M: FinModule) -> bool:
    """Simple iff the socle is everything with a single highest-weight line."""
    S = socle(M)
    if S.dim != M.dim:
        return False
    E, _, H = const_lie_action(M)
    hw = highest_weight_spaces(E, H)
    return sum(len(v) for v in hw.values()) == 1


def socle_first(M: FinModule) -> FinModule:
    S = socle(M)
    return change_basis(M, _columns(complete_basis(S.vectors, M.dim)))


def first_row_embed(M: FinModule) -> list:
    """(a_11, ..., a_1n) for a module whose simple socle spans the leading basis vectors."""
    S = socle(M)
    k = S.dim
    E, _, H = const_lie_action(M)
    hw = highest_weight_spaces(E, H, S.vectors)
    if sum(len(v) for v in hw.values()) != 1:
        raise SocleNotSimple(f"socle of dimension {k} is not simple")
    lead = [[ONE if i == j else ZERO for i in range(M.dim)] for j in range(k)]
    if rank(lead + S.vectors) != k:
        raise ValueError("socle is not spanned by the leading basis vectors; use socle_first")
    row = M.coaction[0]
    if not any(row[j] for j in range(k)):
        raise ZeroOnSocle("first row vanishes on the socle")
    _check_independent_elems(row)
    return list(row)


def _elems_matrix(elems, degree=None):
    cols: dict = {}
    vecs = []
    for q in elems:
        L = q.laurent if degree is None else q.laurent.homogeneous_component(degree)
        v = {}
        for m, c in L.items():
            v[cols.setdefault(m, len(cols))] = c
        vecs.append(v)
    return vecs


def _check_independent_elems(elems):
    vecs = _elems_matrix(elems)
    if len(independent_subset(vecs)) != len(elems):
        raise LinearlyDependent("elements of A are linearly dependent")


def is_equivariant(M1: FinModule, M2: FinModule, T) -> bool:
    """T: V1 -> V2 (dim V2 x dim V1) commutes with the coactions."""
    T = _to_K_matrix(T)
    n1, n2 = M1.dim, M2.dim
    m1, m2 = M1.mats(), M2.mats()
    for mu in set(m1) | set(m2):
        A1 = _dense(m1.get(mu, {}), n1)
        A2 = _dense(m2.get(mu, {}), n2)
        if any(a != b for ra, rb in zip(_matmul(A2, T), _matmul(T, A1)) for a, b in zip(ra, rb)):
            return False
    return True


def intertwiners(M1: FinModule, M2: FinModule) -> list:
    """Basis of Hom(M1, M2) as dim M2 x dim M1 matrices."""
    n1, n2 = M1.dim, M2.dim
    m1, m2 = M1.mats(), M2.mats()
    N = n1 * n2
    rr = RowReducer()
    for mu in set(m1) | set(m2):
        A1 = m1.get(mu, {})
        A2 = m2.get(mu, {})
        # (A2 T - T A1)[i][j] = sum_k A2[i][k] T[k][j] - sum_k T[i][k] A1[k][j]
        for i in range(n2):
            for j in range(n1):
                row = {}
                for k, c in A2.get(i, {}).items():
                    row[k * n1 + j] = row.get(k * n1 + j, ZERO) + c
                for k in range(n1):
                    c = A1.get(k, {}).get(j)
                    if c:
                        row[i * n1 + k] = row.get(i * n1 + k, ZERO) - c
                row = {a: b for a, b in row.items() if b}
                if row:
                    rr.add(row)
                    if len(rr) == N:
                        return []
    free = [u for u in range(N) if u not in rr.pivots]
    out = []
    for f in free:
        v = [ZERO] * N
        v[f] = ONE
        for c, pr in rr.pivots.items():
            x = pr.get(f)
            if x:
                v[c] = -x
        out.append([v[i * n1:(i + 1) * n1] for i in range(n2)])
    return out


_GRID_LIMIT = 60000


def find_invertible(mats: list, seed: int = 0):
    """An invertible element of span(mats), or None when every element is singular.

    Random integer combinations find one quickly when it exists.  A negative
    answer is certified exactly: det is a polynomial of degree <= n in the
    s coefficients, so vanishing on the grid {0..n}^s forces it to vanish
    identically.
    """
    if not mats:
        return None
    n = len(mats[0])
    if n != len(mats[0][0]):
        return None
    s = len(mats)
    for M in mats:
        if det(M):
            return [list(r) for r in M]
    rng = np.random.default_rng([seed, s, n])
    for _ in range(12):
        coeffs = [int(c) for c in rng.integers(-50, 51, size=s)]
        T = _combine(mats, coeffs)
        if det(T):
            return T
    if (n + 1) ** s <= _GRID_LIMIT:
        for coeffs in product(range(n + 1), repeat=s):
            T = _combine(mats, coeffs)
            if det(T):
                return T
        return None
    return _symbolic_invertible(mats)


def _combine(mats, coeffs):
    n = len(mats[0])
    m = len(mats[0][0])
    T = [[ZERO] * m for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if c:
            for i in range(n):
                for j in range(m):
                    if M[i][j]:
                        T[i][j] = T[i][j] + M[i][j] * c
    return T


def _symbolic_invertible(mats):
    """Exact generic-rank test for large parameter spaces."""
    import sympy
    from .field import numer_denom
    s = len(mats)
    syms = sympy.symbols(f"s0:{s}")
    tt = sympy.Symbol("t")

    def conv(x):
        n, d = numer_denom(x)
        num = sum(sympy.Rational(int(c.p), int(c.q)) * tt ** k for k, c in enumerate(n.coeffs()))
        den = sum(sympy.Rational(int(c.p), int(c.q)) * tt ** k for k, c in enumerate(d.coeffs()))
        return num / den

    n = len(mats[0])
    T = sympy.zeros(n, n)
    for sym, M in zip(syms, mats):
        T += sym * sympy.Matrix([[conv(x) for x in row] for row in M])
    if sympy.simplify(T.det()) == 0:
        return None
    raise ArithmeticError("generic determinant is nonzero but no invertible sample was found")


def iso_test(M1: FinModule, M2: FinModule, seed: int = 0):
    """An invertible intertwiner T (T rho_1 = rho_2 T), or None."""
    if M1.dim != M2.dim:
        return None
    return find_invertible(intertwiners(M1, M2), seed)


def split_test(M: FinModule, S):
    """An equivariant section of M -> M/S (columns: lifted quotient basis), or None."""
    vectors = S.vectors if isinstance(S, SubmoduleDescr) else S
    vectors = [[K(x) for x in v] for v in vectors]
    if not is_closed(M, vectors):
        raise NotASubmodule("span is not closed under the coaction")
    n, k = M.dim, len(vectors)
    q = n - k
    if q == 0:
        return []
    full = complete_basis(vectors, n)
    P = _columns(full)
    N = change_basis(M, P)
    mats = N.mats()
    # unknown X (k x q): A_S X - X A_Q + B = 0 for every mu
    rr = RowReducer()
    RHS = k * q
    for rows in mats.values():
        for i in range(k):
            for j in range(q):
                row = {}
                for l, c in rows.get(i, {}).items():
                    if l < k:
                        row[l * q + j] = row.get(l * q + j, ZERO) + c
                for l in range(q):
                    c = rows.get(k + l, {}).get(k + j)
                    if c:
                        row[i * q + l] = row.get(i * q + l, ZERO) - c
                b = rows.get(i, {}).get(k + j)
                if b:
                    row[RHS] = b
                row = {a: v for a, v in row.items() if v}
                if row:
                    rr.add(row)
    if RHS in rr.pivots:
        return None
    X = [[ZERO] * q for _ in range(k)]
    for c, pr in rr.pivots.items():
        X[c // q][c % q] = pr.get(RHS, ZERO)
    # section columns: complement vector + sum_i X[i][j] * S_i, in original coordinates
    out = []
    for j in range(q):
        col = list(full[k + j])
        for i in range(k):
            if X[i][j]:
                col = [a + X[i][j] * b for a, b in zip(col, full[i])]
        out.append(col)
    return transpose(out)


def module_degree(M: FinModule) -> int:
    best = 0
    for row in M.coaction:
        for q in row:
            if q.laurent:
                best = max(best, laurent_degree(q.laurent))
    return best


def elements_degree(elems) -> int:
    return max(laurent_degree(q.laurent) for q in elems if q.laurent)


def is_homogeneous(elems) -> bool:
    """All nonzero combinations share one degree iff the top components are independent."""
    elems = [q for q in elems]
    if any(not q for q in elems):
        return False
    d = elements_degree(elems)
    vecs = _elems_matrix(elems, degree=d)
    return len(independent_subset(vecs)) == len(elems)


# -- comodule axioms ------------------------------------------------------------------
@dataclass
class CheckResult:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


def _tensor_product(left: DiffPoly, right: DiffPoly, acc: dict):
    """Accumulate left (x) right into acc; the variable groups are disjoint."""
    for m1, c1 in left.items():
        for m2, c2 in right.items():
            m = tuple(sorted(m1 + m2))
            v = c1 * c2
            s = acc.get(m)
            acc[m] = v if s is None else s + v


def check_comodule(M: FinModule) -> CheckResult:
    n = M.dim
    cu = counit_matrix(M)
    for i in range(n):
        for j in range(n):
            want = ONE if i == j else ZERO
            if cu[i][j] != want:
                return CheckResult(False, f"counit fails at entry ({i}, {j})")
    reps_l = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            q = M.coaction[i][j]
            if q:
                reps_l[i][j] = q.rep.rename_group("gr", "gl")
    lau_l: dict = {}
    for i in range(n):
        for j in range(n):
            q = M.coaction[i][j]
            lhs = comultiply_C(q.rep) if q else DiffPoly()
            acc: dict = {}
            for l in range(n):
                a, b = reps_l[i][l], M.coaction[l][j]
                if a is not None and b:
                    _tensor_product(a, b.rep, acc)
            rhs = DiffPoly({m: c for m, c in acc.items() if c})
            if lhs == rhs:
                continue
            # compare in A (x) A: each tensor factor reduced by its own chain
            acc = {}
            for l in range(n):
                a, b = M.coaction[i][l], M.coaction[l][j]
                if a and b:
                    la = lau_l.get((i, l))
                    if la is None:
                        la = lau_l[(i, l)] = a.laurent.rename_group("gr", "gl")
                    _tensor_product(la, b.laurent, acc)
            rhs_l = DiffPoly({m: c for m, c in acc.items() if c})
            if to_laurent(lhs, "A", ("gl", "gr")) != rhs_l:
                return CheckResult(False, f"coassociativity fails at entry ({i}, {j})")
    return CheckResult(True)


# -- submodules of A -------------------------------------------------------------------
def module_from_A_subspace(elems) -> FinModule:
    """The right-regular coaction restricted to span(elems) inside A."""
    elems = [q if isinstance(q, QuotElem) else QuotElem("A", q) for q in elems]
    n = len(elems)
    _check_independent_elems(elems)
    left_vecs = []
    cols: dict = {}
    for q in elems:
        v = {}
        for m, c in q.laurent.rename_group("gr", "gl").items():
            v[cols.setdefault(m, len(cols))] = c
        left_vecs.append(v)
    rr = RowReducer()
    for v in left_vecs:
        rr.add(v)
    piv = sorted(rr.pivots)
    sq = [[left_vecs[j].get(p, ZERO) for j in range(n)] for p in piv]
    inv = inverse(sq)
    colkeys = {k: m for m, k in cols.items()}
    coaction = [[None] * n for _ in range(n)]
    for j, q in enumerate(elems):
        full = to_laurent(comultiply_C(q.rep), "A", ("gl", "gr"))
        parts = tensor_split(full, ("gl",))
        for m in parts:
            if m not in cols:
                raise NotClosed(f"coaction of element {j} leaves the span")
        rhs = [parts.get(colkeys[p], DiffPoly()) for p in piv]
        col = []
        for i in range(n):
            acc = DiffPoly()
            for k, r in enumerate(rhs):
                if inv[i][k] and r:
                    acc = acc + r.scale(inv[i][k])
            col.append(acc)
        check = DiffPoly()
        for i, a in enumerate(col):
            if a:
                for m, c in elems[i].laurent.rename_group("gr", "gl").items():
                    check = check + a.mul_term(c, m)
        if check != full:
            raise NotClosed(f"coaction of element {j} leaves the span")
        for i in range(n):
            coaction[i][j] = QuotElem("A", None, col[i])
    M = FinModule(coaction)
    M.a_basis = elems
    return M


# -- pull-backs and push-outs ---------------------------------------------------------
def _induced_quotient(M: FinModule, pi) -> list:
    """Entries of the coaction induced on the image of a surjection pi (w x n)."""
    piT = transpose(pi)
    s = transpose(_left_inverse(piT))  # n x w right inverse of pi
    return transform(M, pi, s)


def _same_entries(X, Y) -> bool:
    return all(a == b for ra, rb in zip(X, Y) for a, b in zip(ra, rb))


def pullback(M1: FinModule, M2: FinModule, pi1, pi2, W: FinModule | None = None) -> FinModule:
    pi1, pi2 = _to_K_matrix(pi1), _to_K_matrix(pi2)
    w = len(pi1)
    if len(pi2) != w:
        raise ValueError("surjections must share a target")
    for pi, M in ((pi1, M1), (pi2, M2)):
        if rank(pi) != w:
            raise NotSurjective("map is not onto the common target")
    for pi, M in ((pi1, M1), (pi2, M2)):
        if not is_closed(M, nullspace(pi, M.dim)):
            raise NotEquivariant("kernel of a surjection is not a submodule")
    if W is not None:
        if not (is_equivariant(M1, W, pi1) and is_equivariant(M2, W, pi2)):
            raise NotEquivariant("surjection does not commute with the coactions")
    elif not _same_entries(_induced_quotient(M1, pi1), _induced_quotient(M2, pi2)):
        raise NotEquivariant("the two surjections induce different target modules")
    n1, n2 = M1.dim, M2.dim
    E1 = nullspace(pi1, n1)
    F1 = nullspace(pi2, n2)
    vecs = [e + [ZERO] * n2 for e in E1] + [[ZERO] * n1 + f for f in F1]
    for k in range(w):
        wk = [ONE if i == k else ZERO for i in range(w)]
        vecs.append(solve(pi1, wk) + solve(pi2, wk))
    return restrict(direct_sum(M1, M2), vecs)


def pushout(M1: FinModule, M2: FinModule, iota1, iota2) -> FinModule:
    iota1, iota2 = _to_K_matrix(iota1), _to_K_matrix(iota2)
    u = len(iota1[0]) if iota1 else 0
    for io in (iota1, iota2):
        if rank(transpose(io)) != u:
            raise NotInjective("map is not injective")
    U1 = transpose(iota1)
    U2 = transpose(iota2)
    if not (is_closed(M1, U1) and is_closed(M2, U2)):
        raise NotEquivariant("image of an embedding is not a submodule")
    R1 = transform(M1, _left_inverse(iota1), iota1)
    R2 = transform(M2, _left_inverse(iota2), iota2)
    if not _same_entries(R1, R2):
        raise NotEquivariant("the two embeddings induce different source modules")
    n1, n2 = M1.dim, M2.dim
    D = direct_sum(M1, M2)
    S = [a + [-x for x in b] for a, b in zip(U1, U2)]
    C1 = complete_basis(U1, n1)[u:]
    C2 = complete_basis(U2, n2)[u:]
    comp = [a + [ZERO] * n2 for a in U1] + [c + [ZERO] * n2 for c in C1] + [[ZERO] * n1 + c for c in C2]
    return quotient(D, S, comp)
