"""Verification suites.  Each suite returns a SuiteReport of named assertions;
randomized suites draw trial k from its own generator seeded by (seed, k)."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from flint import fmpq

from .actions import (NilArray, ga_rep, isotypic_top_part, lemma_max_witness, pmat_equal, pmat_mul,
                      sl2_coaction, gm_evaluate)
from .classify import GmRep, classify_extension, classify_gm, nilarray_equiv, synthesize_gm
from .diffpoly import DerivVar, DiffPoly, Term, dvalue, mono_from_factors, var, weight
from .examples import five_dim_matrix, nonhomogeneous_elems, nonhomogeneous_module, wronskian, wronskian_module
from .field import K, t
from .groebner import detprime_check
from .linalg import ONE, ZERO, inverse, mat_mul, rank
from .modules import (FinModule, check_comodule, construct_Pdk, construct_Ud, construct_Wd, direct_sum, dual,
                      first_row_embed, generated_submodule, invariants, is_homogeneous, elements_degree,
                      iso_test, module_degree, prolongation, pullback, pushout, quotient, restrict,
                      socle, socle_first, split_test, trivial_module, SubmoduleDescr, highest_weight_spaces,
                      const_lie_action, _columns, complete_basis, lie_relations_hold, is_closed)
from .quotient import QuotElem, cvar


@dataclass
class Assertion:
    anchor: str
    claim: str
    ok: bool
    detail: str = ""
    trial: int | None = None
    discrepancy: bool = False  # a documented mismatch with the printed source, reproduced as expected


@dataclass
class SuiteReport:
    name: str
    assertions: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def add(self, anchor, claim, ok, detail="", trial=None, discrepancy=False):
        self.assertions.append(Assertion(anchor, claim, bool(ok), str(detail), trial, discrepancy))

    def failures(self) -> list:
        return [a for a in self.assertions if not a.ok]

    def to_json(self) -> dict:
        items = sorted(self.assertions, key=lambda a: (a.trial is not None, a.trial or 0))
        return {"suite": self.name, "ok": self.ok, "seconds": round(self.seconds, 3),
                "assertions": [{"anchor": a.anchor, "claim": a.claim, "ok": a.ok, "detail": a.detail,
                                "trial": a.trial, "discrepancy": a.discrepancy} for a in items]}

    def text(self) -> str:
        lines = []
        for a in self.assertions:
            tag = "PASS" if a.ok else "FAIL"
            extra = " [documented discrepancy]" if a.discrepancy else ""
            tr = f" trial {a.trial}" if a.trial is not None else ""
            lines.append(f"{tag} [{a.anchor}]{tr} {a.claim}{extra}" + (f": {a.detail}" if a.detail and not a.ok or a.discrepancy else ""))
        lines.append(f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({len(self.assertions)} assertions, "
                     f"{len(self.failures())} failed, {self.seconds:.2f}s)")
        return "\n".join(lines)


def rng_for(seed: int, k: int):
    return np.random.default_rng([seed, k])


def _timed(fn):
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        rep = fn(*args, **kw)
        rep.seconds = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _span_equal(M: FinModule, vecs, polys) -> bool:
    S = SubmoduleDescr(M, vecs)
    got = S.polys()
    from .linalg import independent_subset
    from .modules import _coeff_vectors
    v, _ = _coeff_vectors(list(got) + list(polys))
    return len(independent_subset(v)) == len(got) == len(polys)


# -- the Wronskian example -----------------------------------------------------------
WRONSKIAN = "Wronskian module example"


def wronskian_rows():
    """Return (module, rows keyed by basis name) for span{x^2, xy, y^2, x'y - xy'}."""
    M = wronskian_module()
    names = ["x^2", "xy", "y^2", "w"]
    rows = {n: M.coaction[i] for i, n in enumerate(names)}
    return M, rows


@_timed
def suite_worked_examples(trials: int = 0, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("paper-examples")
    a, b, c, d = (cvar(n) for n in ("c11", "c12", "c21", "c22"))
    D = lambda p: p.derive()
    M, rows = wronskian_rows()
    A = lambda p: QuotElem("A", p)
    want_first = [A(a * a), A(a * b), A(b * b), A(D(a) * b - a * D(b))]
    first = first_row_embed(M)
    rep.add(WRONSKIAN, "first row is (c11^2, c11 c12, c12^2, c11'c12 - c11 c12')",
            all(x == y for x, y in zip(first, want_first)), [str(q) for q in first])
    rep.add(WRONSKIAN, "xy coefficient of the Wronskian equals 2(c11'c22 - c12'c21) in A",
            rows["xy"][3] == A((D(a) * d - D(b) * c) * 2), str(rows["xy"][3]))
    rep.add(WRONSKIAN, "x^2 coefficient of the Wronskian is c11'c12 - c11 c12'",
            rows["x^2"][3] == A(D(a) * b - a * D(b)))
    rep.add(WRONSKIAN, "y^2 coefficient of the Wronskian is c21'c22 - c21 c22'",
            rows["y^2"][3] == A(D(c) * d - c * D(d)))
    rep.add(WRONSKIAN, "Wronskian coefficient of the Wronskian is 1", rows["w"][3] == A(DiffPoly.const(1)))
    # printed coefficients that do not match the computation
    got = rows["y^2"][0]
    rep.add(WRONSKIAN, "y^2 coefficient of x^2 is c21^2, not the printed c22^2",
            got == A(c * c) and got != A(d * d), f"computed {got}", discrepancy=True)
    got = rows["y^2"][1]
    rep.add(WRONSKIAN, "y^2 coefficient of xy is c21 c22, not the printed c11 c21",
            got == A(c * d) and got != A(a * c), f"computed {got}", discrepancy=True)
    S = socle(M)
    x, y = var("x"), var("y")
    rep.add(WRONSKIAN, "socle is span{x^2, xy, y^2}", _span_equal(M, S.vectors, [x * x, x * y, y * y]))
    rep.add(WRONSKIAN, "image in A is homogeneous of degree 2",
            is_homogeneous(first) and elements_degree(first) == 2)
    rep.add(WRONSKIAN, "x^2 generates the socle", generated_submodule(M, [1, 0, 0, 0]).dim == 3)
    rep.add(WRONSKIAN, "the Wronskian generates the whole module", generated_submodule(M, [0, 0, 0, 1]).dim == 4)
    rep.add(WRONSKIAN, "no invariants", invariants(M).dim == 0)
    rep.add("prolongation isomorphism", "F(P_1^0) is isomorphic to U_1",
            iso_test(prolongation(construct_Pdk(1, 0)), construct_Ud(1)) is not None)
    rep.add("self-duality of P_d^0", "P_1^0 is self-dual", iso_test(dual(construct_Pdk(1, 0)), construct_Pdk(1, 0)) is not None)
    return rep


# -- weight-drop lemma ---------------------------------------------------------------------
WEIGHT_DROP = "weight-drop lemma for torus translates"


def random_term(rng, max_weight: int = 5, max_degree: int = 4) -> Term:
    """A monomial in x, y with positive weight <= max_weight and degree in 1..max_degree."""
    while True:
        deg = int(rng.integers(1, max_degree + 1))
        factors = [(str(rng.choice(["x", "y"])), int(rng.integers(0, max_weight + 1))) for _ in range(deg)]
        w = sum(p for _, p in factors)
        if 0 < w <= max_weight:
            mono = mono_from_factors([(DerivVar("m", nm, p), 1) for nm, p in factors])
            return Term(fmpq(1), mono)


@_timed
def suite_lemma_max(trials: int = 200, seed: int = 7) -> SuiteReport:
    rep = SuiteReport("lemma-max")
    worst = None
    for k in range(trials):
        h = random_term(rng_for(seed, k))
        W = lemma_max_witness(h, t)
        label = str(Term(h.coeff, h.mono))
        rep.add(WEIGHT_DROP, f"weight drops by one for {label}", W.weight_drop, trial=k)
        rep.add(WEIGHT_DROP, f"witness term lies in the residual for {label}", W.in_support, trial=k)
        rep.add(WEIGHT_DROP, f"witness term is below {label}", W.below_h, trial=k)
        ok = W.maximality_violation is None
        detail = "" if ok else f"{Term(W.maximality_violation.coeff, W.maximality_violation.mono)} lies strictly between {W.htilde} and {label}"
        rep.add(WEIGHT_DROP, f"witness is the predecessor of {label} among terms with the same d", ok, detail, trial=k)
        if not ok:
            size = (len(h.mono), weight(h))
            if worst is None or size < worst[0]:
                worst = (size, detail)
    if worst:
        rep.add(WEIGHT_DROP, "minimal counterexample to the predecessor clause", False, worst[1])
    return rep


@_timed
def suite_lemma_free(trials: int = 100, seed: int = 0) -> SuiteReport:
    """For f of weight w, translate the isotypic top part by t and check the weight drop."""
    rep = SuiteReport("lemma-free")
    anchor = "weight drop inside torus submodules"
    for k in range(trials):
        rng = rng_for(seed, k)
        f = DiffPoly()
        while not f:
            for _ in range(int(rng.integers(1, 4))):
                h = random_term(rng)
                f = f + DiffPoly({h.mono: fmpq(int(rng.integers(1, 10)) * int(rng.choice([-1, 1])))})
        fd = isotypic_top_part(f)
        dd = dvalue(max(fd.terms(), key=lambda tm: weight(Term(*tm))))
        resid = gm_evaluate(fd, t) - fd * (t ** dd)
        w = weight(fd)
        rep.add(anchor, f"weight of the translate residual of {fd} is {w - 1}",
                bool(resid) and weight(resid) == w - 1, f"got residual {resid}", trial=k)
    x = var("x")
    f = x * x.derive(2) - x.derive() ** 2
    resid = gm_evaluate(f, t) - f * t ** 2
    # the residual is (a a'' - a'^2) x^2, so span{f, x^2} is a torus submodule with no weight-1 element
    rep.add(anchor, "x x'' - (x')^2 and x^2 span a torus submodule without weight-1 elements",
            bool(resid) and weight(resid) == 0, f"residual {resid} has weight 0", discrepancy=True)
    return rep


# -- comodule axioms --------------------------------------------------------------------------
def _quotient_map(M: FinModule, vectors):
    """(W, pi) with pi the coordinate map onto M/span(vectors) in the completed basis."""
    full = complete_basis(vectors, M.dim)
    P = _columns(full)
    Pinv = inverse(P)
    k = len(vectors)
    return quotient(M, vectors), [row[:] for row in Pinv[k:]]


@_timed
def suite_comodule(trials: int = 0, seed: int = 0, max_d: int = 4) -> SuiteReport:
    rep = SuiteReport("comodule")
    anchor = "comodule axioms"
    mods = [("trivial", trivial_module())]
    for d in range(0, max_d + 1):
        mods.append((f"P_{d}^0", construct_Pdk(d, 0)))
        if d >= 1:
            mods.append((f"P_{d}^1", construct_Pdk(d, 1)))
            mods.append((f"U_{d}", construct_Ud(d)))
            mods.append((f"F(P_{d}^0)", prolongation(construct_Pdk(d, 0))))
        if d >= 2:
            mods.append((f"W_{d}", construct_Wd(d)))
            mods.append((f"W_{d} dual", dual(construct_Wd(d))))
    for d in range(1, max_d + 1):
        U = construct_Ud(d)
        W, pi = _quotient_map(U, socle(U).vectors)
        mods.append((f"pull-back U_{d} x U_{d}", pullback(U, U, pi, pi)))
        S = socle(U).vectors
        iota = _columns(S)
        mods.append((f"push-out U_{d} + U_{d}", pushout(U, U, iota, iota)))
    for name, M in mods:
        r = check_comodule(M)
        rep.add(anchor, f"{name} satisfies coassociativity and counit", r.ok, r.failure or "")
    a, b, c, d = (cvar(n) for n in ("c11", "c12", "c21", "c22"))
    bad = FinModule([[QuotElem("A", a * a), QuotElem("A", b)], [QuotElem("A", c), QuotElem("A", d)]])
    r = check_comodule(bad)
    rep.add(anchor, "replacing c11 by c11^2 in the defining matrix is detected", not r.ok, r.failure or "")
    return rep


# -- socles -----------------------------------------------------------------------------------
@_timed
def suite_socle(trials: int = 0, seed: int = 0, max_d: int = 4) -> SuiteReport:
    rep = SuiteReport("socle")
    anchor = "socles of first-order modules"
    for d in range(1, max_d + 1):
        P0 = construct_Pdk(d, 0).basis
        for name, M in ((f"U_{d}", construct_Ud(d)), (f"W_{d}", construct_Wd(d) if d >= 2 else None)):
            if M is None:
                continue
            S = socle(M)
            rep.add(anchor, f"socle of {name} is P_{d}^0", _span_equal(M, S.vectors, P0))
            R = restrict(M, S.vectors)
            rep.add(anchor, f"socle of the socle of {name} is itself", socle(R).dim == R.dim)
    for d1 in range(0, 3):
        for d2 in range(0, 3):
            M = direct_sum(construct_Pdk(d1, 0), construct_Pdk(d2, 0))
            rep.add(anchor, f"P_{d1}^0 + P_{d2}^0 is its own socle", socle(M).dim == M.dim)
    return rep


# -- isomorphism table -------------------------------------------------------------------------
@_timed
def suite_iso_table(trials: int = 0, seed: int = 0, max_d: int = 3) -> SuiteReport:
    rep = SuiteReport("iso-table")
    anchor = "pairwise non-isomorphic extensions"
    fam = {}
    for d in range(1, max_d + 1):
        fam[("U", d)] = construct_Ud(d)
        if d >= 2:
            fam[("W", d)] = construct_Wd(d)
            fam[("Wv", d)] = dual(construct_Wd(d))
    for d in range(1, max_d + 1):
        U = fam[("U", d)]
        rep.add("self-duality of U_d", f"U_{d} is isomorphic to its dual", iso_test(U, dual(U)) is not None)
        rep.add("prolongation isomorphism", f"U_{d} is isomorphic to F(P_{d}^0)",
                iso_test(U, prolongation(construct_Pdk(d, 0))) is not None)
    names = {"U": "U", "W": "W", "Wv": "W dual"}
    keys = sorted(fam)
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            got = iso_test(fam[k1], fam[k2])
            rep.add(anchor, f"{names[k1[0]]}_{k1[1]} and {names[k2[0]]}_{k2[1]} are not isomorphic", got is None)
    return rep


# -- the non-embeddable module -------------------------------------------------------------------
@_timed
def suite_counterexample(trials: int = 0, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("counterexample")
    anchor = "module not embeddable in K{x, y}"
    V = five_dim_matrix()
    r = check_comodule(V)
    rep.add(anchor, "the 5x5 matrix is a comodule", r.ok, r.failure or "")
    inv = invariants(V)
    rep.add(anchor, "invariants are spanned by the first basis vector",
            inv.dim == 1 and inv.same_span([[1, 0, 0, 0, 0]]))
    rep.add(anchor, "the trivial submodule has no equivariant complement", split_test(V, [[1, 0, 0, 0, 0]]) is None)
    W2 = wronskian_module()
    rep.add(anchor, "P_2^0 inside W_2 has no equivariant complement", split_test(W2, socle(W2)) is None)
    sub = restrict(V, [[1 if i == j else 0 for i in range(5)] for j in range(4)])
    rep.add(anchor, "the leading 4-dimensional submodule is isomorphic to the dual of W_2",
            iso_test(sub, dual(W2)) is not None)
    rep.add(anchor, "socle of the 5x5 module is the trivial line", socle(V).dim == 1)
    rep.add(anchor, "the dual has the same (1, 3, 1) socle pattern", socle(dual(V)).dim == 1)
    return rep


# -- dimensions ----------------------------------------------------------------------------------
@_timed
def suite_dimensions(trials: int = 0, seed: int = 0, max_d: int = 8) -> SuiteReport:
    rep = SuiteReport("dimensions")
    anchor = "dimensions of the two extension families"
    for d in range(1, max_d + 1):
        U = construct_Ud(d)
        rep.add(anchor, f"dim U_{d} = {2 * d + 2}", U.dim == 2 * d + 2)
        rep.add(anchor, f"U_{d} is a comodule", check_comodule(U).ok)
        if d >= 2:
            W = construct_Wd(d)
            rep.add(anchor, f"dim W_{d} = {2 * d}", W.dim == 2 * d)
            rep.add(anchor, f"W_{d} is a comodule", check_comodule(W).ok)
        P = construct_Pdk(d, 1)
        rep.add(anchor, f"dim P_{d}^1 = {3 * d + 1}", P.dim == 3 * d + 1)
        rep.add(anchor, f"P_{d}^1 is a comodule", check_comodule(P).ok)
    return rep


# -- exhaustiveness ---------------------------------------------------------------------------------
def simple_extensions_of_P0(d: int) -> list:
    """All submodules V with P_d^0 < V <= P_d^1 and V / P_d^0 simple, as polynomial bases.

    The quotient P_d^1 / P_d^0 is semisimple; every simple submodule is generated
    by a highest-weight vector, so when each highest-weight space is a line the
    simple submodules are exactly the ones generated by those lines.
    """
    P1 = construct_Pdk(d, 1)
    k0 = d + 1  # P_d^0 spans the leading basis vectors
    S0 = [[ONE if i == j else ZERO for i in range(P1.dim)] for j in range(k0)]
    Qm = quotient(P1, S0, complement=[[ONE if i == j else ZERO for i in range(P1.dim)] for j in range(k0, P1.dim)])
    if socle(Qm).dim != Qm.dim:
        raise ArithmeticError("quotient by P_d^0 is not semisimple")
    E, _, H = const_lie_action(Qm)
    hw = highest_weight_spaces(E, H)
    if any(len(v) != 1 for v in hw.values()):
        raise ArithmeticError("repeated highest weight: simple submodules form a family")
    out = []
    for lam, (v,) in sorted(hw.items(), reverse=True):
        G = generated_submodule(Qm, v)
        lifted = S0 + [[ZERO] * k0 + list(w) for w in G.vectors]
        out.append((lam, SubmoduleDescr(P1, lifted).polys()))
    return out


@_timed
def suite_extensions(trials: int = 0, seed: int = 0, max_d: int = 4) -> SuiteReport:
    rep = SuiteReport("extensions")
    anchor = "first-order extensions of P_d^0"
    from .linalg import independent_subset
    from .modules import _coeff_vectors
    for d in range(1, max_d + 1):
        found = simple_extensions_of_P0(d)
        refs = [("U", construct_Ud(d).basis)] + ([("W", construct_Wd(d).basis)] if d >= 2 else [])
        matched = []
        for _, polys in found:
            for name, basis in refs:
                v, _ = _coeff_vectors(list(polys) + list(basis))
                if len(polys) == len(basis) == len(independent_subset(v)):
                    matched.append(name)
        want = sorted(n for n, _ in refs)
        rep.add(anchor, f"d={d}: the simple extensions are exactly {', '.join(n + '_' + str(d) for n in want)}",
                len(found) == len(refs) and sorted(matched) == want, f"found {len(found)}, matched {matched}")
    return rep


# -- Groebner ---------------------------------------------------------------------------------------
@_timed
def suite_groebner(trials: int = 0, seed: int = 0, max_q: int = 4) -> SuiteReport:
    rep = SuiteReport("groebner")
    anchor = "Groebner certificate for the differentiated determinant"
    for q in range(1, max_q + 1):
        r = detprime_check(q)
        for part, (ok, detail) in r.parts.items():
            rep.add(anchor, f"q={q} {part}", ok, detail)
    return rep


# -- torus round trip ------------------------------------------------------------------------------
def random_nilarray(rng, n: int, r: int, jmax: int = 2) -> NilArray:
    S = [[ZERO] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            S[i][j] = fmpq(int(rng.integers(-2, 3)))
    powers = [S]
    for _ in range(r - 2):
        powers.append(mat_mul(powers[-1], S))
    entries = {}
    for i in range(1, n + 1):
        for j in range(jmax + 1):
            if rng.random() < 0.5:
                continue
            M = [[ZERO] * r for _ in range(r)]
            for P in powers:
                c = int(rng.integers(-2, 3))
                if c:
                    M = [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(M, P)]
            entries[(i, j)] = M
    return NilArray(n, r, entries)


def random_invertible(rng, r: int) -> list:
    while True:
        Q = [[fmpq(int(rng.integers(-2, 3))) for _ in range(r)] for _ in range(r)]
        if inverse(Q) is not None:
            return Q


def ga_homomorphism_holds(N: NilArray) -> bool:
    u = [var(f"u{i}") for i in range(1, N.n + 1)]
    v = [var(f"v{i}") for i in range(1, N.n + 1)]
    return pmat_equal(ga_rep(N, [a + b for a, b in zip(u, v)]), pmat_mul(ga_rep(N, u), ga_rep(N, v)))


@_timed
def suite_torus(trials: int = 50, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("torus")
    anchor = "torus representations: character times logarithmic unipotent part"
    for k in range(trials):
        rng = rng_for(seed, k)
        n = int(rng.integers(1, 3))
        r = int(rng.integers(1, 5))
        dvec = tuple(int(x) for x in rng.integers(-3, 4, size=n))
        N = random_nilarray(rng, n, r)
        Q = random_invertible(rng, r)
        Qi = inverse(Q)
        Nc = N.conjugate(Q, Qi)
        rep.add("unipotent representations of G_a^n", f"ga_rep is a homomorphism (n={n}, r={r})",
                ga_homomorphism_holds(N), trial=k)
        mat = synthesize_gm(dvec, Nc)
        try:
            comps = classify_gm(GmRep(n, mat))
        except Exception as exc:  # reported, never swallowed silently
            rep.add(anchor, f"classification of d={dvec}, r={r}", False, f"{type(exc).__name__}: {exc}", trial=k)
            continue
        ok = len(comps) == 1 and comps[0].d == dvec and nilarray_equiv(comps[0].N, N) is not None
        rep.add(anchor, f"round trip recovers d={dvec} and N up to conjugation (r={r})", ok,
                f"got {[(c.d, sorted(c.N.entries)) for c in comps]}", trial=k)
    return rep


# -- degrees ---------------------------------------------------------------------------------------
def random_pullback(rng):
    """A random pull-back of two first-order modules over their common simple quotient."""
    d = int(rng.integers(1, 4))
    picks = [str(rng.choice(["U", "F", "P"])) for _ in range(2)]
    mods = []
    for p in picks:
        if p == "U":
            M = construct_Ud(d)
            S = socle(M).vectors
        elif p == "F":
            M = prolongation(construct_Pdk(d, 0))
            S = socle(M).vectors
        else:
            M = construct_Pdk(d, 0)
            S = []
        mods.append((M, S))
    W = construct_Pdk(d, 0)
    pis = []
    for M, S in mods:
        Qm, pi = _quotient_map(M, S)
        T = iso_test(Qm, W)
        scale = fmpq(int(rng.integers(1, 5)) * int(rng.choice([-1, 1])))
        pis.append([[x * scale for x in row] for row in mat_mul(T, pi)])
    return pullback(mods[0][0], mods[1][0], pis[0], pis[1], W), picks, d


@_timed
def suite_degree(trials: int = 50, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("degree")
    anchor = "degree of an extension"
    elems = nonhomogeneous_elems()
    V = nonhomogeneous_module()
    rep.add("non-homogeneous submodule of A", "the 4-dimensional subspace is a comodule", check_comodule(V).ok)
    rep.add("non-homogeneous submodule of A", "it is flagged non-homogeneous", not is_homogeneous(elems))
    Dv = socle_first(dual(V))
    img = first_row_embed(Dv)
    rep.add("non-homogeneous submodule of A", "the first-row image of its dual is homogeneous of degree 2",
            is_homogeneous(img) and elements_degree(img) == 2, [str(q) for q in img])
    for k in range(trials):
        rng = rng_for(seed, k)
        M, picks, d = random_pullback(rng)
        subs = [("socle", socle(M).vectors)]
        v = [fmpq(int(x)) for x in rng.integers(-3, 4, size=M.dim)]
        if any(v):
            subs.append(("generated", generated_submodule(M, v).vectors))
        for name, S in subs:
            if not S or len(S) == M.dim:
                continue
            dM = module_degree(M)
            dS = module_degree(restrict(M, S))
            dQ = module_degree(quotient(M, S))
            rep.add(anchor, f"deg = max(deg sub, deg quotient) for the {name} submodule of {picks} d={d}",
                    dM == max(dS, dQ), f"{dM} vs ({dS}, {dQ})", trial=k)
    return rep


SUITES = {
    "paper-examples": suite_worked_examples,
    "lemma-max": suite_lemma_max,
    "lemma-free": suite_lemma_free,
    "comodule": suite_comodule,
    "socle": suite_socle,
    "iso-table": suite_iso_table,
    "counterexample": suite_counterexample,
    "dimensions": suite_dimensions,
    "extensions": suite_extensions,
    "groebner": suite_groebner,
    "torus": suite_torus,
    "degree": suite_degree,
}

DEFAULT_TRIALS = {"lemma-max": 200, "lemma-free": 100, "torus": 50, "degree": 50}
