"""Buchberger's algorithm on dense exponent vectors, plus the determinant-chain checks.

Polynomials are dicts ``exponent tuple -> coefficient``.  Coefficients are
fmpq or RatFunc; only field operations are used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
import time

from flint import fmpq

from .diffpoly import DerivVar, DiffPoly, mono_from_factors, var_of
from .errors import UnknownVariable
from .field import K
from .linalg import RowReducer


def _grevlex(e: tuple) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRingSpec:
    """Variables listed from largest to smallest; ``block`` leading variables are eliminated first."""

    def __init__(self, variables, block: int = 0):
        variables = list(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variables")
        self.variables = variables
        self.index = {v: k for k, v in enumerate(variables)}
        self.block = block
        self.n = len(variables)

    def key(self, e: tuple):
        if self.block:
            return (_grevlex(e[:self.block]), _grevlex(e[self.block:]))
        return _grevlex(e)

    def with_block(self, block: int) -> "PolyRingSpec":
        return PolyRingSpec(self.variables, block)

    # conversion to and from DiffPoly
    def from_diffpoly(self, f: DiffPoly) -> dict:
        out = {}
        for m, c in f.items():
            e = [0] * self.n
            for i, x in m:
                v = var_of(i)
                k = self.index.get(v)
                if k is None:
                    raise UnknownVariable(f"variable {v} is not in the ring")
                if x < 0:
                    raise ValueError("negative exponent in a polynomial")
                e[k] = x
            out[tuple(e)] = c
        return out

    def to_diffpoly(self, f: dict) -> DiffPoly:
        terms = {}
        for e, c in f.items():
            terms[mono_from_factors([(self.variables[k], x) for k, x in enumerate(e) if x])] = c
        return DiffPoly(terms)

    def fmt_mono(self, e: tuple) -> str:
        parts = []
        for k, x in enumerate(e):
            if x:
                v = self.variables[k]
                parts.append(f"{v}" + (f"^{x}" if x > 1 else ""))
        return "*".join(parts) or "1"


# -- basic operations -------------------------------------------------------------
def lead(f: dict, spec: PolyRingSpec) -> tuple:
    return max(f, key=spec.key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _axpy(f: dict, c, shift: tuple, g: dict):
    """f -= c * x^shift * g, in place."""
    for e, v in g.items():
        ee = tuple(x + y for x, y in zip(e, shift))
        nv = f.get(ee, 0) - c * v
        if nv:
            f[ee] = nv
        else:
            f.pop(ee, None)


def monic(f: dict, spec: PolyRingSpec) -> dict:
    if not f:
        return {}
    inv = 1 / f[lead(f, spec)]
    return {e: c * inv for e, c in f.items()}


def spoly(f: dict, g: dict, spec: PolyRingSpec) -> dict:
    lf, lg = lead(f, spec), lead(g, spec)
    L = _lcm(lf, lg)
    out: dict = {}
    _axpy(out, -1 / f[lf], _sub_exp(L, lf), f)
    _axpy(out, 1 / g[lg], _sub_exp(L, lg), g)
    return out


def reduce(f: dict, G: list, spec: PolyRingSpec) -> dict:
    """Full remainder of f on division by G."""
    f = dict(f)
    leads = [(lead(g, spec), g) for g in G if g]
    rem: dict = {}
    while f:
        lf = lead(f, spec)
        c = f[lf]
        for lg, g in leads:
            if _divides(lg, lf):
                _axpy(f, c / g[lg], _sub_exp(lf, lg), g)
                break
        else:
            rem[lf] = c
            del f[lf]
    return rem


@dataclass
class GBasis:
    generators: list
    reduced: bool
    added: int = 0  # new elements created during completion
    pairs_reduced: int = 0
    pairs_skipped: int = 0


def buchberger(gens, spec: PolyRingSpec, reduced: bool = True) -> GBasis:
    """Normal selection strategy with the coprime and chain criteria."""
    G = [dict(g) for g in gens if g]
    L = [lead(g, spec) for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    added = 0
    done = skipped = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (spec.key(_lcm(L[p[0]], L[p[1]])), p))
        pairs.discard((i, j))
        lij = _lcm(L[i], L[j])
        if _coprime(L[i], L[j]):
            skipped += 1
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(L[k], lij):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            skipped += 1
            continue
        done += 1
        r = reduce(spoly(G[i], G[j], spec), G, spec)
        if r:
            n = len(G)
            G.append(r)
            L.append(lead(r, spec))
            pairs.update((k, n) for k in range(n))
            added += 1
    if not reduced:
        return GBasis(G, False, added, done, skipped)
    return GBasis(reduce_basis(G, spec), True, added, done, skipped)


def reduce_basis(G: list, spec: PolyRingSpec) -> list:
    """Minimal, interreduced, monic basis sorted by leading monomial (descending)."""
    G = [monic(g, spec) for g in G if g]
    keep = []
    for k, g in enumerate(G):
        lg = lead(g, spec)
        if any(_divides(lead(h, spec), lg) and (lead(h, spec) != lg or m < k)
               for m, h in enumerate(G) if m != k):
            continue
        keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        out.append(monic(reduce(g, others, spec), spec))
    return sorted(out, key=lambda g: spec.key(lead(g, spec)), reverse=True)


def same_basis(G: list, H: list, spec: PolyRingSpec) -> bool:
    a = reduce_basis(G, spec)
    b = reduce_basis(H, spec)
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def in_ideal(f: dict, gb: GBasis, spec: PolyRingSpec) -> bool:
    return not reduce(f, gb.generators, spec)


def macaulay_membership(f: dict, gens: list, spec: PolyRingSpec, degree: int) -> bool:
    """f in span{m * g : deg(m * g) <= degree}: linear-algebra membership test."""
    n = spec.n
    cols: dict = {}
    rr = RowReducer()

    def vec(p):
        return {cols.setdefault(e, len(cols)): c for e, c in p.items()}

    for g in gens:
        dg = max(sum(e) for e in g)
        for dm in range(degree - dg + 1):
            for combo in combinations_with_replacement(range(n), dm):
                m = [0] * n
                for k in combo:
                    m[k] += 1
                shifted = {tuple(x + y for x, y in zip(e, m)): c for e, c in g.items()}
                rr.add(vec(shifted))
    return rr.contains(vec(f))


# -- determinant chains ------------------------------------------------------------
_CNAMES = ("c22", "c21", "c12", "c11")


def chain_variables(q: int, with_T: bool = True, group: str = "gr") -> list:
    """T > c22^(q) > c21^(q) > c12^(q) > c11^(q) > ... > c22 > c21 > c12 > c11."""
    out = [DerivVar("a", "T", 0)] if with_T else []
    for k in range(q, -1, -1):
        out.extend(DerivVar(group, nm, k) for nm in _CNAMES)
    return out


def _det(group: str = "gr") -> DiffPoly:
    c = {nm: DiffPoly.var(nm, 0, group) for nm in ("c11", "c12", "c21", "c22")}
    return c["c11"] * c["c22"] - c["c12"] * c["c21"]


def expected_lead(i: int, group: str = "gr") -> DiffPoly:
    k, r = divmod(i, 2)
    if r:
        return DiffPoly.var("c11", k + 1, group) * DiffPoly.var("c22", k, group)
    return DiffPoly.var("c12", k, group) * DiffPoly.var("c21", k, group)


@dataclass
class CheckReport:
    q: int
    parts: dict = field(default_factory=dict)  # name -> (ok, detail)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.parts.values())

    def to_json(self) -> dict:
        return {"q": self.q, "ok": self.ok, "seconds": round(self.seconds, 4),
                "parts": {k: {"ok": ok, "detail": d} for k, (ok, d) in self.parts.items()}}


def detprime_check(q: int) -> CheckReport:
    """Leading monomials and Groebner/elimination properties of (det', ..., det^(q), 1 - T*c11)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    t0 = time.perf_counter()
    rep = CheckReport(q)
    spec = PolyRingSpec(chain_variables(q))
    T = DiffPoly.var("T", 0, "a")
    dets = []
    d = _det()
    for _ in range(q):
        d = d.derive()
        dets.append(d)
    G = [spec.from_diffpoly(g) for g in dets]
    aux = spec.from_diffpoly(DiffPoly.const(1) - T * DiffPoly.var("c11", 0, "gr"))

    # (a) leading monomials
    bad = []
    for i, g in enumerate(G, start=1):
        lm = lead(g, spec)
        want = lead(spec.from_diffpoly(expected_lead(i)), spec)
        if lm != want:
            bad.append(f"det^({i}): got {spec.fmt_mono(lm)}, expected {spec.fmt_mono(want)}")
    rep.parts["a_leading_monomials"] = (not bad, "; ".join(bad) or
                                        ", ".join(spec.fmt_mono(lead(g, spec)) for g in G))

    # (b) pairwise coprime leading monomials
    Gt = G + [aux]
    leads = [lead(g, spec) for g in Gt]
    clash = [(a, b) for a in range(len(leads)) for b in range(a + 1, len(leads))
             if not _coprime(leads[a], leads[b])]
    rep.parts["b_coprime"] = (not clash, "; ".join(f"{spec.fmt_mono(leads[a])} vs {spec.fmt_mono(leads[b])}"
                                                    for a, b in clash) or "all pairs coprime")

    # (c) completion adds nothing
    gb = buchberger(Gt, spec, reduced=False)
    same = gb.added == 0 and len(gb.generators) == len(Gt)
    rep.parts["c_groebner_unchanged"] = (same, f"{gb.added} new elements, {gb.pairs_skipped} pairs skipped")

    # (d) elimination of T under a block order (T first)
    espec = spec.with_block(1)
    egb = buchberger(Gt, espec, reduced=False)
    t_free = [g for g in egb.generators if all(e[0] == 0 for e in g)]
    exact = len(t_free) == len(G) and all(a == b for a, b in zip(t_free, G))
    same_ideal = same_basis(t_free, G, espec.with_block(0))
    rep.parts["d_elimination"] = (exact and same_ideal,
                                  f"{len(t_free)} T-free elements; identical to input: {exact}")
    rep.seconds = time.perf_counter() - t0
    return rep


# -- membership in the truncated defining ideal ------------------------------------
def truncated_membership(f: DiffPoly, ring: str) -> bool:
    """f in (g, g', ..., g^(q)) with g = det - 1 (A) or det (B), q = ord f + 2.

    The leading monomials under grevlex are pairwise coprime and none is
    divisible by c11, the smallest variable, so the truncated ideal is
    already saturated by c11 and this agrees with normal-form equality.
    """
    from .config import config
    if not f:
        return True
    q = min(max(f.max_order(), 0) + 2, config.order_cap)
    spec = PolyRingSpec(chain_variables(q, with_T=False))
    g = _det() - (DiffPoly.const(1) if ring == "A" else DiffPoly())
    gens = []
    for _ in range(q + 1):
        gens.append(spec.from_diffpoly(g))
        g = g.derive()
    leads = [lead(h, spec) for h in gens]
    if all(_coprime(a, b) for k, a in enumerate(leads) for b in leads[k + 1:]):
        basis = gens
    else:
        basis = buchberger(gens, spec).generators
    return not reduce(spec.from_diffpoly(f), basis, spec)
