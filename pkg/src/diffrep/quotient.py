"""The rings C = K{c11, c12, c21, c22}, A = C/[det - 1] and B = C/[det].

Normal forms live in the localization at c11.  There ``c22`` is solved from
the defining relation, ``c22 = (eps + c12*c21)/c11`` with ``eps = 1`` in A
and ``eps = 0`` in B, and ``c22^(k)`` becomes the k-th derivative of that
fraction.  What remains is a Laurent polynomial in c11 over the free
differential polynomial ring in c11, c12, c21, which is a canonical form:
two elements are equal iff their Laurent forms coincide.  Multiplying by
the least power of c11 clearing denominators gives the pseudo-remainder of
the chain {g, g', g'', ...} with leaders ``c22^(k)`` and initial c11.

Completeness of this test rests on c11 being a non-zero-divisor modulo
[det - 1] and [det]; an independent Groebner check is available through
``config.groebner_fallback``.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

from flint import fmpq

from .config import config
from .diffpoly import (DerivVar, DiffPoly, mono_degree, mono_mul, mono_weight, var, var_index, var_of)
from .errors import (DegreeTooLarge, MethodDisagreement, NotUnimodular, OrderCapExceeded, ZeroElement)
from .field import K
from .linalg import sparse_nullspace

RINGS = ("A", "B")
CNAMES = ("c11", "c12", "c21", "c22")


def cvar(name: str, order: int = 0, group: str = "gr") -> DiffPoly:
    return var(name, order, group)


def cmat(group: str = "gr"):
    return [[cvar("c11", 0, group), cvar("c12", 0, group)], [cvar("c21", 0, group), cvar("c22", 0, group)]]


def det_poly(group: str = "gr") -> DiffPoly:
    (a, b), (c, d) = cmat(group)
    return a * d - b * c


def defining_poly(ring: str, group: str = "gr") -> DiffPoly:
    return det_poly(group) - 1 if ring == "A" else det_poly(group)


# -- Laurent normal form ---------------------------------------------------------
_CHAIN: dict = {}
_POW: dict = {}


def _leader_image(ring: str, group: str, k: int) -> DiffPoly:
    chain = _CHAIN.get((ring, group))
    if chain is None:
        c11, c12, c21 = (cvar(n, 0, group) for n in CNAMES[:3])
        n0 = c12 * c21 + (1 if ring == "A" else 0)
        chain = _CHAIN[(ring, group)] = [n0 * c11 ** -1]
    while len(chain) <= k:
        chain.append(chain[-1].derive())
    return chain[k]


def _leader_power(ring: str, i: int, e: int) -> DiffPoly:
    key = (ring, i, e)
    p = _POW.get(key)
    if p is None:
        v = var_of(i)
        if e < 0:
            raise ValueError("negative power of a c22 derivative")
        p = _leader_image(ring, v.group, v.order) ** e
        _POW[key] = p
    return p


def to_laurent(f: DiffPoly, ring: str, groups=("gr",)) -> DiffPoly:
    """Canonical form of ``f`` in the localization of A (or B) at c11."""
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    cap = config.order_cap
    out: dict = {}
    for m, c in f.items():
        rest = []
        prod = None
        for i, e in m:
            v = var_of(i)
            if v.group in groups:
                if v.order > cap:
                    raise OrderCapExceeded(f"order {v.order} exceeds cap {cap}")
                if v.name == "c22":
                    p = _leader_power(ring, i, e)
                    prod = p if prod is None else prod * p
                    continue
            rest.append((i, e))
        if prod is None:
            s = out.get(m)
            out[m] = c if s is None else s + c
            continue
        rest = tuple(rest)
        for m2, c2 in prod.items():
            mm = mono_mul(rest, m2)
            v2 = c * c2
            s = out.get(mm)
            out[mm] = v2 if s is None else s + v2
    return DiffPoly({m: c for m, c in out.items() if c})


def _c11_indices(groups) -> set:
    return {var_index(DerivVar(g, "c11", 0)) for g in groups}


def clear_c11(L: DiffPoly, groups=("gr",)):
    """(c11^e * L, e) with e >= 0 minimal such that the result is polynomial."""
    idx = _c11_indices(groups)
    need: dict = {}
    for m, _ in L.items():
        for i, x in m:
            if i in idx and -x > need.get(i, 0):
                need[i] = -x
    if not need:
        return L, 0
    return L.mul_term(fmpq(1), tuple(sorted(need.items()))), max(need.values())


def ritt_reduce(f, ring: str):
    """Pseudo-remainder of ``f`` by the defining chain of ``ring``.

    Returns (nf, e) with c11^e * f congruent to nf, nf free of c22 and its
    derivatives, and e minimal.
    """
    if isinstance(f, QuotElem):
        f = f.rep
    return clear_c11(to_laurent(f, ring))


def laurent_degree(L: DiffPoly, groups=None) -> int:
    if not L:
        raise ZeroElement("degree of zero is undefined")
    return max(mono_degree(m, groups) for m in L._t)


# -- quotient elements -----------------------------------------------------------
class QuotElem:
    """An element of A or B: a representative in C plus its cached canonical form."""

    __slots__ = ("ring", "_rep", "_lau")

    def __init__(self, ring: str, rep: DiffPoly | None = None, laurent: DiffPoly | None = None):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        if rep is None and laurent is None:
            rep = DiffPoly()
        if rep is not None and not isinstance(rep, DiffPoly):
            rep = DiffPoly.const(rep)
        self.ring = ring
        self._rep = rep
        self._lau = laurent

    @property
    def laurent(self) -> DiffPoly:
        if self._lau is None:
            self._lau = to_laurent(self._rep, self.ring)
        return self._lau

    @property
    def rep(self) -> DiffPoly:
        if self._rep is None:
            self._rep = minimal_representative(self)
        return self._rep

    @property
    def nf(self) -> DiffPoly:
        return clear_c11(self.laurent)[0]

    def _coerce(self, other):
        if isinstance(other, QuotElem):
            if other.ring != self.ring:
                raise ValueError("mixing elements of A and B")
            return other
        return QuotElem(self.ring, DiffPoly.const(K(other)) if not isinstance(other, DiffPoly) else other)

    def _both(self, other, op):
        o = self._coerce(other)
        rep = op(self._rep, o._rep) if self._rep is not None and o._rep is not None else None
        lau = op(self._lau, o._lau) if self._lau is not None and o._lau is not None else None
        if rep is None and lau is None:
            lau = op(self.laurent, o.laurent)
        return QuotElem(self.ring, rep, lau)

    def __add__(self, other):
        return self._both(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._both(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuotElem(self.ring, None if self._rep is None else -self._rep,
                        None if self._lau is None else -self._lau)

    def __mul__(self, other):
        if not isinstance(other, (QuotElem, DiffPoly)):
            c = K(other)
            return QuotElem(self.ring, None if self._rep is None else self._rep.scale(c),
                            None if self._lau is None else self._lau.scale(c))
        return self._both(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return QuotElem(self.ring, None if self._rep is None else self._rep ** k,
                        None if self._lau is None else self._lau ** k)

    def derive(self) -> "QuotElem":
        return QuotElem(self.ring, None if self._rep is None else self._rep.derive(),
                        None if self._lau is None else self._lau.derive())

    def __bool__(self):
        return bool(self.laurent)

    def __eq__(self, other):
        if isinstance(other, QuotElem):
            return quot_equal(self, other)
        if isinstance(other, (int, fmpq, DiffPoly)):
            return quot_equal(self, self._coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.laurent))

    def __str__(self):
        return str(self._rep if self._rep is not None else self.rep)

    def __repr__(self):
        return f"QuotElem({self.ring}, {self})"

    def to_json(self) -> dict:
        return {"ring": self.ring, "rep": self.rep.to_json()}

    @staticmethod
    def from_json(data: dict) -> "QuotElem":
        return QuotElem(data["ring"], DiffPoly.from_json(data["rep"]))


def A(f) -> QuotElem:
    return QuotElem("A", f if isinstance(f, DiffPoly) else DiffPoly.const(K(f)))


def B(f) -> QuotElem:
    return QuotElem("B", f if isinstance(f, DiffPoly) else DiffPoly.const(K(f)))


def quot_equal(f: QuotElem, g: QuotElem) -> bool:
    if f.ring != g.ring:
        raise ValueError("elements live in different rings")
    same = f.laurent == g.laurent
    if config.groebner_fallback:
        from .groebner import truncated_membership
        other = truncated_membership(f.rep - g.rep, f.ring)
        if other != same:
            raise MethodDisagreement(
                f"normal-form test says {same}, Groebner test says {other} for {f.rep - g.rep}")
    return same


def deg_quot(f: QuotElem) -> int:
    if not f.laurent:
        raise ZeroElement("degree of the zero element is undefined")
    return laurent_degree(f.laurent)


def top_component(f: QuotElem, d: int) -> DiffPoly:
    return f.laurent.homogeneous_component(d)


def project_homogeneous(f: QuotElem, d: int) -> QuotElem:
    """The map A_{<=d} -> B: highest-degree part of a degree-<=d representative."""
    if f.ring != "A":
        raise ValueError("project_homogeneous takes an element of A")
    if not f.laurent:
        return QuotElem("B", DiffPoly())
    if deg_quot(f) > d:
        raise DegreeTooLarge(f"element has degree {deg_quot(f)} > {d}")
    lam = f.laurent.homogeneous_component(d)
    rep = None
    if f._rep is not None and f._rep.degree() <= d:
        rep = f._rep.homogeneous_component(d)
    return QuotElem("B", rep, lam)


# -- homomorphisms -------------------------------------------------------------------
def antipode(f: QuotElem) -> QuotElem:
    if f.ring != "A":
        raise ValueError("the antipode is defined on A")
    (a, b), (c, d) = cmat("gr")
    return QuotElem("A", f.rep.substitute({"c11": d, "c12": -b, "c21": -c, "c22": a}, strict=False))


def specialize_to_P(f: QuotElem, beta) -> DiffPoly:
    """B -> K{x, y}: c11 -> x, c12 -> y, c21 -> beta*x, c22 -> beta*y."""
    if f.ring != "B":
        raise ValueError("specialize_to_P takes an element of B")
    beta = K(beta)
    x, y = var("x"), var("y")
    images = {("gr", "c11"): x, ("gr", "c12"): y, ("gr", "c21"): x * beta, ("gr", "c22"): y * beta}
    out = f.laurent.substitute(images, strict=False)
    for m, _ in out.items():
        if any(e < 0 for _, e in m):
            raise ArithmeticError("specialization left a negative power; input is not in B")
    return out


def evaluate_at_matrix(f, g, ring: str | None = None):
    """Value at a constant matrix: c_ij -> g_ij, every derivative of c_ij -> 0."""
    g = [[K(x) for x in row] for row in g]
    if isinstance(f, QuotElem):
        ring = ring or f.ring
        f = f.rep
    dt = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if ring == "A" and dt != 1:
        raise NotUnimodular(f"determinant {dt} != 1")
    if ring == "B" and dt != 0:
        raise NotUnimodular(f"determinant {dt} != 0")
    vals = {"c11": g[0][0], "c12": g[0][1], "c21": g[1][0], "c22": g[1][1]}
    total = fmpq(0)
    for m, c in f.items():
        term = c
        for i, e in m:
            v = var_of(i)
            if v.name not in vals or v.group not in ("gr", "gl"):
                raise ValueError(f"cannot evaluate variable {v}")
            if v.order > 0:
                term = fmpq(0)
                break
            term = term * vals[v.name] ** e
        total = total + term
    return total


# -- minimal representatives ---------------------------------------------------------
def _gradings(m: tuple):
    """(weight, row difference, column difference, degree parity) of a monomial."""
    row = col = 0
    for i, e in m:
        name = var_of(i).name
        row += e if name[1] == "1" else -e
        col += e if name[2] == "1" else -e
    return (mono_weight(m), row, col, mono_degree(m) % 2)


def minimal_representative(f: QuotElem) -> DiffPoly:
    """A polynomial representative of least total degree."""
    L = f.laurent
    if not L:
        return DiffPoly()
    if all(e >= 0 for m, _ in L.items() for _, e in m):
        return L
    D = laurent_degree(L)
    targets = {_gradings(m) for m, _ in L.items()}
    wmax = max(t[0] for t in targets)
    cvars = [var_index(DerivVar("gr", n, k)) for k in range(wmax + 1) for n in CNAMES]
    degrees = range(D, -1, -2) if f.ring == "A" else [D]
    cands = []
    for deg in degrees:
        for combo in combinations_with_replacement(cvars, deg):
            d: dict = {}
            for i in combo:
                d[i] = d.get(i, 0) + 1
            m = tuple(sorted(d.items()))
            if _gradings(m) in targets:
                cands.append(m)
    images = [to_laurent(DiffPoly({m: fmpq(1)}), f.ring) for m in cands]
    # columns: Laurent monomials; unknowns: candidate coefficients plus the target
    rows: dict = {}
    for k, img in enumerate(images):
        for m, c in img.items():
            rows.setdefault(m, {})[k] = c
    tgt = len(cands)
    for m, c in L.items():
        rows.setdefault(m, {})[tgt] = -c
    ns = sparse_nullspace(list(rows.values()), list(range(tgt + 1)))
    for v in ns:
        if v.get(tgt):
            s = fmpq(1) / v[tgt]
            return DiffPoly({cands[k]: c * s for k, c in v.items() if k != tgt and c})
    raise ArithmeticError("no polynomial representative found within the degree bound")
