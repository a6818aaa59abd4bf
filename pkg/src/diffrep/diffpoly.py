"""Sparse differential polynomials with coefficients in Q(t).

Variables are derivatives ``v^(p)`` of named differential indeterminates,
tagged by a *group* so that tensor factors can live in one ring:

    "m"   module variables (x, y, x1, ...)
    "gl"  left copy of the group coordinates c_ij
    "gr"  right copy of the group coordinates c_ij (the default for C)
    "a"   auxiliary constants; their derivative is zero

Internally each variable is interned to a small integer and a monomial is a
sorted tuple of ``(index, exponent)`` pairs.  Exponents are nonzero
integers; negative exponents only ever appear on order-0 variables and
realize the Laurent rings K{z, 1/z} and C[1/c11].
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

from flint import fmpq

from .errors import MissingImage, ZeroPolynomial
from .field import K, RatFunc, field_derive, format_kelem, kelem_from_json, kelem_to_json

GROUP_LONG = {"m": "module", "gl": "group-left", "gr": "group-right", "a": "aux-constant"}
GROUP_SHORT = {v: k for k, v in GROUP_LONG.items()}


class DerivVar(NamedTuple):
    group: str
    name: str
    order: int

    def __str__(self):
        if self.order <= 3:
            s = self.name + "'" * self.order
        else:
            s = f"{self.name}^({self.order})"
        return "L:" + s if self.group == "gl" else s


_VARS: list[DerivVar] = []
_INDEX: dict[DerivVar, int] = {}
_NEXT: list[int] = []
_GROUP: list[str] = []
_ORDER: list[int] = []


def var_index(v: DerivVar) -> int:
    i = _INDEX.get(v)
    if i is None:
        if v.group not in GROUP_LONG:
            raise ValueError(f"unknown variable group {v.group!r}")
        i = len(_VARS)
        _VARS.append(v)
        _INDEX[v] = i
        _NEXT.append(-2)
        _GROUP.append(v.group)
        _ORDER.append(v.order)
    return i


def var_of(i: int) -> DerivVar:
    return _VARS[i]


def _next(i: int) -> int:
    j = _NEXT[i]
    if j == -2:
        v = _VARS[i]
        j = -1 if v.group == "a" else var_index(DerivVar(v.group, v.name, v.order + 1))
        _NEXT[i] = j
    return j


# -- monomials ---------------------------------------------------------------
_MUL: dict = {}
_DER: dict = {}
_CACHE_LIMIT = 3_000_000


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    key = (a, b)
    r = _MUL.get(key)
    if r is None:
        d = dict(a)
        for i, e in b:
            n = d.get(i, 0) + e
            if n:
                d[i] = n
            else:
                del d[i]
        r = tuple(sorted(d.items()))
        if len(_MUL) > _CACHE_LIMIT:
            _MUL.clear()
        _MUL[key] = r
    return r


def mono_pow(a: tuple, k: int) -> tuple:
    return tuple((i, e * k) for i, e in a) if k else ()


def mono_derive(m: tuple) -> list:
    """Leibniz rule on a monomial: list of (integer factor, monomial)."""
    r = _DER.get(m)
    if r is None:
        r = []
        for i, e in m:
            j = _next(i)
            if j < 0:
                continue
            d = dict(m)
            if e == 1:
                del d[i]
            else:
                d[i] = e - 1
            n = d.get(j, 0) + 1
            if n:
                d[j] = n
            else:
                del d[j]
            r.append((e, tuple(sorted(d.items()))))
        if len(_DER) > _CACHE_LIMIT:
            _DER.clear()
        _DER[m] = r
    return r


def mono_degree(m: tuple, groups=None) -> int:
    if groups is None:
        return sum(e for i, e in m if _GROUP[i] != "a")
    return sum(e for i, e in m if _GROUP[i] in groups)


def mono_weight(m: tuple, groups=None) -> int:
    if groups is None:
        return sum(e * _ORDER[i] for i, e in m if _GROUP[i] != "a")
    return sum(e * _ORDER[i] for i, e in m if _GROUP[i] in groups)


def mono_factors(m: tuple) -> list:
    """[(DerivVar, exponent)] in the canonical (group, name, order) order."""
    return sorted(((_VARS[i], e) for i, e in m), key=lambda p: p[0])


def mono_from_factors(factors: Iterable) -> tuple:
    d: dict[int, int] = {}
    for v, e in factors:
        i = var_index(DerivVar(*v))
        n = d.get(i, 0) + e
        if n:
            d[i] = n
        else:
            d.pop(i, None)
    return tuple(sorted(d.items()))


def mono_split(m: tuple, groups) -> tuple:
    """Split a monomial into (part in ``groups``, rest)."""
    left = tuple(p for p in m if _GROUP[p[0]] in groups)
    if len(left) == len(m):
        return m, ()
    return left, tuple(p for p in m if _GROUP[p[0]] not in groups)


def mono_str(m: tuple) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in mono_factors(m):
        s = str(v)
        if e != 1:
            s = f"{s}^{e}" if "'" not in s else f"({s})^{e}"
        parts.append(s)
    return "*".join(parts)


class Term(NamedTuple):
    coeff: object
    mono: tuple

    @property
    def factors(self):
        return mono_factors(self.mono)

    def __str__(self):
        return str(DiffPoly({self.mono: self.coeff}))


# -- polynomials -------------------------------------------------------------
def _sort_key(item):
    return [(_VARS[i], e) for i, e in item[0]]


class DiffPoly:
    """Immutable sparse polynomial: a dict from monomial to nonzero coefficient."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: dict | None = None):
        self._t = terms if terms is not None else {}
        self._h = None

    # -- construction -----------------------------------------------------
    @staticmethod
    def const(c) -> "DiffPoly":
        c = K(c)
        return DiffPoly({(): c}) if c else DiffPoly()

    @staticmethod
    def var(name: str, order: int = 0, group: str = "m") -> "DiffPoly":
        i = var_index(DerivVar(group, name, order))
        return DiffPoly({((i, 1),): fmpq(1)})

    @staticmethod
    def monomial(factors, coeff=1) -> "DiffPoly":
        c = K(coeff)
        return DiffPoly({mono_from_factors(factors): c}) if c else DiffPoly()

    @staticmethod
    def from_terms(pairs: Iterable) -> "DiffPoly":
        """Sum of (coeff, mono) pairs, combining duplicates."""
        out: dict = {}
        for c, m in pairs:
            s = out.get(m)
            out[m] = c if s is None else s + c
        return DiffPoly({m: c for m, c in out.items() if c})

    # -- basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self._t == other._t
        if isinstance(other, (int, fmpq, RatFunc)):
            return self._t == DiffPoly.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def items(self):
        return self._t.items()

    def terms(self) -> list:
        """Canonical sorted term list."""
        return [Term(c, m) for m, c in sorted(self._t.items(), key=_sort_key)]

    def coeff(self, mono: tuple):
        return self._t.get(mono, fmpq(0))

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def constant_value(self):
        return self._t.get((), fmpq(0))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, DiffPoly):
            other = DiffPoly.const(other)
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return DiffPoly(a) if a is self._t or a is other._t else DiffPoly(dict(a))
        d = dict(a)
        for m, c in b.items():
            s = d.get(m)
            if s is None:
                d[m] = c
            else:
                s = s + c
                if s:
                    d[m] = s
                else:
                    del d[m]
        return DiffPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffPoly):
            other = DiffPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffPoly":
        if not c:
            return DiffPoly()
        if c == 1:
            return self
        return DiffPoly({m: v * c for m, v in self._t.items()})

    def mul_term(self, c, mono: tuple) -> "DiffPoly":
        """Multiply by the single term c*mono."""
        if not c:
            return DiffPoly()
        return DiffPoly({mono_mul(m, mono): v * c for m, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffPoly):
            return self.scale(K(other))
        a, b = self._t, other._t
        if not a or not b:
            return DiffPoly()
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            (m1, c1), = a.items()
            return DiffPoly({mono_mul(m1, m2): c1 * c2 for m2, c2 in b.items()})
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return DiffPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1:
                raise ValueError("only single terms can be inverted")
            (m, c), = self._t.items()
            return DiffPoly({mono_pow(m, k): c ** k})
        result = DiffPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- differential structure -------------------------------------------
    def derive(self, times: int = 1) -> "DiffPoly":
        f = self
        for _ in range(times):
            out: dict = {}
            for m, c in f._t.items():
                dc = field_derive(c)
                if dc:
                    s = out.get(m)
                    out[m] = dc if s is None else s + dc
                for e, m2 in mono_derive(m):
                    v = c * e
                    s = out.get(m2)
                    out[m2] = v if s is None else s + v
            f = DiffPoly({m: c for m, c in out.items() if c})
        return f

    def substitute(self, images: dict, strict: bool = True) -> "DiffPoly":
        """Differential substitution v -> images[v]; v^(p) -> p-th derivative.

        Keys are base variable names, ``(group, name)`` pairs, or order-0
        :class:`DerivVar`.  Variables without an image raise
        :class:`MissingImage` unless ``strict`` is False, in which case they
        are left alone.
        """
        by_name: dict = {}
        by_pair: dict = {}
        for key, img in images.items():
            if not isinstance(img, DiffPoly):
                img = DiffPoly.const(img)
            if isinstance(key, str):
                by_name[key] = img
            elif isinstance(key, DerivVar):
                by_pair[(key.group, key.name)] = img
            else:
                by_pair[tuple(key)] = img
        derived: dict = {}

        def image_of(i: int):
            v = _VARS[i]
            key = (v.group, v.name)
            chain = derived.get(key)
            if chain is None:
                img = by_pair.get(key)
                if img is None:
                    img = by_name.get(v.name)
                if img is None:
                    if strict and v.group != "a":
                        raise MissingImage(f"no image for variable {v.name} ({GROUP_LONG[v.group]})")
                    chain = derived[key] = False
                    return None
                chain = derived[key] = [img]
            if chain is False:
                return None
            if v.group == "a" and v.order > 0:
                return DiffPoly()
            while len(chain) <= v.order:
                chain.append(chain[-1].derive())
            return chain[v.order]

        powers: dict = {}

        def power(i: int, e: int):
            key = (i, e)
            p = powers.get(key)
            if p is None:
                img = image_of(i)
                if img is None:
                    p = DiffPoly({((i, e),): fmpq(1)})
                else:
                    p = img ** e
                powers[key] = p
            return p

        out: dict = {}
        for m, c in self._t.items():
            prod = None
            for i, e in m:
                p = power(i, e)
                prod = p if prod is None else prod * p
                if not prod:
                    break
            if prod is None:
                prod = DiffPoly({(): fmpq(1)})
            for m2, c2 in prod._t.items():
                v = c * c2
                s = out.get(m2)
                out[m2] = v if s is None else s + v
        return DiffPoly({m: c for m, c in out.items() if c})

    # -- gradings ----------------------------------------------------------
    def degree(self, groups=None) -> int:
        """Total degree (max over terms); -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(mono_degree(m, groups) for m in self._t)

    def homogeneous_component(self, d: int, groups=None) -> "DiffPoly":
        return DiffPoly({m: c for m, c in self._t.items() if mono_degree(m, groups) == d})

    def max_order(self, groups=None) -> int:
        best = -1
        for m in self._t:
            for i, _ in m:
                if (groups is None or _GROUP[i] in groups) and _ORDER[i] > best:
                    best = _ORDER[i]
        return best

    def variables(self) -> set:
        return {_VARS[i] for m in self._t for i, _ in m}

    def rename_group(self, old: str, new: str) -> "DiffPoly":
        """Move every variable of group ``old`` into group ``new``."""
        remap: dict = {}
        out = {}
        for m, c in self._t.items():
            nm = []
            for i, e in m:
                if _GROUP[i] == old:
                    j = remap.get(i)
                    if j is None:
                        v = _VARS[i]
                        j = remap[i] = var_index(DerivVar(new, v.name, v.order))
                    nm.append((j, e))
                else:
                    nm.append((i, e))
            out[tuple(sorted(nm))] = c
        return DiffPoly(out)

    def map_coeffs(self, fn) -> "DiffPoly":
        out = {}
        for m, c in self._t.items():
            v = fn(c)
            if v:
                out[m] = v
        return DiffPoly(out)

    # -- display / serialization -------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        out = ""
        for c, m in self.terms():
            neg = not isinstance(c, RatFunc) and c < 0
            a = -c if neg else c
            ms = mono_str(m)
            if ms == "1":
                body = format_kelem(a)
                if " " in body:
                    body = f"({body})"
            elif a == 1:
                body = ms
            else:
                cs = format_kelem(a)
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                body = f"{cs}*{ms}"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"DiffPoly({self})"

    def to_json(self) -> list:
        return [
            {
                "coeff": kelem_to_json(c),
                "mono": [[GROUP_LONG[v.group], v.name, v.order, e] for v, e in mono_factors(m)],
            }
            for c, m in self.terms()
        ]

    @staticmethod
    def from_json(data: list) -> "DiffPoly":
        pairs = []
        for entry in data:
            c = kelem_from_json(entry["coeff"])
            factors = [((GROUP_SHORT.get(g, g), n, int(o)), int(e)) for g, n, o, e in entry["mono"]]
            pairs.append((c, mono_from_factors(factors)))
        return DiffPoly.from_terms(pairs)


# -- the operation-level API ---------------------------------------------------
def var(name: str, order: int = 0, group: str = "m") -> DiffPoly:
    return DiffPoly.var(name, order, group)


def const(c) -> DiffPoly:
    return DiffPoly.const(c)


def poly_arith(f: DiffPoly, g: DiffPoly, op: str) -> DiffPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def poly_derive(f: DiffPoly) -> DiffPoly:
    return f.derive()


def substitute(f: DiffPoly, images: dict, strict: bool = True) -> DiffPoly:
    return f.substitute(images, strict=strict)


def term_set(f: DiffPoly) -> list:
    return f.terms()


def _as_monos(h):
    if isinstance(h, Term):
        return [h.mono]
    if isinstance(h, DiffPoly):
        if not h:
            raise ZeroPolynomial("weight of the zero polynomial is undefined")
        return list(h._t)
    raise TypeError(f"expected Term or DiffPoly, got {type(h).__name__}")


def weight(h, groups=("m",)) -> int:
    """Total derivative order; the maximum over terms for a polynomial."""
    return max(mono_weight(m, groups) for m in _as_monos(h))


def dvalue(h, xname: str = "x", yname: str = "y") -> int:
    """Multiplicity of x-derivatives minus multiplicity of y-derivatives."""
    if isinstance(h, DiffPoly):
        if len(h) != 1:
            raise ValueError("dvalue is defined on terms")
        h = h.terms()[0]
    d = 0
    for i, e in h.mono:
        v = _VARS[i]
        if v.group != "m":
            continue
        if v.name == xname:
            d += e
        elif v.name == yname:
            d -= e
    return d


def as_term(f: DiffPoly) -> Term:
    if len(f) != 1:
        raise ValueError("expected a single term")
    return f.terms()[0]


def term_poly(h: Term) -> DiffPoly:
    return DiffPoly({h.mono: h.coeff})
