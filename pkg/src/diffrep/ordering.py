"""Term orders.

Two orders are provided: the multiplicity-sequence order on terms of
K{x, y} used by the torus weight arguments, and grevlex on commutative
monomials for the Groebner engine.
"""
from __future__ import annotations

from enum import IntEnum
from typing import NamedTuple

from .diffpoly import DerivVar, DiffPoly, Term, as_term, var_of
from .errors import UnknownVariable


class Cmp(IntEnum):
    LESS = -1
    EQUIVALENT = 0
    GREATER = 1


def _strip(seq) -> tuple:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


class SeqPair(NamedTuple):
    u: tuple
    v: tuple


def seq_of_term(h, xname: str = "x", yname: str = "y") -> SeqPair:
    if isinstance(h, DiffPoly):
        h = as_term(h)
    u: dict[int, int] = {}
    v: dict[int, int] = {}
    for i, e in h.mono:
        var = var_of(i)
        if var.group != "m":
            continue
        if var.name == xname:
            u[var.order] = u.get(var.order, 0) + e
        elif var.name == yname:
            v[var.order] = v.get(var.order, 0) + e
    su = _strip(u.get(k, 0) for k in range(max(u, default=-1) + 1))
    sv = _strip(v.get(k, 0) for k in range(max(v, default=-1) + 1))
    return SeqPair(su, sv)


def seq_key(u: tuple) -> tuple:
    """Sort key realizing: compare at the largest index where entries differ."""
    u = _strip(u)
    return (len(u), tuple(reversed(u)))


def pair_key(s: SeqPair) -> tuple:
    return (seq_key(s.v), seq_key(s.u))


def term_key(h) -> tuple:
    return pair_key(seq_of_term(h))


def compare_terms(h, f) -> Cmp:
    a, b = term_key(h), term_key(f)
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    return Cmp.EQUIVALENT


def max_term(f: DiffPoly) -> Term:
    return max(f.terms(), key=term_key)


# -- grevlex ------------------------------------------------------------------
def _exponents(m, rank: dict) -> dict:
    if isinstance(m, DiffPoly):
        m = as_term(m)
    if isinstance(m, Term):
        m = m.mono
    out = {}
    for i, e in m:
        v = var_of(i)
        r = rank.get(v)
        if r is None:
            r = rank.get(v.name if v.order == 0 else None)
        if r is None:
            raise UnknownVariable(f"variable {v} is not in the supplied order")
        out[r] = out.get(r, 0) + e
    return out


def grevlex_key(m, var_order: list) -> tuple:
    """Key with larger == greater; ``var_order`` lists variables from largest down."""
    rank = {v if isinstance(v, (DerivVar, str)) else DerivVar(*v): k for k, v in enumerate(var_order)}
    ex = _exponents(m, rank)
    n = len(var_order)
    return (sum(ex.values()), tuple(-ex.get(k, 0) for k in range(n - 1, -1, -1)))


def grevlex_compare(m1, m2, var_order: list) -> Cmp:
    a, b = grevlex_key(m1, var_order), grevlex_key(m2, var_order)
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    return Cmp.EQUIVALENT
