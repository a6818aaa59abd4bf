"""Fixed example objects: the Wronskian module, the 5-dimensional
non-embeddable module and the non-homogeneous 4-dimensional subspace of A."""
from __future__ import annotations

from .diffpoly import DiffPoly, var
from .modules import FinModule, coaction_matrix, module_from_A_subspace
from .quotient import QuotElem, cvar


def wronskian() -> DiffPoly:
    x, y = var("x"), var("y")
    return x.derive() * y - x * y.derive()


def wronskian_module() -> FinModule:
    x, y = var("x"), var("y")
    return coaction_matrix([x * x, x * y, y * y, wronskian()], name="W_2")


def _c():
    return cvar("c11"), cvar("c12"), cvar("c21"), cvar("c22")


def five_dim_matrix() -> FinModule:
    """Extension K | P_2^0 | K whose entries are quadratic in the c_ij and their derivatives."""
    a, b, c, d = _c()
    D = lambda p: p.derive()
    one, zero = DiffPoly.const(1), DiffPoly()
    rows = [
        [one, D(a) * c - a * D(c), D(a) * d - b * D(c), D(b) * d - b * D(d), D(a) * D(d) - D(b) * D(c)],
        [zero, a * a, a * b, b * b, a * D(b) - D(a) * b],
        [zero, a * c * 2, a * d + b * c, b * d * 2, (a * D(d) - b * D(c)) * 2],
        [zero, c * c, c * d, d * d, c * D(d) - D(c) * d],
        [zero, zero, zero, zero, one],
    ]
    return FinModule([[QuotElem("A", e) for e in row] for row in rows], name="V5")


def nonhomogeneous_elems() -> list:
    a, b, c, d = _c()
    D = lambda p: p.derive()
    polys = [DiffPoly.const(1), D(a) * c - a * D(c), D(b) * d - b * D(d), D(a) * d - D(c) * b]
    return [QuotElem("A", p) for p in polys]


def nonhomogeneous_module() -> FinModule:
    return module_from_A_subspace(nonhomogeneous_elems())
