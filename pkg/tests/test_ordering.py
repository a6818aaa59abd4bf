import pytest

from diffrep.diffpoly import DerivVar, var
from diffrep.errors import UnknownVariable
from diffrep.ordering import Cmp, compare_terms, grevlex_compare, grevlex_key, max_term, seq_of_term, seq_key
from diffrep.quotient import cvar

x, y = var("x"), var("y")


def test_sequences_of_a_term():
    s = seq_of_term(x * x.derive(2) * y.derive())
    assert s.u == (1, 0, 1) and s.v == (0, 1)


def test_sequence_order_compares_at_largest_differing_index():
    assert seq_key((0, 2)) < seq_key((1, 0, 1))
    assert seq_key((1, 1)) < seq_key((0, 2))
    assert seq_key((3,)) < seq_key((0, 1))


def test_y_part_dominates():
    assert compare_terms(x.derive(5), y) == Cmp.LESS
    assert compare_terms(x * y.derive(), x.derive() * y) == Cmp.GREATER


def test_equivalence_ignores_coefficients():
    assert compare_terms(x * 3, x * 5) == Cmp.EQUIVALENT


def test_max_term():
    f = x.derive() * y + x * y.derive() + x.derive(2) * y
    assert max_term(f).mono == (x * y.derive()).terms()[0][1]


ORDER = [DerivVar("gr", n, 1) for n in ("c22", "c21", "c12", "c11")] + \
        [DerivVar("gr", n, 0) for n in ("c22", "c21", "c12", "c11")]


def test_grevlex_prefers_small_exponent_of_the_smallest_variable():
    a, b, c, d = (cvar(n) for n in ("c11", "c12", "c21", "c22"))
    assert grevlex_compare(b * c, a * d, ORDER) == Cmp.GREATER
    assert grevlex_compare(cvar("c11", 1) * d, a * cvar("c22", 1), ORDER) == Cmp.GREATER


def test_grevlex_degree_first():
    a, d = cvar("c11"), cvar("c22")
    assert grevlex_key(a * a * a, ORDER) > grevlex_key(d * d, ORDER)


def test_grevlex_unknown_variable():
    with pytest.raises(UnknownVariable):
        grevlex_key(x, ORDER)
