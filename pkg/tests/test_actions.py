import pytest
import sympy as sp
from flint import fmpq

from oracle import sl2_image, to_sympy
from diffrep.actions import (NilArray, comultiply_C, ga_rep, gm_coaction, gm_evaluate, lemma_max_witness,
                             log_derivative, sl2_coaction, tensor_split, terms_same_shape, witness_term)
from diffrep.diffpoly import DiffPoly, Term, as_term, var, weight
from diffrep.errors import NonConstantRequired, NotCommuting, NotNilpotent, ZeroScalar, ZeroWeight
from diffrep.field import t
from diffrep.quotient import cvar

x, y = var("x"), var("y")
a, b, c, d = (cvar(n) for n in ("c11", "c12", "c21", "c22"))


def test_defining_coaction():
    assert sl2_coaction(x) == x * a + y * c
    assert sl2_coaction(y * y) == x * x * b * b + x * y * b * d * 2 + y * y * d * d


@pytest.mark.parametrize("f", [x.derive() * y - x * y.derive(), x.derive(2) * y * y, x * x.derive() * y.derive(2)])
def test_coaction_matches_sympy(f):
    assert sp.simplify(sl2_image(to_sympy(f)) - to_sympy(sl2_coaction(f))) == 0


def test_comultiplication():
    left = lambda n: cvar(n, 0, "gl")
    assert comultiply_C(a) == left("c11") * a + left("c12") * c
    assert comultiply_C(D := a.derive()) == (left("c11") * a + left("c12") * c).derive()


def test_tensor_split():
    parts = tensor_split(sl2_coaction(x * y))
    assert parts[(x * x).terms()[0][1]] == a * b


def test_gm_coaction():
    z = var("z", 0, "gr")
    assert gm_coaction(x.derive()) == z.derive() * x + z * x.derive()
    assert gm_coaction(x * y) == x * y


def test_gm_evaluate():
    assert gm_evaluate(x.derive(), t) == x + x.derive() * t
    assert gm_evaluate(x.derive(2) * y, t) == x.derive(2) * y + x.derive() * y * (2 / t)
    assert gm_evaluate(x ** 3, 2) == x ** 3 * 8
    with pytest.raises(ZeroScalar):
        gm_evaluate(x, 0)


def test_gm_action_law():
    f = x.derive(2) * y + x * y.derive()
    p, q = t + 1, t * t
    assert gm_evaluate(gm_evaluate(f, p), q) == gm_evaluate(f, p * q)


def test_witness_examples():
    W = lemma_max_witness(as_term(x.derive()), t)
    assert W.residual == x and W.htilde == as_term(x)
    W = lemma_max_witness(as_term(x.derive(2) * y), t)
    assert W.residual == x.derive() * y * (2 / t)
    assert W.htilde == as_term(x.derive() * y * (2 / t))
    W = lemma_max_witness(as_term(y.derive()), t)
    assert W.residual == y * (-1 / (t * t))
    assert W.weight_drop and W.in_support and W.below_h


def test_predecessor_clause_fails_on_x_times_x2():
    W = lemma_max_witness(as_term(x * x.derive(2)), t)
    assert W.weight_drop and W.in_support and W.below_h
    assert W.maximality_violation is not None
    assert DiffPoly({W.maximality_violation.mono: fmpq(1)}) == x.derive() ** 2


def test_witness_errors():
    with pytest.raises(ZeroWeight):
        lemma_max_witness(as_term(x * y), t)
    with pytest.raises(NonConstantRequired):
        lemma_max_witness(as_term(x.derive()), 3)


def test_same_shape_terms():
    shapes = terms_same_shape(as_term(x * x.derive()), 2)
    assert len(shapes) == 4  # x x, x x', x x'', x' x'


def test_log_derivative():
    (lam,) = log_derivative(1)
    x1 = var("x1")
    assert lam == x1.derive() * x1 ** -1


def test_ga_rep_examples():
    one, zero = DiffPoly.const(1), DiffPoly()
    N = NilArray(1, 2, {(1, 0): [[0, 1], [0, 0]]})
    assert ga_rep(N) == [[one, var("x1")], [zero, one]]
    N = NilArray(1, 2, {(1, 1): [[0, 1], [0, 0]]})
    assert ga_rep(N) == [[one, var("x1", 1)], [zero, one]]
    assert ga_rep(NilArray(1, 2, {})) == [[one, zero], [zero, one]]


def test_ga_rep_square_term():
    N = NilArray(1, 3, {(1, 0): [[0, 1, 0], [0, 0, 1], [0, 0, 0]]})
    m = ga_rep(N)
    assert m[0][2] == var("x1") ** 2 * fmpq(1, 2)


def test_nilarray_validation():
    with pytest.raises(NotNilpotent):
        NilArray(1, 2, {(1, 0): [[1, 0], [0, 0]]})
    with pytest.raises(NotCommuting):
        NilArray(1, 2, {(1, 0): [[0, 1], [0, 0]], (1, 1): [[0, 0], [1, 0]]})
