import pytest
from flint import fmpq

from diffrep.diffpoly import DiffPoly, var
from diffrep.errors import LinearlyDependent, NotASubmodule, NotClosed, NotEquivariant, SocleNotSimple
from diffrep.examples import five_dim_matrix, wronskian_module
from diffrep.linalg import ONE, ZERO
from diffrep.modules import (FinModule, check_comodule, const_lie_action, construct_Pdk, construct_Ud, construct_Wd,
                             coaction_matrix, counit_matrix, direct_sum, dual, elements_degree, first_row_embed,
                             generated_submodule, invariants, is_equivariant, is_homogeneous, iso_test,
                             lie_relations_hold, module_degree, prolongation, pullback, pushout, quotient, restrict,
                             socle, socle_first, split_test, trivial_module)
from diffrep.quotient import QuotElem, cvar

x, y = var("x"), var("y")
a, b, c, d = (cvar(n) for n in ("c11", "c12", "c21", "c22"))
Aq = lambda p: QuotElem("A", p)


def eye(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def test_defining_module():
    M = coaction_matrix([x, y])
    assert M.coaction == [[Aq(a), Aq(b)], [Aq(c), Aq(d)]]


def test_not_closed_and_dependent():
    with pytest.raises(NotClosed) as exc:
        coaction_matrix([x])
    assert exc.value.witness is not None
    with pytest.raises(LinearlyDependent):
        coaction_matrix([x, x * 2])


@pytest.mark.parametrize("d,k,dim", [(0, 0, 1), (1, 0, 2), (3, 0, 4), (1, 1, 4), (2, 1, 7), (3, 1, 10)])
def test_Pdk_dimension(d, k, dim):
    assert construct_Pdk(d, k).dim == dim


def test_family_dimensions():
    assert [construct_Ud(d).dim for d in (1, 2, 3)] == [4, 6, 8]
    assert [construct_Wd(d).dim for d in (2, 3)] == [4, 6]
    assert iso_test(wronskian_module(), construct_Wd(2)) is not None


def test_prolongation_is_U1():
    F = prolongation(construct_Pdk(1, 0))
    assert F.dim == 4 and check_comodule(F).ok
    assert iso_test(F, construct_Ud(1)) is not None


def test_lie_action_on_defining_module():
    E, F, H = const_lie_action(construct_Pdk(1, 0))
    assert E == [[0, 1], [0, 0]] and F == [[0, 0], [1, 0]] and H == [[1, 0], [0, -1]]
    assert counit_matrix(construct_Ud(2)) == eye(6)


def test_lie_action_on_W2_weights():
    E, F, H = const_lie_action(construct_Wd(2))
    assert lie_relations_hold(E, F, H)
    assert sorted(H[i][i] for i in range(4)) == [-2, 0, 0, 2]


def test_socles():
    assert socle(construct_Pdk(3, 0)).dim == 4
    S = socle(wronskian_module())
    assert S.dim == 3 and S.polys() is not None
    assert socle(direct_sum(construct_Pdk(1, 0), construct_Pdk(2, 0))).dim == 5
    assert socle(construct_Ud(2)).dim == 3


def test_first_row_embed():
    row = first_row_embed(wronskian_module())
    assert row[0] == Aq(a * a) and row[3] == Aq(a.derive() * b - a * b.derive())
    with pytest.raises(SocleNotSimple):
        first_row_embed(direct_sum(trivial_module(), trivial_module()))


def test_dual_examples():
    P = construct_Pdk(1, 0)
    assert dual(P).coaction == [[Aq(d), Aq(-c)], [Aq(-b), Aq(a)]]
    assert iso_test(dual(P), P) is not None
    U = construct_Ud(1)
    assert iso_test(dual(dual(U)), U) is not None


def test_generated_submodule_and_invariants():
    W = wronskian_module()
    assert generated_submodule(W, [1, 0, 0, 0]).dim == 3
    assert generated_submodule(W, [0, 0, 0, 1]).dim == 4
    assert invariants(W).dim == 0
    assert invariants(construct_Pdk(0, 0)).dim == 1
    assert invariants(five_dim_matrix()).dim == 1


def test_split_test():
    M = direct_sum(construct_Pdk(1, 0), trivial_module())
    X = split_test(M, [[0, 0, 1]])
    assert X is not None and len(X) == 3 and len(X[0]) == 2
    W = wronskian_module()
    assert split_test(W, socle(W)) is None
    with pytest.raises(NotASubmodule):
        split_test(W, [[0, 0, 0, 1]])


def test_restrict_and_quotient():
    W = wronskian_module()
    S = socle(W)
    R = restrict(W, S.vectors)
    assert iso_test(R, construct_Pdk(2, 0)) is not None
    Q = quotient(W, S.vectors)
    assert Q.dim == 1 and Q.coaction == [[Aq(DiffPoly.const(1))]]


def test_degrees():
    assert module_degree(construct_Pdk(2, 0)) == 2
    assert module_degree(construct_Ud(1)) == 1
    elems = [Aq(DiffPoly.const(1)), Aq(a)]
    assert not is_homogeneous(elems)
    assert is_homogeneous([Aq(a), Aq(b)]) and elements_degree([Aq(a), Aq(b)]) == 1


def test_comodule_check_detects_a_bad_matrix():
    bad = FinModule([[Aq(a * a), Aq(b)], [Aq(c), Aq(d)]])
    r = check_comodule(bad)
    assert not r.ok and r.failure
    assert check_comodule(construct_Pdk(2, 1)).ok


def test_trivial_pullback_and_pushout():
    T = trivial_module()
    P = pullback(T, T, [[1]], [[1]])
    assert P.dim == 1
    O = pushout(T, T, [[1]], [[1]])
    assert O.dim == 1


def test_pullback_of_U1_over_its_quotient():
    U = construct_Ud(1)
    S = socle(U).vectors
    from diffrep.suites import _quotient_map
    W, pi = _quotient_map(U, S)
    Pb = pullback(U, U, pi, pi)
    assert Pb.dim == 6 and check_comodule(Pb).ok
    assert socle(Pb).dim == 4


def test_pullback_rejects_mismatched_targets():
    U = construct_Ud(1)
    from diffrep.suites import _quotient_map
    _, pi = _quotient_map(U, socle(U).vectors)
    twisted = [pi[0], [x + y for x, y in zip(pi[0], pi[1])]]
    with pytest.raises(NotEquivariant):
        pullback(U, U, pi, twisted, W=construct_Pdk(1, 0))


def test_equivariance():
    P = construct_Pdk(1, 0)
    assert is_equivariant(P, P, [[2, 0], [0, 2]])
    assert not is_equivariant(P, P, [[1, 0], [0, 2]])


def test_socle_first_ordering():
    D = socle_first(dual(wronskian_module()))
    assert socle(D).dim == 1


def test_json_round_trip():
    M = wronskian_module()
    M2 = FinModule.from_json(M.to_json())
    assert M2.coaction == M.coaction and M2.basis == M.basis
