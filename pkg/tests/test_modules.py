import pytest

from cihom.errors import ResourceLimitError
from cihom.modules import PresentedModule, binomial_rank_guard, column, minimal_free_resolution
from conftest import algebra, poly


def test_residue_field_over_dual_numbers_has_betti_all_one():
    A = algebra("x", "x^2")
    res = minimal_free_resolution(PresentedModule.residue_field(A), 5)
    assert res.betti() == [1, 1, 1, 1, 1, 1]
    assert res.is_complex()
    assert res.is_minimal()
    assert res.euler_check()
    assert not res.terminated


def test_resolution_over_polynomial_ring_terminates():
    A = algebra("x, y")
    M = PresentedModule.cyclic(A, [poly(A, "x^2"), poly(A, "x*y")])
    res = minimal_free_resolution(M, 6)
    assert res.terminated
    assert res.betti() == [1, 2, 1]
    assert res.projective_dimension() == 2
    assert res.graded_betti() == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert res.euler_check()


def test_square_zero_residue_field_betti_doubles():
    A = algebra("x, y", "x^2, x*y, y^2")
    res = minimal_free_resolution(PresentedModule.residue_field(A), 5)
    assert res.betti() == [1, 2, 4, 8, 16, 32]


def test_syzygy_over_node():
    A = algebra("x, y", "x*y")
    M = PresentedModule.cyclic(A, [poly(A, "x")])
    syz = M.syzygies()
    # kernel of multiplication by x is generated by y, in degree 1 + 1
    assert syz.mu() == 1
    assert syz.gen_degrees == (2,)


def test_free_and_non_free_detection():
    A = algebra("x, y", "x*y")
    F = PresentedModule.free(A, [0, 1])
    assert F.is_free() == (True, 2)
    k = PresentedModule.residue_field(A)
    assert k.is_free() == (False, None)
    assert k.tensor_residue_dimension() == 1


def test_minimalize_drops_redundant_generators():
    A = algebra("x")
    x = poly(A, "x")
    # generators e0, e1 with e1 = x*e0 collapses to one generator
    M = PresentedModule(A, [0, 1], [column([x, -A.ring.one()])])
    assert M.mu() == 1
    assert M.minimalize().relations == []


def test_hilbert_series_of_module():
    A = algebra("x, y")
    M = PresentedModule.cyclic(A, [poly(A, "x"), poly(A, "y")], degree=2)
    hs = M.hilbert_series()
    assert hs.total_dimension() == 1
    assert hs.min_degree() == 2


def test_rank_guard(monkeypatch):
    monkeypatch.setenv("CI_CLASSIFY_MAX_RANK", "3")
    A = algebra("x, y", "x^2, x*y, y^2")
    with pytest.raises(ResourceLimitError):
        minimal_free_resolution(PresentedModule.residue_field(A), 4)


def test_binomial_guard():
    binomial_rank_guard(10)
    with pytest.raises(ResourceLimitError):
        binomial_rank_guard(30)
