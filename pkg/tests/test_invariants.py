import pytest

from cihom.deviations import (
    CHAR_P_LABEL,
    betti_of_residue_field,
    deviation_profile,
    deviations_from_betti,
)
from cihom.errors import ResourceLimitError, TheoremMismatch
from cihom.ideal import minimalize_generators
from cihom.invariants import (
    cm_type,
    depth,
    depth_auslander_buchsbaum,
    depth_koszul,
    dimension,
    ring_invariants,
)
from conftest import algebra


def test_dimension_examples():
    assert dimension(algebra("x, y", "x*y")) == 1
    assert dimension(algebra("x, y, z", "x^2 - y*z")) == 2
    assert dimension(algebra("x", "x^2")) == 0


def test_depth_examples_both_methods():
    for A, d in [
        (algebra("x, y", "x^2, x*y"), 0),
        (algebra("x, y", "x*y"), 1),
        (algebra("x, y"), 2),
    ]:
        assert depth_auslander_buchsbaum(A) == d
        assert depth_koszul(A) == d
        assert depth(A) == d


def test_dual_numbers_invariants():
    inv = ring_invariants(algebra("x", "x^2"))
    assert (inv.dim, inv.depth, inv.embdim, inv.mu_defining, inv.ci_defect) == (0, 0, 1, 1, 0)
    assert inv.complete_intersection and inv.gorenstein and inv.cm_type == 1


def test_square_zero_invariants():
    inv = ring_invariants(algebra("x, y", "x^2, x*y, y^2"))
    assert inv.ci_defect == 1
    assert not inv.complete_intersection
    assert inv.cohen_macaulay and not inv.gorenstein
    assert inv.cm_type == 2


def test_cone_is_hypersurface():
    inv = ring_invariants(algebra("x, y, z", "x^2 - y*z"))
    assert inv.ci_defect == 0
    assert inv.complete_intersection and inv.gorenstein and inv.cohen_macaulay


def test_embedded_point_is_not_cm():
    inv = ring_invariants(algebra("x, y", "x^2, x*y"))
    assert inv.coprof == 1
    assert not inv.cohen_macaulay and not inv.gorenstein


def test_linear_relations_are_absorbed():
    inv = ring_invariants(algebra("x, y, z", "z - x, x*y"))
    assert inv.embdim == 2 and inv.mu_defining == 1 and inv.complete_intersection


def test_twisted_cubic_type_two():
    A = algebra("a, b, c, d", "a*c - b^2, b*d - c^2, a*d - b*c")
    assert cm_type(A) == 2
    inv = ring_invariants(A)
    assert inv.cohen_macaulay and not inv.gorenstein and inv.ci_defect == 1


def test_minimalize_generators_examples():
    from cihom.ideal import HomogeneousIdeal
    A = algebra("x")
    x = A.ring.var("x")
    gens, mu = minimalize_generators(HomogeneousIdeal(A.ring, [x**2, x**3]))
    assert mu == 1 and gens == [x**2]
    B = algebra("x, y")
    x, y = B.ring.gens()
    assert minimalize_generators(HomogeneousIdeal(B.ring, [x**2, x * y, y**2]))[1] == 3


def test_regular_flags():
    inv = ring_invariants(algebra("x, y"))
    assert inv.regular and inv.complete_intersection
    assert ring_invariants(algebra("")).regular


# -- deviations -------------------------------------------------------------

def test_betti_of_residue_field_examples():
    assert betti_of_residue_field(algebra("x", "x^2"), 5) == [1] * 6
    assert betti_of_residue_field(algebra("x, y"), 4) == [1, 2, 1, 0, 0]
    # m^2 = 0 with embedding dimension 2: each syzygy is k^2 again
    assert betti_of_residue_field(algebra("x, y", "x^2, x*y, y^2"), 4) == [1, 2, 4, 8, 16]


def test_cutoff_bounds():
    A = algebra("x", "x^2")
    with pytest.raises(ValueError):
        betti_of_residue_field(A, 3)
    with pytest.raises(ResourceLimitError):
        betti_of_residue_field(A, 11)


def test_deviations_from_betti_examples():
    assert deviations_from_betti([1, 1, 1, 1, 1]) == [1, 1, 0, 0]
    assert deviations_from_betti([1, 2, 1, 0, 0]) == [2, 0, 0, 0]
    assert deviations_from_betti([1, 0, 0, 0, 0]) == [0, 0, 0, 0]
    assert deviations_from_betti([1, 2, 4, 8, 16]) == [2, 3, 2, 3]


def test_negative_deviation_aborts():
    # b3 = 1 forces eps_3 = 1, and then b4 = 0 needs eps_4 = -1
    with pytest.raises(TheoremMismatch):
        deviations_from_betti([1, 1, 0, 1, 0])


def test_profile_flags_and_char_p_label():
    p = deviation_profile(algebra("x, y", "x^2, x*y"), 4)
    assert p.deviations == [2, 2, 1, 1]
    assert not p.ci_by_eps3 and not p.ci_by_eps4
    q = deviation_profile(algebra("x, y", "x^2, y^2", field="Fp 5"), 4)
    assert q.ci_by_eps3 and q.ci_by_eps4
    assert q.label == CHAR_P_LABEL
    assert not deviation_profile(algebra("x", "x^2"), 4).label
