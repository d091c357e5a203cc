import pytest

from cihom.errors import IllDefinedMapError, RingMismatchError, TheoremMismatch
from cihom.maps import (
    EXPLICIT_QUOTIENT,
    GENERAL,
    NO,
    UNKNOWN,
    YES,
    GradedMap,
    check_theorems,
    ci_defect,
    classify,
    regular_factorization,
)
from conftest import algebra, poly


def quotient(A, *texts):
    return GradedMap.quotient(A, [poly(A, t) for t in texts])


def test_factorization_of_k_to_dual_numbers():
    k = algebra("")
    B = algebra("x", "x^2")
    f = GradedMap(k, B, [])
    r = regular_factorization(f)
    assert r.R.nvars == 1
    assert r.h1 == 1 and r.h2 == 0
    assert [g.degree() for g in r.kernel] == [2]
    assert ci_defect(f) == 0


def test_explicit_quotient_uses_source_as_R():
    A = algebra("x, y", "x*y")
    f = quotient(A, "x")
    r = regular_factorization(f)
    assert r.R is A
    assert r.kind == EXPLICIT_QUOTIENT
    assert ci_defect(f) == 0


def test_identity_factorization_has_linear_kernel():
    A = algebra("x, y", "x*y")
    f = GradedMap(A, A, list(A.ring.gens()))
    r = regular_factorization(f)
    assert r.R.nvars == 4
    assert all(g.degree() == 1 for g in r.kernel)
    assert r.h1 == 2 and r.h2 == 0


def test_square_zero_to_k_defect_one():
    f = quotient(algebra("x, y", "x^2, x*y, y^2"), "x", "y")
    assert ci_defect(f) == 1
    c = classify(f)
    assert (c.h1, c.h2) == (2, 3)
    assert not c.is_qci and not c.is_mci
    assert c.is_fci == NO and c.is_rci == NO


def test_dual_numbers_to_k():
    c = classify(quotient(algebra("x", "x^2"), "x"))
    assert not c.is_ci and c.is_qci and c.is_mci
    assert c.is_fci == YES and c.is_rci == YES
    assert c.d_f == 0 and c.h2 == 1


def test_regular_element_quotient_is_ci():
    c = classify(quotient(algebra("x, y"), "x"))
    assert c.is_ci and c.is_qci and c.is_mci
    assert c.is_fci == YES and c.is_rci == YES
    t = c.transfer["grade_depth"]
    assert t["holds"] and t["values"] == {"depth_R": 2, "depth_B": 1, "grade": 1}


def test_node_mod_x_transfer_report():
    c = classify(quotient(algebra("x, y", "x*y"), "x"))
    assert c.is_mci and c.d_f == 0 and c.h2 == 1
    assert c.transfer["coprof"]["values"] == {"source": 0, "target": 0}
    assert c.transfer["gorenstein"]["holds"]
    assert c.transfer["cohen_macaulay"]["holds"]


def test_non_qci_transfer_not_applicable():
    c = classify(quotient(algebra("x, y", "x^2, x*y, y^2"), "x", "y"))
    assert not c.transfer["coprof"]["applicable"]
    assert c.transfer["coprof"]["holds"] is None


def test_fci_unknown_between_non_ci_rings():
    c = classify(quotient(algebra("x, y, z", "x^2, y^2, y*z, z^2"), "x"))
    assert c.is_mci
    assert c.is_fci == UNKNOWN and c.is_rci == UNKNOWN


def test_padded_and_general_factorizations_agree():
    f = quotient(algebra("x, y", "x*y"), "x")
    assert ci_defect(f, padded=True) == ci_defect(f) == 0
    g = classify(f, padded=True, general=True)
    assert g.kind == GENERAL and g.is_mci


def test_weighted_map():
    A = algebra("x, y:2")
    B = algebra("t")
    t = B.ring.var("t")
    f = GradedMap(A, B, [t, t**2])
    c = classify(f)
    assert c.is_ci and c.d_f == 0


def test_ill_defined_maps_rejected():
    A = algebra("x", "x^2")
    B = algebra("t")
    t = B.ring.var("t")
    with pytest.raises(IllDefinedMapError):
        GradedMap(A, B, [t])  # x^2 -> t^2 is not zero
    with pytest.raises(IllDefinedMapError):
        GradedMap(algebra("x"), B, [t**2])  # wrong degree
    with pytest.raises(IllDefinedMapError):
        GradedMap(algebra("x"), B, [])
    with pytest.raises(RingMismatchError):
        GradedMap(algebra("x", field="Fp 5"), B, [t])


def test_composition():
    f = quotient(algebra("x, y", "x*y"), "x")
    B = f.target
    g = GradedMap.quotient(B, [B.ring.var("y")])
    h = f.compose(g)
    assert h.target is g.target
    assert classify(h).is_mci


def test_check_theorems_flags_contradictions():
    c = classify(quotient(algebra("x", "x^2"), "x"))
    check_theorems(c)
    from dataclasses import replace
    bad = replace(c, is_ci=True, is_mci=False)
    with pytest.raises(TheoremMismatch) as exc:
        check_theorems(bad)
    assert "ci => mci" in str(exc.value)
    assert exc.value.dump()
