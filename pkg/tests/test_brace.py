import pytest

from hopfbrace import zoo
from hopfbrace.brace import (
    LEFT,
    RIGHT,
    assemble_brace,
    braid_operator,
    check_brace,
    check_brace_identities,
    check_brace_morphism,
    check_braid_conjugacy,
    check_braid_equation,
    check_commutative_coactions,
    check_compatibility,
    check_harrison_cocycle,
    check_left_comodule,
    check_long_copaired,
    check_right_comodule,
    cop_brace,
    phi_coaction,
    phi_map,
    rho_coaction,
    rho_map,
    trivial_brace,
)
from hopfbrace.errors import BraceCheckFailed, CounitMismatch, NotCommutative, NotInvertible
from hopfbrace.exact_linalg import SparseVec, StructureMap, identity
from hopfbrace.hopf_core import CoalgebraData, HopfData, check_hopf, map_from_labels, sweedler_h4


@pytest.mark.parametrize("name", ["trivial-z2", "trivial-h4", "h4-cop", "dual-s3-cop", "long-d4", "long-z2"])
def test_zoo_braces_pass(name, fs):
    b = zoo.get(name, fs)
    assert check_brace(b).passed
    assert check_brace_identities(b).passed


def test_cop_brace_of_h4_over_prime_field(f5):
    b = cop_brace(sweedler_h4(f5))
    assert check_brace(b).passed
    assert b.name == "h4-cop"


def test_trivial_brace_has_trivial_rho(fs):
    b = trivial_brace(sweedler_h4(fs))
    h = b.first
    rho = rho_map(b)
    for label in h.labels:
        assert rho(h.basis_vector(label)) == SparseVec(16, {h.index(label): fs.one})


def test_second_structure_must_be_hopf(fs, h4_primitive_x):
    with pytest.raises(BraceCheckFailed) as caught:
        assemble_brace(sweedler_h4(fs), h4_primitive_x, "broken")
    report = caught.value.report
    assert report.failed_axiom == "second structure: comultiplication is multiplicative"
    assert report.witness_labels == ("g", "x")


def test_unverified_assembly_is_checked_later(fs, h4_primitive_x):
    b = assemble_brace(sweedler_h4(fs), h4_primitive_x, "broken", verify=False)
    assert not check_brace(b).passed


def test_compatibility_fails_for_a_conjugated_comultiplication(fs):
    # conjugation by 1 + x: g -> g + 2xg, x and xg fixed
    h4 = sweedler_h4(fs)
    legs = [h4.labels]
    f = map_from_labels(fs, legs, legs, {"1": {"1": 1}, "g": {"g": 1, "xg": 2}, "x": {"x": 1}, "xg": {"xg": 1}})
    f_inv = map_from_labels(fs, legs, legs, {"1": {"1": 1}, "g": {"g": 1, "xg": -2}, "x": {"x": 1}, "xg": {"xg": 1}})
    comult = ((f @ f) * h4.comult * f_inv).materialize()
    conjugated = HopfData(h4.algebra, CoalgebraData(comult, h4.counit), (f * h4.antipode * f_inv).materialize(), "h4-conjugated")
    assert check_hopf(conjugated).passed

    b = assemble_brace(h4, conjugated, "conjugated", verify=False)
    report = check_brace(b)
    assert report.failed_axiom == "brace compatibility"
    assert report.witness_labels == ("g",)
    assert report.residual_terms == [
        (("xg", "1", "1"), "-2"),
        (("xg", "1", "g"), "2"),
        (("xg", "g", "1"), "2"),
        (("xg", "g", "g"), "-2"),
    ]
    assert check_compatibility(b).witness_labels == ("g",)
    with pytest.raises(BraceCheckFailed):
        assemble_brace(h4, conjugated)


def test_counits_must_agree(fs):
    h4 = sweedler_h4(fs)
    legs = [h4.labels]
    other_counit = map_from_labels(fs, legs, [], {"1": {(): 1}, "g": {(): -1}})
    second = HopfData(h4.algebra, CoalgebraData(h4.comult, other_counit), h4.antipode, "other")
    with pytest.raises(CounitMismatch):
        assemble_brace(h4, second)


def test_long_twist_changes_the_comultiplication(fs):
    b = zoo.get("long-d4", fs)
    assert b.delta_prime != b.delta
    assert check_compatibility(b).passed


def test_long_twist_of_commutative_algebra_is_trivial(fs):
    b = zoo.get("long-z2", fs)
    assert b.delta_prime == b.delta


def test_copairing_checks(fs):
    pairing = zoo.get("r-d4", fs)
    assert check_long_copaired(pairing.H, pairing.R).passed
    assert check_harrison_cocycle(pairing.H, pairing.R).passed


def test_copairing_with_non_central_first_leg(fs):
    h = zoo.hopf("d4", fs)
    r = zoo._copairing(h, "r", "s")
    report = check_long_copaired(h, r)
    assert report.failed_axiom == "LC1 first leg central"
    assert report.witness_labels == ("s",)


def test_singular_copairing(fs):
    h = zoo.hopf("z2", fs)
    r = SparseVec(4, {0: fs.one, 3: fs.one})  # 1(*)1 + g(*)g
    with pytest.raises(NotInvertible):
        check_long_copaired(h, r)


def test_braid_operator_of_commutative_brace(fs):
    b = zoo.get("dual-s3-cop", fs)
    c = braid_operator(b)
    assert check_braid_equation(c, b.basis_labels).passed
    assert check_braid_conjugacy(b).passed
    assert check_commutative_coactions(b).passed


def test_coactions_of_commutative_brace(fs):
    b = zoo.get("dual-s3-cop", fs)
    rho, phi = rho_coaction(b), phi_coaction(b)
    assert rho.side == LEFT and rho.map == rho_map(b)
    assert phi.side == RIGHT and phi.map == phi_map(b)
    assert check_left_comodule(rho.map, b.second, b.first, "rho").passed
    assert check_right_comodule(phi.map, b.second, b.first, "phi").passed


def test_trivial_brace_braid_is_the_flip(fs):
    b = trivial_brace(zoo.hopf("z3", fs))
    c = braid_operator(b)
    for x in range(3):
        for y in range(3):
            assert c.column(x * 3 + y) == {y * 3 + x: fs.one}


def test_braid_needs_commutative_brace(fs):
    with pytest.raises(NotCommutative):
        phi_map(zoo.get("h4-cop", fs))
    with pytest.raises(NotCommutative):
        braid_operator(zoo.get("long-d4", fs))


def test_broken_braid_is_reported(fs):
    # f (x) id with f(e1) = e0 + e1
    f = StructureMap(fs, (2,), (2,), table={0: {0: 1}, 1: {0: 1, 1: 1}})
    report = check_braid_equation(f @ identity(fs, (2,)))
    assert report.failed_axiom == "braid equation"
    assert report.witness_labels == ("0", "1", "0")


def test_brace_morphisms(fs):
    b = zoo.get("h4-cop", fs)
    assert check_brace_morphism(b.first.id, b, b).passed
    report = check_brace_morphism(b.first.id, trivial_brace(b.first), b)
    assert report.failed_axiom == "second structure: map is comultiplicative"
    assert report.witness_labels == ("x",)
