import pytest

from hopfbrace import zoo
from hopfbrace.bicrossed import (
    bicrossed_coproduct,
    check_comodule_bialgebra,
    check_eq41,
    check_eq42,
    check_eq43,
    check_eq44,
    closed_double_dual_comultiplication,
    drinfeld_double_dual,
    h4_z2_brace,
    prop41_brace,
    prop41_candidate,
    prop43_brace,
    smash_brace,
    smash_coproduct,
    trivial_left_coaction,
)
from hopfbrace.brace import LEFT, CoactionData, check_brace, cop_brace, trivial_brace
from hopfbrace.errors import (
    CharacteristicTwo,
    ComoduleBialgebraCheckFailed,
    Eq41Failed,
    HypothesisFailed,
    NotCocommutative,
    RolesDiffer,
)
from hopfbrace.exact_linalg import FieldSpec, StructureMap
from hopfbrace.hopf_core import FiniteGroup, check_hopf, group_algebra, map_from_labels, sweedler_h4
from hopfbrace.matched import MatchedPairData, trivial_coactions


def _z2a(fs):
    return group_algebra(fs, FiniteGroup.cyclic(2, "a"), "z2")


def _inversion_coaction(fs, z3, dual_z2):
    """kZ3 -> kZ3 (x) k^Z2, t -> t (x) e0 + t^-1 (x) e1."""
    return StructureMap(fs, (z3.dim,), (z3.dim, dual_z2.dim),
                        table={k: {(k, 0): 1, ((-k) % 3, 1): 1} for k in range(3)})


def _parity_coaction(fs, h4, z2):
    """H4 graded by the parity of x over kZ2."""
    return map_from_labels(fs, [h4.labels], [z2.labels, h4.labels], {
        "1": {("1", "1"): 1},
        "g": {("1", "g"): 1},
        "x": {("a", "x"): 1},
        "xg": {("a", "xg"): 1},
    })


def test_h4_z2_brace(fs):
    b = h4_z2_brace(fs)
    assert b.name == "h4-z2"
    assert b.dim == 8
    assert check_brace(b).passed
    assert b.delta == bicrossed_coproduct(zoo.get("h4-z2-pair", fs)).delta_tilde


def test_bicrossed_brace_from_a_trivial_rho_prime(fs):
    mp = zoo.get("h4-z2-pair", fs)
    brace_h = trivial_brace(_z2a(fs))
    built = prop43_brace(mp.A, brace_h, mp, trivial_left_coaction(mp.A, brace_h.second))
    assert built.same_tables(h4_z2_brace(fs))


def test_bicrossed_brace_needs_commutative_h(fs):
    z2, s3 = zoo.hopf("z2", fs), zoo.hopf("s3", fs)
    with pytest.raises(HypothesisFailed) as caught:
        prop43_brace(z2, trivial_brace(s3), trivial_coactions(z2, s3), trivial_left_coaction(z2, s3))
    assert caught.value.which == "the brace on H is commutative"


def test_bicrossed_brace_checks_roles_and_rho_prime(fs):
    mp = zoo.get("h4-z2-pair", fs)
    h4, z2 = mp.A, mp.H
    with pytest.raises(RolesDiffer):
        prop43_brace(h4, trivial_brace(zoo.hopf("z3", fs)), mp, trivial_left_coaction(h4, z2))
    twisted = map_from_labels(fs, [h4.labels], [z2.labels, h4.labels], {
        "1": {("1", "1"): 1},
        "g": {("a", "x"): 1},
        "x": {("1", "x"): 1},
        "xg": {("1", "xg"): 1},
    })
    with pytest.raises(HypothesisFailed) as caught:
        prop43_brace(h4, trivial_brace(z2), mp, CoactionData(LEFT, twisted))
    assert caught.value.which == "rho' is a comodule bialgebra"


def test_h4_z2_brace_over_prime_field(f5):
    assert check_brace(h4_z2_brace(f5)).passed


def test_h4_z2_brace_needs_odd_characteristic():
    with pytest.raises(CharacteristicTwo):
        h4_z2_brace(FieldSpec.prime(2))


def test_bicrossed_coproduct_of_h4_z2_pair(fs):
    bicrossed = bicrossed_coproduct(zoo.get("h4-z2-pair", fs))
    assert bicrossed.result.name == "h4-z2-bicrossed"
    assert check_hopf(bicrossed.result).passed
    assert bicrossed.delta_tilde != bicrossed.delta_hat


def test_bicrossed_coproduct_without_rho_prime_has_no_smash_part(fs):
    assert bicrossed_coproduct(zoo.get("h4-z2-pair", fs)).delta_bar is None


def test_bicrossed_coproduct_carries_the_smash_comultiplication(fs):
    mp = zoo.get("h4-z2-pair", fs)
    bicrossed = bicrossed_coproduct(mp, trivial_left_coaction(mp.A, mp.H))
    assert bicrossed.delta_bar == smash_coproduct(mp.A, mp.H, trivial_left_coaction(mp.A, mp.H)).comult
    assert bicrossed.delta_bar == h4_z2_brace(fs).delta_prime


def test_bicrossed_brace_takes_its_name_at_assembly(fs):
    mp = zoo.get("h4-z2-pair", fs)
    brace_h = trivial_brace(_z2a(fs))
    built = prop43_brace(mp.A, brace_h, mp, trivial_left_coaction(mp.A, brace_h.second), "named")
    assert built.name == "named"
    assert zoo.get("h4-z2", fs).name == "h4-z2"


def test_trivial_pair_gives_the_tensor_product(fs):
    mp = trivial_coactions(zoo.hopf("z3", fs), zoo.hopf("dual-z2", fs))
    bicrossed = bicrossed_coproduct(mp)
    assert bicrossed.delta_tilde == bicrossed.delta_hat


@pytest.mark.parametrize("base", ["z2", "z3"])
def test_drinfeld_double_dual(base, fs):
    h = zoo.hopf(base, fs)
    b = drinfeld_double_dual(h)
    assert b.name == f"double-dual-{base}"
    assert b.dim == h.dim ** 2
    assert check_brace(b).passed
    assert b.delta == closed_double_dual_comultiplication(h)


@pytest.mark.extended
def test_drinfeld_double_dual_of_s3(fs):
    b = zoo.get("double-dual-s3", fs)
    assert b.dim == 36
    assert check_brace(b).passed


def test_double_dual_needs_cocommutative(fs):
    with pytest.raises(NotCocommutative):
        drinfeld_double_dual(sweedler_h4(fs))


def test_smash_with_parity_grading(fs):
    h4, z2 = sweedler_h4(fs), _z2a(fs)
    rho = _parity_coaction(fs, h4, z2)
    assert check_comodule_bialgebra(rho, z2, h4).passed
    smash = smash_coproduct(h4, z2, CoactionData(LEFT, rho))
    assert smash.name == "h4-z2-smash"
    assert check_hopf(smash).passed
    assert check_brace(smash_brace(h4, z2, rho)).passed


def test_smash_rejects_non_unital_coaction(fs):
    z2a, z2 = _z2a(fs), zoo.hopf("z2", fs)
    # every basis element a goes to g (x) a
    rho = map_from_labels(fs, [z2a.labels], [z2.labels, z2a.labels],
                          {label: {("g", label): 1} for label in z2a.labels})
    with pytest.raises(ComoduleBialgebraCheckFailed) as caught:
        smash_coproduct(z2a, z2, CoactionData(LEFT, rho))
    assert caught.value.report.failed_axiom == "rho' is multiplicative"
    assert caught.value.report.witness_labels == ("1", "1")


def test_phi_splitting_fails_for_the_inversion_coaction(fs):
    dual_z2, z3 = zoo.hopf("dual-z2", fs), zoo.hopf("z3", fs)
    brace_a = trivial_brace(dual_z2)
    phi = _inversion_coaction(fs, z3, dual_z2)
    mp = MatchedPairData(brace_a.second, z3, trivial_left_coaction(brace_a.second, z3).map, phi)
    report = check_eq41(z3, dual_z2, phi)
    assert report.failed_axiom == "phi splitting"
    assert report.witness_labels == ("g",)
    with pytest.raises(Eq41Failed):
        prop41_brace(brace_a, z3, mp)
    assert not check_brace(prop41_candidate(brace_a, z3, mp)).passed


def test_coactions_commute_fails_for_a_twisted_rho_prime(fs):
    mp = zoo.get("h4-z2-pair", fs)
    h4, z2 = mp.A, mp.H
    rho_prime = map_from_labels(fs, [h4.labels], [z2.labels, h4.labels], {
        "1": {("1", "1"): 1},
        "g": {("a", "x"): 1},
        "x": {("1", "x"): 1},
        "xg": {("1", "xg"): 1},
    })
    assert check_eq42(h4, cop_brace(z2), mp.rho, trivial_left_coaction(h4, z2).map).passed
    report = check_eq42(h4, cop_brace(z2), mp.rho, rho_prime)
    assert report.failed_axiom == "coactions commute"
    assert report.witness_labels == ("g",)


def test_second_comultiplication_identities_agree(fs):
    dual_z2, z3 = zoo.hopf("dual-z2", fs), zoo.hopf("z3", fs)
    phi = _inversion_coaction(fs, z3, dual_z2)
    brace_h = trivial_brace(z3)
    trivial = trivial_left_coaction(dual_z2, z3).map
    graded = StructureMap(fs, (2,), (3, 2), table={0: {(0, 0): 1}, 1: {(1, 1): 1}})

    assert check_eq44(z3, dual_z2, phi, trivial).passed
    assert check_eq43(dual_z2, brace_h, phi, trivial).passed

    report44 = check_eq44(z3, dual_z2, phi, graded)
    report43 = check_eq43(dual_z2, brace_h, phi, graded)
    assert report44.failed_axiom == "phi against rho'"
    assert report43.failed_axiom == "phi through the second comultiplication"
    assert report44.witness_labels == report43.witness_labels == ("1",)
