import pytest

from hopfbrace import zoo
from hopfbrace.brace import trivial_brace
from hopfbrace.errors import Eq31Failed, NotCommutative, RMatrixCheckFailed, RolesDiffer
from hopfbrace.exact_linalg import SparseVec, flip
from hopfbrace.hopf_core import FiniteGroup, group_algebra
from hopfbrace.matched import (
    MatchedPairData,
    brace_to_matched,
    check_eq31,
    check_matched_morphism,
    check_matched_pair,
    check_reconstruction_identities,
    check_weak_rmatrix,
    matched_to_brace,
    trivial_coactions,
    weak_rmatrix,
)


def _z2a(fs):
    return group_algebra(fs, FiniteGroup.cyclic(2, "a"), "z2")


@pytest.mark.parametrize("name", ["r-h4-z2", "r-can-z2", "r-can-z3"])
def test_weak_rmatrices_pass(name, fs):
    r = zoo.get(name, fs)
    assert check_weak_rmatrix(r.H, r.A, r.R).passed


def test_h4_z2_pair(fs):
    mp = zoo.get("h4-z2-pair", fs)
    assert mp.source_order == "H,A"
    assert mp.A.name == "h4"
    assert check_matched_pair(mp).passed
    with pytest.raises(RolesDiffer):
        check_eq31(mp)


def test_h4_z2_pair_over_prime_field(f5):
    assert check_matched_pair(zoo.get("h4-z2-pair", f5)).passed


def test_rmatrix_must_be_invertible(fs):
    h4 = zoo.hopf("h4", fs)
    z2 = _z2a(fs)
    # 1(*)1 + 1(*)a = 1 (x) (1 + a)
    r = SparseVec(8, {0: fs.one, 1: fs.one})
    report = check_weak_rmatrix(h4, z2, r)
    assert report.failed_axiom == "R is invertible"
    with pytest.raises(RMatrixCheckFailed):
        weak_rmatrix(h4, z2, r)


def test_rmatrix_second_leg_splitting(fs):
    h4 = zoo.hopf("h4", fs)
    z2 = _z2a(fs)
    # g(*)1 splits on the first leg but not on the second
    r = SparseVec(8, {h4.index("g") * 2: fs.one})
    assert check_weak_rmatrix(h4, z2, r).failed_axiom == "WM2"


def test_commutative_brace_round_trip(fs):
    b = zoo.get("dual-s3-cop", fs)
    mp = brace_to_matched(b)
    assert check_matched_pair(mp).passed
    assert check_eq31(mp).passed
    back = matched_to_brace(mp)
    assert back.same_tables(b)
    assert check_reconstruction_identities(mp, back).passed


def test_rho_with_swapped_legs_is_not_a_coaction(fs):
    mp = brace_to_matched(zoo.get("dual-s3-cop", fs))
    swapped = (flip(fs, mp.H.dim, mp.A.dim) * mp.rho).materialize()
    report = check_matched_pair(MatchedPairData(mp.A, mp.H, swapped, mp.phi, mp.source_order))
    assert report.failed_axiom == "rho coassociativity"
    assert report.witness_labels == (mp.A.labels[0],)


def test_stored_pair_matches_the_brace(fs):
    mp = zoo.get("dual-s3-pair", fs)
    assert mp.same_tables(brace_to_matched(zoo.get("dual-s3-cop", fs)))


def test_matched_morphisms(fs):
    mp = zoo.get("dual-s3-pair", fs)
    a = mp.A
    assert check_matched_morphism(a.id.materialize(), mp, mp).passed
    # the antipode is an algebra map of the commutative algebra but reverses the comultiplication
    assert check_matched_morphism(a.antipode, mp, mp).failed_axiom == "map is comultiplicative"
    with pytest.raises(RolesDiffer):
        check_matched_morphism(a.id, zoo.get("h4-z2-pair", fs), mp)


def test_trivial_coactions_give_the_trivial_brace(fs):
    z3 = zoo.hopf("z3", fs)
    mp = trivial_coactions(z3, z3)
    assert check_matched_pair(mp).passed
    assert matched_to_brace(mp).same_tables(trivial_brace(z3))


def test_trivial_coactions_on_non_cocommutative_algebra(fs):
    a = zoo.get("dual-s3-cop", fs).second
    mp = trivial_coactions(a, a)
    assert check_matched_pair(mp).passed
    report = check_eq31(mp)
    assert report.failed_axiom == "comultiplication from the coactions"
    assert report.witness_labels == ("r^",)
    with pytest.raises(Eq31Failed):
        matched_to_brace(mp)


def test_matched_pair_needs_commutative_brace(fs):
    with pytest.raises(NotCommutative):
        brace_to_matched(zoo.get("h4-cop", fs))
