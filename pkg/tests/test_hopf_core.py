import pytest

from hopfbrace import zoo
from hopfbrace.errors import CharacteristicTwo, NotAGroup, NotAHopfAlgebra
from hopfbrace.exact_linalg import FieldSpec
from hopfbrace.hopf_core import (
    FiniteGroup,
    as_hopf,
    check_hopf,
    check_hopf_morphism,
    co_opposite,
    dual_hopf,
    group_algebra,
    is_cocommutative,
    is_commutative,
    monoid_bialgebra,
    opposite,
    solve_antipode,
    sweedler_h4,
    tensor_hopf,
)


@pytest.mark.parametrize("name", zoo.names(zoo.HOPF))
def test_zoo_hopf_algebras_pass(name, fs):
    assert check_hopf(zoo.hopf(name, fs)).passed


@pytest.mark.parametrize("name", ["z3", "s3", "h4"])
def test_zoo_over_prime_field(name, f5):
    assert check_hopf(zoo.hopf(name, f5)).passed


def test_h4_needs_odd_characteristic():
    with pytest.raises(CharacteristicTwo):
        sweedler_h4(FieldSpec.prime(2))


def test_solved_antipode_matches_the_given_one(fs):
    for h in (sweedler_h4(fs), group_algebra(fs, FiniteGroup.symmetric3(), "s3")):
        assert solve_antipode(h) == h.antipode


def test_monoid_without_inverses_has_no_antipode(fs):
    b = monoid_bialgebra(fs, ["1", "z"], [[0, 1], [1, 1]], 0, "idempotent")
    assert solve_antipode(b) is None
    with pytest.raises(NotAHopfAlgebra):
        as_hopf(b)


def test_group_bialgebra_becomes_hopf(fs):
    group = FiniteGroup.cyclic(4)
    h = as_hopf(monoid_bialgebra(fs, group.labels, group.table, group.identity, "z4"))
    assert h.antipode(h.basis_vector("g")) == h.basis_vector("g3")


def test_broken_cayley_tables():
    with pytest.raises(NotAGroup):
        FiniteGroup(["1", "a"], [[0, 1], [1, 1]])
    with pytest.raises(NotAGroup):
        FiniteGroup(["1", "a"], [[0, 1]])


def test_dihedral_labels():
    d4 = FiniteGroup.dihedral(4)
    assert d4.labels == ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
    s = d4.labels.index("s")
    r = d4.labels.index("r")
    # s r = r^-1 s
    assert d4.labels[d4.product(s, r)] == "r3s"
    assert not d4.is_abelian()


def test_commutativity_flags(fs):
    h4 = sweedler_h4(fs)
    s3 = zoo.hopf("s3", fs)
    assert not is_commutative(h4)
    assert not is_cocommutative(h4)
    assert is_cocommutative(s3)
    assert not is_commutative(s3)
    assert is_commutative(dual_hopf(s3))


def test_dual_of_dual_has_the_original_tables(fs):
    h4 = sweedler_h4(fs)
    again = dual_hopf(dual_hopf(h4))
    assert again.mult == h4.mult
    assert again.comult == h4.comult
    assert again.antipode == h4.antipode
    assert again.labels == ["1^^", "g^^", "x^^", "xg^^"]


def test_op_and_cop_invert_the_antipode(fs):
    h4 = sweedler_h4(fs)
    assert opposite(h4).antipode * h4.antipode == h4.id
    assert co_opposite(co_opposite(h4)).comult == h4.comult


def test_tensor_product_is_hopf(fs):
    h = tensor_hopf(zoo.hopf("z2", fs), sweedler_h4(fs))
    assert h.dim == 8
    assert "g.xg" in h.labels
    assert check_hopf(h).passed


def test_wrong_comultiplication_is_located(h4_primitive_x):
    report = check_hopf(h4_primitive_x)
    assert not report.passed
    assert report.failed_axiom == "comultiplication is multiplicative"
    assert report.witness_labels == ("g", "x")
    assert report.summary().startswith("fail: comultiplication is multiplicative at g(*)x")


def test_antipode_is_an_anti_morphism_into_op_cop(fs):
    h4 = sweedler_h4(fs)
    assert check_hopf_morphism(h4.antipode, h4, co_opposite(opposite(h4))).passed
    assert not check_hopf_morphism(h4.antipode, h4, h4).passed
