import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfbrace.errors import (
    DimensionMismatch,
    FieldError,
    InvalidPermutation,
    NotInvertible,
    SignatureMismatch,
)
from hopfbrace.exact_linalg import (
    FieldSpec,
    SparseVec,
    StructureMap,
    flip,
    identity,
    invert_element,
    join_index,
    leg_permute,
    solve_linear,
    split_index,
)
from hopfbrace.hopf_core import sweedler_h4

QQ_FIELD = FieldSpec.rationals()


def _random_map(draw, in_dims, out_dims):
    in_size = 1
    for d in in_dims:
        in_size *= d
    out_size = 1
    for d in out_dims:
        out_size *= d
    table = {
        i: {j: draw(st.integers(-3, 3)) for j in range(out_size)}
        for i in range(in_size)
    }
    return StructureMap(QQ_FIELD, in_dims, out_dims, table=table)


@st.composite
def maps(draw, in_dims=(2,), out_dims=(2,)):
    return _random_map(draw, in_dims, out_dims)


def test_field_parse():
    assert FieldSpec.parse("Q") == FieldSpec.rationals()
    assert FieldSpec.parse("Fp:7") == FieldSpec.prime(7)
    assert str(FieldSpec.prime(7)) == "Fp:7"
    with pytest.raises(FieldError):
        FieldSpec.parse("Fp:9")
    with pytest.raises(FieldError):
        FieldSpec.parse("R")


def test_scalars_are_exact():
    half = QQ_FIELD.scalar(1, 2)
    assert QQ_FIELD.format(half + half) == "1"
    f5 = FieldSpec.prime(5)
    assert f5.scalar(1, 2) * f5.scalar(2) == f5.one
    with pytest.raises(FieldError):
        f5.scalar(1, 5)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.data())
def test_split_inverts_join(dims, data):
    digits = [data.draw(st.integers(0, d - 1)) for d in dims]
    assert split_index(join_index(digits, dims), dims) == tuple(digits)


@given(st.permutations(range(4)))
def test_leg_permutation_inverse(perm):
    dims = (2, 3, 2, 1)
    p = leg_permute(QQ_FIELD, dims, perm)
    inverse = [perm.index(k) for k in range(4)]
    back = leg_permute(QQ_FIELD, p.out_dims, inverse)
    assert back * p == identity(QQ_FIELD, dims)


def test_leg_permutation_moves_legs():
    p = leg_permute(QQ_FIELD, (2, 3), (1, 0))
    # (1, 2) in 2 (x) 3 lands on (2, 1) in 3 (x) 2
    assert p.column(join_index((1, 2), (2, 3))) == {join_index((2, 1), (3, 2)): QQ_FIELD.one}
    with pytest.raises(InvalidPermutation):
        leg_permute(QQ_FIELD, (2, 3), (0, 0))


@settings(max_examples=25, deadline=None)
@given(maps(), maps(), maps())
def test_tensor_is_associative(f, g, h):
    assert ((f @ g) @ h).regroup((8,), (8,)) == (f @ (g @ h)).regroup((8,), (8,))


@settings(max_examples=25, deadline=None)
@given(maps(), maps(), maps(), maps())
def test_interchange_law(f, g, h, k):
    assert (f * g) @ (h * k) == (f @ h) * (g @ k)


@settings(max_examples=25, deadline=None)
@given(maps((3,), (3,)), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_elimination_solves_by_substitution(f, xs):
    rhs = f(SparseVec(3, dict(enumerate(xs))))
    solution = solve_linear(f.to_matrix(), rhs)
    assert solution is not None
    assert f(solution) == rhs


def test_inconsistent_system_has_no_solution():
    zero = StructureMap(QQ_FIELD, (2,), (2,), table={})
    assert solve_linear(zero.to_matrix(), SparseVec(2, {0: QQ_FIELD.one})) is None


def test_inverse_of_singular_map():
    m = StructureMap(QQ_FIELD, (2,), (2,), table={0: {0: 1}, 1: {0: 1}})
    with pytest.raises(NotInvertible):
        m.inverse()


def test_signature_checks():
    f = identity(QQ_FIELD, (2,))
    g = identity(QQ_FIELD, (3,))
    with pytest.raises(SignatureMismatch):
        f * g
    with pytest.raises(SignatureMismatch):
        f.first_difference(g)
    with pytest.raises(DimensionMismatch):
        SparseVec(2, {5: QQ_FIELD.one})


def test_first_difference_reports_first_column():
    f = StructureMap(QQ_FIELD, (3,), (1,), table={0: {0: 1}, 1: {0: 2}, 2: {0: 3}})
    g = StructureMap(QQ_FIELD, (3,), (1,), table={0: {0: 1}, 1: {0: 5}, 2: {0: 0}})
    index, residual = f.first_difference(g)
    assert index == 1
    assert residual == {0: QQ_FIELD.scalar(-3)}


def test_invert_element_in_h4():
    h4 = sweedler_h4(QQ_FIELD)
    u = h4.vector({"1": 1, "x": 1})
    inverse = invert_element(h4.algebra, u)
    assert inverse == h4.vector({"1": 1, "x": -1})
    with pytest.raises(NotInvertible):
        invert_element(h4.algebra, h4.vector({"x": 1}))


def test_materialized_composite_keeps_its_columns():
    h = sweedler_h4(QQ_FIELD)
    lazy = h.mult * flip(QQ_FIELD, h.dim, h.dim)
    table = lazy.materialize().table
    assert table
    for index in range(h.dim * h.dim):
        assert table.get(index, {}) == lazy.column(index)
    # g x = -xg, so the flipped product sends x (x) g to -xg
    assert table[h.index("x") * h.dim + h.index("g")] == {h.index("xg"): -1}
