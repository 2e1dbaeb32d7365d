"""Finite-dimensional algebras, coalgebras and Hopf algebras.

Structures are stored as StructureMaps over a labelled basis. Every check
returns a CheckReport naming the first axiom that fails, the basis tuple
where it fails and the difference of the two sides there.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    CharacteristicTwo,
    DimensionMismatch,
    NotAGroup,
    NotAHopfAlgebra,
    NotInvertible,
    SingularAntipode,
    UnknownObject,
)
from .exact_linalg import (
    Column,
    FieldSpec,
    SparseVec,
    StructureMap,
    identity,
    leg_permute,
    matrix_from_columns,
    outer,
    scalar_identity,
    solve_linear,
    split_index,
    tensor_all,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

# Basis labels of each tensor leg of a space.
Legs = Sequence[Sequence[str]]
LabelKey = Union[str, Tuple[str, ...]]


def format_terms(fs: FieldSpec, entries: Mapping[int, object], legs: Optional[Legs], dims: Sequence[int]) -> List[Tuple[Tuple[str, ...], str]]:
    """(label tuple, scalar) pairs of a tensor, in basis order."""
    terms = []
    for index in sorted(entries):
        digits = split_index(index, dims)
        if legs is None:
            labels = tuple(str(d) for d in digits)
        else:
            labels = tuple(legs[k][d] for k, d in enumerate(digits))
        terms.append((labels, fs.format(entries[index])))
    return terms


def format_tensor(fs: FieldSpec, entries: Mapping[int, object], legs: Optional[Legs], dims: Sequence[int]) -> str:
    """Renders a tensor in the `.hopf` term syntax, e.g. ``x(*)g + 1(*)x``."""
    pieces: List[str] = []
    for labels, coeff in format_terms(fs, entries, legs, dims):
        basis = "(*)".join(labels)
        negative = coeff.startswith("-")
        magnitude = coeff[1:] if negative else coeff
        if not basis:
            term = magnitude
        elif magnitude == "1":
            term = basis
        else:
            term = f"{magnitude}*{basis}"
        if pieces:
            pieces.append(("- " if negative else "+ ") + term)
        else:
            pieces.append(("-" if negative else "") + term)
    return " ".join(pieces) if pieces else "0"


@dataclass
class CheckReport:
    """Outcome of an axiom check."""

    status: str = PASS
    failed_axiom: str = ""
    witness: Tuple[int, ...] = ()
    residual: Optional[SparseVec] = None
    witness_labels: Tuple[str, ...] = ()
    residual_terms: List[Tuple[Tuple[str, ...], str]] = field(default_factory=list)
    residual_text: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def summary(self) -> str:
        if self.passed:
            return PASS
        where = "(*)".join(self.witness_labels) if self.witness_labels else "basis"
        return f"{FAIL}: {self.failed_axiom} at {where}, lhs - rhs = {self.residual_text or '?'}"


def first_failure(*checks: Callable[[], CheckReport]) -> CheckReport:
    """Runs checks in order and returns the first failing report, or a pass."""
    for check in checks:
        report = check()
        if not report.passed:
            return report
    return CheckReport()


def tagged(prefix: str, report: CheckReport) -> CheckReport:
    if not report.passed:
        report.failed_axiom = f"{prefix}{report.failed_axiom}"
    return report


def compare(axiom: str, lhs: StructureMap, rhs: StructureMap, in_legs: Optional[Legs] = None, out_legs: Optional[Legs] = None) -> CheckReport:
    """Checks lhs == rhs on every input basis tuple in order."""
    difference = lhs.first_difference(rhs)
    if difference is None:
        return CheckReport()
    index, residual = difference
    witness = split_index(index, lhs.in_dims)
    if in_legs is None:
        witness_labels = tuple(str(d) for d in witness)
    else:
        witness_labels = tuple(in_legs[k][d] for k, d in enumerate(witness))
    report = CheckReport(
        status=FAIL,
        failed_axiom=axiom,
        witness=witness,
        residual=SparseVec(lhs.out_size, residual),
        witness_labels=witness_labels,
        residual_terms=format_terms(lhs.field, residual, out_legs, lhs.out_dims),
        residual_text=format_tensor(lhs.field, residual, out_legs, lhs.out_dims),
    )
    logger.info("axiom %s fails at %s", axiom, witness_labels)
    return report


def map_from_labels(
    fs: FieldSpec,
    in_legs: Legs,
    out_legs: Legs,
    images: Mapping[LabelKey, Mapping[LabelKey, object]],
) -> StructureMap:
    """Builds a map from ``{input labels: {output labels: coefficient}}``.

    Single-leg keys may be plain strings; arity-0 sides use ``()``.
    """
    in_index = [{label: i for i, label in enumerate(leg)} for leg in in_legs]
    out_index = [{label: i for i, label in enumerate(leg)} for leg in out_legs]

    def digits(key: LabelKey, lookup) -> Tuple[int, ...]:
        labels = (key,) if isinstance(key, str) else tuple(key)
        if len(labels) != len(lookup):
            raise DimensionMismatch(f"{labels} does not have {len(lookup)} legs")
        try:
            return tuple(leg[label] for leg, label in zip(lookup, labels))
        except KeyError as exc:
            raise UnknownObject(f"unknown basis label {exc.args[0]}") from None

    table = {
        digits(key, in_index): {digits(out, out_index): value for out, value in column.items()}
        for key, column in images.items()
    }
    return StructureMap(fs, [len(leg) for leg in in_legs], [len(leg) for leg in out_legs], table=table)


@dataclass
class AlgebraData:
    """A finite-dimensional unital associative algebra."""

    field: FieldSpec
    basis_labels: List[str]
    mult: StructureMap
    unit: SparseVec

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @property
    def unit_map(self) -> StructureMap:
        return StructureMap.from_vector(self.field, (self.dim,), self.unit)

    def multiply(self, u: SparseVec, v: SparseVec) -> SparseVec:
        return SparseVec(self.dim, self.mult.apply(outer(u.entries, v.entries, self.dim)))

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise UnknownObject(f"no basis element '{label}'") from None


@dataclass
class CoalgebraData:
    """Comultiplication and counit."""

    comult: StructureMap
    counit: StructureMap

    @property
    def dim(self) -> int:
        return self.counit.in_size


class LinearStructure:
    """Accessors shared by bialgebras and Hopf algebras."""

    algebra: AlgebraData
    coalgebra: CoalgebraData
    name: str

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> List[str]:
        return self.algebra.basis_labels

    @property
    def mult(self) -> StructureMap:
        return self.algebra.mult

    @property
    def unit(self) -> SparseVec:
        return self.algebra.unit

    @property
    def unit_map(self) -> StructureMap:
        return self.algebra.unit_map

    @property
    def comult(self) -> StructureMap:
        return self.coalgebra.comult

    @property
    def counit(self) -> StructureMap:
        return self.coalgebra.counit

    @property
    def id(self) -> StructureMap:
        return identity(self.field, (self.dim,))

    def legs(self, n: int) -> List[List[str]]:
        return [self.labels] * n

    def index(self, label: str) -> int:
        return self.algebra.index(label)

    def vector(self, terms: Mapping[str, object]) -> SparseVec:
        """Element from ``{label: coefficient}``."""
        convert = self.field.domain.convert
        return SparseVec(self.dim, {self.index(label): convert(c) for label, c in terms.items()})

    def basis_vector(self, label: str) -> SparseVec:
        return SparseVec.basis(self.dim, self.index(label), self.field)

    def format(self, vector: Union[SparseVec, Mapping[int, object]], legs: int = 1) -> str:
        entries = vector.entries if isinstance(vector, SparseVec) else vector
        return format_tensor(self.field, entries, self.legs(legs), (self.dim,) * legs)


@dataclass
class BialgebraData(LinearStructure):
    """An algebra and a coalgebra on the same labelled space."""

    algebra: AlgebraData
    coalgebra: CoalgebraData
    name: str = ""


@dataclass
class HopfData(LinearStructure):
    """A finite-dimensional Hopf algebra (H, m, 1, Δ, ε, S)."""

    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: StructureMap
    name: str = ""

    @cached_property
    def antipode_inverse(self) -> StructureMap:
        try:
            return self.antipode.inverse()
        except NotInvertible:
            raise SingularAntipode(f"the antipode of {self.name or 'this Hopf algebra'} is singular") from None

    def same_tables(self, other: "HopfData") -> bool:
        return (
            self.mult == other.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and self.counit == other.counit
            and self.antipode == other.antipode
        )


def check_algebra(a: AlgebraData) -> CheckReport:
    m, u, i = a.mult, a.unit_map, identity(a.field, (a.dim,))
    one = [a.basis_labels]
    return first_failure(
        lambda: compare("associativity", m * (m @ i), m * (i @ m), one * 3, one),
        lambda: compare("left unit", m * (u @ i), i, one, one),
        lambda: compare("right unit", m * (i @ u), i, one, one),
    )


def check_coalgebra(c: CoalgebraData, labels: Optional[Sequence[str]] = None) -> CheckReport:
    d = c.dim
    fs = c.counit.field
    labels = list(labels) if labels is not None else [str(k) for k in range(d)]
    delta, eps, i = c.comult, c.counit, identity(fs, (d,))
    one = [labels]
    return first_failure(
        lambda: compare("coassociativity", (delta @ i) * delta, (i @ delta) * delta, one, one * 3),
        lambda: compare("left counit", (eps @ i) * delta, i, one, one),
        lambda: compare("right counit", (i @ eps) * delta, i, one, one),
    )


def _middle_swap(fs: FieldSpec, left: int, right: int) -> StructureMap:
    """Reorders a (x) b (x) a2 (x) b2 as a (x) a2 (x) b (x) b2."""
    return leg_permute(fs, (left, right, left, right), (0, 2, 1, 3))


def check_bialgebra(b: LinearStructure) -> CheckReport:
    fs, d = b.field, b.dim
    m, u, delta, eps = b.mult, b.unit_map, b.comult, b.counit
    two = b.legs(2)
    swap = leg_permute(fs, (d, d, d, d), (0, 2, 1, 3))
    return first_failure(
        lambda: check_algebra(b.algebra),
        lambda: check_coalgebra(b.coalgebra, b.labels),
        lambda: compare("comultiplication is multiplicative", delta * m, (m @ m) * swap * (delta @ delta), two, two),
        lambda: compare("comultiplication is unital", delta * u, u @ u, [], two),
        lambda: compare("counit is multiplicative", eps * m, eps @ eps, two, []),
        lambda: compare("counit is unital", eps * u, scalar_identity(fs), [], []),
    )


def check_antipode(h: LinearStructure, antipode: StructureMap, label: str = "antipode") -> CheckReport:
    """m(S (x) id)Δ = uε = m(id (x) S)Δ."""
    m, delta, i = h.mult, h.comult, h.id
    unit_counit = h.unit_map * h.counit
    one = h.legs(1)
    return first_failure(
        lambda: compare(f"{label} left identity", m * (antipode @ i) * delta, unit_counit, one, one),
        lambda: compare(f"{label} right identity", m * (i @ antipode) * delta, unit_counit, one, one),
    )


def check_hopf(h: HopfData) -> CheckReport:
    return first_failure(lambda: check_bialgebra(h), lambda: check_antipode(h, h.antipode))


def solve_antipode(b: LinearStructure) -> Optional[StructureMap]:
    """The convolution inverse of the identity, or None when there is none.

    Solves m(S (x) id)Δ = uε for the d*d entries of S and then confirms the
    other identity.
    """
    fs, d = b.field, b.dim
    # unknown s[i][a] (coefficient of e_i in S(e_a)) has column i*d + a;
    # equation (k, r) is the e_r coefficient of m(S (x) id)Δ(e_k).
    columns: Dict[int, Column] = {}
    for k in range(d):
        for pair, c in b.comult.column(k).items():
            a, right = divmod(pair, d)
            for i in range(d):
                for r, mu in b.mult.column(i * d + right).items():
                    column = columns.setdefault(i * d + a, {})
                    total = column.get(k * d + r, fs.zero) + c * mu
                    if total:
                        column[k * d + r] = total
                    else:
                        column.pop(k * d + r, None)
    rhs: Column = {}
    for k, eps_k in ((k, col.get(0)) for k, col in b.counit.table.items()):
        if eps_k:
            for r, u_r in b.unit.entries.items():
                rhs[k * d + r] = eps_k * u_r
    solution = solve_linear(matrix_from_columns(fs, columns, (d * d, d * d)), SparseVec(d * d, rhs))
    if solution is None:
        logger.debug("no antipode for %s", b.name or "bialgebra")
        return None
    table: Dict[int, Column] = {}
    for unknown, value in solution.entries.items():
        i, a = divmod(unknown, d)
        table.setdefault(a, {})[i] = value
    antipode = StructureMap(fs, (d,), (d,), table=table)
    report = check_antipode(b, antipode)
    if not report.passed:
        raise NotAHopfAlgebra(f"one-sided antipode only: {report.summary()}")
    return antipode


def as_hopf(b: BialgebraData) -> HopfData:
    antipode = solve_antipode(b)
    if antipode is None:
        raise NotAHopfAlgebra(f"{b.name or 'bialgebra'} has no antipode")
    return HopfData(b.algebra, b.coalgebra, antipode, b.name)


def is_commutative(a: Union[AlgebraData, LinearStructure]) -> bool:
    m = a.mult
    d = a.dim
    return m == m * leg_permute(a.field, (d, d), (1, 0))


def is_cocommutative(h: LinearStructure) -> bool:
    d = h.dim
    return h.comult == leg_permute(h.field, (d, d), (1, 0)) * h.comult


def dual_hopf(h: HopfData) -> HopfData:
    """H* with ⟨fg, h⟩ = ⟨f (x) g, Δ(h)⟩ and ⟨Δ(f), x (x) y⟩ = ⟨f, xy⟩ on the dual basis."""
    fs, d = h.field, h.dim
    labels = [f"{label}^" for label in h.labels]
    unit = SparseVec(d, {i: col[0] for i, col in h.counit.table.items()})
    algebra = AlgebraData(fs, labels, h.comult.transpose(), unit)
    coalgebra = CoalgebraData(h.mult.transpose(), StructureMap.from_functional(fs, (d,), h.unit.entries))
    return HopfData(algebra, coalgebra, h.antipode.transpose(), f"dual-{h.name}")


def opposite(h: HopfData) -> HopfData:
    d = h.dim
    mult = (h.mult * leg_permute(h.field, (d, d), (1, 0))).materialize()
    algebra = replace(h.algebra, mult=mult)
    return HopfData(algebra, h.coalgebra, h.antipode_inverse, f"op-{h.name}")


def co_opposite(h: HopfData) -> HopfData:
    d = h.dim
    comult = (leg_permute(h.field, (d, d), (1, 0)) * h.comult).materialize()
    return HopfData(h.algebra, CoalgebraData(comult, h.counit), h.antipode_inverse, f"cop-{h.name}")


def tensor_labels(left: Sequence[str], right: Sequence[str]) -> List[str]:
    return [f"{a}.{b}" for a in left for b in right]


def tensor_algebra(a: AlgebraData, b: AlgebraData) -> AlgebraData:
    """A (x) B with (a (x) b)(a' (x) b') = aa' (x) bb'; basis index i*dim(B)+j."""
    fs, da, db = a.field, a.dim, b.dim
    mult = ((a.mult @ b.mult) * _middle_swap(fs, da, db)).regroup((da * db, da * db), (da * db,)).materialize()
    unit = SparseVec(da * db, outer(a.unit.entries, b.unit.entries, db))
    return AlgebraData(fs, tensor_labels(a.basis_labels, b.basis_labels), mult, unit)


def product_map(algebras: Sequence[Union[AlgebraData, LinearStructure]]) -> StructureMap:
    """Multiplication of A_1 (x) ... (x) A_n on unflattened legs.

    Takes 2n legs (the two factors one after the other) to n legs.
    """
    n = len(algebras)
    dims = [a.dim for a in algebras]
    interleave = [k for pair in zip(range(n), range(n, 2 * n)) for k in pair]
    mults = [a.mult for a in algebras]
    return tensor_all(mults) * leg_permute(algebras[0].field, dims + dims, interleave)


def tensor_hopf(a: HopfData, b: HopfData) -> HopfData:
    """The componentwise Hopf structure on A (x) B."""
    fs, da, db = a.field, a.dim, b.dim
    n = da * db
    comult = leg_permute(fs, (da, da, db, db), (0, 2, 1, 3)) * (a.comult @ b.comult)
    coalgebra = CoalgebraData(
        comult.regroup((n,), (n, n)).materialize(),
        (a.counit @ b.counit).regroup((n,), ()).materialize(),
    )
    antipode = (a.antipode @ b.antipode).regroup((n,), (n,)).materialize()
    return HopfData(tensor_algebra(a.algebra, b.algebra), coalgebra, antipode, f"{a.name}.{b.name}")


def canonical_element(h: HopfData) -> SparseVec:
    """Σ h_i (x) h_i^* in H (x) H*."""
    d = h.dim
    return SparseVec(d * d, {i * d + i: h.field.one for i in range(d)})


def check_hopf_morphism(f: StructureMap, source: LinearStructure, target: LinearStructure, prefix: str = "") -> CheckReport:
    """f is an algebra map and a coalgebra map."""
    src, dst = source.legs(1), target.legs(1)
    return first_failure(
        lambda: compare(f"{prefix}map is multiplicative", f * source.mult, target.mult * (f @ f), source.legs(2), dst),
        lambda: compare(f"{prefix}map is unital", f * source.unit_map, target.unit_map, [], dst),
        lambda: compare(f"{prefix}map is comultiplicative", target.comult * f, (f @ f) * source.comult, src, target.legs(2)),
        lambda: compare(f"{prefix}map preserves the counit", target.counit * f, source.counit, src, []),
    )


@dataclass
class FiniteGroup:
    """A finite group given by its Cayley table ``table[i][j] = index of i*j``."""

    labels: List[str]
    table: List[List[int]]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0 or len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroup("the Cayley table must be square and match the labels")
        if any(not 0 <= k < n for row in self.table for k in row):
            raise NotAGroup("a product lies outside the group")
        units = [e for e in range(n) if all(self.table[e][j] == j == self.table[j][e] for j in range(n))]
        if not units:
            raise NotAGroup("no identity element")
        self.identity = units[0]
        for i in range(n):
            if self.identity not in self.table[i]:
                raise NotAGroup(f"'{self.labels[i]}' has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise NotAGroup(
                            f"not associative at ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    @property
    def order(self) -> int:
        return len(self.labels)

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.table[i].index(self.identity)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    @staticmethod
    def cyclic(n: int, generator: str = "g") -> "FiniteGroup":
        labels = ["1"] + [generator if k == 1 else f"{generator}{k}" for k in range(1, n)]
        return FiniteGroup(labels, [[(i + j) % n for j in range(n)] for i in range(n)])

    @staticmethod
    def klein() -> "FiniteGroup":
        # bit 0 is a, bit 1 is b
        return FiniteGroup(["1", "a", "b", "ab"], [[i ^ j for j in range(4)] for i in range(4)])

    @staticmethod
    def dihedral(n: int) -> "FiniteGroup":
        """Symmetries r^i s^j of the n-gon, indexed j*n + i, with s r = r^-1 s."""
        def label(i: int, j: int) -> str:
            rotation = "" if i == 0 else ("r" if i == 1 else f"r{i}")
            return (rotation + ("s" if j else "")) or "e"

        elements = [(i, j) for j in range(2) for i in range(n)]
        table = []
        for i1, j1 in elements:
            row = []
            for i2, j2 in elements:
                i = (i1 + (-i2 if j1 else i2)) % n
                j = (j1 + j2) % 2
                row.append(j * n + i)
            table.append(row)
        return FiniteGroup([label(i, j) for i, j in elements], table)

    @staticmethod
    def symmetric3() -> "FiniteGroup":
        return FiniteGroup.dihedral(3)


def monoid_bialgebra(fs: FieldSpec, labels: Sequence[str], table: Sequence[Sequence[int]], unit: int, name: str = "") -> BialgebraData:
    """The monoid algebra with every basis element group-like."""
    d = len(labels)
    one = fs.one
    mult = StructureMap(fs, (d, d), (d,), table={(i, j): {table[i][j]: one} for i in range(d) for j in range(d)})
    comult = StructureMap(fs, (d,), (d, d), table={i: {(i, i): one} for i in range(d)})
    counit = StructureMap.from_functional(fs, (d,), {i: one for i in range(d)})
    algebra = AlgebraData(fs, list(labels), mult, SparseVec.basis(d, unit, fs))
    return BialgebraData(algebra, CoalgebraData(comult, counit), name)


def group_algebra(fs: FieldSpec, group: FiniteGroup, name: str = "") -> HopfData:
    """kG with Δ(g) = g (x) g and S(g) = g^-1."""
    b = monoid_bialgebra(fs, group.labels, group.table, group.identity, name)
    d = group.order
    antipode = StructureMap(fs, (d,), (d,), table={i: {group.inverse(i): fs.one} for i in range(d)})
    logger.debug("built group algebra %s of dimension %d", name, d)
    return HopfData(b.algebra, b.coalgebra, antipode, name)


H4_LABELS = ["1", "g", "x", "xg"]


def sweedler_h4(fs: FieldSpec) -> HopfData:
    """Sweedler's algebra: g^2 = 1, x^2 = 0, xg = -gx, Δ(x) = x (x) g + 1 (x) x."""
    if fs.characteristic == 2:
        raise CharacteristicTwo("Sweedler's algebra needs characteristic different from 2")
    legs = [H4_LABELS]
    mult = map_from_labels(fs, legs * 2, legs, {
        ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": 1}, ("1", "xg"): {"xg": 1},
        ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}, ("g", "x"): {"xg": -1}, ("g", "xg"): {"x": -1},
        ("x", "1"): {"x": 1}, ("x", "g"): {"xg": 1},
        ("xg", "1"): {"xg": 1}, ("xg", "g"): {"x": 1},
    })
    comult = map_from_labels(fs, legs, legs * 2, {
        "1": {("1", "1"): 1},
        "g": {("g", "g"): 1},
        "x": {("x", "g"): 1, ("1", "x"): 1},
        "xg": {("xg", "1"): 1, ("g", "xg"): 1},
    })
    counit = map_from_labels(fs, legs, [], {"1": {(): 1}, "g": {(): 1}})
    antipode = map_from_labels(fs, legs, legs, {"1": {"1": 1}, "g": {"g": 1}, "x": {"xg": -1}, "xg": {"x": 1}})
    algebra = AlgebraData(fs, list(H4_LABELS), mult, SparseVec.basis(4, 0, fs))
    return HopfData(algebra, CoalgebraData(comult, counit), antipode, "h4")
