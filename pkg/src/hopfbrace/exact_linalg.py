"""Exact scalars and sparse multilinear maps.

Every space in the kernel is a tensor power of based spaces. A basis tuple
``(i1, ..., in)`` over dimensions ``(d1, ..., dn)`` is flattened row-major
into ``i1*(d2*...*dn) + ... + in``; all modules use this one convention.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from operator import mul
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .errors import (
    DimensionMismatch,
    FieldError,
    InvalidPermutation,
    KernelError,
    NotInvertible,
    SignatureMismatch,
)

logger = logging.getLogger(__name__)

# Index -> nonzero scalar. Dicts handed out by StructureMap.column are shared
# and must not be mutated by callers.
Column = Dict[int, object]
Dims = Tuple[int, ...]

# Lazy maps remember evaluated columns up to this many inputs.
_COLUMN_CACHE_LIMIT = 1 << 16


@lru_cache(maxsize=None)
def _domain(kind: str, characteristic: int):
    if kind == "Q":
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """The field of scalars: the rationals or a prime field."""

    kind: str = "Q"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise FieldError("the rationals have characteristic 0")
        elif self.kind == "Fp":
            if not isprime(self.characteristic):
                raise FieldError(f"characteristic {self.characteristic} is not a prime")
        else:
            raise FieldError(f"unknown field kind '{self.kind}'")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q", 0)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Reads ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text == "Q":
            return FieldSpec.rationals()
        if text.startswith("Fp:"):
            try:
                return FieldSpec.prime(int(text[3:]))
            except ValueError:
                pass
        raise FieldError(f"cannot read field '{text}' (expected Q or Fp:<prime>)")

    @property
    def domain(self):
        return _domain(self.kind, self.characteristic)

    @property
    def one(self):
        return self.domain.one

    @property
    def zero(self):
        return self.domain.zero

    def scalar(self, numerator: int, denominator: int = 1):
        K = self.domain
        if denominator == 0:
            raise FieldError("zero denominator")
        den = K(denominator)
        if not den:
            raise FieldError(f"{denominator} is not invertible in {self}")
        return K.quo(K(numerator), den)

    def parse_scalar(self, text: str):
        """Reads an integer or ``p/q``."""
        num, _, den = text.strip().partition("/")
        try:
            return self.scalar(int(num), int(den) if den else 1)
        except ValueError:
            raise FieldError(f"'{text}' is not a scalar") from None

    def format(self, value) -> str:
        return str(self.domain.to_sympy(value))

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.characteristic}"


def size_of(dims: Sequence[int]) -> int:
    return reduce(mul, dims, 1)


def join_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    """Row-major flattening of a basis tuple."""
    index = 0
    for digit, d in zip(digits, dims):
        index = index * d + digit
    return index


def split_index(index: int, dims: Sequence[int]) -> Tuple[int, ...]:
    digits: List[int] = []
    for d in reversed(dims):
        index, digit = divmod(index, d)
        digits.append(digit)
    return tuple(reversed(digits))


def axpy(target: Column, coeff, source: Mapping[int, object]) -> Column:
    """target += coeff * source, pruning zeros in place."""
    for key, value in source.items():
        previous = target.get(key)
        total = coeff * value if previous is None else previous + coeff * value
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def _pruned(entries: Mapping[int, object]) -> Column:
    return {k: v for k, v in entries.items() if v}


@dataclass(frozen=True)
class SparseVec:
    """A vector stored as its nonzero coordinates."""

    dim: int
    entries: Dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionMismatch(f"negative dimension {self.dim}")
        pruned = _pruned(self.entries)
        for index in pruned:
            if not 0 <= index < self.dim:
                raise DimensionMismatch(f"index {index} outside dimension {self.dim}")
        object.__setattr__(self, "entries", pruned)

    @staticmethod
    def basis(dim: int, index: int, fs: FieldSpec) -> "SparseVec":
        return SparseVec(dim, {index: fs.one})

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "SparseVec") -> "SparseVec":
        self._same_dim(other)
        return SparseVec(self.dim, axpy(dict(self.entries), 1, other.entries))

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        self._same_dim(other)
        return SparseVec(self.dim, axpy(dict(self.entries), -1, other.entries))

    def scale(self, coeff) -> "SparseVec":
        return SparseVec(self.dim, {k: coeff * v for k, v in self.entries.items()})

    def __getitem__(self, index: int):
        return self.entries.get(index)

    def _same_dim(self, other: "SparseVec"):
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")


class StructureMap:
    """A linear map V_1 (x) ... (x) V_n -> W_1 (x) ... (x) W_m.

    Either backed by a table ``{flat input index: {flat output index: scalar}}``
    or by a rule computing one column at a time. Composites and tensor
    products are rule backed and only evaluated on demand.
    """

    def __init__(
        self,
        fs: FieldSpec,
        in_dims: Sequence[int],
        out_dims: Sequence[int],
        table: Optional[Mapping] = None,
        rule: Optional[Callable[[int], Mapping[int, object]]] = None,
    ):
        if (table is None) == (rule is None):
            raise KernelError("a structure map needs exactly one of table or rule")
        self.field = fs
        self.in_dims: Dims = tuple(in_dims)
        self.out_dims: Dims = tuple(out_dims)
        self.in_size = size_of(self.in_dims)
        self.out_size = size_of(self.out_dims)
        self._rule = rule
        self._columns: Dict[int, Column] = {}
        self._table: Optional[Dict[int, Column]] = None
        if table is not None:
            self._table = self._normalise(table)

    def _normalise(self, table: Mapping) -> Dict[int, Column]:
        normalised: Dict[int, Column] = {}
        for key, column in table.items():
            index = join_index(key, self.in_dims) if isinstance(key, tuple) else key
            if not 0 <= index < self.in_size:
                raise DimensionMismatch(f"input index {key} outside {self.in_dims}")
            if isinstance(column, SparseVec):
                column = column.entries
            entries: Column = {}
            for out_key, value in column.items():
                out = join_index(out_key, self.out_dims) if isinstance(out_key, tuple) else out_key
                if not 0 <= out < self.out_size:
                    raise DimensionMismatch(f"output index {out_key} outside {self.out_dims}")
                axpy(entries, 1, {out: self.field.domain.convert(value)})
            if entries:
                normalised[index] = entries
        return normalised

    @property
    def in_arity(self) -> int:
        return len(self.in_dims)

    @property
    def out_arity(self) -> int:
        return len(self.out_dims)

    @property
    def signature(self) -> Tuple[Dims, Dims]:
        return self.in_dims, self.out_dims

    def column(self, index: int) -> Column:
        """Image of the basis vector with flat index ``index``."""
        if self._table is not None:
            return self._table.get(index, {})
        cached = self._columns.get(index)
        if cached is None:
            cached = _pruned(self._rule(index))
            if self.in_size <= _COLUMN_CACHE_LIMIT:
                self._columns[index] = cached
        return cached

    def apply(self, vector: Mapping[int, object]) -> Column:
        result: Column = {}
        for index, coeff in vector.items():
            axpy(result, coeff, self.column(index))
        return result

    def __call__(self, vector: SparseVec) -> SparseVec:
        if vector.dim != self.in_size:
            raise DimensionMismatch(f"vector of dimension {vector.dim} fed to {self.in_dims}")
        return SparseVec(self.out_size, self.apply(vector.entries))

    def as_vector(self) -> SparseVec:
        """The value of an arity-0 map on the scalar 1."""
        if self.in_size != 1:
            raise SignatureMismatch(f"map with inputs {self.in_dims} is not a vector")
        return SparseVec(self.out_size, dict(self.column(0)))

    @property
    def table(self) -> Dict[int, Column]:
        if self._table is None:
            table: Dict[int, Column] = {}
            for index in range(self.in_size):
                column = self.column(index)
                if column:
                    table[index] = column
            self._table = table
            self._columns = {}
        return self._table

    def materialize(self) -> "StructureMap":
        return StructureMap(self.field, self.in_dims, self.out_dims, table=self.table)

    def regroup(self, in_dims: Sequence[int], out_dims: Sequence[int]) -> "StructureMap":
        """Same matrix, legs read with other dimensions of equal total size."""
        if size_of(in_dims) != self.in_size or size_of(out_dims) != self.out_size:
            raise SignatureMismatch(
                f"cannot regroup {self.signature} as {(tuple(in_dims), tuple(out_dims))}"
            )
        return StructureMap(self.field, in_dims, out_dims, rule=self.column)

    def transpose(self) -> "StructureMap":
        table: Dict[int, Column] = {}
        for index, column in self.table.items():
            for out, value in column.items():
                table.setdefault(out, {})[index] = value
        return StructureMap(self.field, self.out_dims, self.in_dims, table=table)

    def to_matrix(self) -> DomainMatrix:
        """Matrix with one column per input basis vector."""
        dok = {(out, index): value for index, column in self.table.items() for out, value in column.items()}
        return DomainMatrix.from_dok(dok, (self.out_size, self.in_size), self.field.domain)

    @staticmethod
    def from_matrix(fs: FieldSpec, matrix: DomainMatrix, in_dims: Sequence[int], out_dims: Sequence[int]) -> "StructureMap":
        table: Dict[int, Column] = {}
        for (row, col), value in matrix.to_dok().items():
            if value:
                table.setdefault(col, {})[row] = value
        return StructureMap(fs, in_dims, out_dims, table=table)

    def inverse(self) -> "StructureMap":
        if self.in_size != self.out_size:
            raise NotInvertible(f"map {self.signature} is not square")
        try:
            inv = self.to_matrix().inv()
        except DMNonInvertibleMatrixError:
            raise NotInvertible(f"map {self.signature} is singular") from None
        return StructureMap.from_matrix(self.field, inv, self.out_dims, self.in_dims)

    def first_difference(self, other: "StructureMap") -> Optional[Tuple[int, Column]]:
        """First input index (in order) where the maps differ, with lhs - rhs there."""
        self._same_signature(other, "compare")
        for index in range(self.in_size):
            lhs, rhs = self.column(index), other.column(index)
            if lhs != rhs:
                return index, axpy(dict(lhs), -1, rhs)
        return None

    def _same_signature(self, other: "StructureMap", verb: str):
        if self.signature != other.signature:
            raise SignatureMismatch(f"cannot {verb} {self.signature} with {other.signature}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureMap):
            return NotImplemented
        return self.signature == other.signature and self.table == other.table

    __hash__ = None

    def __add__(self, other: "StructureMap") -> "StructureMap":
        self._same_signature(other, "add")
        return StructureMap(
            self.field, self.in_dims, self.out_dims,
            rule=lambda i: axpy(dict(self.column(i)), 1, other.column(i)),
        )

    def __neg__(self) -> "StructureMap":
        return self.scaled(-1)

    def __sub__(self, other: "StructureMap") -> "StructureMap":
        return self + (-other)

    def scaled(self, coeff) -> "StructureMap":
        return StructureMap(
            self.field, self.in_dims, self.out_dims,
            rule=lambda i: {k: coeff * v for k, v in self.column(i).items()},
        )

    def __mul__(self, other: "StructureMap") -> "StructureMap":
        return compose(self, other)

    def __matmul__(self, other: "StructureMap") -> "StructureMap":
        return tensor(self, other)

    def __repr__(self) -> str:
        kind = "table" if self._table is not None else "lazy"
        return f"StructureMap({self.in_dims} -> {self.out_dims}, {kind})"

    @staticmethod
    def from_vector(fs: FieldSpec, dims: Sequence[int], vector: Union[SparseVec, Mapping[int, object]]) -> "StructureMap":
        """The map k -> V sending 1 to ``vector``."""
        entries = vector.entries if isinstance(vector, SparseVec) else vector
        return StructureMap(fs, (), dims, table={0: entries})

    @staticmethod
    def from_functional(fs: FieldSpec, dims: Sequence[int], values: Mapping[int, object]) -> "StructureMap":
        """The map V -> k with basis vector i sent to ``values[i]``."""
        return StructureMap(fs, dims, (), table={i: {0: v} for i, v in values.items()})


def compose(f: StructureMap, g: StructureMap) -> StructureMap:
    """f after g."""
    if g.out_dims != f.in_dims:
        raise SignatureMismatch(f"cannot feed outputs {g.out_dims} into inputs {f.in_dims}")
    if f.field != g.field:
        raise SignatureMismatch(f"fields {f.field} and {g.field} differ")
    return StructureMap(f.field, g.in_dims, f.out_dims, rule=lambda i: f.apply(g.column(i)))


def tensor(f: StructureMap, g: StructureMap) -> StructureMap:
    if f.field != g.field:
        raise SignatureMismatch(f"fields {f.field} and {g.field} differ")
    g_in, g_out = g.in_size, g.out_size

    def rule(index: int) -> Column:
        left, right = divmod(index, g_in)
        left_col = f.column(left)
        if not left_col:
            return {}
        right_col = g.column(right)
        return {
            p * g_out + q: x * y
            for p, x in left_col.items()
            for q, y in right_col.items()
        }

    return StructureMap(f.field, f.in_dims + g.in_dims, f.out_dims + g.out_dims, rule=rule)


def tensor_all(maps: Sequence[StructureMap]) -> StructureMap:
    return reduce(tensor, maps)


def identity(fs: FieldSpec, dims: Sequence[int]) -> StructureMap:
    one = fs.one
    return StructureMap(fs, dims, dims, rule=lambda i: {i: one})


def scalar_identity(fs: FieldSpec) -> StructureMap:
    return StructureMap(fs, (), (), table={0: {0: fs.one}})


def leg_permute(fs: FieldSpec, dims: Sequence[int], perm: Sequence[int]) -> StructureMap:
    """Output leg k carries input leg ``perm[k]``."""
    dims = tuple(dims)
    perm = tuple(perm)
    if sorted(perm) != list(range(len(dims))):
        raise InvalidPermutation(f"{perm} is not a permutation of {len(dims)} legs")
    out_dims = tuple(dims[p] for p in perm)
    one = fs.one

    def rule(index: int) -> Column:
        digits = split_index(index, dims)
        return {join_index([digits[p] for p in perm], out_dims): one}

    return StructureMap(fs, dims, out_dims, rule=rule)


def flip(fs: FieldSpec, left: int, right: int) -> StructureMap:
    """The twist V (x) W -> W (x) V."""
    return leg_permute(fs, (left, right), (1, 0))


def matrix_from_columns(fs: FieldSpec, columns: Mapping[int, Mapping[int, object]], shape: Tuple[int, int]) -> DomainMatrix:
    dok = {(row, col): value for col, column in columns.items() for row, value in column.items() if value}
    return DomainMatrix.from_dok(dok, shape, fs.domain)


def solve_linear(matrix: DomainMatrix, rhs: SparseVec) -> Optional[SparseVec]:
    """One exact solution of ``matrix @ x = rhs`` or None when inconsistent.

    Free variables are set to zero; pivots are the first nonzero entries in
    column order, so the answer is deterministic.
    """
    rows, cols = matrix.shape
    if rhs.dim != rows:
        raise DimensionMismatch(f"right-hand side of dimension {rhs.dim} for {rows} equations")
    domain = matrix.domain
    coefficients = dict(matrix.to_dok())
    augmented = dict(coefficients)
    for row, value in rhs.entries.items():
        augmented[(row, cols)] = value
    reduced, pivots = DomainMatrix.from_dok(augmented, (rows, cols + 1), domain).rref()
    if cols in pivots:
        return None
    reduced_dok = reduced.to_dok()
    solution = SparseVec(cols, {col: reduced_dok.get((row, cols), domain.zero) for row, col in enumerate(pivots)})

    image: Column = {}
    for (row, col), value in coefficients.items():
        x = solution[col]
        if x is not None:
            axpy(image, x, {row: value})
    if image != rhs.entries:
        raise KernelError("elimination returned a vector that does not solve the system")
    return solution


def outer(u: Mapping[int, object], v: Mapping[int, object], right_dim: int) -> Column:
    """Coordinates of u (x) v in the flattened tensor space."""
    return {i * right_dim + j: a * b for i, a in u.items() for j, b in v.items()}


def invert_element(alg, u: SparseVec) -> SparseVec:
    """Two-sided inverse of ``u`` in a finite-dimensional unital algebra.

    ``alg`` needs ``dim``, ``field``, ``mult`` (a 2 -> 1 map) and ``unit``.
    """
    dim = alg.dim
    if u.dim != dim:
        raise DimensionMismatch(f"element of dimension {u.dim} in algebra of dimension {dim}")
    left_mult = {j: alg.mult.apply(outer(u.entries, {j: alg.field.one}, dim)) for j in range(dim)}
    matrix = matrix_from_columns(alg.field, left_mult, (dim, dim))
    candidate = solve_linear(matrix, alg.unit)
    if candidate is None:
        raise NotInvertible("element has no right inverse")
    other_side = alg.mult.apply(outer(candidate.entries, u.entries, dim))
    if other_side != alg.unit.entries:
        raise NotInvertible("element has a one-sided inverse only")
    logger.debug("inverted element with %d terms", len(u.entries))
    return candidate
