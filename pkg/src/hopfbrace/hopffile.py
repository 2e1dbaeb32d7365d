"""Reading and writing `.hopf` structure-constant files.

A file describes one Hopf algebra, a brace (a second ``comul'`` table), a
matched pair, a weak R-matrix candidate or a Long copairing candidate. The
grammar is documented in docs/hopf_format.md. Every structure constant
must be written out; a missing product or coproduct is an error, never zero.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .brace import BraceData, assemble_brace
from .errors import FieldError, HopfFileError, KernelError, NotAHopfAlgebra
from .exact_linalg import Column, FieldSpec, SparseVec, StructureMap, join_index
from .hopf_core import (
    AlgebraData,
    BialgebraData,
    CoalgebraData,
    HopfData,
    LinearStructure,
    format_tensor,
    solve_antipode,
)
from .matched import MatchedPairData
from .zoo import CopairingObject, RMatrixObject, get

logger = logging.getLogger(__name__)

HopfFileObject = Union[HopfData, BraceData, MatchedPairData, RMatrixObject, CopairingObject]

TENSOR = "(*)"
PRIME = "'"
ZOO_PREFIX = "zoo:"

_ALGEBRA_KEYWORDS = {"name", "basis", "unit", "mult", "comul", "counit", "antipode", "comul'", "counit'", "antipode'"}


@dataclass
class _Line:
    number: int
    keyword: str
    args: List[str]
    expr: Optional[str]


def _tokenize(text: str) -> List[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        head, eq, expr = content.partition("=")
        words = head.split()
        if not words:
            raise HopfFileError(number, "missing keyword before '='")
        lines.append(_Line(number, words[0], words[1:], expr.strip() if eq else None))
    return lines


def _scalar(fs: FieldSpec, text: str, line: int):
    try:
        return fs.parse_scalar(text)
    except FieldError as exc:
        raise HopfFileError(line, str(exc)) from None


def parse_expression(fs: FieldSpec, text: str, legs: Sequence[Sequence[str]], line: int) -> Column:
    """Reads ``[sign][scalar*]label(*)label ...`` terms into a sparse column."""
    text = text.strip()
    if not text:
        raise HopfFileError(line, "empty expression")
    lookups = [{label: i for i, label in enumerate(leg)} for leg in legs]
    dims = [len(leg) for leg in legs]
    column: Column = {}
    pieces = re.split(r"([+-])", text)
    sign = 1
    for k, piece in enumerate(pieces):
        if k % 2 == 1:
            sign = -1 if piece == "-" else 1
            continue
        body = piece.strip()
        if not body:
            if k == 0:
                continue
            raise HopfFileError(line, f"missing term in '{text}'")
        if not legs:
            value = _scalar(fs, body, line)
            key = 0
        else:
            body = body.replace(TENSOR, "\x00")
            scalar_text, star, labels_text = body.partition("*")
            if not star:
                scalar_text, labels_text = "1", body
            if body == "0":
                sign = 1
                continue
            value = _scalar(fs, scalar_text.strip(), line)
            labels = [label.strip() for label in labels_text.split("\x00")]
            if len(labels) != len(legs):
                raise HopfFileError(line, f"'{piece.strip()}' has {len(labels)} tensor legs, expected {len(legs)}")
            digits = []
            for label, lookup in zip(labels, lookups):
                if label not in lookup:
                    raise HopfFileError(line, f"unknown basis label '{label}'")
                digits.append(lookup[label])
            key = join_index(digits, dims)
        value = value if sign > 0 else -value
        column[key] = column.get(key, fs.zero) + value
        sign = 1
    return {key: value for key, value in column.items() if value}


@dataclass
class _AlgebraSection:
    """The algebra lines of one file or one ``begin`` block."""

    fs: FieldSpec
    start: int
    name: str = ""
    labels: Optional[List[str]] = None
    unit: Optional[Column] = None
    end: int = 0
    tables: Dict[str, Dict[Tuple[str, ...], Tuple[int, Column]]] = field(default_factory=dict)

    def feed(self, line: _Line):
        keyword = line.keyword
        self.end = line.number
        if keyword == "name":
            self.name = " ".join(line.args)
            return
        if keyword == "basis":
            if self.labels is not None:
                raise HopfFileError(line.number, "basis declared twice")
            if not line.args or len(set(line.args)) != len(line.args):
                raise HopfFileError(line.number, "basis labels must be non-empty and distinct")
            self.labels = list(line.args)
            return
        if self.labels is None:
            raise HopfFileError(line.number, f"'{keyword}' before the basis declaration")
        if line.expr is None:
            raise HopfFileError(line.number, f"'{keyword}' needs '= <expression>'")
        if keyword == "unit":
            if self.unit is not None:
                raise HopfFileError(line.number, "unit declared twice")
            self.unit = parse_expression(self.fs, line.expr, [self.labels], line.number)
            return
        arity_in, arity_out = _SIGNATURES[keyword.rstrip(PRIME)]
        if len(line.args) != arity_in:
            raise HopfFileError(line.number, f"'{keyword}' takes {arity_in} basis label(s)")
        for label in line.args:
            if label not in self.labels:
                raise HopfFileError(line.number, f"unknown basis label '{label}'")
        table = self.tables.setdefault(keyword, {})
        key = tuple(line.args)
        if key in table:
            raise HopfFileError(line.number, f"duplicate entry {keyword} {' '.join(key)}")
        table[key] = (line.number, parse_expression(self.fs, line.expr, [self.labels] * arity_out, line.number))

    def _map(self, keyword: str, required: bool = True) -> Optional[StructureMap]:
        arity_in, arity_out = _SIGNATURES[keyword.rstrip(PRIME)]
        table = self.tables.get(keyword, {})
        if not table and not required:
            return None
        d = len(self.labels)
        keys = _keys(self.labels, arity_in)
        missing = [k for k in keys if k not in table]
        if missing:
            shown = ", ".join(" ".join(k) for k in missing[:8])
            more = "" if len(missing) <= 8 else f" and {len(missing) - 8} more"
            raise HopfFileError(self.end, f"missing {keyword} entries: {shown}{more}")
        index = {label: i for i, label in enumerate(self.labels)}
        columns = {join_index([index[l] for l in key], (d,) * arity_in): column for key, (_, column) in table.items()}
        return StructureMap(self.fs, (d,) * arity_in, (d,) * arity_out, table=columns)

    def build(self) -> Union[HopfData, BraceData]:
        if self.labels is None:
            raise HopfFileError(self.end, "no basis declared")
        if self.unit is None:
            raise HopfFileError(self.end, "no unit declared")
        d = len(self.labels)
        algebra = AlgebraData(self.fs, self.labels, self._map("mult"), SparseVec(d, self.unit))
        first = self._hopf(algebra, "")
        if "comul'" not in self.tables:
            for keyword in ("counit'", "antipode'"):
                if keyword in self.tables:
                    raise HopfFileError(self.tables[keyword][next(iter(self.tables[keyword]))][0],
                                        f"'{keyword}' without a second comultiplication")
            return first
        second = self._hopf(algebra, PRIME, first.counit)
        logger.debug("read brace candidate %s of dimension %d", self.name, d)
        return assemble_brace(first, second, self.name, verify=False)

    def _hopf(self, algebra: AlgebraData, prime: str, counit: Optional[StructureMap] = None) -> HopfData:
        comult = self._map(f"comul{prime}")
        own_counit = self._map(f"counit{prime}", required=counit is None)
        if own_counit is not None:
            counit = own_counit
        coalgebra = CoalgebraData(comult, counit)
        antipode = self._map(f"antipode{prime}", required=False)
        if antipode is None:
            antipode = solve_antipode(BialgebraData(algebra, coalgebra, self.name))
            if antipode is None:
                raise NotAHopfAlgebra(f"{self.name or 'the file'}: comul{prime} admits no antipode")
        return HopfData(algebra, coalgebra, antipode, self.name)


_SIGNATURES = {"mult": (2, 1), "comul": (1, 2), "counit": (1, 0), "antipode": (1, 1)}


def _keys(labels: Sequence[str], arity: int) -> List[Tuple[str, ...]]:
    keys: List[Tuple[str, ...]] = [()]
    for _ in range(arity):
        keys = [k + (label,) for k in keys for label in labels]
    return keys


def _coaction(fs: FieldSpec, lines: List[_Line], source: LinearStructure, out: Sequence[LinearStructure], keyword: str, end: int) -> StructureMap:
    legs = [h.labels for h in out]
    columns: Dict[int, Column] = {}
    for line in lines:
        if len(line.args) != 1 or line.args[0] not in source.labels or line.expr is None:
            raise HopfFileError(line.number, f"expected '{keyword} <label of {source.name or 'source'}> = <expression>'")
        index = source.index(line.args[0])
        if index in columns:
            raise HopfFileError(line.number, f"duplicate entry {keyword} {line.args[0]}")
        columns[index] = parse_expression(fs, line.expr, legs, line.number)
    missing = [label for i, label in enumerate(source.labels) if i not in columns]
    if missing:
        raise HopfFileError(end, f"missing {keyword} entries: {', '.join(missing)}")
    return StructureMap(fs, (source.dim,), [h.dim for h in out], table=columns)


def _resolve(ref: str, fs: FieldSpec, base_dir: Optional[Path], line: int) -> HopfData:
    if ref.startswith(ZOO_PREFIX):
        try:
            obj = get(ref[len(ZOO_PREFIX):], fs)
        except KernelError as exc:
            raise HopfFileError(line, str(exc)) from None
    else:
        path = (base_dir or Path.cwd()) / ref
        obj = read_hopf_file(path, fs)
    if not isinstance(obj, HopfData):
        raise HopfFileError(line, f"'{ref}' is not a Hopf algebra")
    return obj


def parse_hopf_file(text: str, fs: Optional[FieldSpec] = None, base_dir: Optional[Path] = None) -> HopfFileObject:
    lines = _tokenize(text)
    last = len(text.splitlines())
    fs = fs or FieldSpec.rationals()
    top = _AlgebraSection(fs, 1)
    blocks: Dict[str, _AlgebraSection] = {}
    refs: Dict[str, HopfData] = {}
    extra: Dict[str, List[_Line]] = {"rho": [], "phi": [], "rmatrix": [], "copairing": []}
    order = "A,H"
    current: Optional[_AlgebraSection] = None
    seen_structure = False
    for line in lines:
        keyword = line.keyword
        if current is not None:
            if keyword == "end":
                current = None
            elif keyword in _ALGEBRA_KEYWORDS:
                current.feed(line)
            else:
                raise HopfFileError(line.number, f"'{keyword}' is not allowed inside a begin block")
            continue
        if keyword == "field":
            if seen_structure or len(line.args) != 1:
                raise HopfFileError(line.number, "'field <Q|Fp:p>' must come first")
            try:
                fs = FieldSpec.parse(line.args[0])
            except FieldError as exc:
                raise HopfFileError(line.number, str(exc)) from None
            top = _AlgebraSection(fs, line.number, name=top.name)
            continue
        seen_structure = seen_structure or keyword != "name"
        if keyword == "begin":
            side = line.args[0] if len(line.args) == 1 else ""
            if side not in ("left", "right") or side in blocks or side in refs:
                raise HopfFileError(line.number, "expected 'begin left' or 'begin right', once each")
            current = blocks[side] = _AlgebraSection(fs, line.number)
        elif keyword in ("left", "right"):
            if len(line.args) != 1 or keyword in blocks or keyword in refs:
                raise HopfFileError(line.number, f"expected '{keyword} <zoo:name|path>', once")
            refs[keyword] = _resolve(line.args[0], fs, base_dir, line.number)
        elif keyword == "order":
            if line.args not in (["A,H"], ["H,A"]):
                raise HopfFileError(line.number, "expected 'order A,H' or 'order H,A'")
            order = line.args[0]
        elif keyword in extra:
            extra[keyword].append(line)
        elif keyword in _ALGEBRA_KEYWORDS:
            top.feed(line)
        else:
            raise HopfFileError(line.number, f"unknown keyword '{keyword}'")
    if current is not None:
        raise HopfFileError(last, "unterminated begin block")
    for side, block in blocks.items():
        built = block.build()
        if not isinstance(built, HopfData):
            raise HopfFileError(block.start, f"the {side} block must define a single Hopf algebra")
        refs[side] = built
    if refs:
        return _pair_object(fs, refs, extra, top, order, last)
    if extra["rho"] or extra["phi"] or extra["rmatrix"]:
        raise HopfFileError(last, "coactions and R-matrices need 'left' and 'right' algebras")
    built = top.build()
    if extra["copairing"]:
        (line,) = _single(extra["copairing"], "copairing")
        if not isinstance(built, HopfData):
            raise HopfFileError(line.number, "a copairing needs a single Hopf algebra")
        r = parse_expression(fs, line.expr or "", built.legs(2), line.number)
        return CopairingObject(built, SparseVec(built.dim ** 2, r), top.name)
    return built


def _single(lines: List[_Line], keyword: str) -> List[_Line]:
    if len(lines) != 1:
        raise HopfFileError(lines[1].number, f"'{keyword}' given twice")
    return lines


def _pair_object(fs, refs, extra, top: _AlgebraSection, order: str, last: int):
    if set(refs) != {"left", "right"}:
        raise HopfFileError(last, "both 'left' and 'right' algebras are needed")
    if top.labels is not None:
        raise HopfFileError(top.start, "a pair file cannot also define a top-level algebra")
    left, right = refs["left"], refs["right"]
    if extra["rmatrix"]:
        (line,) = _single(extra["rmatrix"], "rmatrix")
        r = parse_expression(fs, line.expr or "", [left.labels, right.labels], line.number)
        return RMatrixObject(left, right, SparseVec(left.dim * right.dim, r), top.name)
    A, H = left, right
    rho = _coaction(fs, extra["rho"], A, [H, A], "rho", last)
    phi = _coaction(fs, extra["phi"], H, [H, A], "phi", last)
    pair = MatchedPairData(A, H, rho, phi, source_order=order)
    return pair


def read_hopf_file(path: Union[str, Path], fs: Optional[FieldSpec] = None) -> HopfFileObject:
    path = Path(path)
    logger.debug("reading %s", path)
    return parse_hopf_file(path.read_text(encoding="utf-8"), fs, path.parent)


def _expr(fs: FieldSpec, entries: Column, legs, dims) -> str:
    return format_tensor(fs, entries, legs, dims) if entries else "0"


def _algebra_lines(h: LinearStructure) -> List[str]:
    fs, d, labels = h.field, h.dim, h.labels
    lines = [f"basis {' '.join(labels)}", f"unit = {_expr(fs, h.unit.entries, [labels], (d,))}"]
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            lines.append(f"mult {a} {b} = {_expr(fs, h.mult.column(i * d + j), [labels], (d,))}")
    return lines


def _coalgebra_lines(h: HopfData, prime: str = "", counit: bool = True) -> List[str]:
    fs, d, labels = h.field, h.dim, h.labels
    lines = []
    for i, a in enumerate(labels):
        lines.append(f"comul{prime} {a} = {_expr(fs, h.comult.column(i), [labels] * 2, (d, d))}")
    if counit:
        for i, a in enumerate(labels):
            lines.append(f"counit{prime} {a} = {fs.format(h.counit.column(i).get(0, fs.zero))}")
    for i, a in enumerate(labels):
        lines.append(f"antipode{prime} {a} = {_expr(fs, h.antipode.column(i), [labels], (d,))}")
    return lines


def _hopf_lines(h: HopfData) -> List[str]:
    return _algebra_lines(h) + _coalgebra_lines(h)


def _block(side: str, h: HopfData) -> List[str]:
    body = ([f"name {h.name}"] if h.name else []) + _hopf_lines(h)
    return [f"begin {side}"] + [f"  {line}" for line in body] + ["end"]


def _coaction_lines(keyword: str, m: StructureMap, source: HopfData, out: Sequence[HopfData]) -> List[str]:
    legs = [h.labels for h in out]
    dims = [h.dim for h in out]
    return [f"{keyword} {a} = {_expr(source.field, m.column(i), legs, dims)}" for i, a in enumerate(source.labels)]


def serialize(obj: HopfFileObject) -> str:
    """Writes any object ``parse_hopf_file`` returns; parsing the text gives back equal tables."""
    if isinstance(obj, (HopfData, BraceData)):
        fs = obj.field
    elif isinstance(obj, MatchedPairData):
        fs = obj.A.field
    else:
        fs = obj.H.field
    lines = [f"field {fs}"]
    name = getattr(obj, "name", "")
    if name:
        lines.append(f"name {name}")
    if isinstance(obj, HopfData):
        lines += _hopf_lines(obj)
    elif isinstance(obj, BraceData):
        lines += _hopf_lines(obj.first) + _coalgebra_lines(obj.second, PRIME, counit=False)
    elif isinstance(obj, CopairingObject):
        h = obj.H
        lines += _hopf_lines(h)
        lines.append(f"copairing = {_expr(fs, obj.R.entries, h.legs(2), (h.dim, h.dim))}")
    elif isinstance(obj, MatchedPairData):
        lines += [f"order {obj.source_order}"] + _block("left", obj.A) + _block("right", obj.H)
        lines += _coaction_lines("rho", obj.rho, obj.A, [obj.H, obj.A])
        lines += _coaction_lines("phi", obj.phi, obj.H, [obj.H, obj.A])
    else:
        lines += _block("left", obj.H) + _block("right", obj.A)
        lines.append(f"rmatrix = {_expr(fs, obj.R.entries, [obj.H.labels, obj.A.labels], (obj.H.dim, obj.A.dim))}")
    return "\n".join(lines) + "\n"


def write_hopf_file(obj: HopfFileObject, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(serialize(obj), encoding="utf-8")
    logger.debug("wrote %s", path)
    return path
