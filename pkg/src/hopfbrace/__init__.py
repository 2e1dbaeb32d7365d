from .utils import VERSION, Config
from .errors import CheckFailed, HopfFileError, KernelError
from .exact_linalg import FieldSpec, SparseVec, StructureMap, compose, identity, leg_permute, tensor
from .hopf_core import (
    AlgebraData,
    BialgebraData,
    CheckReport,
    CoalgebraData,
    FiniteGroup,
    HopfData,
    check_hopf,
    dual_hopf,
    group_algebra,
    solve_antipode,
    sweedler_h4,
)
from .brace import BraceData, CoactionData, assemble_brace, check_brace, cop_brace, trivial_brace
from .cocycle import CocycleData, brace_to_cocycle, check_cocycle, cocycle_to_brace
from .matched import MatchedPairData, WeakRMatrix, check_matched_pair, matched_from_rmatrix, matched_to_brace
from .bicrossed import BicrossedData, bicrossed_coproduct, drinfeld_double_dual, h4_z2_brace, smash_coproduct
from .lazy_hopf import LazyHopfData, laurent_brace
from .hopffile import parse_hopf_file, read_hopf_file, serialize
from .cli import main, run_command

__version__ = VERSION
__all__ = [
    "VERSION",
    "Config",
    "CheckFailed",
    "HopfFileError",
    "KernelError",
    "FieldSpec",
    "SparseVec",
    "StructureMap",
    "compose",
    "identity",
    "leg_permute",
    "tensor",
    "AlgebraData",
    "BialgebraData",
    "CheckReport",
    "CoalgebraData",
    "FiniteGroup",
    "HopfData",
    "check_hopf",
    "dual_hopf",
    "group_algebra",
    "solve_antipode",
    "sweedler_h4",
    "BraceData",
    "CoactionData",
    "assemble_brace",
    "check_brace",
    "cop_brace",
    "trivial_brace",
    "CocycleData",
    "brace_to_cocycle",
    "check_cocycle",
    "cocycle_to_brace",
    "MatchedPairData",
    "WeakRMatrix",
    "check_matched_pair",
    "matched_from_rmatrix",
    "matched_to_brace",
    "BicrossedData",
    "bicrossed_coproduct",
    "drinfeld_double_dual",
    "h4_z2_brace",
    "smash_coproduct",
    "LazyHopfData",
    "laurent_brace",
    "parse_hopf_file",
    "read_hopf_file",
    "serialize",
    "main",
    "run_command",
]
