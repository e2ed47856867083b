"""Sandpile torsors on regular matroids.

Exact tooling for oriented regular matroids realized by totally unimodular
matrices: signed circuits and cocircuits, fourientations, circuit-cocircuit
signatures (triangulating and acyclic), the sandpile group and its
canonical action on orientation reversal classes, the basis-orientation
bijection and its torsor, minors, and exhaustive verifiers for the
deletion-contraction consistency of the torsor.
"""

from .chains import (
    BOTH,
    EMPTY,
    MINUS,
    PLUS,
    Chain,
    Fourientation,
    GroundSet,
    Orientation,
    SimpleChain,
    compatible,
)
from .errors import (
    BudgetExceeded,
    Disconnected,
    EmptyMatrix,
    InputFormatError,
    IsColoop,
    IsLoop,
    NotABasis,
    NotCompatibleOrientation,
    NotInSpace,
    NotPlanarEmbedding,
    NotTotallyUnimodular,
    NotTriangulating,
    PreconditionViolated,
    TorsorError,
    WrongSide,
)
from .matroid import RegularMatroid, TUMatrix
from .signatures import (
    CircuitSignature,
    CocircuitSignature,
    SignaturePair,
    basis_fourientation,
    contract_pair,
    contract_sig,
    delete_pair,
    delete_sig,
    enumerate_pairs,
    enumerate_signatures,
    is_acyclic,
    is_triangulating,
)
from .planar import PlaneGraph, parse_plane_graph, planar_signature
from .sandpile import (
    ActionTrace,
    CanonicalAction,
    GroupElement,
    ReversalClasses,
    SandpileGroup,
    classes,
    greedy_representative,
    group,
)
from .bby import (
    BBYInstance,
    ConsistencyReport,
    bby_act,
    bby_inverse,
    bby_map,
    check_generating_pairs,
    single_swap_pairs,
    verify_action_structure,
    verify_consistency,
    verify_duality,
)

__version__ = "0.1.0"

__all__ = [
    "BOTH",
    "EMPTY",
    "MINUS",
    "PLUS",
    "ActionTrace",
    "BBYInstance",
    "BudgetExceeded",
    "CanonicalAction",
    "Chain",
    "CircuitSignature",
    "CocircuitSignature",
    "ConsistencyReport",
    "Disconnected",
    "EmptyMatrix",
    "Fourientation",
    "GroundSet",
    "GroupElement",
    "InputFormatError",
    "IsColoop",
    "IsLoop",
    "NotABasis",
    "NotCompatibleOrientation",
    "NotInSpace",
    "NotPlanarEmbedding",
    "NotTotallyUnimodular",
    "NotTriangulating",
    "Orientation",
    "PlaneGraph",
    "PreconditionViolated",
    "RegularMatroid",
    "ReversalClasses",
    "SandpileGroup",
    "SignaturePair",
    "SimpleChain",
    "TUMatrix",
    "TorsorError",
    "WrongSide",
    "basis_fourientation",
    "bby_act",
    "bby_inverse",
    "bby_map",
    "check_generating_pairs",
    "classes",
    "compatible",
    "contract_pair",
    "contract_sig",
    "delete_pair",
    "delete_sig",
    "enumerate_pairs",
    "enumerate_signatures",
    "greedy_representative",
    "group",
    "is_acyclic",
    "is_triangulating",
    "parse_plane_graph",
    "planar_signature",
    "single_swap_pairs",
    "verify_action_structure",
    "verify_consistency",
    "verify_duality",
]
