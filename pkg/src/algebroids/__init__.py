"""Exact symbolic verification for Lie, left-symmetric, Jacobi and Jacobi left-symmetric algebroids.

Scalars are exponential polynomials in the base coordinates and the line
variable ``t``, handled with exact rational arithmetic. Every check returns a
:class:`DefectReport` listing the nonzero components of its defect tensor.
"""

from .defects import DefectReport, StructureError
from .jlsa import JacobiLSA, build_dual_jlsa, jkv_bracket
from .lie import AnchoredBundle, Connection, LieAlgebroid, check_lie_axioms, schouten_bracket, tangent_algebroid
from .line import Variant, extend_lie, extend_lsa, kv_ize, poissonize
from .linalg import SingularMatrixError
from .literal import LiteralSyntaxError, parse_scalar
from .lsa import Cochain, LeftSymmetricAlgebroid, SymmetricBivector, build_dual_lsa, check_lsa_axioms, kv_bracket
from .manifold import AffinePatch, JKVPair, MetricTensor, jkv_defects, pack_H
from .poisson import JacobiAlgebroid, JacobiPair, build_dual_jacobi, build_dual_lie, jacobi_defect, poisson_defect
from .scalar import LINE_VAR, Scalar
from .structfile import StructureFile, StructureFileError, emit, parse, parse_text
from .suite import IDENTITY_NAMES, SuiteConfig, run_identity, run_suite
from .tensors import Cosection, Multisection, Section

__version__ = "0.1.0"

__all__ = [
    "AffinePatch",
    "AnchoredBundle",
    "Cochain",
    "Connection",
    "Cosection",
    "DefectReport",
    "IDENTITY_NAMES",
    "JKVPair",
    "JacobiAlgebroid",
    "JacobiLSA",
    "JacobiPair",
    "LINE_VAR",
    "LeftSymmetricAlgebroid",
    "LieAlgebroid",
    "LiteralSyntaxError",
    "MetricTensor",
    "Multisection",
    "Scalar",
    "Section",
    "SingularMatrixError",
    "StructureError",
    "StructureFile",
    "StructureFileError",
    "SuiteConfig",
    "SymmetricBivector",
    "Variant",
    "build_dual_jacobi",
    "build_dual_jlsa",
    "build_dual_lie",
    "build_dual_lsa",
    "check_lie_axioms",
    "check_lsa_axioms",
    "emit",
    "extend_lie",
    "extend_lsa",
    "jacobi_defect",
    "jkv_bracket",
    "jkv_defects",
    "kv_bracket",
    "kv_ize",
    "pack_H",
    "parse",
    "parse_scalar",
    "parse_text",
    "poisson_defect",
    "poissonize",
    "run_identity",
    "run_suite",
    "schouten_bracket",
    "tangent_algebroid",
]
