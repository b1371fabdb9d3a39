"""Exact q-Casimir and quantum cut-and-join operators for Hecke symmetries."""

__version__ = "0.1.0"

from .qscalar import LaurentPoly, QContext, parse_rational, parse_scalar, q_int
from .rmatrix import (HeckeSymmetry, TraceData, build_multiparameter, build_standard,
                      conjugate, load_rmatrix, trace_data, validate)
from .tensor import TensorOp, copy_over, copy_under, jm_family, lift, rtrace
from .young import (Partition, StandardTableau, antisymmetrizer, enumerate_tableaux,
                    primitive_idempotents, tableau_projector)
from .casimir import (TRL, CentralExpr, act_central, cayley_hamilton_check, char_closed_forms,
                      character, character_table, conjecture10_check, platform_action, rep_L)
from .words import WordModel
from .cutjoin import check_identity, leibniz_action, normal_order, wdelta_spectrum

__all__ = [
    "__version__",
    "LaurentPoly", "QContext", "parse_rational", "parse_scalar", "q_int",
    "HeckeSymmetry", "TraceData", "build_multiparameter", "build_standard", "conjugate",
    "load_rmatrix", "trace_data", "validate",
    "TensorOp", "copy_over", "copy_under", "jm_family", "lift", "rtrace",
    "Partition", "StandardTableau", "antisymmetrizer", "enumerate_tableaux",
    "primitive_idempotents", "tableau_projector",
    "TRL", "CentralExpr", "act_central", "cayley_hamilton_check", "char_closed_forms",
    "character", "character_table", "conjecture10_check", "platform_action", "rep_L",
    "WordModel", "check_identity", "leibniz_action", "normal_order", "wdelta_spectrum",
]
