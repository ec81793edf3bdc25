"""Exact rational toolkit for Chvatal-Gomory closures and reverse rank.

Everything is computed over Fractions end to end: polyhedra carry
canonical double descriptions, lattice searches are exact, and every
returned certificate can be re-checked independently.
"""

from .closure import (
    CGCut,
    CutSet,
    cch_lower_bound,
    cg_rank,
    closure_cuts,
    closure_oracle,
    elementary_closure,
    integer_hull,
)
from .config import DEFAULT_RANK_CAP, RcgrCaps, SearchLimits
from .errors import (
    CapExceeded,
    DimensionMismatch,
    EmptyPolyhedron,
    InternalInvariantError,
    InvalidWitness,
    IrrationalData,
    NotIntegral,
    ParseError,
    PointNotInQ,
    PolyrankError,
    RayMissesHull,
    SearchCapExceeded,
    Unbounded,
)
from .docio import emit_document, load, parse_document
from .families import (
    check_relaxation,
    gen_01_segment,
    gen_pk_qk,
    gen_qalpha,
    gen_qt,
    gen_unit_simplex,
)
from .lattice import (
    LatticePointReport,
    hilbert_generating_set,
    integer_feasible,
    integer_points,
    is_lattice_free,
    is_relatively_lattice_free,
    line_free,
    relint_integer_point,
    relint_integer_points,
)
from .polyhedron import Polyhedron
from .reverse import (
    CapExceededVerdict,
    Covered,
    Escape,
    Finite,
    InfState,
    Infinite,
    RcgrVerdict,
    blow_up,
    covers,
    decide_rcgr,
    fin_check,
    inf_step,
    is_integral,
    residual_region,
    unimodular_equivalent,
)

__version__ = "0.1.0"

__all__ = [
    "CGCut",
    "CutSet",
    "CapExceeded",
    "CapExceededVerdict",
    "Covered",
    "DEFAULT_RANK_CAP",
    "DimensionMismatch",
    "EmptyPolyhedron",
    "Escape",
    "Finite",
    "InfState",
    "Infinite",
    "InternalInvariantError",
    "InvalidWitness",
    "IrrationalData",
    "LatticePointReport",
    "NotIntegral",
    "ParseError",
    "PointNotInQ",
    "Polyhedron",
    "PolyrankError",
    "RayMissesHull",
    "RcgrCaps",
    "RcgrVerdict",
    "SearchCapExceeded",
    "SearchLimits",
    "Unbounded",
    "blow_up",
    "cch_lower_bound",
    "cg_rank",
    "check_relaxation",
    "closure_cuts",
    "closure_oracle",
    "covers",
    "decide_rcgr",
    "elementary_closure",
    "emit_document",
    "fin_check",
    "gen_01_segment",
    "gen_pk_qk",
    "gen_qalpha",
    "gen_qt",
    "gen_unit_simplex",
    "hilbert_generating_set",
    "inf_step",
    "integer_feasible",
    "integer_hull",
    "integer_points",
    "is_integral",
    "is_lattice_free",
    "is_relatively_lattice_free",
    "line_free",
    "load",
    "parse_document",
    "relint_integer_point",
    "relint_integer_points",
    "residual_region",
    "unimodular_equivalent",
]
