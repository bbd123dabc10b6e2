"""Semantics of normal logic programs: fixpoint operators, stable and
well-founded models, weak stratification and level-mapping certificates."""

from .errors import CapExceededError, DomainMismatchError, InternalError, NotStableError, NotTotalError
from .interp import (
    InconsistentInterpretation, PartialInterpretation, TruthValue, body_value, interp_from_json,
    interp_to_json, is_model, knowledge_leq, literal_value, totalize,
)
from .levelmaps import (
    OMEGA, CertReport, Condition, Level, LevelMapping, OracleResult, Violation, canonical_levels,
    certified_models, certify, find_certifying_levels, greatest_certified_model,
)
from .operators import (
    NotDefiniteError, SemanticsTrace, fp_op, greatest_unfounded, least_model, lfp, phi, tp,
    tp_plus, wp,
)
from .stable import AfpResult, afp, enumerate_stable, gl, gl_reduct
from .strata import (
    DependencyInfo, WeaklyPerfectResult, WPRound, bottom_layer, bottom_stratum, dependency,
    local_stratification, weakly_perfect, wp_reduct,
)
from .syntax import (
    Atom, Clause, Compound, Const, GroundingError, GroundProgram, Literal, ParseError, Program, Var,
    ground, herbrand_base, parse_atom, parse_program, render,
)
from .corpus import generate_random_program

__version__ = "0.1.0"
