"""Exact verification and fixed-point certification on finite quasi-pseudometric type spaces."""

from ._rational import INFINITE, format_rational, parse_rational
from .admissibility import (
    AdmissiblePair,
    SelfMap,
    check_c1_c2,
    check_c3,
    check_contraction,
    find_seed_points,
)
from .certifier import PROFILES, Certificate, Problem, certify, explain
from .picard import (
    Orbit,
    check_sequential_continuity,
    iterate,
    orbit_from_entries,
    verify_chain_bound,
    verify_decay,
)
from .sequences import SeqPrefix, check_convergence, classify_cauchy, find_limits
from .space import (
    QPSpace,
    SpaceError,
    axiom_report,
    check_d1,
    check_d2,
    check_hausdorff_finite,
    check_metric_type,
    check_t0,
    conjugate,
    minimal_k,
    shortest_walk,
    symmetrize,
)

__version__ = "0.1.0"
