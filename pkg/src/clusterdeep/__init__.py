"""Exact engine for cluster varieties built from ice quivers.

The package keeps every computation in exact arithmetic: Laurent
polynomials with integer coefficients for symbolic work and rationals for
point coordinates.  Nothing here floats.
"""

from .errors import (
    ClusterDeepError,
    CoverInvariantError,
    ExplorationExceeded,
    InconsistentPoint,
    NonIndependentZeroSet,
    NotAcyclic,
    NotDivisible,
    NotReducedTree,
    QuiverFormatError,
    RelationUnsatisfiable,
    TermGuardExceeded,
    WitnessError,
    ZeroAtNegativeExponent,
)
from .laurent import LaurentPoly, format_rational, parse_rational, set_term_guard
from .quiver import (
    CanonicalForm,
    IceQuiver,
    KeyPair,
    QuiverClass,
    canonical_form,
    classify,
    gcd_vector,
    is_abundant,
    is_acyclic,
    is_fork,
    is_key,
    is_really_full_rank,
    is_sink_source_form,
    is_tree_mutable,
    path_quiver,
    star_quiver,
    triangle_quiver,
)
from .snf import invariant_factors, smith_normal_form
from .seeds import Seed, check_laurent_phenomenon, initial_seed, mutate_seed, mutate_seed_word
from .dilation import (
    DilationReport,
    GroupElement,
    GroupStructure,
    StabilizerReport,
    dilation_group,
    stabilizer,
)
from .variety import (
    ChartValues,
    ModelPoint,
    TorusVerdict,
    Witness,
    freeze_point,
    lift_with_frozens,
    make_point,
    point_errors,
    propagate,
    sample_stratum_point,
    solve_witness,
    stratum_of,
    torus_membership,
    validate_point,
    verify_witness,
)
from .explore import (
    ExplorationReport,
    GrowthReport,
    explore_quivers,
    explore_seeds,
    forkless_part,
    verify_entry_growth,
)
from .deep import (
    Certificate,
    DeepVerdict,
    MysteriousVerdict,
    Star3Verdict,
    cert_abundant_acyclic,
    cert_fork_bounded,
    cert_gcd_star,
    cert_key,
    fork_bounded_report,
    is_mysterious,
    rank2_classify,
    rank2_companion,
    reduce_tree_form,
    so_may_deep,
    star3_classify,
    star3_companion,
    tree_cover,
    verify_certificate,
)
from .gallery import GalleryEntry, GalleryReport, run_gallery

__version__ = "0.1.0"
