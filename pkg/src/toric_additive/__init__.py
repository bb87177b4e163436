"""Demazure roots and additive group actions on complete toric surfaces.

Exact-arithmetic tools to enumerate the Demazure roots of a complete rank 2
fan, decide whether the surface admits an action of the additive group
G_a^2 with a dense open orbit, classify those actions up to isomorphism
(one class if the fan is wide, two otherwise) and write each class out as
explicit polynomial formulas in Cox coordinates, together with independent
verification oracles for every step.
"""

from .additive import (
    AdmissibleBasis,
    Classification,
    CompleteCollection,
    all_admissible_bases,
    classify,
    classify_rays,
    complete_collections,
    decide_existence,
    find_admissible_basis,
    is_wide,
)
from .catalog import example_fan, example_names
from .coxring import (
    ActionMap,
    ClGrading,
    Derivation,
    LndFamily,
    Poly,
    PolyRing,
    TorusChar,
    action_ring,
    build_lnd_family,
    character_of,
    cl_grading,
    commutator,
    compose,
    degree_of,
    derivation_str,
    emit_actions,
    exp_action,
    exp_ad,
    lnd_from_root,
    normal_form,
    parse_poly,
    poly_str,
    torus_conjugate,
)
from .errors import (
    DuplicateRay,
    FanValidationError,
    Inconclusive,
    InternalInconsistency,
    NotApplicable,
    NotComplete,
    NotCommuting,
    NotHomogeneous,
    NotLocallyNilpotent,
    NotPrimitive,
    NotRegular,
    TooFewRays,
    ToricError,
    UnsupportedDimension,
)
from .fan import Fan2, adjacent, build_fan
from .render import fan_svg
from .roots import (
    DemazureRoot,
    RootSystem,
    all_roots,
    enumerate_roots_at,
    positive_system,
    roots_by_ray,
    select_regular_vector,
    split_semisimple,
)
from .sweep import SweepReport, enumerate_complete_fans, primitive_pool, run_sweep
from .verify import (
    ActionClass,
    AnnihilatorReport,
    annihilator_profile,
    brute_force_roots,
    check_group_law,
    check_open_orbit,
    classify_profile,
    distinguish_actions,
    verification_report,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
