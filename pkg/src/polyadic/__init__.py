"""Finite polyadic (n-ary) groups: construction from ordinary groups,
structure recovery, covers, free words, presentations, and equations."""

from .caps import Caps, DEFAULT as DEFAULT_CAPS
from .core import (
    AxiomReport,
    DerivedPolyadicGroup,
    PolyadicGroup,
    PolyadicHom,
    TablePolyadicGroup,
    as_derived,
    closed_subsets_bruteforce,
    derive,
    derive_from_constant,
    dornte_check,
    eval_f,
    hosszu_gloskin,
    is_polyadic_hom,
    nary_identity,
    polyadic_from_table,
    polyadic_homs,
    polyadic_maps_bruteforce,
    polyadic_subgroups,
    retract,
    skew_search,
    skew_table,
    tabulate,
    verify_axioms,
)
from .cover import (
    GroupPresentation,
    PolyadicPresentation,
    PostCover,
    build_post_cover,
    coset_enumerate,
    extend_hom_to_cover,
    positive_form,
    presentation_to_group,
)
from .errors import (
    ArityMismatch,
    CapExceeded,
    ConditionOneFails,
    ConditionTwoFails,
    EmptyGeneratorSet,
    GroupValidationError,
    HeightViolation,
    Inconsistent,
    LengthViolation,
    NoIdentity,
    NoInverse,
    NoSolution,
    NotAssociative,
    NotLatinSquare,
    NotPolyadicHom,
    ParseError,
    PolyadicError,
    PropertyFailure,
    ReconstructionMismatch,
    SizeCapExceeded,
    UnboundVariable,
)
from .geometry import (
    AlgebraicSet,
    CoordinateGroup,
    EquationSystem,
    TermFunctions,
    Theorem63Report,
    closure,
    coordinate_group,
    is_irreducible,
    minimal_subsystem,
    radical_member,
    solve,
    structural_check,
    theorem63_check,
)
from .groups import (
    FiniteGroup,
    GroupAutomorphism,
    Hom,
    TableGroup,
    are_isomorphic,
    automorphism,
    automorphism_from_map,
    cyclic_group,
    direct_power,
    direct_product,
    enumerate_homs,
    hom_from_generator_images,
    identity_automorphism,
    inner_automorphism,
    subgroup_closure,
    subgroups,
    symmetric_group,
    twisted_group,
    validate_group,
)
from .terms import (
    Apply,
    Constant,
    Equation,
    Skew,
    Variable,
    eval_equation,
    eval_term,
    group_to_polyadic,
    group_to_polyadic_equation,
    normalize_term,
    parse_equation,
    parse_group_equation,
    parse_group_term,
    parse_term,
    polyadic_to_group,
    term_to_string,
    terms_equal,
)
from .words import (
    FreeWord,
    MpWord,
    PolyadicFreeWord,
    cancellation_piece,
    delete_piece,
    f_free,
    generator,
    insert_piece,
    mp_embed,
    mp_equal,
    mp_f,
    parse_mp_word,
    parse_word,
    reduce_word,
    skew_free,
)

__version__ = "0.1.0"
