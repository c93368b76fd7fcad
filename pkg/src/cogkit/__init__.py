"""Executable complexes of groups over small categories without loops."""

from .complexes import (
    CogMorphism,
    ComplexOfGroups,
    MorphismToGroup,
    coboundary,
    compose_to_group,
    identity_cog_morphism,
    validate_cog,
    validate_cog_morphism,
    validate_morphism_to_group,
)
from .develop import (
    Development,
    LocalDevelopment,
    build_development,
    build_local_dev_morphism,
    build_local_development,
    check_action,
    development_size,
)
from .groups import (
    CosetSpace,
    FiniteGroup,
    GroupHom,
    abelian_invariants,
    ad,
    compose_homs,
    cosets,
    cyclic_group,
    dihedral_group,
    from_cayley_table,
    from_permutation_generators,
    hom_image,
    is_injective,
    make_hom,
    quaternion_group,
    subgroup_group,
    symmetric_group,
)
from .immersions import (
    ImmersionReport,
    check_coset_condition,
    check_developability_candidate,
    check_immersion,
)
from .local import LocalCog, build_local_cog, build_sigma, build_theta
from .presentations import (
    GroupPresentation,
    PresentationHom,
    abelianization,
    export,
    induced_hom,
    induced_hom_to_group,
    pi1_presentation,
    simplify,
)
from .scwols import (
    Morphism,
    Scwol,
    ScwolMorphism,
    StarScwol,
    chains,
    geometric_realization,
    lower_link,
    maximal_tree,
    scwol_from_poset,
    scwol_from_simplicial_complex,
    scwol_isomorphic,
    star_projection,
    star_scwol,
    upper_link,
    validate_scwol,
    validate_scwol_morphism,
)

__version__ = "0.1.0"
