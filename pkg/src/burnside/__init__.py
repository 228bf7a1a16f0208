"""Exact Burnside ring computations for small finite groups."""

from .algebra import (
    BurnsideElement,
    MarksTable,
    NotInvertible,
    identity_element,
    idempotent,
    idempotent_system,
    invert,
    mark,
    marks_vector,
    multiply,
    table_of_marks,
)
from .bisets import (
    Biset,
    apply_biset,
    biset_as_gset,
    compose,
    diagonal_induce,
    diagonal_merge_gsets,
    diagonal_product,
    diagonal_restrict,
    elementary_induction,
    elementary_iso,
    elementary_restriction,
    external_product,
    gamma,
    gset_as_biset,
    identity_biset,
    permute_factors_element,
    permute_factors_gset,
)
from .groups import (
    Group,
    Subgroup,
    SubgroupLattice,
    build_group,
    centralizer_of_element,
    centralizer_of_subgroup,
    cubed,
    diagonal_subgroup,
    direct_product,
    element_classes,
    moebius,
    normalizer,
    squared,
    subgroup_closure,
    subgroup_lattice,
    subgroups_conjugate,
    trivial_subgroup,
)
from .gsets import (
    GSet,
    conjugation_gset,
    decompose,
    disjoint_union,
    fixed_points,
    induce,
    induce_along,
    iso_equal,
    orbits,
    product,
    regular,
    restrict,
    stabilizer,
    transitive,
)
from .rings import (
    QQ,
    ZZ,
    Matrix,
    ModularRing,
    NoSolution,
    SmithForm,
    Solution,
    Zmod,
    is_unit,
    ring_from_spec,
    smith_normal_form,
    solve_linear,
)
from .separability import (
    CommutantResult,
    DerivationSpace,
    FunctorVerdict,
    SeparabilityVerdict,
    TensorElement,
    casimir_from_idempotents,
    commutant_basis,
    derivation_space,
    functor_separability,
    ring_separability,
    tensor_act_left,
    tensor_act_right,
    tensor_mu,
    verify_casimir,
)

__version__ = "0.1.0"
