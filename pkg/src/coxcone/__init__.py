"""Root systems, imaginary cones and Davis complexes for finitely
generated Coxeter groups, with a verified equivariant embedding of the
complex into the normalized cone."""

from .checks import CheckResult, run_all_checks
from .cone import (
    ConePoint,
    ConeSample,
    average_over_parabolic,
    check_displacement,
    displacement_violation,
    find_interior_basepoint,
    hyperplane_meets_chamber,
    in_fundamental_chamber,
    isotropic_boundary_structure,
    make_cone_point,
    positively_independent,
    sample_imaginary_cone,
    sample_wall_dominated,
    stabilizer_generators,
    verify_stabilizer,
)
from .datum import (
    INFINITE,
    CoxeterDatum,
    CoxeterMatrix,
    GramForm,
    datum_from_document,
    datum_to_document,
    make_datum,
    parse_datum,
    serialize_datum,
)
from .davis import (
    ChamberPoint,
    DavisBall,
    DavisCell,
    FundamentalChamber,
    ball_cells,
    build_davis_ball,
    build_fundamental_chamber,
    canonicalize_cell,
    cells_equal,
    mirror,
    point_stabilizer,
    uniform_point,
)
from .embedding import (
    EmbeddedPoint,
    EmbeddingReport,
    VertexImageTable,
    build_vertex_image_table,
    chain_simplex_check,
    embed_cell,
    embed_chamber_point,
    verify_embedding,
    vertex_image,
)
from .errors import CoxconeError, FiniteGroup, NotApplicable
from .normalize import (
    LimitRootEstimate,
    approximate_limit_roots,
    dot_act,
    isotropy_defect,
    normalize,
    normalized_roots_by_level,
    phi,
)
from .parabolic import (
    ParabolicClass,
    ParabolicKind,
    SphericalPoset,
    classify_parabolic,
    enumerate_finite_parabolic_elements,
    enumerate_spherical_poset,
    is_connected,
)
from .reflections import (
    GroupElement,
    RootRecord,
    act,
    dihedral_orbit_closed_form,
    element_from_word,
    enumerate_ball,
    generate_roots,
    identity_element,
    inverse_element,
    length_and_descents,
    multiply,
    parabolic_closure,
    reflect,
    reflection_matrix,
    roots_by_level,
    simple_reflection_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "run_all_checks",
    "ConePoint",
    "ConeSample",
    "average_over_parabolic",
    "check_displacement",
    "displacement_violation",
    "find_interior_basepoint",
    "hyperplane_meets_chamber",
    "in_fundamental_chamber",
    "isotropic_boundary_structure",
    "make_cone_point",
    "positively_independent",
    "sample_imaginary_cone",
    "sample_wall_dominated",
    "stabilizer_generators",
    "verify_stabilizer",
    "INFINITE",
    "CoxeterDatum",
    "CoxeterMatrix",
    "GramForm",
    "datum_from_document",
    "datum_to_document",
    "make_datum",
    "parse_datum",
    "serialize_datum",
    "ChamberPoint",
    "DavisBall",
    "DavisCell",
    "FundamentalChamber",
    "ball_cells",
    "build_davis_ball",
    "build_fundamental_chamber",
    "canonicalize_cell",
    "cells_equal",
    "mirror",
    "point_stabilizer",
    "uniform_point",
    "EmbeddedPoint",
    "EmbeddingReport",
    "VertexImageTable",
    "build_vertex_image_table",
    "chain_simplex_check",
    "embed_cell",
    "embed_chamber_point",
    "verify_embedding",
    "vertex_image",
    "CoxconeError",
    "FiniteGroup",
    "NotApplicable",
    "LimitRootEstimate",
    "approximate_limit_roots",
    "dot_act",
    "isotropy_defect",
    "normalize",
    "normalized_roots_by_level",
    "phi",
    "ParabolicClass",
    "ParabolicKind",
    "SphericalPoset",
    "classify_parabolic",
    "enumerate_finite_parabolic_elements",
    "enumerate_spherical_poset",
    "is_connected",
    "GroupElement",
    "RootRecord",
    "act",
    "dihedral_orbit_closed_form",
    "element_from_word",
    "enumerate_ball",
    "generate_roots",
    "identity_element",
    "inverse_element",
    "length_and_descents",
    "multiply",
    "parabolic_closure",
    "reflect",
    "reflection_matrix",
    "roots_by_level",
    "simple_reflection_matrix",
    "__version__",
]
