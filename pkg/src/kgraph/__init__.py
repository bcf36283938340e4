"""Exact symbolic computation in finite rank-k graphs and their Cuntz-Krieger algebras."""

from .algebra import (
    CKReport,
    Element,
    Generator,
    NormalForm,
    add,
    adjoint,
    equals,
    gauge,
    generator,
    isometry,
    multiply,
    normal_form,
    phi,
    projection,
    scale,
    unit,
    verify_ck,
)
from .aperiodicity import (
    AperiodicityVerdict,
    IsotropyVerdict,
    MasaVerdict,
    PeriodicCertificate,
    aperiodicity_check,
    breaking_path,
    isotropy_interior_check,
    loop_entrance_check,
    masa_verdict,
)
from .bimodules import (
    BimodulePresentation,
    SpectralReport,
    TruncatedBasis,
    a_of,
    bimodule,
    ck_isometries_in,
    closure,
    is_gauge_invariant,
    spectral_check,
    spectrum,
)
from .graphs import Edge, KGraph, Square, ValidationReport, build_kgraph, validate
from .grammar import parse_element
from .graphio import parse_graph, parse_graph_text, print_graph
from .groupoid import (
    Cylinder,
    GroupoidPoint,
    OpenSet,
    compose_points,
    evaluate,
    grade_filter,
    intersect,
    invert_point,
    point,
    point_in,
    refine,
    subset,
    support,
    tail_point,
    unit_point,
)
from .pathspace import (
    Path,
    UPPath,
    canonical_up_path,
    compose,
    concatenate,
    factorize,
    make_path,
    paths,
    paths_by_source,
    segment,
    shift,
    up_path_equal,
    vertex_path,
)
from .scalars import QQi, qi

__all__ = [name for name in dir() if not name.startswith("_")]
