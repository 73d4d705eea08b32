"""Bounded K_r-free homomorphic images of dense maximal K_r-free graphs."""

from .cliques import (
    ThresholdParams,
    find_clique,
    in_class_F,
    is_kr_free,
    is_maximal_krfree,
    maximal_krfree_completion,
)
from .errors import (
    HypothesisViolation,
    KrhomError,
    ParseError,
    PreconditionError,
    RetriesExhausted,
    StructureError,
)
from .extraction import (
    ExtractionParams,
    ExtractionReport,
    classify_remainder,
    compute_params,
    equivalence_classes,
    extract,
    good_sample,
    low_degree_set,
    validate_structure,
    verify_report,
)
from .graph import (
    Graph,
    VertexSet,
    common_neighborhood,
    density,
    edges_between,
    induced_subgraph,
    is_independent,
    min_degree,
)
from .homomorphism import (
    HomMap,
    Partition,
    is_blowup,
    min_hom_image_bruteforce,
    quotient,
    verify_homomorphism,
)
from .props import check_nonadjacent_bound, find_kr2_avoiding, find_kr2_in_set

__version__ = "0.1.0"
