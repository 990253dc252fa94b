"""stratakit: totally normal cellular/stellar stratified spaces as finite
acyclic face categories, with exact integer homology.

The encoding is category-only: a space is its face category plus cell
dimensions and closedness flags. Barycentric subdivision is the
classifying space of that category; stellar duality and Salvetti
complexes are restratifications of it; hyperplane-arrangement
stratifications and graph configuration spaces are the two running
families of examples, each with an independent oracle.
"""

from .arrangement import (
    Arrangement,
    SignVector,
    braid_arrangement,
    complement_poset,
    faces_higher,
    faces_level1,
    higher_salvetti,
    salvetti_cellular,
    symmetric_subdivision,
)
from .category import (
    AcyclicCategory,
    GroupActionOnCategory,
    categories_isomorphic,
    grothendieck,
    lower_link,
    lower_star,
    nondegenerate_nerve,
    opposite_category,
    product_category,
    quotient_by_free_action,
    sd_category,
    underlying_poset,
    upper_link,
    upper_star,
    validate_category,
)
from .css import (
    CombinatorialCSS,
    SalvettiPartition,
    SubdivisionData,
    cellular_closure,
    dual,
    identity_subdivision,
    link_poset,
    make_css,
    poset_to_css,
    product_css,
    quotient_css,
    remove_closed_subcomplex,
    salvetti_complex,
    salvetti_partition,
    sd,
    subdivide,
    validate_total_normality,
)
from .delta import (
    DeltaComplex,
    components,
    euler_characteristic,
    f_vector,
    face_poset,
    validate_delta,
)
from .graphconf import (
    ConfCell,
    Graph,
    abrams_complex,
    abrams_conditions,
    conf_category,
    graph_to_css,
    sigma_action,
    subdivide_graph,
    unordered_conf,
)
from .homology import ChainComplex, HomologyResult, chain_complex, homology
from .poset import Poset, are_isomorphic, opposite, order_complex, product, validate_poset

__version__ = "0.1.0"
