"""Sparse 3-uniform hypergraph expanders from Sidon sets over Z_2^t.

Build the hypergraph H(Z_2^t, S), compute exact Cayley spectra by the
Walsh-Hadamard transform, certify edge/triple expansion, run and bound the
random walk on skeleton edges, count crossing triples against the spectral
window, and estimate geometric overlap for planar embeddings.
"""

__version__ = "0.1.0"

from .cayley import (
    CayleyGraph,
    Spectrum,
    cheeger_check,
    decaen_check,
    mixing_lemma_check,
    spectrum,
    verify_square_relation,
    walsh_hadamard,
)
from .errors import (
    NonConvergenceError,
    SearchExhaustedError,
    SizeLimitError,
    VerificationError,
)
from .gf2 import GF2m, IRREDUCIBLE, add, character, is_irreducible
from .hypergraph import (
    Hypergraph3,
    build,
    center_multiset,
    count_crossing_triples,
    edge_cliques,
    expansion_bruteforce,
    expansion_certificate,
    neighborhood_E,
    neighborhood_T,
    neighborhood_V,
)
from .overlap import (
    CentroidStrategy,
    GridStrategy,
    OverlapReport,
    RandomStrategy,
    complete_triples,
    overlap_estimate,
    overlap_estimate_hypergraph,
    point_in_triangle,
    quantize_embedding,
    random_embedding,
)
from .sidon import (
    SidonSet,
    SidonViolation,
    StructuralDefect,
    gold_sidon,
    is_sidon,
    pair_sums,
    random_sidon,
    verify_sidon,
)
from .walks import (
    AuxGraph,
    EdgeDistribution,
    aux_spectral_bounds,
    evolve,
    mixing_profile,
    monte_carlo_walk,
    rapid_mixing_check,
    regular_spectral_bounds,
)
