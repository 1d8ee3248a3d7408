"""h-vectors of 2-dimensional PS ear-decomposable complexes and constructive
pure O-sequence witnesses."""

from .complex import FVector, HVector, SimplicialComplex, add_face, f_vector, h_vector, one_skeleton
from .ears import (
    BaseSphere,
    EarA,
    EarB,
    EarCounts,
    EarDecomposition,
    EarE,
    EarF,
    ear_counts,
    h_from_counts,
    labeled_graph_of,
    realize,
)
from .engine import WitnessReport, pure_witness
from .graphs import LabeledGraph, compress, is_constructible, shift, structure_profile, triangle_count
from .multicomplex import Monomial, Multicomplex, divisor_closure, f_vec, is_multicomplex, is_pure, pure_oseq_oracle

__version__ = "0.1.0"
