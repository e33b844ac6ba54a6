"""Multidimensional persistent homology rank invariants, matching distances,
and the half-plane foliation machinery."""

from ._core import (
    Diagram,
    SimplicialComplex,
    betti,
    brute_force_bottleneck,
    build_complex,
    d_match,
    diagram,
    dmatch_nd,
    invariance_discrepancy,
    leaf_distance,
    leaf_through,
    rank_invariant,
    reduce_values,
    simplex_value,
    sublevel,
    __version__,
)

__all__ = [
    "Diagram",
    "SimplicialComplex",
    "betti",
    "brute_force_bottleneck",
    "build_complex",
    "d_match",
    "diagram",
    "dmatch_nd",
    "invariance_discrepancy",
    "leaf_distance",
    "leaf_through",
    "rank_invariant",
    "reduce_values",
    "simplex_value",
    "sublevel",
    "__version__",
]
