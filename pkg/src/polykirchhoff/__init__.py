"""Kirchhoff index of k-polycyclic chains: two resistance engines and an extremal search."""

__version__ = "0.1.0"

from .chains import (
    ChainSpec,
    LabeledChainGraph,
    build_chain,
    canonicalize,
    format_spec,
    helicene,
    linear,
    parse_spec,
    recognize_chain,
    zigzag,
)
from .extremal import enumerate_chains, find_extremal, verify_theorems
from .isomer import IsomerCut, find_cut, flip_chain, kf_difference, lemma_transform, split, st_flip
from .reduction import delta_y_transform, fan_reduce, last_polygon_sums, parallel_reduce, series_reduce
from .resistance import (
    LaplacianFactor,
    WeightedNetwork,
    effective_resistance,
    kirchhoff_index,
    vertex_resistance_sum,
    wiener_index,
)
