"""Laman numbers of minimally rigid graphs, counted by a bigraph recursion."""

__version__ = "0.1.0"

from .bigraph import (Bigraph, SplitPair, bigraph_of, canonical_bigraph_key, enumerate_splits,
                      is_pseudo_laman, left_quot, right_quot)
from .codecs import parse_edge_list, parse_graph6, read_graph_file, write_edge_list, write_graph6
from .constructions import (caterpillar, caterpillar_bound, fan, fan_bound, fixture_graph, fixtures,
                            generalized_fan, generalized_fan_bound, growth_rate, upper_bounds)
from .engine import ComputationStats, Memo, choose_biedge, default_memo, lam_bigraph, laman_number
from .errors import (ComputationError, ComputationTimeout, CountOverflowError, DegenerateInputError,
                     InvalidInputError, LamanError, NotLamanError, ParseError)
from .geometry import are_equivalent, export_system, is_compatible, labeling_from_realization
from .graph import Multigraph, SimpleGraph, canonical_key, components, dim, quotient, restrict
from .pebble import is_laman, laman_defect, pebble_game

__all__ = [
    "Bigraph", "SplitPair", "bigraph_of", "canonical_bigraph_key", "enumerate_splits", "is_pseudo_laman",
    "left_quot", "right_quot", "parse_edge_list", "parse_graph6", "read_graph_file", "write_edge_list",
    "write_graph6", "caterpillar", "caterpillar_bound", "fan", "fan_bound", "fixture_graph", "fixtures",
    "generalized_fan", "generalized_fan_bound", "growth_rate", "upper_bounds", "ComputationStats", "Memo",
    "choose_biedge", "default_memo", "lam_bigraph", "laman_number", "ComputationError", "ComputationTimeout",
    "CountOverflowError", "DegenerateInputError", "InvalidInputError", "LamanError", "NotLamanError",
    "ParseError", "are_equivalent", "export_system", "is_compatible", "labeling_from_realization",
    "Multigraph", "SimpleGraph", "canonical_key", "components", "dim", "quotient", "restrict", "is_laman",
    "laman_defect", "pebble_game", "__version__",
]
