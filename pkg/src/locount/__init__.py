"""Exact counting of two-sided patterns in graphs of bounded degeneracy."""
from .engine import (BicliqueCount, CountResult, build_flow_network, count_biclique,
                     count_pattern, count_strong_fixed, count_weak_fixed, enumerate_valid_flows,
                     flow_weight)
from .errors import (AnchorMismatch, BudgetExceeded, GraphFormatError, LocountError,
                     ParameterError, PatternError)
from .generators import (GenSpec, ReductionInstance, gen_planted, gen_random_degenerate,
                         gen_random_pattern, gen_reduction_instance)
from .graph import (Graph, OrderedGraph, degeneracy, degeneracy_order, left_neighbourhood,
                    neighbourhood_classes, parse_graph)
from .pattern import (IndexRep, LocatabilityResult, Pattern, aut, aut_S, check_1d_structure,
                      degenerate_reps, index_rep, left_cover_number, min_left_cover,
                      min_locatable_c, orbit_S, parse_pattern, validate_pattern)
from .subsets import SubsetDictQ, SubsetDictR, build_Q, build_Q_reference, build_R, query

__version__ = "0.1.0"
