"""Event-driven SIRS/SIS simulation and analysis on connected-star networks.

Subpackages by concern: ``graph`` (immutable graphs and edge-list I/O),
``generators`` (stars, connected stars, Chung-Lu, HRG, GIRG), ``engine``
(aggregated-rate simulation plus an exact CTMC oracle), ``activity``
(star-activation tracking), ``structure`` (star extraction and verification),
``thresholds`` (closed-form bounds), ``experiments`` (Monte-Carlo harness),
``cli`` (command-line entry point).
"""

from .graph import Graph, build_graph, is_connected_subset, load_edge_list, save_edge_list
from .engine import (SirsParams, SirsState, SirsTrace, Outcome, simulate,
                     sample_survival_times, exact_expected_survival,
                     first_transition_distribution)
from .generators import (GenSpec, GenResult, gen_star, gen_constar,
                         gen_disjointed_star, gen_chung_lu, gen_hrg, gen_girg,
                         chung_lu_weights, generate)
from .activity import (ActivationConstants, MetaTrace, MetaSummary,
                       activation_constants, track, meta_summary)
from .structure import (StarFamily, FamilyReport, ExtractionResult,
                        count_high_degree, extract_disjointed_star,
                        verify_star_family, predicted_star_size)
from . import thresholds, experiments

__version__ = "0.1.0"

__all__ = [
    "Graph", "build_graph", "is_connected_subset", "load_edge_list", "save_edge_list",
    "SirsParams", "SirsState", "SirsTrace", "Outcome", "simulate",
    "sample_survival_times", "exact_expected_survival", "first_transition_distribution",
    "GenSpec", "GenResult", "gen_star", "gen_constar", "gen_disjointed_star",
    "gen_chung_lu", "gen_hrg", "gen_girg", "chung_lu_weights", "generate",
    "ActivationConstants", "MetaTrace", "MetaSummary", "activation_constants",
    "track", "meta_summary",
    "StarFamily", "FamilyReport", "ExtractionResult", "count_high_degree",
    "extract_disjointed_star", "verify_star_family", "predicted_star_size",
    "thresholds", "experiments",
]
