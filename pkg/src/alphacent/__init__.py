"""Normalized alpha-centrality, path-based modularity and benchmark evaluation."""

__version__ = "0.1.0"

from .centrality import (
    CentralityField,
    ProximityConfig,
    SpectralInfo,
    alpha_centrality_closed_form,
    alpha_centrality_iterative,
    alpha_centrality_scores,
    attenuated_path_matrix,
    centrality_radius,
    degree_centrality,
    dominant_eigenpair,
    eigenvector_centrality,
    katz_scores,
    path_proximity,
    random_walk_proximity,
)
from .community import Partition, connectivity_matrix, detect_communities, modularity_value, null_model
from .datasets import list_datasets, load_dataset
from .errors import AlphacentError, DatasetError, DegenerateGraphError, GraphFormatError, NumericalError
from .evaluation import GroundTruth, ordering_equal, purity, rank_nodes, role_coordinates, sweep
from .graph import Graph, degree_summary, load_edge_list, load_gml, symmetrize
