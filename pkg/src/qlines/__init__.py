"""Lines, betweenness and realizability for finite quasimetric spaces."""

from .betweenness import (
    Betweenness, Line, LineSet, betweenness_of, has_universal_line, is_geodesic, line_of,
    lines_of, maximal_geodesics, segment, symmetric_pairs, validate_four_point_implications,
)
from .constructions import (
    PartitionTriple, construct_C, construct_D1, construct_D2, expected_betweenness_C,
    expected_betweenness_D,
)
from .enumeration import SearchConfig, SearchReport, classify_constructions, enumerate_betweennesses
from .isomorphism import CanonicalForm, betweenness_isomorphic, canonical_form, census
from .realizability import RealizabilityCertificate, RealizabilityProblem, realize, verify_witness
from .space import (
    QuasimetricSpace, WeightedDigraph, is_strongly_connected, shortest_path_space,
    space_from_matrix,
)

__version__ = "0.1.0"
