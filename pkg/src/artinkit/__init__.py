"""Combinatorics of Coxeter groups, Artin monoids and Salvetti complexes,
with integral homology of the resulting order complexes."""

from .config import DEFAULT_CAPS, Caps, active_caps, caps, set_caps
from .coxgraph import (
    INF,
    CoxeterGraph,
    connected_components,
    dihedral,
    figure_1_4,
    named_graph,
    parse_graph,
    serialize_graph,
    subgraph,
    type_A,
    type_B,
    type_D,
    type_E,
    type_F4,
    type_H,
)
from .errors import ArtinkitError, DomainError, GraphParseError, ResourceCapExceeded, WordParseError
from .sphericity import is_spherical, verdict_record
from .words import CoxElement, enumerate_ball, enumerate_group, normal_form

__all__ = [
    "DEFAULT_CAPS", "Caps", "active_caps", "caps", "set_caps",
    "INF", "CoxeterGraph", "connected_components", "dihedral", "figure_1_4", "named_graph",
    "parse_graph", "serialize_graph", "subgraph",
    "type_A", "type_B", "type_D", "type_E", "type_F4", "type_H",
    "ArtinkitError", "DomainError", "GraphParseError", "ResourceCapExceeded", "WordParseError",
    "is_spherical", "verdict_record",
    "CoxElement", "enumerate_ball", "enumerate_group", "normal_form",
]

__version__ = "0.1.0"
