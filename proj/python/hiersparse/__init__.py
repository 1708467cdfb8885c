"""Hypersparse associative arrays over semirings.

Arrays map (row key, column key) pairs to values of a chosen semiring;
`HierArray` layers them into a cut-threshold cascade so long update
streams keep most work in small, cache-resident arrays.
"""

from ._core import (
    AlgebraError,
    AssocArray,
    ConfigError,
    CutSpec,
    DomainError,
    HierArray,
    IoError,
    ParseError,
    RmatConfig,
    RmatGenerator,
    Semiring,
    array_mult,
    ew_add,
    ew_mult,
    read_triples,
    write_triples,
)

__all__ = [
    "AlgebraError",
    "AssocArray",
    "ConfigError",
    "CutSpec",
    "DomainError",
    "HierArray",
    "IoError",
    "ParseError",
    "RmatConfig",
    "RmatGenerator",
    "Semiring",
    "array_mult",
    "ew_add",
    "ew_mult",
    "read_triples",
    "write_triples",
]

__version__ = "0.1.0"
