"""hypergraph-coding - coding for computing under a maximal distortion constraint."""

from hypergraph_coding.core.logging import configure_logging

__version__ = "0.1.0"

configure_logging()
