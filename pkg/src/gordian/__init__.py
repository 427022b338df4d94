"""Exact Jones-polynomial invariants of tangle-built knots and links, and
finite windows of their Gordian quotient graphs."""

from gordian.families import parse_family
from gordian.invariants import beta, determinant, jones, report, span_t, tricoloring

__version__ = "0.1.0"

__all__ = ["parse_family", "jones", "span_t", "determinant", "tricoloring", "beta", "report"]
