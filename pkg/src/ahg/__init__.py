"""Monodromy at infinity of confluent A-hypergeometric systems from lattice geometry."""

__version__ = "0.1.0"
