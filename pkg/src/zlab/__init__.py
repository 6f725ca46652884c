"""Finite-model workbench for implication zroupoids and identities of associative type."""

__version__ = "0.1.0"
