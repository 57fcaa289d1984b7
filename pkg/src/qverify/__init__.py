"""Exact verification of q-series identities, polynomial refinements and positivity claims."""

__version__ = "0.1.0"
