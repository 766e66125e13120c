"""Explicit irreducibility bad-prime sets for mod-p representations of
elliptic curves (and curve families) over totally real Galois number fields.
"""

__version__ = "0.1.0"
