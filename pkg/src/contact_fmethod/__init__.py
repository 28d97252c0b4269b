"""Exact F-method engine for the contact projective geometry of sp(2n+2)."""

__version__ = "0.1.0"
