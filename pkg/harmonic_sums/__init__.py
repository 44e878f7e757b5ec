"""Verification engine for harmonic-number summation identities."""

__version__ = '0.1.0'
