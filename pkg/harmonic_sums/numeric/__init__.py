"""Floating-point evaluation: compensated sums, extrapolation, zeta values, series."""
