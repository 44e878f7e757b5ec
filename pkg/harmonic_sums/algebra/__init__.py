"""Exact algebra: compositions, quasi-symmetric functions, zeta-value expressions."""
