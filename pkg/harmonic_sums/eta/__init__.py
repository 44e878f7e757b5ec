"""H-functions: exponent specs, symbolic evaluation, closed forms."""
