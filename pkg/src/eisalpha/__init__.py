"""Exact computations around supersingular L-matrices, Manin-symbol homology
over Z/ell^s, and Eisenstein-ideal depth invariants, verified against
independent brute-force oracles."""

__version__ = "0.1.0"
