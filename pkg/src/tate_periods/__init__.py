"""Exact symbolic engine for generalized Tate curves."""
