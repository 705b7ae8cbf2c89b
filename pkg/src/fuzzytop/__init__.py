"""Fuzzy topological systems, graded frames and related algebra over exact rationals."""
