"""Exact combinatorics of Latin squares, transversals, orthogonal systems and permanents."""
