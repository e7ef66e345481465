"""Admissibility, merging, holonomy realization and construction plans for
spherical cone metrics on the 2-sphere."""

__version__ = "0.1.0"
