"""Exact-arithmetic toolkit for complex product and hypercomplex structures
on finite-dimensional Lie algebras, with connection, curvature and holonomy
computations and symbolic verification scripts."""

__version__ = "0.1.0"
