"""
Utility functions for Inellipse.

This package contains configuration, errors, document I/O, serialization,
SVG rendering and the one-dimensional optimizers.
"""
