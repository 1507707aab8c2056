"""
Inellipse

A library and command line tool for ellipses inscribed in convex quadrilaterals.
"""

__version__ = "1.0.0"
