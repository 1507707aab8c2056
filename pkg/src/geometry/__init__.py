"""
Geometry core: affine maps, conics, quadrilaterals and their inscribed ellipses.
"""
