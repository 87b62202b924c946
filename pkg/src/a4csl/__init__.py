"""Exact coincidence-site-lattice arithmetic for the root lattice A4.

The package models the golden ring Z[t], quaternions over Q(sqrt 5), the
icosian ring, and the A4 root lattice embedded in it, and counts coincidence
rotations both by closed formulas and by exhaustive enumeration.
"""

__version__ = "0.1.0"
