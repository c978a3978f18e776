"""Default numerical tolerances.

The base tolerance can be overridden through the ``ADSGEO_DEFAULT_TOL``
environment variable (read once at import time).  It controls how strictly
points are required to satisfy the quadric constraint before geometric
operations accept them.  Tighter, purpose-specific tolerances (causal
classification, tangency) are fixed constants.
"""

from __future__ import annotations

import os

DEFAULT_TOL = float(os.environ.get("ADSGEO_DEFAULT_TOL", "1e-9"))

#: Maximum allowed |<x,x> + 1| for a point to count as lying on the quadric.
MANIFOLD_TOL = DEFAULT_TOL

#: |<v,v>| at or below this is treated as lightlike during classification.
LIGHTLIKE_TOL = 1e-10

#: Maximum allowed |<v,x>| (scaled) for a vector to count as tangent.
TANGENT_TOL = 1e-8
