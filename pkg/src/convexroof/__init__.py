"""Certified bounds on convex-roof entanglement measures.

Symmetric multi-copy semidefinite relaxations solved by an internal
primal-dual interior-point method, with dual-derived quantitative
witnesses, partial-information and steering-type device-independent
variants, and quantum-Fisher-information bounds.
"""

__version__ = "0.1.0"
