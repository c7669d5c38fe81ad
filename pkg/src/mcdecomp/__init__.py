"""Multi-controlled gate decompositions and constrained-QAOA resource analysis."""

__version__ = "0.1.0"
