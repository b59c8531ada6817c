"""Purity workbench for coherent sheaves on the projective line and the
two-point scheme Spec Z_(p)."""

__version__ = "0.1.0"
