"""Mod-p reductions of semi-stable representations and supporting p-adic machinery."""

__version__ = "0.1.0"
