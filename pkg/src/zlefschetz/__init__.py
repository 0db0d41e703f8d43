"""Integral Lefschetz filtration on the exterior algebra of Z^{2g} and its consequences."""

__version__ = "0.1.0"
