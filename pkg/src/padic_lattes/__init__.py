"""Exact p-adic verification of preperiodic-parameter results for Lattes and
related families of rational maps."""

__version__ = "0.1.0"
