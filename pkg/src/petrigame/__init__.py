"""Supervisory synthesis for 1-safe Petri net games under partial observation."""

__version__ = "0.1.0"
