"""Workbench for k-Induced Disjoint Paths on H-free graphs."""

__version__ = "0.1.0"
