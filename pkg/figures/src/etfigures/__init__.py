"""Figures from etform CSV/JSON outputs; no simulation code is imported."""

from .make_all import generate

__all__ = ["generate"]
