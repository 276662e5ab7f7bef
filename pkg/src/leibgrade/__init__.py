"""Exact computations with root-graded Leibniz algebras and their coordinate dialgebras."""

from __future__ import annotations

__version__ = "0.1.0"
