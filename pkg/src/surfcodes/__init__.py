"""Evaluation codes on algebraic surfaces over finite fields."""

__version__ = "0.1.0"
