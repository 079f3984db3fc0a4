"""Tropical and symmetric tropical rank, symmetric Puiseux lifts, tropical-basis witnesses."""

__version__ = "0.1.0"
