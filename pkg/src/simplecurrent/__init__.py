"""Exact tools for pointed braided fusion categories and their condensations."""

__version__ = "0.1.0"
