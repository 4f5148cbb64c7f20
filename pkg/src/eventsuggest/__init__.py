"""Event-centric query suggestion for online news, from article metadata."""

__version__ = "0.1.0"
