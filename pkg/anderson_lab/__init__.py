"""Anderson ring lab: exact localizations of R[X] over finite rings."""

__version__ = "0.3.0"
