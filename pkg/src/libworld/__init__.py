"""libworld: deterministic library-world generation and serving."""

__version__ = "0.1.0"
