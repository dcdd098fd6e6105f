__all__ = ["__version__"]

# NOTE: PEP 440 will normalize this version (e.g. 2026.02 -> 2026.2),
# but keeping the calendar format here is useful for humans.
__version__ = "2026.10.1"
