"""Output record storage package."""
