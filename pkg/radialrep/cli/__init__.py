"""Command-line interface for radialrep."""
