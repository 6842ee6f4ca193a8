"""Intersecting-family search project."""
