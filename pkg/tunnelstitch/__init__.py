"""Feature-less stitching of cylindrical tunnel panoramas from posed camera frames."""

__version__ = "0.1.0"
