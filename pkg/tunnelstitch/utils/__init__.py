"""A set of utilities shared by all parts of tunnelstitch."""
