"""Exhaustive enumeration of difference sets in small finite groups."""
