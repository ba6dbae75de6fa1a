"""knotball: non-constructible simplicial balls and spheres."""

__version__ = "0.1.0"
