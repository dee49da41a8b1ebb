"""Planar-network models of GL_n, Sp_2k and SO_2k+1 over Q(sqrt 2)."""

__version__ = "0.1.0"
