"""Homological invariants of bounded quiver algebras: truncated oriented
cycles, Hochschild homology of the normalized complex, non-vanishing
certificates, and global dimension."""

__version__ = "0.1.0"
