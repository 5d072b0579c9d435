"""Hochschild cohomology of filtered Koszul algebras via the curved Koszul dual."""

__version__ = "0.1.0"
