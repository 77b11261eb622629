"""Exact coefficient sequences and identities around Stirling's series and
Ramanujan's theta_n / Psi_n expansions."""

from ramastir.algebra import PowerSeries, Poly, Rat, Sqrt2Rat

__version__ = "0.1.0"

__all__ = ["PowerSeries", "Poly", "Rat", "Sqrt2Rat", "__version__"]
