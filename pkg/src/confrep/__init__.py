"""Rational cohomology of configuration spaces of Sigma_{g,1} as a mapping class group representation."""

__version__ = "0.1.0"
