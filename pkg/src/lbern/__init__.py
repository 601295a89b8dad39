"""Exact lambda-Bernoulli and Frobenius-Euler arithmetic with twisted zeta/L values."""

from .exact_scalar import CyclotomicElement, LambdaDescriptor, LogPolynomial

__version__ = "0.1.0"

__all__ = ["CyclotomicElement", "LambdaDescriptor", "LogPolynomial", "__version__"]
