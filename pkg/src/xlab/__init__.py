"""Numerical laboratory for summability of Fourier series, Lebesgue
constants, smoothness moduli, positive-definite splines, Walsh-Paley
analysis, and oscillatory-sum discretization."""

__version__ = "0.1.0"
