# -*- coding: utf-8 -*-
"""Exceptions for results that must not be reported as a number."""


class DivergentIntegralError(ArithmeticError):
    """The requested Osgood integral diverges at its lower limit."""


class ExponentOverflowError(ArithmeticError):
    """``exp(exponent)`` does not fit in a double; the exponent is kept for the caller."""

    def __init__(self, exponent: float):
        super().__init__(f"exponent {exponent!r} overflows double precision")
        self.exponent = exponent


class NumericalFailure(RuntimeError):
    """An experiment finished without a usable result.

    The ``diagnostic`` dict is written next to the outputs by the CLI.
    """

    def __init__(self, message: str, diagnostic: dict | None = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}
