# -*- coding: utf-8 -*-
"""Simulation and verification toolkit for SDEs with log-Lipschitz coefficients."""

__version__ = "0.1.0"
