# -*- coding: utf-8 -*-
# pylint: disable=wrong-import-position,wildcard-import
"""Module for the command line interface."""

import click


@click.group(
    "loglip-sde",
    context_settings={"help_option_names": ["-h", "--help"]},
)
def cmd_root():
    """Manifest-driven experiments on SDEs with log-Lipschitz coefficients."""


from .run import *  # noqa: E402,F401,F403
