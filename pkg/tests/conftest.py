# -*- coding: utf-8 -*-
"""fixtures"""

import json

import pytest

from loglip_sde.coeffs import build_field
from loglip_sde.ldp import PathEvent
from loglip_sde.paths import TimeGrid, sample_brownian


@pytest.fixture
def generate_field():
    """Field from a registry key, parameters as keyword arguments."""

    def _generate_field(key="constant", **params):
        return build_field(key, params)

    return _generate_field


@pytest.fixture
def generate_driver():
    def _generate_driver(m=1, n=64, T=1.0, seed=0, trial=0):
        return sample_brownian(m, TimeGrid(n, T), seed, trial)

    return _generate_driver


@pytest.fixture
def generate_event():
    def _generate_event(kind="terminal_hit", **params):
        return PathEvent(kind=kind, params=params)

    return _generate_event


@pytest.fixture
def write_manifest(tmp_path):
    """Write a manifest JSON into the test folder and return its path."""

    def _write_manifest(kind, field=None, parameters=None, protocol="test", seed=0, name=None):
        data = {
            "schema_version": 1,
            "kind": kind,
            "protocol": protocol,
            "parameters": parameters or {},
            "seed": seed,
        }
        if field is not None:
            data["field"] = field
        path = tmp_path / (name or f"{kind}.json")
        path.write_text(json.dumps(data))
        return path

    return _write_manifest


@pytest.fixture
def unit_brownian_field(generate_field):
    """b = 0, sigma = 1 in one dimension."""
    return generate_field("constant", drift=0.0, diffusion=1.0)
