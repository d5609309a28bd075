# -*- coding: utf-8 -*-
"""Run manifests: what to compute, on which field, with which parameters."""

import json
import os
from enum import Enum
from pathlib import Path
from typing import Any, Literal, Optional

from aiida.common.hashing import make_hash
from pydantic import BaseModel, ConfigDict, Field

from loglip_sde.utils import get_experiment_defaults, get_protocol, update_dict

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "LOGLIP_SDE_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "loglip_sde_results"


class ExperimentKind(str, Enum):
    SIMULATE = "simulate"
    SKELETON = "skeleton"
    CONVERGE = "converge"
    LIFETIME = "lifetime"
    STABILITY = "stability"
    RATE = "rate"
    LDP = "ldp"
    CLOSENESS = "closeness"
    OSGOOD = "osgood"
    LEMMA24 = "lemma24"
    GROWTH = "growth"
    EXIT_TAIL = "exit_tail"
    MODULUS = "modulus"


class FieldSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    key: str = Field(description="sine_series, constant, linear, log_growth, log_sq_growth or truncated:<base>:<R>")
    params: dict[str, Any] = Field(default_factory=dict)


class Manifest(BaseModel):
    """One experiment, reproducible from this document alone.

    ``parameters`` override the defaults of ``protocol`` for the experiment ``kind``.
    """

    model_config = ConfigDict(extra="forbid", use_enum_values=True)

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: ExperimentKind
    field: Optional[FieldSpec] = None
    protocol: str = Field("standard", description="named parameter set of protocol/experiments.yml")
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    output_dir: Optional[str] = None

    def resolved_parameters(self) -> dict:
        """Protocol defaults of this kind with the manifest parameters merged on top."""
        return update_dict(get_experiment_defaults(self.protocol, self.kind), self.parameters)

    def dump(self) -> dict:
        return self.model_dump(mode="json")

    def to_json(self) -> str:
        return json.dumps(self.dump(), indent=2, sort_keys=True) + "\n"


def load_manifest(path) -> Manifest:
    """Read and validate a manifest file; raises ``pydantic.ValidationError`` or ``ValueError``."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"manifest `{path}` is not valid JSON: {exc}") from exc
    return Manifest.model_validate(data)


def manifest_digest(manifest: Manifest) -> str:
    """Content hash of the manifest; the output directory does not take part."""
    data = manifest.dump()
    data.pop("output_dir")
    return make_hash(data)


def output_directory(manifest: Manifest, override: Optional[str] = None) -> Path:
    """``--out``, then the manifest, then ``$LOGLIP_SDE_OUTPUT_DIR``, then the default."""
    for candidate in (override, manifest.output_dir, os.environ.get(OUTPUT_DIR_ENV)):
        if candidate:
            return Path(candidate)
    return Path(DEFAULT_OUTPUT_DIR)


def manifest_schema() -> dict:
    """JSON schema of run manifests, generated from :class:`Manifest`.

    The protocol names are listed from the shipped protocol file.
    """
    schema = Manifest.model_json_schema()
    schema["$id"] = f"loglip-sde/manifest/v{SCHEMA_VERSION}"
    schema["properties"]["protocol"]["enum"] = sorted(get_protocol("experiments"))
    return schema
