"""Test ``cli.manifest`` module."""

import json
from importlib import resources
from pathlib import Path

import pytest
from pydantic import ValidationError

from loglip_sde.cli.manifest import (
    DEFAULT_OUTPUT_DIR,
    OUTPUT_DIR_ENV,
    ExperimentKind,
    Manifest,
    load_manifest,
    manifest_digest,
    manifest_schema,
    output_directory,
)
from loglip_sde.cli.experiments import EXPERIMENTS
from loglip_sde.coeffs import build_field


@pytest.fixture
def rate_manifest():
    return Manifest(
        kind="rate",
        field={"key": "constant", "params": {"drift": 0.0, "diffusion": 1.0}},
        protocol="test",
        parameters={"event": {"kind": "level_cross", "level": 1.0}, "knots": 16},
        seed=7,
    )


def test_manifest_dump(rate_manifest, data_regression):
    data_regression.check(rate_manifest.dump())


def test_resolved_parameters(rate_manifest):
    parameters = rate_manifest.resolved_parameters()

    assert parameters["knots"] == 16
    assert parameters["restarts"] == 2
    assert parameters["T"] == 1.0
    assert parameters["event"] == {"kind": "level_cross", "level": 1.0}


def test_unknown_protocol(rate_manifest):
    manifest = rate_manifest.model_copy(update={"protocol": "nonsense"})

    with pytest.raises(ValueError, match="unknown protocol"):
        manifest.resolved_parameters()


def test_digest_ignores_output_dir(rate_manifest):
    moved = rate_manifest.model_copy(update={"output_dir": "elsewhere"})
    reseeded = rate_manifest.model_copy(update={"seed": 8})

    assert manifest_digest(moved) == manifest_digest(rate_manifest)
    assert manifest_digest(reseeded) != manifest_digest(rate_manifest)


def test_output_directory_precedence(rate_manifest, monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    assert output_directory(rate_manifest) == Path(DEFAULT_OUTPUT_DIR)

    monkeypatch.setenv(OUTPUT_DIR_ENV, "from_env")
    assert output_directory(rate_manifest) == Path("from_env")

    declared = rate_manifest.model_copy(update={"output_dir": "from_manifest"})
    assert output_directory(declared) == Path("from_manifest")
    assert output_directory(declared, "from_option") == Path("from_option")


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "rate", "unexpected": 1},
        {"kind": "nonsense"},
        {"kind": "rate", "schema_version": 2},
        {"kind": "rate", "field": {"key": "constant", "extra": 1}},
    ],
)
def test_invalid_manifest(data):
    with pytest.raises(ValidationError):
        Manifest.model_validate(data)


def test_load_manifest_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{kind: rate")

    with pytest.raises(ValueError, match="is not valid JSON"):
        load_manifest(path)


def test_schema_lists_every_kind():
    schema = manifest_schema()

    assert sorted(schema["$defs"]["ExperimentKind"]["enum"]) == sorted(kind.value for kind in ExperimentKind)
    assert sorted(EXPERIMENTS) == sorted(kind.value for kind in ExperimentKind)
    assert schema["properties"]["protocol"]["enum"] == ["quick", "standard", "test"]


def test_schema_follows_the_model():
    schema = manifest_schema()
    generated = Manifest.model_json_schema()

    assert schema["$id"] == "loglip-sde/manifest/v1"
    assert schema["required"] == ["kind"]
    assert sorted(schema["properties"]) == sorted(Manifest.model_fields)
    assert schema["$defs"] == generated["$defs"]


def test_shipped_manifests_match_the_schema():
    schema = manifest_schema()
    folder = resources.files("loglip_sde.statics") / "manifests"

    for entry in folder.iterdir():
        if not entry.name.endswith(".json"):
            continue
        data = json.loads(entry.read_text())
        assert set(data) <= set(schema["properties"]), entry.name
        assert data["kind"] in schema["$defs"]["ExperimentKind"]["enum"], entry.name
        assert data["protocol"] in schema["properties"]["protocol"]["enum"], entry.name
        if "field" in data:
            assert set(data["field"]) <= set(schema["$defs"]["FieldSpec"]["properties"]), entry.name


def test_shipped_manifests_are_valid():
    folder = resources.files("loglip_sde.statics") / "manifests"
    names = [entry.name for entry in folder.iterdir() if entry.name.endswith(".json")]

    assert names
    for name in names:
        manifest = load_manifest(folder / name)
        manifest.resolved_parameters()
        if EXPERIMENTS[manifest.kind].needs_field:
            build_field(manifest.field.key, manifest.field.params)
