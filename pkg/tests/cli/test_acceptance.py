"""Run the manifests shipped in ``loglip_sde.statics.manifests`` and check their verdicts."""

from importlib import resources
import json
import math

import pytest
from click.testing import CliRunner

from loglip_sde.cli import cmd_root

pytestmark = pytest.mark.slow


@pytest.fixture
def run_shipped(tmp_path):
    """Run a shipped manifest through ``loglip-sde run`` and return the summary it writes."""

    def _run_shipped(name):
        manifest = resources.files("loglip_sde.statics") / "manifests" / f"{name}.json"
        kind = json.loads(manifest.read_text())["kind"]
        with resources.as_file(manifest) as path:
            result = CliRunner().invoke(
                cmd_root,
                ["run", "--manifest", str(path), "--out", str(tmp_path), "--threads", "4"],
                catch_exceptions=False,
            )
        assert result.exit_code == 0, result.output
        return json.loads((tmp_path / f"{kind}.json").read_text())["summary"]

    return _run_shipped


def test_skeletons_converge_uniformly(run_shipped):
    summary = run_shipped("converge_sine_series")

    assert summary["control_count"] == 20
    assert summary["strictly_decreasing"]
    assert summary["step_bound_holds"]


def test_euler_stays_close_to_its_reference(run_shipped):
    summary = run_shipped("closeness_sine_series")

    assert [row["n"] for row in summary["rows"]] == [8, 32, 128]
    assert summary["rows"][-1]["exceed"] == 0
    assert summary["non_increasing"]


def test_nearby_starts_stay_together(run_shipped):
    summary = run_shipped("stability_sine_series")

    assert summary["non_increasing"]
    assert summary["rows"][-1]["delta"] == 0.0
    assert summary["rows"][-1]["exceed"] == 0


def test_log_squared_growth_explodes_at_one(run_shipped):
    """From e the skeleton solves d(log x)/dt = (log x)^2, which leaves every ball at t = 1."""
    summary = run_shipped("lifetime_blowup")

    assert summary["exploded"]
    assert summary["n"] == 2**20
    assert summary["lifetime"] == pytest.approx(1.0, abs=0.02)


def test_log_growth_survives(run_shipped):
    """From e the skeleton is x(t) = exp(e^t)."""
    summary = run_shipped("lifetime_survival")

    assert not summary["exploded"]
    assert summary["lifetime"] is None
    assert summary["final_state"][0] == pytest.approx(math.exp(math.e), rel=1e-3)


def test_schilder_gap_shrinks(run_shipped):
    """Exact values of eps log P(sup W_eps >= 1) + 1/2 are about -0.369, -0.235 and -0.146."""
    summary = run_shipped("ldp_schilder")

    assert summary["rate"] == pytest.approx(0.5, abs=1e-3)
    gaps = [row["gap"] for row in summary["rows"]]
    assert [row["eps"] for row in summary["rows"]] == [0.4, 0.2, 0.1]
    assert gaps == pytest.approx([-0.369, -0.235, -0.146], abs=0.04)
    assert summary["gap_decreasing"]
