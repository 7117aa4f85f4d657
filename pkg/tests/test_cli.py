import pandas as pd
import pytest
from typer.testing import CliRunner

from tourneysim import config
from tourneysim.cli import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "CONFIG_FILE", tmp_path / "absent.toml")
    monkeypatch.delenv(config.WORKERS_ENV, raising=False)


def _squash(text: str) -> str:
    return "".join(text.split())


def test_draw_is_reproducible_and_valid(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        result = runner.invoke(app, ["draw", "--design", "new", "--seed", "5", "--index", "2", "-o", str(path)])
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().splitlines()) == 145

    result = runner.invoke(app, ["validate", str(first)])
    assert result.exit_code == 0, result.output
    assert "drawconstraintshold" in _squash(result.output)


def test_old_design_draw(tmp_path):
    path = tmp_path / "groups.csv"
    result = runner.invoke(app, ["draw", "--design", "old", "--seed", "5", "-o", str(path)])
    assert result.exit_code == 0, result.output
    assert path.read_text().startswith("group,pot,team_id\n")
    assert len(path.read_text().splitlines()) == 1 + 8 * 4
    assert runner.invoke(app, ["validate", str(path)]).exit_code == 0


def test_validate_reports_violations(tmp_path):
    path = tmp_path / "draw.csv"
    runner.invoke(app, ["draw", "--seed", "1", "-o", str(path)])
    lines = path.read_text().splitlines()
    home, away = lines[1].split(",")
    lines[1] = f"{away},{home}"
    path.write_text("\n".join(lines) + "\n")

    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 1
    assert "homefixtures,expected4" in _squash(result.output)


def test_validate_malformed_dump(tmp_path):
    path = tmp_path / "draw.csv"
    path.write_text("home,away\nbarcelona,celtic\n")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 2
    assert "unrecognised" in result.output


def test_validate_missing_file(tmp_path):
    assert runner.invoke(app, ["validate", str(tmp_path / "nothing.csv")]).exit_code == 2


def test_missing_roster_is_a_usage_error(tmp_path):
    result = runner.invoke(app, ["draw", "--teams", str(tmp_path / "teams.csv")])
    assert result.exit_code == 2
    assert "rosterfilenotfound" in _squash(result.output)


def test_bad_draw_count_is_a_usage_error(tmp_path):
    result = runner.invoke(app, ["simulate", "--draws", "0", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_simulate_writes_reports(tmp_path):
    result = runner.invoke(app, [
        "simulate", "--design", "old", "--draws", "2", "--scenarios", "2",
        "--workers", "1", "--out", str(tmp_path),
    ])
    assert result.exit_code == 0, result.output

    frame = pd.read_csv(tmp_path / "probabilities.csv")
    assert list(frame.columns) == ["team_id", "name", "elo", "pot", "p_qualify", "sigma", "se_p"]
    assert len(frame) == 32
    assert frame["p_qualify"].sum() == pytest.approx(16.0)

    per_draw = pd.read_csv(tmp_path / "per_draw.csv")
    assert len(per_draw) == 64


def test_decompose_writes_reports(tmp_path):
    result = runner.invoke(app, [
        "decompose", "--draws", "2", "--scenarios", "1", "--workers", "1", "--out", str(tmp_path),
    ])
    assert result.exit_code == 0, result.output

    frame = pd.read_csv(tmp_path / "decomposition.csv")
    assert len(frame) == 36
    newcomers = frame[frame["team_id"].isin(["borussia-dortmund", "lille", "slovan-bratislava", "bologna"])]
    assert newcomers["sigma_o"].isna().all()
    for n in range(1, 7):
        assert (tmp_path / f"figure{n}_data.csv").exists()


def test_validate_names_same_association_pair(tmp_path):
    path = tmp_path / "draw.csv"
    runner.invoke(app, ["draw", "--seed", "1", "-o", str(path)])
    with path.open("a") as f:
        f.write("real-madrid,barcelona\n")

    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 1
    assert "real-madridvbarcelonaarebothESP" in _squash(result.output)


def test_validate_rejects_repeated_row(tmp_path):
    path = tmp_path / "draw.csv"
    runner.invoke(app, ["draw", "--seed", "1", "-o", str(path)])
    lines = path.read_text().splitlines()
    path.write_text("\n".join([*lines, lines[1]]) + "\n")

    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 1
    assert "homefixtures,expected4" in _squash(result.output)
    assert "islisted2times" in _squash(result.output)


@pytest.mark.slow
def test_decomposition_is_identical_across_worker_counts(tmp_path):
    outputs = []
    for workers in (1, 4, 8):
        out = tmp_path / f"w{workers}"
        result = runner.invoke(app, [
            "decompose", "--draws", "8", "--scenarios", "20", "--seed", "3",
            "--workers", str(workers), "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        outputs.append((out / "decomposition.csv").read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
