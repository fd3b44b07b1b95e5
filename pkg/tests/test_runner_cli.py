"""Run orchestration, config files, artifact formats, CLI behaviour."""

import os
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracdg.cli import main
from diracdg.errors import ConfigError
from diracdg.runner import (
    PRESETS,
    RunConfig,
    WaveSpec,
    build_space,
    config_from_flat,
    config_to_flat,
    converge_study,
    load_config,
    parse_config_text,
    preset_config,
    read_history,
    run_simulation,
    save_config,
)

FAST_1D = RunConfig(
    label="fast", dim=1, scheme="rkdg", q=2, xmin=-10.0, xmax=10.0, nx=50,
    tfinal=0.3, waves=(WaveSpec(omega=0.8),), history_every=5,
)


# --------------------------------------------------------------------------
# configuration round trips

def _not_a_number(s: str) -> bool:
    # the plain-text format is typeless: a label spelled like a number
    # ("00", "1e5") is legitimately normalised on reload, so keep the
    # round-trip property to labels that read back as words
    try:
        float(s)
    except ValueError:
        return True
    return False


_safe_label = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyz0123456789-_", min_size=1, max_size=12
).filter(_not_a_number)
_wave = st.builds(
    WaveSpec,
    omega=st.floats(0.05, 0.95),
    v=st.floats(-0.9, 0.9),
    x0=st.floats(-20, 20),
    y0=st.floats(-20, 20),
    S=st.integers(0, 2),
)


@st.composite
def _configs(draw):
    dim = draw(st.sampled_from([1, 2]))
    mms = dim == 2 and draw(st.booleans())
    return RunConfig(
        label=draw(_safe_label),
        dim=dim,
        scheme=draw(st.sampled_from(["rkdg", "lwdg", "tsdg"])),
        q=draw(st.sampled_from([1, 2, 3])),
        rk=draw(st.sampled_from(["rk4", "tvd3"])),
        tfinal=draw(st.floats(0.1, 100.0)),
        mu=draw(st.sampled_from([0.0, 0.25, 0.7])),
        history_every=draw(st.integers(1, 500)),
        xmin=-30.0,
        xmax=30.0,
        nx=draw(st.integers(4, 2000)),
        ymin=-30.0 if dim == 2 else 0.0,
        ymax=30.0 if dim == 2 else 0.0,
        ny=draw(st.integers(4, 2000)) if dim == 2 else 0,
        kappa=draw(st.sampled_from([1.0, 2.0, 3.0])),
        ic="mms" if mms else "waves",
        source="mms" if mms else "none",
        waves=()
        if mms
        else tuple(draw(st.lists(_wave, min_size=0, max_size=3))),
        probe=draw(
            st.sampled_from([(), (0.0,), (1.5,)])
            if dim == 1
            else st.sampled_from([(), (0.0, 0.0), (-1.0, 2.5)])
        ),
        snapshots=tuple(
            draw(st.lists(st.floats(0.01, 99.0), min_size=0, max_size=3))
        ),
    )


@given(_configs())
@settings(max_examples=60, deadline=None)
def test_config_text_roundtrip(cfg):
    text = "\n".join(
        f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}"
        for k, v in config_to_flat(cfg).items()
    )
    back = config_from_flat(parse_config_text(text))
    assert back == cfg


def test_config_file_roundtrip(tmp_path):
    cfg = preset_config("ex44-quaternary")
    path = tmp_path / "run.cfg"
    save_config(path, cfg)
    assert load_config(path) == cfg


def test_parse_config_rejects_junk():
    with pytest.raises(ConfigError):
        parse_config_text("run.scheme rkdg")  # missing '='
    with pytest.raises(ConfigError):
        config_from_flat({"run.scheme": "abc"})
    with pytest.raises(ConfigError):
        config_from_flat({"grid.dim": 3})
    with pytest.raises(ConfigError):
        config_from_flat({"ic.type": "mms", "grid.dim": 1})
    with pytest.raises(ConfigError):
        config_from_flat({"run.scheme": "tsdg", "run.theta": 1.0})


def test_comments_and_blanks_ignored():
    flat = parse_config_text("# hi\n\nrun.q = 3\n  # another\nrun.mu = 0.5\n")
    assert flat == {"run.q": 3, "run.mu": 0.5}


# --------------------------------------------------------------------------
# presets

@pytest.mark.parametrize("name", sorted(PRESETS))
@pytest.mark.parametrize("full", [False, True])
def test_presets_are_valid_configs(name, full):
    cfg = preset_config(name, full_scale=full)
    assert cfg.label == name
    space = build_space(cfg)
    assert space.dim == cfg.dim
    # every preset round-trips through the flat representation
    assert config_from_flat(config_to_flat(cfg)) == cfg


def test_preset_descriptions():
    for name, (_, desc) in PRESETS.items():
        assert isinstance(desc, str) and desc


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset_config("ex99-nothing")


# --------------------------------------------------------------------------
# run artifacts

@pytest.fixture(scope="module")
def fast_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts")
    cfg = replace(FAST_1D, probe=(0.0,), snapshots=(0.15,))
    res = run_simulation(cfg, outdir=str(out))
    return cfg, res, out


def test_run_result_fields(fast_run):
    cfg, res, _ = fast_run
    assert res.t == pytest.approx(cfg.tfinal)
    assert res.nsteps > 0
    assert res.history.shape[1] == 5
    # the [-10, 10] box truncates the profile tail at exp(-6) ~ 2.5e-3,
    # which caps the accuracy of this deliberately cheap run
    assert res.err_l2 is not None and res.err_l2 < 5e-3
    assert res.err_linf >= res.err_l2 / 10
    # history rows start at t=0 and end at tfinal
    assert res.history[0, 0] == 0.0
    assert res.history[-1, 0] == pytest.approx(cfg.tfinal)
    # the wall jump dissipates charge at (tail amplitude)^2, so the drift
    # is small but visible here; it must never be an increase
    assert res.history[:, 3].max() < 1e-5
    q_h = res.history[:, 1]
    assert np.all(np.diff(q_h) <= 1e-13 * q_h[0])


def test_history_file_format(fast_run):
    _, res, out = fast_run
    path = os.path.join(out, "history.csv")
    with open(path) as fh:
        assert fh.readline().rstrip("\n") == "t,Q_h,E_h,Q_rela,E_rela"
    data = read_history(path)
    assert data.shape == res.history.shape
    np.testing.assert_allclose(data[:, 1], res.history[:, 1], rtol=1e-15)
    np.testing.assert_allclose(data[:, 0], res.history[:, 0], rtol=1e-11)


def test_read_history_rejects_other_files(tmp_path):
    bad = tmp_path / "h.csv"
    bad.write_text("time,charge\n0,1\n")
    with pytest.raises(ConfigError):
        read_history(bad)


def test_snapshot_format(fast_run):
    cfg, res, out = fast_run
    path = os.path.join(out, "snapshot_final.txt")
    with open(path) as fh:
        lines = fh.read().splitlines()
    assert lines[0].startswith("# t = ")
    assert lines[1] == "# columns: x u1 u2 u3 u4 rhoQ"
    rows = [ln.split() for ln in lines[2:]]
    assert len(rows) == cfg.nx
    arr = np.array(rows, dtype=float)
    # density column is consistent with the component columns
    np.testing.assert_allclose(
        arr[:, 5], np.sum(arr[:, 1:5] ** 2, axis=1), atol=1e-12
    )
    # the timed snapshot was also written
    assert any(f.startswith("snapshot_t0.15") for f in os.listdir(out))


def test_probe_file(fast_run):
    cfg, res, out = fast_run
    data = np.loadtxt(os.path.join(out, "probe.csv"), delimiter=",",
                      skiprows=1)
    assert data.shape[0] == res.nsteps + 1
    assert data[0, 0] == 0.0
    assert np.all(data[:, 1] > 0)  # centre density of the standing wave


def test_config_artifact_loads_back(fast_run):
    cfg, _, out = fast_run
    assert load_config(os.path.join(out, "config.cfg")) == cfg


# --------------------------------------------------------------------------
# convergence study

def test_converge_study_refines():
    cfg = RunConfig(
        label="conv", dim=1, scheme="rkdg", q=2, xmin=-30.0, xmax=30.0,
        nx=0, tfinal=0.5, waves=(WaveSpec(omega=0.8),),
    )
    study = converge_study(cfg, [30, 60])
    assert study["cells"] == [30, 60]
    assert study["l2"][1] < study["l2"][0]
    assert len(study["orders"]) == 1
    assert study["orders"][0] > 2.0


def test_converge_study_needs_exact():
    cfg = RunConfig(dim=1, waves=(WaveSpec(0.8), WaveSpec(0.6)), nx=20)
    with pytest.raises(ConfigError):
        converge_study(cfg, [20, 40])


# --------------------------------------------------------------------------
# command line

def test_cli_cost(capsys, tmp_path):
    out = tmp_path / "table.txt"
    assert main(["cost", "--q", "2", "--cells", "1000", "--out",
                 str(out)]) == 0
    text = capsys.readouterr().out
    assert "768220" in text
    assert "cheapest per step at this size: tsdg" in text
    assert "768220" in out.read_text()


def test_cli_wave(capsys, tmp_path):
    out = tmp_path / "profile.txt"
    code = main(["wave", "--omega", "0.8", "--dim", "1", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "charge" in text and "decay rate" in text
    assert out.exists()


def test_cli_wave_bad_frequency(capsys):
    assert main(["wave", "--omega", "1.5"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_run_needs_source(capsys):
    assert main(["run"]) == 2


def test_cli_unknown_preset(capsys):
    assert main(["run", "--preset", "ex99-bogus"]) == 2
    assert "unknown preset" in capsys.readouterr().err


def test_cli_run_config_file(capsys, tmp_path):
    cfgfile = tmp_path / "fast.cfg"
    save_config(cfgfile, FAST_1D)
    outdir = tmp_path / "results"
    code = main(["run", "--config", str(cfgfile), "--out", str(outdir)])
    assert code == 0
    text = capsys.readouterr().out
    assert "L2 error" in text and "Q_h" in text
    assert (outdir / "history.csv").exists()
    assert (outdir / "snapshot_final.txt").exists()
    assert (outdir / "config.cfg").exists()


def test_cli_run_preset_with_overrides(capsys):
    code = main([
        "run", "--preset", "ex41-accuracy", "--tfinal", "0.5",
        "--cells", "100", "--scheme", "rkdg",
    ])
    assert code == 0
    assert "rkdg P2, 100 cells" in capsys.readouterr().out


def test_cli_omega_override_changes_first_wave(capsys, tmp_path):
    cfgfile = tmp_path / "fast.cfg"
    save_config(cfgfile, FAST_1D)
    code = main(["run", "--config", str(cfgfile), "--omega", "0.6",
                 "--tfinal", "0.1"])
    assert code == 0


def test_cli_converge(capsys, tmp_path):
    cfg = RunConfig(
        label="c", dim=1, scheme="rkdg", q=2, xmin=-12.0, xmax=12.0,
        nx=0, tfinal=0.4, waves=(WaveSpec(omega=0.8),),
    )
    cfgfile = tmp_path / "c.cfg"
    save_config(cfgfile, cfg)
    out = tmp_path / "study"
    code = main(["converge", "--config", str(cfgfile), "--cells", "30,60",
                 "--out", str(out)])
    assert code == 0
    assert "order" in capsys.readouterr().out
    lines = (out / "converge.csv").read_text().splitlines()
    assert lines[0] == "cells,l2,linf,order"
    assert len(lines) == 3


def test_cli_blowup_exit_code(capsys, tmp_path):
    wild = RunConfig(
        label="wild", dim=1, scheme="rkdg", q=2, xmin=-10.0, xmax=10.0,
        nx=40, tfinal=20.0, mu=9.0, waves=(WaveSpec(omega=0.8),),
    )
    cfgfile = tmp_path / "wild.cfg"
    save_config(cfgfile, wild)
    with np.errstate(over="ignore", invalid="ignore"):
        assert main(["run", "--config", str(cfgfile)]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_cli_missing_config_file(capsys):
    assert main(["run", "--config", "/nonexistent/path.cfg"]) == 4
