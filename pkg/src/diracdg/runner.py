"""Experiment configuration, presets, and run orchestration.

A run is described by a flat, file-friendly `RunConfig`; `run_simulation`
builds the space, initial state and stepper from it, marches to the final
time and records the conserved-quantity history (and an optional pointwise
|psi|^2 probe).  `converge_study` repeats a run over a ladder of meshes
and measures errors against the exact solution the configuration implies
(single travelling/standing wave, or the manufactured field).

Config files are plain ``section.key = value`` lines; see `save_config` /
`load_config`.  The bundled presets mirror the standard experiment set at
desk scale; `full_scale=True` restores the published domain, resolution
and final time of each experiment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .diagnostics import (
    probe_charge_density,
    relative_drift,
    total_charge,
    total_energy,
)
from .errors import ConfigError
from .integrators import cfl_dt, default_mu, evolve, rk4_step, tvd_rk3_step
from .lwdg import lwdg_step
from .mesh import DGSpace1D, DGSpace2D, Grid1D, Grid2D, convergence_orders
from .model import NLDModel, charge_density
from .semidiscrete import rkdg_residual
from .tsdg import tsdg_step
from .waves import MMSSource, mms_state, solve_standing_wave, superposed_real


@dataclass(frozen=True)
class WaveSpec:
    omega: float = 0.8
    v: float = 0.0
    x0: float = 0.0
    y0: float = 0.0
    S: int = 0


@dataclass(frozen=True)
class RunConfig:
    label: str = "run"
    dim: int = 1
    scheme: str = "rkdg"  # rkdg | lwdg | tsdg
    q: int = 2
    rk: str = "rk4"  # rk4 | tvd3 (rkdg only)
    theta: float = 1.0 / 3.0  # tsdg stage parameter
    tfinal: float = 1.0
    mu: float = 0.0  # 0 -> default CFL number for (dim, q, scheme)
    history_every: int = 20
    xmin: float = -1.0
    xmax: float = 1.0
    nx: int = 64
    ymin: float = 0.0
    ymax: float = 0.0
    ny: int = 0
    m: float = 1.0
    lam: float = 0.5
    kappa: float = 1.0
    ic: str = "waves"  # waves | mms
    source: str = "none"  # none | mms
    waves: tuple = ()
    wave_R: float = 0.0  # 0 -> solver default
    wave_N: int = 256
    probe: tuple = ()  # () or (x,) / (x, y)
    exact: str = "auto"  # auto | waves | mms | none
    snapshots: tuple = ()

    def model(self) -> NLDModel:
        return NLDModel(m=self.m, lam=self.lam, kappa=self.kappa)

    def effective_mu(self) -> float:
        return self.mu if self.mu > 0.0 else default_mu(self.dim, self.q, self.scheme)

    def exact_kind(self) -> str:
        if self.exact != "auto":
            return self.exact
        if self.ic == "mms":
            return "mms"
        if self.ic == "waves" and len(self.waves) == 1:
            return "waves"
        return "none"


# ---------------------------------------------------------------------------
# flat config files

_SCALAR_FIELDS = {
    "run.label": "label", "run.scheme": "scheme", "run.q": "q", "run.rk": "rk",
    "run.theta": "theta", "run.tfinal": "tfinal", "run.mu": "mu",
    "run.history_every": "history_every", "run.exact": "exact",
    "grid.dim": "dim", "grid.xmin": "xmin", "grid.xmax": "xmax", "grid.nx": "nx",
    "grid.ymin": "ymin", "grid.ymax": "ymax", "grid.ny": "ny",
    "model.m": "m", "model.lam": "lam", "model.kappa": "kappa",
    "ic.type": "ic", "ic.source": "source", "ic.wave_R": "wave_R",
    "ic.wave_N": "wave_N",
}
_WAVE_FIELDS = ("omega", "v", "x0", "y0", "S")

# parse_config_text guesses value types from their spelling, so a label like
# "42" or a q written as "2.0" arrives mistyped; normalise per field here.
_STR_ATTRS = frozenset(("label", "scheme", "rk", "exact", "ic", "source"))
_INT_ATTRS = frozenset(("q", "dim", "nx", "ny", "history_every", "wave_N"))


def config_to_flat(cfg: RunConfig) -> dict:
    flat = {key: getattr(cfg, attr) for key, attr in _SCALAR_FIELDS.items()}
    for i, wv in enumerate(cfg.waves, start=1):
        for f in _WAVE_FIELDS:
            flat[f"ic.wave{i}.{f}"] = getattr(wv, f)
    if cfg.probe:
        flat["probe.x"] = cfg.probe[0]
        if len(cfg.probe) > 1:
            flat["probe.y"] = cfg.probe[1]
    if cfg.snapshots:
        flat["run.snapshots"] = ",".join(repr(s) for s in cfg.snapshots)
    return flat


def config_from_flat(flat: dict) -> RunConfig:
    kwargs = {}
    for key, attr in _SCALAR_FIELDS.items():
        if key in flat:
            val = flat[key]
            if attr in _STR_ATTRS:
                val = str(val)
            elif attr in _INT_ATTRS:
                val = int(val)
            kwargs[attr] = val
    waves = []
    i = 1
    while f"ic.wave{i}.omega" in flat:
        fields = {f: flat.get(f"ic.wave{i}.{f}", getattr(WaveSpec, f))
                  for f in _WAVE_FIELDS}
        fields["S"] = int(fields["S"])
        waves.append(WaveSpec(**fields))
        i += 1
    kwargs["waves"] = tuple(waves)
    if "probe.x" in flat:
        probe = (flat["probe.x"],)
        if "probe.y" in flat:
            probe = probe + (flat["probe.y"],)
        kwargs["probe"] = probe
    if "run.snapshots" in flat and flat["run.snapshots"]:
        kwargs["snapshots"] = tuple(
            float(tok) for tok in str(flat["run.snapshots"]).split(",")
        )
    cfg = RunConfig(**kwargs)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    if cfg.scheme not in ("rkdg", "lwdg", "tsdg"):
        raise ConfigError(f"unknown scheme {cfg.scheme!r}")
    if cfg.rk not in ("rk4", "tvd3"):
        raise ConfigError(f"unknown Runge-Kutta variant {cfg.rk!r}")
    if cfg.dim not in (1, 2):
        raise ConfigError(f"dim must be 1 or 2, got {cfg.dim}")
    if cfg.ic not in ("waves", "mms"):
        raise ConfigError(f"unknown initial condition {cfg.ic!r}")
    if cfg.source not in ("none", "mms"):
        raise ConfigError(f"unknown source {cfg.source!r}")
    if cfg.ic == "mms" and cfg.dim != 2:
        raise ConfigError("the manufactured problem is two-dimensional")
    if cfg.scheme == "tsdg" and abs(1.0 - cfg.theta) < 1e-12:
        raise ConfigError("two-stage scheme undefined at theta = 1")


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_value(tok: str):
    tok = tok.strip()
    low = tok.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        pass
    return tok


def save_config(path, cfg: RunConfig):
    flat = config_to_flat(cfg)
    with open(path, "w") as fh:
        fh.write("# diracdg run configuration\n")
        for key in sorted(flat):
            fh.write(f"{key} = {_format_value(flat[key])}\n")


def parse_config_text(text: str) -> dict:
    flat = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        key, val = line.split("=", 1)
        flat[key.strip()] = _parse_value(val)
    return flat


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return config_from_flat(parse_config_text(fh.read()))


# ---------------------------------------------------------------------------
# building blocks

_PROFILE_CACHE: dict = {}


def _get_profile(wv: WaveSpec, cfg: RunConfig):
    key = (
        round(wv.omega, 12), wv.S, cfg.dim, cfg.m, cfg.lam, cfg.kappa,
        cfg.wave_R, cfg.wave_N,
    )
    if key not in _PROFILE_CACHE:
        _PROFILE_CACHE[key] = solve_standing_wave(
            wv.omega, dim=cfg.dim, S=wv.S, model=cfg.model(),
            R=cfg.wave_R or None, N=cfg.wave_N,
        )
    return _PROFILE_CACHE[key]


def build_space(cfg: RunConfig):
    if cfg.dim == 1:
        return DGSpace1D(Grid1D(cfg.xmin, cfg.xmax, cfg.nx), cfg.q)
    return DGSpace2D(
        Grid2D(cfg.xmin, cfg.xmax, cfg.nx, cfg.ymin, cfg.ymax, cfg.ny), cfg.q
    )


def _wave_specs(cfg: RunConfig):
    return [
        {"profile": _get_profile(wv, cfg), "v": wv.v, "x0": wv.x0, "y0": wv.y0}
        for wv in cfg.waves
    ]


def exact_state_fn(cfg: RunConfig, t: float):
    """Callable exact solution at time t, or None."""
    kind = cfg.exact_kind()
    if kind == "none":
        return None
    if kind == "mms":
        return lambda x, y: mms_state(x, y, t)
    specs = _wave_specs(cfg)
    if cfg.dim == 1:
        return lambda x: superposed_real(specs, t, x)
    return lambda x, y: superposed_real(specs, t, x, y)


def initial_state(cfg: RunConfig, space):
    if cfg.ic == "mms":
        return space.project(lambda x, y: mms_state(x, y, 0.0))
    specs = _wave_specs(cfg)
    if cfg.dim == 1:
        return space.project(lambda x: superposed_real(specs, 0.0, x))
    return space.project(lambda x, y: superposed_real(specs, 0.0, x, y))


def make_stepper(cfg: RunConfig, space, model, source):
    if cfg.scheme == "lwdg":
        return lambda u, t, tau: lwdg_step(space, model, u, t, tau, source)
    if cfg.scheme == "tsdg":
        return lambda u, t, tau: tsdg_step(
            space, model, u, t, tau, theta=cfg.theta, source=source
        )

    def L(u, t):
        return rkdg_residual(space, model, u, t, source)

    rk = rk4_step if cfg.rk == "rk4" else tvd_rk3_step
    return lambda u, t, tau: rk(u, t, tau, L)


# ---------------------------------------------------------------------------
# run orchestration

@dataclass
class RunResult:
    cfg: RunConfig
    space: object
    model: NLDModel
    coeffs: np.ndarray
    t: float
    dt: float
    nsteps: int
    history: np.ndarray  # rows (t, Q, E, Qrel, Erel)
    probe: np.ndarray | None
    err_l2: float | None = None
    err_linf: float | None = None


def run_simulation(cfg: RunConfig, outdir=None) -> RunResult:
    _validate(cfg)
    space = build_space(cfg)
    model = cfg.model()
    source = MMSSource(model) if cfg.source == "mms" else None
    u0 = initial_state(cfg, space)
    step = make_stepper(cfg, space, model, source)
    dt = cfl_dt(space, cfg.effective_mu())

    q0 = total_charge(space, u0)
    e0 = total_energy(space, u0, model)
    history = []
    probe_rows = [] if cfg.probe else None
    pending_snaps = sorted(cfg.snapshots)
    written = []

    def record(t, u):
        q = total_charge(space, u)
        e = total_energy(space, u, model)
        history.append(
            (t, q, e, relative_drift(q, q0), relative_drift(e, e0))
        )

    def observer(istep, t, u):
        if istep % cfg.history_every == 0:
            record(t, u)
        if probe_rows is not None:
            probe_rows.append((t, probe_charge_density(space, u, *cfg.probe)))
        while pending_snaps and t >= pending_snaps[0] - 1e-12:
            s = pending_snaps.pop(0)
            if outdir is not None:
                fn = os.path.join(outdir, f"snapshot_t{s:g}.txt")
                write_snapshot(fn, space, u, t)
                written.append(fn)

    u, t = evolve(step, u0, 0.0, cfg.tfinal, dt, observer=observer)
    nsteps = int(np.ceil(cfg.tfinal / dt - 1e-9))
    if not history or history[-1][0] < t:
        record(t, u)
    hist = np.array(history)
    probe = np.array(probe_rows) if probe_rows is not None else None

    res = RunResult(cfg, space, model, u, t, dt, nsteps, hist, probe)
    exact = exact_state_fn(cfg, t)
    if exact is not None:
        res.err_l2 = space.l2_error(u, exact)
        res.err_linf = space.linf_error(u, exact)

    if outdir is not None:
        os.makedirs(outdir, exist_ok=True)
        save_config(os.path.join(outdir, "config.cfg"), cfg)
        write_history(os.path.join(outdir, "history.csv"), hist)
        write_snapshot(os.path.join(outdir, "snapshot_final.txt"), space, u, t)
        if probe is not None:
            write_probe(os.path.join(outdir, "probe.csv"), probe)
    return res


def converge_study(cfg: RunConfig, cells, jobs: int = 1):
    """Errors/orders under mesh refinement; needs an exact solution."""
    if cfg.exact_kind() == "none":
        raise ConfigError("convergence study needs a computable exact solution")
    configs = []
    for n in cells:
        upd = {"nx": int(n)}
        if cfg.dim == 2:
            upd["ny"] = int(n)
        configs.append(replace(cfg, **upd))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            pairs = list(pool.map(_errors_of, configs))
    else:
        pairs = [_errors_of(c) for c in configs]
    l2 = [p[0] for p in pairs]
    linf = [p[1] for p in pairs]
    orders = list(convergence_orders(l2))
    return {"cells": list(cells), "l2": l2, "linf": linf, "orders": orders}


def _errors_of(cfg: RunConfig):
    res = run_simulation(cfg)
    return res.err_l2, res.err_linf


# ---------------------------------------------------------------------------
# artifact writers

def write_history(path, history):
    with open(path, "w") as fh:
        fh.write("t,Q_h,E_h,Q_rela,E_rela\n")
        for row in history:
            fh.write(
                f"{row[0]:.12g},{row[1]:.16e},{row[2]:.16e},"
                f"{row[3]:.6e},{row[4]:.6e}\n"
            )


def write_probe(path, probe):
    with open(path, "w") as fh:
        fh.write("t,rhoQ\n")
        for trow, val in probe:
            fh.write(f"{trow:.12g},{val:.16e}\n")


def write_snapshot(path, space, coeffs, t):
    """Columnar dump of the field at cell centers: x [y] u1..u4 rhoQ."""
    with open(path, "w") as fh:
        fh.write(f"# t = {t!r}\n")
        if space.dim == 1:
            fh.write("# columns: x u1 u2 u3 u4 rhoQ\n")
            x = space.grid.centers()
            vals = space.point_values(coeffs, x)
            dens = charge_density(vals)
            for i in range(x.size):
                comps = " ".join(f"{vals[c, i]:.12e}" for c in range(4))
                fh.write(f"{x[i]:.12e} {comps} {dens[i]:.12e}\n")
        else:
            fh.write("# columns: x y u1 u2 u3 u4 rhoQ\n")
            cx, cy = space.grid.xcenters(), space.grid.ycenters()
            X, Y = np.meshgrid(cx, cy, indexing="ij")
            xf, yf = X.ravel(), Y.ravel()
            vals = space.point_values(coeffs, xf, yf)
            dens = charge_density(vals)
            for i in range(xf.size):
                comps = " ".join(f"{vals[c, i]:.12e}" for c in range(4))
                fh.write(f"{xf[i]:.12e} {yf[i]:.12e} {comps} {dens[i]:.12e}\n")


def read_history(path):
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "t,Q_h,E_h,Q_rela,E_rela":
            raise ConfigError(f"unexpected history header: {header!r}")
        for line in fh:
            if line.strip():
                rows.append([float(tok) for tok in line.split(",")])
    return np.array(rows)


# ---------------------------------------------------------------------------
# presets

def _preset_ex41(full):
    return RunConfig(
        label="ex41-accuracy", dim=1, scheme="lwdg", q=2,
        xmin=-60.0, xmax=60.0, nx=200, tfinal=50.0,
        waves=(WaveSpec(omega=0.8, v=-0.2, x0=5.0),), history_every=200,
    )


def _preset_ex42(full):
    return RunConfig(
        label="ex42-error-history", dim=1, scheme="rkdg", q=3,
        xmin=-30.0, xmax=30.0, nx=500, tfinal=3000.0 if full else 50.0,
        waves=(WaveSpec(omega=0.8),), history_every=50,
    )


def _preset_ex43(full):
    n = 40 if full else 20
    return RunConfig(
        label="ex43-mms", dim=2, scheme="lwdg", q=2,
        xmin=-2.0, xmax=2.0, nx=n, ymin=-2.0, ymax=2.0, ny=n,
        tfinal=0.2, ic="mms", source="mms", history_every=10,
    )


def _preset_ex44(full):
    return RunConfig(
        label="ex44-quaternary", dim=1, scheme="rkdg", q=2,
        xmin=-70.0, xmax=70.0, nx=1400, tfinal=80.0 if full else 40.0,
        waves=(
            WaveSpec(omega=0.6, v=0.2, x0=-15.0),
            WaveSpec(omega=0.8, v=0.1, x0=-5.0),
            WaveSpec(omega=0.8, v=-0.1, x0=5.0),
            WaveSpec(omega=0.6, v=-0.2, x0=15.0),
        ),
        history_every=200,
    )


def _preset_ex45(full):
    n = 150 if full else 100
    return RunConfig(
        label="ex45-standing", dim=2, scheme="tsdg", q=2,
        xmin=-15.0, xmax=15.0, nx=n, ymin=-15.0, ymax=15.0, ny=n,
        tfinal=300.0 if full else 10.0, mu=0.7,
        waves=(WaveSpec(omega=0.8),), history_every=50,
    )


def _preset_ex46(full):
    if full:
        half, n, scheme, t = 25.5, 255, "lwdg", 600.0
    else:
        half, n, scheme, t = 16.0, 80, "tsdg", 100.0
    return RunConfig(
        label="ex46-oscillation", dim=2, scheme=scheme, q=2,
        xmin=-half, xmax=half, nx=n, ymin=-half, ymax=half, ny=n,
        tfinal=t,
        waves=(WaveSpec(omega=0.8, x0=-2.0), WaveSpec(omega=0.8, x0=2.0)),
        probe=(0.0, 0.0), history_every=100,
    )


def _preset_ex47(full):
    n = 200 if full else 100
    return RunConfig(
        label="ex47-travelling", dim=2, scheme="lwdg", q=2,
        xmin=-20.0, xmax=20.0, nx=n, ymin=-20.0, ymax=20.0, ny=n,
        tfinal=200.0 if full else 10.0,
        waves=(WaveSpec(omega=0.8, v=-0.1),), history_every=50,
    )


def _preset_ex48(full):
    return RunConfig(
        label="ex48-breathing", dim=2, scheme="lwdg", q=2, kappa=2.0,
        xmin=-16.0, xmax=16.0, nx=80, ymin=-16.0, ymax=16.0, ny=80,
        tfinal=300.0 if full else 20.0,
        waves=(WaveSpec(omega=0.94),), probe=(0.0, 0.0), history_every=50,
    )


PRESETS = {
    "ex41-accuracy": (_preset_ex41, "1D travelling wave, error vs exact"),
    "ex42-error-history": (_preset_ex42, "1D standing wave, long-time drift"),
    "ex43-mms": (_preset_ex43, "2D forced Gaussian accuracy test"),
    "ex44-quaternary": (_preset_ex44, "1D four-wave collision"),
    "ex45-standing": (_preset_ex45, "2D standing wave"),
    "ex46-oscillation": (_preset_ex46, "2D two-wave bound oscillation"),
    "ex47-travelling": (_preset_ex47, "2D boosted wave transport"),
    "ex48-breathing": (_preset_ex48, "2D quintic breathing wave"),
}


def preset_config(name: str, full_scale: bool = False) -> RunConfig:
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r} (known: {known})")
    return PRESETS[name][0](full_scale)
