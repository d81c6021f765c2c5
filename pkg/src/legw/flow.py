"""Explicit integration of the Legendrian Willmore (LeW) flow.

The flow moves ``F`` along the contact field generated by ``-s_f``::

    dF/dt = -s_f R - 1/2 J grad s_f,    s_f = div(J W + 4 J H),

which is the negative L2 gradient of ``W`` among Legendrian immersions.
Steps are classical RK4 with reprojection to the unit sphere after every
stage; a step whose energy rises by more than ``energy_tol * (1 + |W|)``
is retried with half the step size.

The default step size comes from the leading symbol of the linearised
operator, ``s -> s_f ~ 1/4 Lambda^3 s`` with ``Lambda`` the largest
resolved eigenvalue of ``-Delta_g`` on the grid:

    dt = safety * h^6 / lambda_hat,   lambda_hat = 1/4 (h^2 Lambda)^3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import DegenerateMetric, DriftExceeded, StepRejected
from .geometry import JH_COEFFICIENT
from .invariants import willmore_energy
from .io import read_checkpoint, read_csv, write_checkpoint, write_csv
from .surface import ImmersionGrid, legendre_residual

SERIES_HEADER = ["step", "time", "dt", "W", "dissipation", "legendre_drift", "max_sf"]
CHECKPOINT_RE = re.compile(r"ckpt_(\d+)\.lewgrid$")


@dataclass(frozen=True)
class FlowControls:
    dt_mode: str = "auto"  # "auto" or "fixed"
    dt: float | None = None  # used when dt_mode == "fixed"
    safety: float = 0.1
    max_steps: int = 200
    checkpoint_every: int = 0  # 0 disables periodic checkpoints
    drift_ceiling: float = 1e-5
    projection: bool = True  # sphere reprojection after each RK stage
    max_retries: int = 10
    energy_tol: float = 1e-8
    stationarity: float = 1e-8
    jh_coefficient: float = JH_COEFFICIENT

    def __post_init__(self):
        if self.dt_mode not in ("auto", "fixed"):
            raise ValueError(f"dt_mode must be 'auto' or 'fixed', got {self.dt_mode!r}")
        if self.dt_mode == "fixed" and not (self.dt is not None and self.dt > 0):
            raise ValueError("fixed dt mode needs dt > 0")
        if not 0 < self.safety <= 1:
            raise ValueError("safety must lie in (0, 1]")


@dataclass(frozen=True)
class HistoryRow:
    step: int
    time: float
    dt: float
    W: float
    dissipation: float
    legendre_drift: float
    max_sf: float

    def as_list(self):
        return [self.step, self.time, self.dt, self.W, self.dissipation, self.legendre_drift, self.max_sf]


@dataclass
class FlowState:
    grid: ImmersionGrid
    time: float = 0.0
    step: int = 0
    history: list = field(default_factory=list)
    retries: int = 0  # step halvings used by the last step

    @property
    def W(self):
        return self.history[-1].W


# --------------------------------------------------------------------------
# pointwise pieces
# --------------------------------------------------------------------------


def _sf(grid, coefficient=JH_COEFFICIENT):
    geom = grid.geometry
    return geom.cslw if coefficient == JH_COEFFICIENT else geom.cslw_with(coefficient)


def lew_velocity(grid, jh_coefficient=JH_COEFFICIENT):
    """``-s_f R - 1/2 J grad s_f`` as a ``(nu, nv, 6)`` array."""
    geom = grid.geometry
    V = geom.contact_field(-_sf(grid, jh_coefficient))
    return np.moveaxis(V, 0, -1)


def dissipation(grid, jh_coefficient=JH_COEFFICIENT):
    """``1/4 int s_f^2 dmu``."""
    sf = _sf(grid, jh_coefficient)
    return 0.25 * grid.integrate(sf * sf)


def lambda_hat(grid):
    """``1/4 (h^2 Lambda)^3`` with ``Lambda = max k^T g^{-1} k`` over ``|k| <= N/2``."""
    gi = grid.geometry.ginv
    ku, kv = grid.nu / 2, grid.nv / 2
    corners = np.maximum(
        gi[0][0] * ku * ku + 2 * gi[0][1] * ku * kv + gi[1][1] * kv * kv,
        gi[0][0] * ku * ku - 2 * gi[0][1] * ku * kv + gi[1][1] * kv * kv,
    )
    h = 2 * np.pi / max(grid.nu, grid.nv)
    return 0.25 * (h * h * float(np.max(corners))) ** 3


def auto_dt(grid, safety=0.1):
    h = 2 * np.pi / max(grid.nu, grid.nv)
    return safety * h**6 / lambda_hat(grid)


def _project(x, on):
    return x / np.linalg.norm(x, axis=-1, keepdims=True) if on else x


def rk4_update(grid, dt, controls):
    """One RK4 step from ``grid``; returns raw values ``(nu, nv, 6)``."""
    c = controls.jh_coefficient

    def rate(values):
        return lew_velocity(ImmersionGrid(values, check=False), c)

    x = grid.values
    k1 = lew_velocity(grid, c)
    k2 = rate(_project(x + 0.5 * dt * k1, controls.projection))
    k3 = rate(_project(x + 0.5 * dt * k2, controls.projection))
    k4 = rate(_project(x + dt * k3, controls.projection))
    x_new = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return _project(x_new, controls.projection)


def _row(step, time, dt, grid, coefficient):
    sf = _sf(grid, coefficient)
    return HistoryRow(
        step=step,
        time=time,
        dt=dt,
        W=willmore_energy(grid),
        dissipation=0.25 * grid.integrate(sf * sf),
        legendre_drift=legendre_residual(grid),
        max_sf=float(np.max(np.abs(sf))),
    )


def initial_state(grid, time=0.0, step=0, controls=FlowControls()):
    return FlowState(grid=grid, time=time, step=step, history=[_row(step, time, 0.0, grid, controls.jh_coefficient)])


# --------------------------------------------------------------------------
# stepping
# --------------------------------------------------------------------------


def step(state, controls=FlowControls()):
    """Advance by one accepted step; returns a new :class:`FlowState`."""
    grid = state.grid
    W0 = state.W
    dt = controls.dt if controls.dt_mode == "fixed" else auto_dt(grid, controls.safety)
    tol = controls.energy_tol * (1.0 + abs(W0))
    for attempt in range(controls.max_retries + 1):
        W1 = np.inf
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            try:
                new_values = rk4_update(grid, dt, controls)
                new_grid = ImmersionGrid(new_values, check=controls.projection)
                W1 = willmore_energy(new_grid)
            except (ValueError, DegenerateMetric):
                pass  # blown-up candidate; treated like an energy increase
        if np.isfinite(W1) and W1 - W0 <= tol:
            break
        if attempt == controls.max_retries:
            raise StepRejected(
                f"step {state.step + 1}: W rose by {W1 - W0:.3e} after {controls.max_retries} halvings (dt={dt:.3e})"
            )
        dt *= 0.5
    time = state.time + dt
    row = _row(state.step + 1, time, dt, new_grid, controls.jh_coefficient)
    new_state = FlowState(
        grid=new_grid,
        time=time,
        step=state.step + 1,
        history=state.history + [row],
        retries=attempt,
    )
    if row.legendre_drift > controls.drift_ceiling:
        raise DriftExceeded(
            f"step {row.step}: legendre drift {row.legendre_drift:.3e} > {controls.drift_ceiling:.1e}",
        )
    return new_state


@dataclass
class FlowResult:
    state: FlowState
    reason: str  # "max_steps", "stationary" or the error class name
    error: Exception | None = None


def _write_outputs(out_dir, state):
    write_csv(Path(out_dir) / "series.csv", SERIES_HEADER, [r.as_list() for r in state.history])


def run(grid_or_state, controls=FlowControls(), out_dir=None):
    """Iterate :func:`step` until ``max_steps`` steps, stationarity or an error.

    ``max_steps`` counts steps taken in this call.  With ``out_dir`` the
    series CSV is written at every checkpoint and at the end, and
    ``ckpt_<step>.lewgrid`` every ``checkpoint_every`` steps.  Errors from
    :func:`step` are re-raised after the partial outputs are written, with
    the result attached as ``exc.result``.
    """
    state = grid_or_state if isinstance(grid_or_state, FlowState) else initial_state(grid_or_state, controls=controls)
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    reason = "max_steps"
    target = state.step + controls.max_steps
    try:
        while state.step < target:
            if state.history[-1].max_sf < controls.stationarity:
                reason = "stationary"
                break
            state = step(state, controls)
            every = controls.checkpoint_every
            if out_dir is not None and every and state.step % every == 0:
                write_checkpoint(Path(out_dir) / f"ckpt_{state.step}.lewgrid", state.grid, state.time)
                _write_outputs(out_dir, state)
    except (StepRejected, DriftExceeded) as exc:
        if out_dir is not None:
            _write_outputs(out_dir, state)
        exc.result = FlowResult(state, type(exc).__name__, exc)
        raise
    if out_dir is not None:
        _write_outputs(out_dir, state)
    return FlowResult(state, reason)


def latest_checkpoint(out_dir):
    """``(step, path)`` of the highest-numbered checkpoint, or ``None``."""
    best = None
    for p in Path(out_dir).glob("ckpt_*.lewgrid"):
        m = CHECKPOINT_RE.search(p.name)
        if m and (best is None or int(m.group(1)) > best[0]):
            best = (int(m.group(1)), p)
    return best


def resume_state(out_dir, controls=FlowControls()):
    """Rebuild the state at the latest checkpoint, keeping the earlier series rows."""
    found = latest_checkpoint(out_dir)
    if found is None:
        raise FileNotFoundError(f"no checkpoint in {out_dir}")
    step_no, path = found
    grid, time = read_checkpoint(path)
    state = initial_state(grid, time=time, step=step_no, controls=controls)
    series = Path(out_dir) / "series.csv"
    rows = read_csv(series)[1] if series.exists() else []
    last = state.history[-1]
    for r in rows:
        if int(r[0]) == step_no:
            last = replace(last, dt=r[2])
    state.history = [HistoryRow(int(r[0]), *r[1:]) for r in rows if int(r[0]) < step_no] + [last]
    return state
