"""Deterministic synthetic signal generators.

Four systems: a closed-form two-tone signal sin(t) + sin(2t), the Lorenz
and Rossler attractors, and a double pendulum of two uniform rods with
equal masses and lengths. ODE systems integrate with fixed-step RK4; there
is no RNG anywhere, so identical specs produce bit-identical trajectories.

The pendulum's equations of motion come from the Lagrangian

    L = (1/6) m l^2 (w2^2 + 4 w1^2 + 3 w1 w2 cos(th1 - th2))
        + (1/2) m g l (3 cos th1 + cos th2),

whose Euler-Lagrange equations reduce to

    [8   3c] [w1']   [-3 s w2^2 - 9 (g/l) sin th1]
    [3c   2] [w2'] = [ 3 s w1^2 - 3 (g/l) sin th2]

with c = cos(th1 - th2), s = sin(th1 - th2). The derivation is validated
by the energy-conservation test rather than trusted: total energy is
conserved to well below 0.1% of the m g l scale over the short run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import TimeSeries
from .errors import NumericalError, ParameterError

__all__ = [
    "SystemSpec",
    "Trajectory",
    "simulate",
    "measure",
    "preset",
    "preset_names",
    "observables_for",
    "default_observable",
    "pendulum_energy",
]

_KINDS = ("two_tone", "lorenz", "rossler", "double_pendulum")

_DEFAULT_PARAMETERS = {
    "two_tone": {},
    "lorenz": {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0},
    "rossler": {"a": 0.1, "b": 0.1, "c": 14.0},
    "double_pendulum": {"m": 1.0, "l": 1.0, "g": 10.0},
}

_STATE_DIM = {"two_tone": 0, "lorenz": 3, "rossler": 3, "double_pendulum": 4}

_OBSERVABLES = {
    "two_tone": ("x",),
    "lorenz": ("x",),
    "rossler": ("x",),
    "double_pendulum": ("sin_theta1", "sin_theta2"),
}


@dataclass(frozen=True)
class SystemSpec:
    """Full description of one deterministic simulation."""

    kind: str
    parameters: dict
    initial_state: tuple
    dt: float
    samples: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParameterError(
                f"unknown system kind {self.kind!r}; choose from {_KINDS}"
            )
        defaults = _DEFAULT_PARAMETERS[self.kind]
        params = dict(self.parameters)
        unknown = sorted(set(params) - set(defaults))
        if unknown:
            raise ParameterError(
                f"unknown parameter(s) {unknown} for kind {self.kind!r}; "
                f"valid names: {sorted(defaults)}"
            )
        merged = dict(defaults)
        for k, v in params.items():
            merged[k] = float(v)
            if not math.isfinite(merged[k]):
                raise ParameterError(f"parameter {k!r} must be finite, got {v}")
        state = tuple(float(v) for v in self.initial_state)
        if len(state) != _STATE_DIM[self.kind]:
            raise ParameterError(
                f"{self.kind} needs an initial state of length "
                f"{_STATE_DIM[self.kind]}, got {len(state)}"
            )
        if not all(math.isfinite(v) for v in state):
            raise ParameterError("initial state must be finite")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ParameterError(f"dt must be positive and finite, got {self.dt}")
        if not isinstance(self.samples, (int, np.integer)) or isinstance(
            self.samples, bool
        ):
            raise ParameterError(f"samples must be an integer, got {self.samples!r}")
        if self.samples < 2:
            raise ParameterError(f"samples must be >= 2, got {self.samples}")
        object.__setattr__(self, "parameters", merged)
        object.__setattr__(self, "initial_state", state)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "samples", int(self.samples))


@dataclass(frozen=True)
class Trajectory:
    """Simulated state snapshots, one row per sample, starting at t0 = 0."""

    spec: SystemSpec
    states: np.ndarray = field(repr=False)

    @property
    def dt(self) -> float:
        return self.spec.dt

    def __len__(self):
        return self.states.shape[0]


def _rk4(f, state, dt, steps, dim):
    out = np.empty((steps, dim))
    s = state
    half = 0.5 * dt
    rng = range(dim)
    for i in range(steps):
        out[i] = s
        k1 = f(*s)
        k2 = f(*[s[j] + half * k1[j] for j in rng])
        k3 = f(*[s[j] + half * k2[j] for j in rng])
        k4 = f(*[s[j] + dt * k3[j] for j in rng])
        s = tuple(
            s[j] + dt * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]) / 6 for j in rng
        )
        if not all(math.isfinite(v) for v in s):
            raise NumericalError(
                f"state became non-finite at integration step {i + 1}"
            )
    return out


def simulate(spec: SystemSpec) -> Trajectory:
    """Integrate the specified system; trajectory length equals spec.samples.

    The two-tone signal is evaluated in closed form (one state column);
    the ODE systems use fixed-step RK4 with the stated right-hand sides.
    """
    if not isinstance(spec, SystemSpec):
        raise ParameterError(f"expected a SystemSpec, got {type(spec).__name__}")
    p = spec.parameters
    if spec.kind == "two_tone":
        t = spec.dt * np.arange(spec.samples)
        states = (np.sin(t) + np.sin(2.0 * t))[:, None].copy()
        return Trajectory(spec=spec, states=states)
    if spec.kind == "lorenz":
        sig, rho, beta = p["sigma"], p["rho"], p["beta"]

        def f(x, y, z):
            return sig * (y - x), x * (rho - z) - y, x * y - beta * z

        states = _rk4(f, spec.initial_state, spec.dt, spec.samples, 3)
        return Trajectory(spec=spec, states=states)
    if spec.kind == "rossler":
        a, b, c = p["a"], p["b"], p["c"]

        def f(x, y, z):
            return -y - z, x + a * y, b + z * (x - c)

        states = _rk4(f, spec.initial_state, spec.dt, spec.samples, 3)
        return Trajectory(spec=spec, states=states)
    # double pendulum
    gl = p["g"] / p["l"]

    def f(th1, th2, w1, w2):
        c = np.cos(th1 - th2)
        s = np.sin(th1 - th2)
        b1 = -3 * s * w2 * w2 - 9 * gl * np.sin(th1)
        b2 = 3 * s * w1 * w1 - 3 * gl * np.sin(th2)
        det = 16 - 9 * c * c
        return w1, w2, (2 * b1 - 3 * c * b2) / det, (8 * b2 - 3 * c * b1) / det

    states = _rk4(f, spec.initial_state, spec.dt, spec.samples, 4)
    return Trajectory(spec=spec, states=states)


def observables_for(kind: str):
    """Valid observable names for a system kind."""
    if kind not in _KINDS:
        raise ParameterError(f"unknown system kind {kind!r}; choose from {_KINDS}")
    return _OBSERVABLES[kind]


def default_observable(kind: str) -> str:
    return observables_for(kind)[0]


def measure(trajectory: Trajectory, observable: str) -> TimeSeries:
    """Project a trajectory onto a scalar observable.

    'x' reads the first state coordinate; 'sin_theta1'/'sin_theta2' apply
    sine to the pendulum angles. The series keeps the simulation's dt and
    starts at t0 = 0.
    """
    if not isinstance(trajectory, Trajectory):
        raise ParameterError(
            f"expected a Trajectory, got {type(trajectory).__name__}"
        )
    kind = trajectory.spec.kind
    valid = _OBSERVABLES[kind]
    if observable not in valid:
        raise ParameterError(
            f"observable {observable!r} is not valid for {kind!r}; "
            f"choose from {valid}"
        )
    if observable == "x":
        values = trajectory.states[:, 0].copy()
    elif observable == "sin_theta1":
        values = np.sin(trajectory.states[:, 0])
    else:
        values = np.sin(trajectory.states[:, 1])
    return TimeSeries(t0=0.0, dt=trajectory.dt, values=values)


def pendulum_energy(trajectory: Trajectory) -> np.ndarray:
    """Total energy of the double pendulum at each sample."""
    if not isinstance(trajectory, Trajectory):
        raise ParameterError(
            f"expected a Trajectory, got {type(trajectory).__name__}"
        )
    if trajectory.spec.kind != "double_pendulum":
        raise ParameterError(
            f"energy is defined for double_pendulum, got {trajectory.spec.kind!r}"
        )
    p = trajectory.spec.parameters
    m, l, g = p["m"], p["l"], p["g"]
    th1, th2, w1, w2 = trajectory.states.T
    c = np.cos(th1 - th2)
    kinetic = m * l * l / 6 * (w2**2 + 4 * w1**2 + 3 * w1 * w2 * c)
    potential = -0.5 * m * g * l * (3 * np.cos(th1) + np.cos(th2))
    return kinetic + potential


_PRESETS = {
    "two_tone": ("two_tone", {}, (), 0.001, 10001),
    "lorenz_short": ("lorenz", {}, (-8.0, 8.0, 27.0), 0.001, 3000),
    "lorenz_long": ("lorenz", {}, (-8.0, 8.0, 27.0), 0.001, 300000),
    "rossler_short": ("rossler", {}, (1.0, 1.0, 1.0), 0.001, 70000),
    "rossler_long": ("rossler", {}, (1.0, 1.0, 1.0), 0.001, 300000),
    "pendulum_short": (
        "double_pendulum", {}, (np.pi / 2, np.pi / 2, -0.01, -0.005), 0.001, 1200,
    ),
    "pendulum_long": (
        "double_pendulum", {}, (np.pi / 2, np.pi / 2, -0.01, -0.005), 0.001, 100000,
    ),
    # Extra named configurations used by the sweep and interpolation
    # scenarios: a fine-sampled Lorenz run whose strides realize the dt
    # grid, and a 50 s run for the sparse-sampling rescue experiment.
    "lorenz_sweep": ("lorenz", {}, (-8.0, 8.0, 27.0), 0.0005, 21001),
    "lorenz_interp": ("lorenz", {}, (-8.0, 8.0, 27.0), 0.001, 50001),
}


def preset_names():
    return tuple(sorted(_PRESETS))


def preset(name: str) -> SystemSpec:
    """Named simulation configurations addressable from the CLI."""
    if name not in _PRESETS:
        raise ParameterError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        )
    kind, params, x0, dt, samples = _PRESETS[name]
    return SystemSpec(
        kind=kind, parameters=params, initial_state=x0, dt=dt, samples=samples
    )
