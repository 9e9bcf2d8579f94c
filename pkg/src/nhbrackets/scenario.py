"""Scenario files, batch runs and time-series output.

A scenario is a YAML (or JSON) mapping.  Keys, schema version 1:

====================  ========  ==============================================
key                   required  meaning
====================  ========  ==============================================
name                  yes       label, also the default output stem
hamiltonian_expr      yes       operator expression for ``H``
picture               yes       heisenberg-observable | schrodinger-density |
                                schrodinger-state
dt                    yes       step (and sampling) interval, > 0
t_final               yes       end time, a multiple of ``dt``
integrator            no        exact (default) | rk4
hbar                  no        default 1.0
normalize             no        divide expectations by the trace/norm, default
                                false
sample_stride         no        record every n-th step, default 1
xi_expr               no        enables the xi-bracket flow; ``H`` must then be
                                Hermitian and the picture Heisenberg
observable_expr       *         required for the Heisenberg picture
initial_state_expr    *         list of amplitudes (numbers or scalar exprs)
initial_density_expr  *         operator expression
output                no        ``{path: ..., format: csv|json}``; a relative
                                path resolves against the scenario file
schema_version        no        must be 1 if present
====================  ========  ==============================================

Schrodinger pictures need exactly one of the two initial-condition keys;
``schrodinger-state`` needs ``initial_state_expr``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .dsl import evaluate, evaluate_scalar, parse_expression
from .dynamics import (PICTURES, EvolutionSpec, expectation_value, omega_xi_flow,
                       propagate)
from .errors import DimMismatch, NonHermitianGenerator, SchemaError
from .operators import fro, hermiticity_defect, is_hermitian

SCHEMA_VERSION = 1
REQUIRED = ("name", "hamiltonian_expr", "picture", "dt", "t_final")
OPTIONAL = ("integrator", "hbar", "normalize", "sample_stride", "xi_expr",
            "observable_expr", "initial_state_expr", "initial_density_expr",
            "output", "schema_version")
FORMATS = ("csv", "json")


@dataclass(eq=False)
class Scenario:
    name: str
    hamiltonian_expr: str
    picture: str
    dt: float
    t_final: float
    integrator: str = "exact"
    hbar: float = 1.0
    normalize: bool = False
    sample_stride: int = 1
    xi_expr: str | None = None
    observable_expr: str | None = None
    initial_state_expr: list | None = None
    initial_density_expr: str | None = None
    output_path: Path | None = None
    output_format: str = "csv"
    # evaluated operators, filled in by compile()
    hamiltonian: np.ndarray | None = field(default=None, repr=False)
    xi: np.ndarray | None = field(default=None, repr=False)
    observable: np.ndarray | None = field(default=None, repr=False)
    initial_state: np.ndarray | None = field(default=None, repr=False)
    initial_density: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    def spec(self) -> EvolutionSpec:
        return EvolutionSpec(self.hamiltonian, self.hbar, self.picture, self.integrator,
                             self.dt, self.t_final, self.normalize)

    def initial_rho(self) -> np.ndarray | None:
        if self.initial_density is not None:
            return self.initial_density
        if self.initial_state is not None:
            return np.outer(self.initial_state, self.initial_state.conj())
        return None

    def compile(self) -> "Scenario":
        """Parse and dimension-check every expression; validate the combination."""
        self.hamiltonian = evaluate(parse_expression(self.hamiltonian_expr))
        n = self.dim
        for attr in ("xi", "observable", "initial_density"):
            text = getattr(self, f"{attr}_expr")
            if text is not None:
                op = evaluate(parse_expression(text))
                if op.shape != (n, n):
                    raise DimMismatch(f"{attr}_expr has dim {op.shape[0]}, hamiltonian {n}")
                setattr(self, attr, op)
        if self.initial_state_expr is not None:
            amps = np.array([_amplitude(a) for a in self.initial_state_expr], dtype=complex)
            if amps.shape != (n,):
                raise DimMismatch(f"initial_state_expr has {amps.size} amplitudes, hamiltonian dim {n}")
            if not fro(amps) > 0:
                raise SchemaError("initial state must have nonzero norm")
            self.initial_state = amps
        self._check_combination()
        return self

    def _check_combination(self) -> None:
        has_state = self.initial_state_expr is not None
        has_rho = self.initial_density_expr is not None
        if self.picture == "heisenberg-observable":
            if self.observable_expr is None:
                raise SchemaError("heisenberg-observable needs observable_expr")
            if has_state and has_rho:
                raise SchemaError("give at most one of initial_state_expr, initial_density_expr")
        else:
            if has_state == has_rho:
                raise SchemaError(
                    f"{self.picture} needs exactly one of initial_state_expr, initial_density_expr")
            if self.picture == "schrodinger-state" and not has_state:
                raise SchemaError("schrodinger-state needs initial_state_expr")
        if self.xi_expr is not None:
            if self.picture != "heisenberg-observable":
                raise SchemaError("xi_expr requires picture heisenberg-observable")
            if self.integrator != "rk4":
                raise SchemaError("xi_expr flows have no closed form; use integrator rk4")
            if not is_hermitian(self.hamiltonian, 1e-12):
                raise NonHermitianGenerator(
                    "with xi_expr the hamiltonian must be Hermitian "
                    f"(defect {hermiticity_defect(self.hamiltonian)[0]:.3g})")


def _amplitude(a) -> complex:
    if isinstance(a, bool):
        raise SchemaError("initial_state_expr entries must be numbers")
    if isinstance(a, (int, float)):
        return complex(a)
    return evaluate_scalar(parse_expression(str(a)))


def _number(raw: dict, key: str, default=None) -> float:
    v = raw.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SchemaError(f"{key} must be a finite number, got {v!r}")
    return float(v)


def scenario_from_dict(raw: dict, base_dir: Path | None = None) -> Scenario:
    if not isinstance(raw, dict):
        raise SchemaError("scenario must be a mapping")
    unknown = sorted(set(raw) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise SchemaError(f"unknown keys: {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")
    if raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {raw['schema_version']!r}")

    dt = _number(raw, "dt")
    t_final = _number(raw, "t_final")
    hbar = _number(raw, "hbar", 1.0)
    if dt <= 0:
        raise SchemaError("dt must be > 0")
    if t_final < 0:
        raise SchemaError("t_final must be >= 0")
    if t_final > 0:
        if dt > t_final:
            raise SchemaError("dt must not exceed t_final")
        steps = t_final / dt
        if abs(steps - round(steps)) > 1e-9 * steps:
            raise SchemaError("t_final must be an integer multiple of dt")
    if hbar <= 0:
        raise SchemaError("hbar must be > 0")
    picture = raw["picture"]
    if picture not in PICTURES:
        raise SchemaError(f"picture must be one of {', '.join(PICTURES)}")
    integrator = raw.get("integrator", "exact")
    if integrator not in ("exact", "rk4"):
        raise SchemaError("integrator must be exact or rk4")
    stride = raw.get("sample_stride", 1)
    if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
        raise SchemaError("sample_stride must be a positive integer")
    normalize = raw.get("normalize", False)
    if not isinstance(normalize, bool):
        raise SchemaError("normalize must be a boolean")
    for key in ("name", "hamiltonian_expr", "xi_expr", "observable_expr", "initial_density_expr"):
        if key in raw and not isinstance(raw[key], str):
            raise SchemaError(f"{key} must be a string")
    state = raw.get("initial_state_expr")
    if state is not None and not isinstance(state, list):
        raise SchemaError("initial_state_expr must be a list of amplitudes")

    out_path, out_fmt = None, "csv"
    output = raw.get("output")
    if output is not None:
        if not isinstance(output, dict) or set(output) - {"path", "format"} or "path" not in output:
            raise SchemaError("output must be a mapping with 'path' and optional 'format'")
        out_path = Path(output["path"])
        if base_dir is not None and not out_path.is_absolute():
            out_path = base_dir / out_path
        out_fmt = output.get("format", out_path.suffix.lstrip(".") or "csv")
        if out_fmt not in FORMATS:
            raise SchemaError(f"output format must be csv or json, got {out_fmt!r}")

    sc = Scenario(name=raw["name"], hamiltonian_expr=raw["hamiltonian_expr"], picture=picture,
                  dt=dt, t_final=t_final, integrator=integrator, hbar=hbar,
                  normalize=normalize, sample_stride=stride, xi_expr=raw.get("xi_expr"),
                  observable_expr=raw.get("observable_expr"), initial_state_expr=state,
                  initial_density_expr=raw.get("initial_density_expr"),
                  output_path=out_path, output_format=out_fmt)
    return sc.compile()


def load_scenario(path) -> Scenario:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"scenario file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise SchemaError(f"{path}: not valid YAML/JSON: {exc}") from exc
    return scenario_from_dict(raw, path.parent)


@dataclass
class TimeSeries:
    """Sampled trajectory output.

    ``records[k]`` maps field name to a real or complex value at ``times[k]``.
    """

    times: list[float]
    records: list[dict]

    def __post_init__(self):
        if len(self.times) != len(self.records):
            raise ValueError("times and records differ in length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")

    @property
    def fields(self) -> list[str]:
        return list(self.records[0]) if self.records else []

    def columns(self) -> list[str]:
        cols = ["t"]
        for name in self.fields:
            if isinstance(self.records[0][name], complex):
                cols += [f"{name}.re", f"{name}.im"]
            else:
                cols.append(name)
        return cols

    def rows(self) -> list[list[float]]:
        out = []
        for t, rec in zip(self.times, self.records):
            row = [float(t)]
            for name in self.fields:
                v = rec[name]
                if isinstance(v, complex):
                    row += [v.real, v.imag]
                else:
                    row.append(float(v))
            out.append(row)
        return out


def _record_density(rho, chi, normalize: bool) -> dict:
    herm = 0.5 * (rho + rho.conj().T)
    rec = {"trace": complex(np.trace(rho)),
           "min_eig": float(np.linalg.eigvalsh(herm)[0]),
           "herm_defect": hermiticity_defect(rho)[0]}
    if chi is not None:
        rec["chi_exp"] = expectation_value(rho, chi, normalize)
    return rec


def _record_state(psi, chi, normalize: bool) -> dict:
    nrm = float(np.linalg.norm(psi))
    rec = {"norm": nrm, "trace": complex(nrm * nrm)}
    if chi is not None:
        val = complex(np.vdot(psi, chi @ psi))
        rec["chi_exp"] = val / (nrm * nrm) if normalize else val
    return rec


def _record_observable(chi, rho0, normalize: bool) -> dict:
    rec = {"chi_trace": complex(np.trace(chi)), "herm_defect": hermiticity_defect(chi)[0]}
    if rho0 is not None:
        rec["chi_exp"] = expectation_value(rho0, chi, normalize)
    return rec


def sample_indices(n_steps: int, stride: int) -> list[int]:
    idx = list(range(0, n_steps + 1, stride))
    if idx[-1] != n_steps:
        idx.append(n_steps)
    return idx


def run_scenario(s: Scenario) -> TimeSeries:
    """Propagate a compiled scenario and collect the diagnostics per sample."""
    n = s.n_steps
    if s.xi is not None:
        traj = omega_xi_flow(s.xi, s.hamiltonian, s.observable, s.hbar, s.dt, n)
    elif s.picture == "heisenberg-observable":
        traj = propagate(s.spec(), s.observable)
    elif s.picture == "schrodinger-state":
        traj = propagate(s.spec(), s.initial_state)
    else:
        traj = propagate(s.spec(), s.initial_rho())

    idx = sample_indices(n, s.sample_stride)
    records = []
    for k in idx:
        x = traj[k]
        if s.picture == "heisenberg-observable":
            records.append(_record_observable(x, s.initial_rho(), s.normalize))
        elif s.picture == "schrodinger-state":
            records.append(_record_state(x, s.observable, s.normalize))
        else:
            records.append(_record_density(x, s.observable, s.normalize))
    return TimeSeries([k * s.dt for k in idx], records)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def timeseries_to_csv(ts: TimeSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ts.columns())
    for row in ts.rows():
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def timeseries_to_json(ts: TimeSeries) -> str:
    cols = ts.columns()
    samples = [dict(zip(cols, row)) for row in ts.rows()]
    return json.dumps(samples, indent=1) + "\n"


def emit_timeseries(ts: TimeSeries, fmt: str, path) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    text = timeseries_to_csv(ts) if fmt == "csv" else timeseries_to_json(ts)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def read_timeseries(path, fmt: str | None = None) -> list[dict[str, float]]:
    """Read emitted output back as flat ``column -> float`` rows."""
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".")
    text = path.read_text(encoding="utf-8")
    if fmt == "json":
        return [{k: float(v) for k, v in row.items()} for row in json.loads(text)]
    return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(text))]
