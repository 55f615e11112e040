"""Run configuration (JSON) and CSV output for trajectories and equilibrium reports."""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass

import numpy as np

from scfgame.dynamics import IntegrationConfig
from scfgame.model import (
    ATTR_TO_CONFIG,
    CONFIG_KEYS,
    PARAM_NAMES,
    GameParameters,
    StrategyState,
    parameter_problem,
)

INTEGRATION_KEYS = ("dt", "horizon", "record_every")
ALLOWED_KEYS = tuple(CONFIG_KEYS) + INTEGRATION_KEYS + ("initial", "out_dir")
DEFAULT_INITIAL = (StrategyState(0.5, 0.5, 0.5),)


class ConfigError(ValueError):
    """Invalid run configuration; ``errors`` has one message per problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


@dataclass(frozen=True)
class RunConfig:
    params: GameParameters
    integration: IntegrationConfig = IntegrationConfig()
    initial: tuple[StrategyState, ...] = DEFAULT_INITIAL
    out_dir: str | None = None


def _position(text: str, key: str) -> str:
    match = re.search(r'"%s"\s*:' % re.escape(json.dumps(key)[1:-1]), text)
    if not match:
        return "unknown position"
    line = text.count("\n", 0, match.start()) + 1
    col = match.start() - (text.rfind("\n", 0, match.start()) + 1) + 1
    return f"line {line}, column {col}"


def _pairs(pairs):
    seen = {}
    dupes = []
    for k, v in pairs:
        if k in seen:
            dupes.append(k)
        seen[k] = v
    if dupes:
        seen["\x00duplicates"] = dupes
    return seen


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def parse_config(text: str) -> RunConfig:
    """Strictly parse a flat JSON run configuration.

    Parameter keys use the short spellings (``Cg``, ``Rgf``, ...); all
    twelve are required. ``dt``, ``horizon``, ``record_every``, ``initial``
    and ``out_dir`` are optional. Unknown keys are errors.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_pairs)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    if not isinstance(doc, dict):
        raise ConfigError(["config must be a JSON object"])

    errors = []
    for k in doc.pop("\x00duplicates", []):
        errors.append(f"duplicate key {k!r} ({_position(text, k)})")
    for k in doc:
        if k not in ALLOWED_KEYS:
            errors.append(f"unknown key {k!r} ({_position(text, k)})")

    values = {}
    for key, name in CONFIG_KEYS.items():
        if key not in doc:
            errors.append(f"missing key {key!r}")
            continue
        problem = parameter_problem(name, doc[key])
        if problem:
            errors.append(f"{key} ({_position(text, key)}): {problem}")
        else:
            values[name] = doc[key]

    integ = {}
    for key in ("dt", "horizon"):
        if key in doc:
            if not _is_number(doc[key]) or not doc[key] > 0:
                errors.append(f"{key} ({_position(text, key)}): must be a positive number")
            else:
                integ[key] = doc[key]
    if "record_every" in doc:
        val = doc["record_every"]
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            errors.append(f"record_every ({_position(text, 'record_every')}): must be an integer >= 1")
        else:
            integ["record_every"] = val

    initial = DEFAULT_INITIAL
    if "initial" in doc:
        raw = doc["initial"]
        where = _position(text, "initial")
        if not isinstance(raw, list) or not raw:
            errors.append(f"initial ({where}): must be a non-empty array of [x, y, z] arrays")
        else:
            states = []
            for i, item in enumerate(raw):
                if not (isinstance(item, list) and len(item) == 3 and all(_is_number(c) for c in item)):
                    errors.append(f"initial[{i}] ({where}): must be an array of three numbers")
                elif not all(0.0 <= c <= 1.0 for c in item):
                    errors.append(f"initial[{i}] ({where}): coordinates must lie in [0,1]")
                else:
                    states.append(StrategyState(*item))
            initial = tuple(states)

    out_dir = doc.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        errors.append(f"out_dir ({_position(text, 'out_dir')}): must be a string")

    integration = None
    if not errors:
        try:
            integration = IntegrationConfig(**integ)
        except ValueError as exc:
            errors.append(str(exc))
    if errors:
        raise ConfigError(errors)
    return RunConfig(GameParameters(**values), integration, initial, out_dir)


def serialize_config(cfg: RunConfig) -> str:
    """JSON text that :func:`parse_config` maps back to an equal config."""
    doc = {ATTR_TO_CONFIG[name]: getattr(cfg.params, name) for name in PARAM_NAMES}
    doc["dt"] = cfg.integration.dt
    doc["horizon"] = cfg.integration.horizon
    doc["record_every"] = cfg.integration.record_every
    doc["initial"] = [list(s.astuple()) for s in cfg.initial]
    if cfg.out_dir is not None:
        doc["out_dir"] = cfg.out_dir
    return json.dumps(doc, indent=2) + "\n"


def fmt(v: float) -> str:
    """Shortest text that parses back to exactly ``v`` (at most 17 significant digits)."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def _write(sink, text: str) -> int:
    sink.write(text)
    return len(text.encode("utf-8"))


def write_trajectory_csv(traj, sink) -> int:
    """Write ``t,x,y,z`` rows (LF endings, round-trip number format); returns bytes written."""
    if len(traj) == 0:
        raise ValueError("cannot write an empty trajectory")
    lines = ["t,x,y,z"]
    for t, (x, y, z) in zip(traj.times, traj.states):
        lines.append(f"{fmt(t)},{fmt(x)},{fmt(y)},{fmt(z)}")
    return _write(sink, "\n".join(lines) + "\n")


def read_trajectory_csv(source) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`write_trajectory_csv`: ``(times, states)`` arrays."""
    text = source.read() if hasattr(source, "read") else str(source)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["t", "x", "y", "z"]:
        raise ValueError("expected a t,x,y,z header")
    data = np.array([[float(c) for c in row] for row in rows[1:]], dtype=np.float64).reshape(-1, 4)
    return data[:, 0].copy(), data[:, 1:].copy()


REPORT_COLUMNS = "label,x,y,z,valid,re1,im1,re2,im2,re3,im3,class"


def _rfmt(v: float) -> str:
    # report mirrors a printed table: 12 significant digits, no negative zero
    return format(float(v) + 0.0, ".12g")


def write_equilibria_report(points, verdicts, scenario, sink) -> int:
    """CSV of equilibria and their linearised stability, then a ``# scenario`` block.

    ``verdicts[i]`` is the StabilityVerdict for ``points[i]`` (None when the
    point is undefined). Pass ``scenario=None`` to omit the block.
    """
    points = list(points)
    verdicts = list(verdicts)
    if len(points) != len(verdicts):
        raise ValueError(f"{len(points)} points but {len(verdicts)} verdicts")
    lines = [REPORT_COLUMNS]
    for pt, verdict in zip(points, verdicts):
        if pt.coords is None:
            lines.append(f"{pt.label},,,,false,,,,,,,undefined")
            continue
        cells = [pt.label, *(_rfmt(c) for c in pt.coords), "true" if pt.valid else "false"]
        if verdict is None:
            cells += [""] * 6 + [""]
        else:
            for lam in verdict.eigenvalues:
                cells += [_rfmt(lam.real), _rfmt(lam.imag)]
            cells.append(verdict.classification)
        lines.append(",".join(cells))
    if scenario is not None:
        lines.append("# scenario")
        for cond in scenario:
            ops = ",".join(f"{expr}={_rfmt(val)}" for expr, val in cond.operands)
            lines.append(f"# {cond.name},{cond.point},{'true' if cond.holds else 'false'},{ops}")
    return _write(sink, "\n".join(lines) + "\n")
