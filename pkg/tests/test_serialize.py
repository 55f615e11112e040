import io
import json

import numpy as np
import pytest

from scfgame.dynamics import IntegrationConfig, Trajectory, integrate
from scfgame.equilibria import classify, enumerate_equilibria, scenario_report
from scfgame.model import BASELINE, StrategyState
from scfgame.serialize import (
    ConfigError,
    RunConfig,
    fmt,
    parse_config,
    read_trajectory_csv,
    serialize_config,
    write_equilibria_report,
    write_trajectory_csv,
)

BASE_DOC = {"I": 10, "Rgf": 0, "Cg": 1, "Cgf": 1, "m": 0.2, "e": 0.25, "Cm": 1.5,
            "Caf": 1, "Cbf": 1, "u": 0.85, "v": 0.8, "w": 0.8}


def test_parse_baseline_defaults():
    cfg = parse_config(json.dumps(BASE_DOC))
    assert cfg.params == BASELINE
    assert cfg.integration == IntegrationConfig()
    assert cfg.initial == (StrategyState(0.5, 0.5, 0.5),)
    assert cfg.out_dir is None


def test_unknown_key_named_with_position():
    text = json.dumps(BASE_DOC, indent=1)[:-2] + ',\n "q": 1\n}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert "'q'" in str(exc.value)
    assert "line 14" in str(exc.value)


def test_initial_states():
    cfg = parse_config(json.dumps({**BASE_DOC, "initial": [[0.5, 0.5, 0.5]]}))
    assert cfg.initial == (StrategyState(0.5, 0.5, 0.5),)


@pytest.mark.parametrize("patch,needle", [
    ({"u": 1.5}, "u out of [0,1]"),
    ({"I": 0}, "I must be positive"),
    ({"dt": -1}, "dt"),
    ({"record_every": 2.5}, "record_every"),
    ({"initial": [[0.5, 2, 0.5]]}, "initial[0]"),
    ({"initial": []}, "initial"),
    ({"out_dir": 3}, "out_dir"),
    ({"dt": 0.3}, "whole number"),
    ({"Cm": True}, "C_m must be a number"),
])
def test_bad_values(patch, needle):
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps({**BASE_DOC, **patch}))
    assert needle in str(exc.value)


def test_missing_key():
    doc = dict(BASE_DOC)
    del doc["w"]
    with pytest.raises(ConfigError, match="missing key 'w'"):
        parse_config(json.dumps(doc))


def test_malformed():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config('{"I": 10,,}')
    with pytest.raises(ConfigError, match="object"):
        parse_config("[1, 2]")


def test_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config('{"I": 10, "I": 11}')


def test_round_trip_simple():
    cfg = RunConfig(BASELINE.replace(m=0.1 + 0.2), IntegrationConfig(0.02, 4.0, 3),
                    (StrategyState(0.1, 0.2, 0.3),), "results")
    assert parse_config(serialize_config(cfg)) == cfg


def test_fmt():
    assert fmt(0.0) == "0"
    assert fmt(0.5) == "0.5"
    assert fmt(20.0) == "20"
    assert fmt(0.1 + 0.2) == "0.30000000000000004"
    for v in (1e-300, 5e-324, 1.7976931348623157e308, -0.0, 1 / 3):
        assert float(fmt(v)) == v


def _single():
    return Trajectory(np.array([0.0]), np.array([[0.5, 0.5, 0.5]]), BASELINE, IntegrationConfig())


def test_single_sample_csv():
    buf = io.StringIO()
    n = write_trajectory_csv(_single(), buf)
    assert buf.getvalue() == "t,x,y,z\n0,0.5,0.5,0.5\n"
    assert n == len(buf.getvalue())


def test_baseline_csv_endpoints():
    buf = io.StringIO()
    write_trajectory_csv(integrate(BASELINE, (0.5, 0.5, 0.5)), buf)
    lines = buf.getvalue().splitlines()
    assert lines[1].startswith("0,") and lines[-1].startswith("20,")
    assert "\r" not in buf.getvalue()


def test_empty_trajectory_rejected():
    empty = Trajectory(np.empty(0), np.empty((0, 3)), BASELINE, IntegrationConfig())
    with pytest.raises(ValueError):
        write_trajectory_csv(empty, io.StringIO())


def test_csv_read_back_exact():
    traj = integrate(BASELINE, (0.3, 0.1, 0.9), IntegrationConfig(horizon=3.0, record_every=1))
    buf = io.StringIO()
    write_trajectory_csv(traj, buf)
    t, s = read_trajectory_csv(io.StringIO(buf.getvalue()))
    assert t.tobytes() == traj.times.tobytes()
    assert s.tobytes() == traj.states.tobytes()


def _report(p):
    pts = enumerate_equilibria(p)
    verdicts = [classify(p, pt) if pt.defined else None for pt in pts]
    buf = io.StringIO()
    write_equilibria_report(pts, verdicts, scenario_report(p), buf)
    return buf.getvalue()


def test_report_baseline_rows():
    text = _report(BASELINE)
    lines = text.splitlines()
    assert lines[0] == "label,x,y,z,valid,re1,im1,re2,im2,re3,im3,class"
    # eigenvalues in ascending order of real part
    assert "E3,0,1,0,true,-2.5,0,-1,0,-0.6,0,stable" in lines
    assert "E7,0.6,1,1,true,0,0,0,0,0,0,non-hyperbolic" in lines
    assert any(line.startswith("E8,-5.4,0,1,false,") for line in lines)
    assert "# scenario" in lines
    assert any(line.startswith("# scenario2,E3,true,") for line in lines)
    assert "# scenario3,E5,false,Cgf-Cg=0,Cbf-I*w+I*m*w=-5.4" in lines


def test_report_undefined_points():
    text = _report(BASELINE.replace(C_bf=0.0))
    assert "E7,,,,false,,,,,,,undefined" in text.splitlines()


def test_report_empty_is_header_only():
    buf = io.StringIO()
    write_equilibria_report([], [], None, buf)
    assert buf.getvalue() == "label,x,y,z,valid,re1,im1,re2,im2,re3,im3,class\n"


def test_report_misaligned():
    with pytest.raises(ValueError):
        write_equilibria_report(enumerate_equilibria(BASELINE), [], None, io.StringIO())
