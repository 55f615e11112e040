import pytest

from scfgame.model import BASELINE, GameParameters, ParameterError, StrategyState, validate_parameters

BASELINE_RAW = dict(I=10, Rgf=0, Cg=1, u=0.85, m=0.2, Caf=1, Cm=1.5, v=0.8, e=0.25, w=0.8, Cgf=1, Cbf=1)


def test_baseline_accepted():
    p = validate_parameters(BASELINE_RAW)
    assert p == BASELINE
    assert all(isinstance(v, float) for v in p.astuple())


def test_attribute_names_accepted():
    p = validate_parameters(**{"I": 10, "R_gf": 0, "C_g": 1, "C_gf": 1, "m": 0.2, "e": 0.25,
                               "C_m": 1.5, "C_af": 1, "C_bf": 1, "u": 0.85, "v": 0.8, "w": 0.8})
    assert p == BASELINE


def test_probability_out_of_range():
    with pytest.raises(ParameterError) as exc:
        validate_parameters({**BASELINE_RAW, "u": 1.5})
    assert exc.value.violations == ["u out of [0,1]"]


def test_nonpositive_I():
    with pytest.raises(ParameterError) as exc:
        validate_parameters({**BASELINE_RAW, "I": 0})
    assert exc.value.violations == ["I must be positive"]


def test_every_violation_listed():
    raw = {**BASELINE_RAW, "u": -0.1, "w": 2, "Cg": -1, "m": 1.0, "I": -3}
    with pytest.raises(ParameterError) as exc:
        validate_parameters(raw)
    assert sorted(exc.value.violations) == sorted([
        "I must be positive", "C_g must be non-negative", "m out of [0,1)", "u out of [0,1]", "w out of [0,1]",
    ])


def test_missing_and_unknown():
    raw = dict(BASELINE_RAW)
    del raw["Cbf"]
    raw["q"] = 1
    with pytest.raises(ParameterError) as exc:
        validate_parameters(raw)
    assert "unknown parameter 'q'" in exc.value.violations
    assert "missing parameter C_bf" in exc.value.violations


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), True, "1"])
def test_non_numbers_rejected(bad):
    with pytest.raises(ParameterError):
        BASELINE.replace(C_m=bad)


def test_strategy_state_bounds():
    assert StrategyState(0, 1, 0.5).astuple() == (0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        StrategyState(1.1, 0, 0)
    with pytest.raises(ValueError):
        StrategyState(0, -1e-15, 0)


def test_parameters_immutable():
    with pytest.raises(AttributeError):
        BASELINE.I = 5  # type: ignore[misc]


def test_direct_construction_validates():
    with pytest.raises(ParameterError):
        GameParameters(I=10, R_gf=0, C_g=1, C_gf=1, m=0.2, e=0.25, C_m=1.5, C_af=1, C_bf=-1, u=1, v=1, w=1)
