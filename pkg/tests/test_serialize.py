import pytest

from torloc.errors import ValidationError
from torloc.serialize import (
    bundle_from_json,
    bundle_to_json,
    dumps,
    fan_from_json,
    fan_to_json,
    fixture_names,
    fixture_path,
    loads,
    parse_rational,
    pp_from_json,
    pp_to_json,
    read_document,
    system_from_json,
    system_to_json,
)

FANS = ["cube", "final_threefold", "fulton", "modz2", "p2"]
SYSTEMS = ["segments", "simplices", "squares"]


def _text(name):
    return fixture_path(name).read_text()


def test_fixture_inventory():
    assert set(fixture_names()) == set(FANS + SYSTEMS + ["cube_bundle", "modz2_pp"])


@pytest.mark.parametrize("name", FANS)
def test_fan_round_trip(name):
    text = _text(name)
    assert dumps(fan_to_json(fan_from_json(loads(text)))) == text


@pytest.mark.parametrize("name", SYSTEMS)
def test_system_round_trip(name):
    text = _text(name)
    assert dumps(system_to_json(system_from_json(loads(text)))) == text


def test_pp_and_bundle_round_trip():
    modz2 = fan_from_json(read_document("fixture:modz2"))
    text = _text("modz2_pp")
    assert dumps(pp_to_json(pp_from_json(loads(text), modz2))) == text
    cube = fan_from_json(read_document("fixture:cube"))
    text = _text("cube_bundle")
    assert dumps(bundle_to_json(bundle_from_json(loads(text), cube))) == text


def test_rationals():
    assert parse_rational("-3/6") == parse_rational(-1) / 2
    assert parse_rational(7) == 7
    for bad in (0.5, "0.5", "1e3", True, None, "1/0", "a/b"):
        with pytest.raises(ValidationError):
            parse_rational(bad)


def test_parse_error_reports_line():
    with pytest.raises(ValidationError, match=r"bad\.json:3:"):
        loads('{\n  "rank": 2,\n  "maximal_cones": [,]\n}', "bad.json")


def test_validation_errors():
    bad_docs = [
        {"rank": 2},
        {"rank": 2, "maximal_cones": [[[1, 0], [0.5, 1]]]},
        {"rank": 2, "maximal_cones": [[[1, 0, 0]]]},
        {"rank": 0, "maximal_cones": [[[1]]]},
    ]
    for doc in bad_docs:
        with pytest.raises(ValidationError):
            fan_from_json(doc)
    modz2 = fan_from_json(read_document("fixture:modz2"))
    with pytest.raises(ValidationError):
        pp_from_json({"degree": 1, "per_cone": {"0": {"1,0": "1"}}}, modz2)
    with pytest.raises(ValidationError):
        pp_from_json({"degree": 1, "per_cone": {str(m): {"1,0": "0.5"} for m in range(4)}}, modz2)
    with pytest.raises(ValidationError):
        system_from_json({"polytopes": [[[0, 0], [1]]]})


def test_missing_file_and_fixture():
    with pytest.raises(ValidationError):
        read_document("/nonexistent/fan.json")
    with pytest.raises(ValidationError):
        read_document("fixture:nope")
