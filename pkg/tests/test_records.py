import json

import pytest

from zetasweep.cli import run
from zetasweep.config import parse_config
from zetasweep.records import dumps_record, loads_record, timestamp

SWEEP_TEXT = """
schema_version = 1
command = sweep
subject.kind = riemann
patch.shape = disc
patch.center = 0.75+0i
patch.radius = 0.05
patch.grid_step = 0.05
target.kind = zeta_shift
target.tau0 = 0.5
shift.mode = continuous
shift.t_max = 1
shift.step = 0.5
"""


def test_record_lines_are_json(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    record = run(parse_config(SWEEP_TEXT))
    text = dumps_record(record)
    lines = text.splitlines()
    assert text.endswith("\n")
    parsed = [json.loads(line) for line in lines]
    assert parsed[0]["kind"] == "result_record"
    assert parsed[-1]["kind"] == "end"
    sample_rows = [p for p in parsed if isinstance(p, list)]
    assert len(sample_rows) == 3
    for row in sample_rows:
        tau, err, status = row
        assert status in ("ok", "error")


def test_reals_use_17_significant_digits(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    record = run(parse_config(SWEEP_TEXT))
    text = dumps_record(record)
    # a value that needs all 17 digits survives the round trip exactly
    assert "0.050000000000000003" in record.header["config_text"]
    reloaded = loads_record(text)
    for original, parsed in zip(record.rows, reloaded.rows):
        if isinstance(original, list):
            assert [float(x) if isinstance(x, (int, float)) else x
                    for x in original] == \
                   [float(x) if isinstance(x, (int, float)) else x
                    for x in parsed]


def test_record_replay_reproduces_payload(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    config = parse_config(SWEEP_TEXT)
    first = run(config)
    echoed = parse_config(first.config_text())
    assert echoed == config
    second = run(echoed)
    assert first.rows == second.rows
    assert dumps_record(first) == dumps_record(second)


def test_timestamp_honours_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "946684800")
    assert timestamp() == "2000-01-01T00:00:00Z"


def test_loads_rejects_garbage():
    from zetasweep.errors import ConfigError
    with pytest.raises(ConfigError):
        loads_record("")
    with pytest.raises(ConfigError):
        loads_record("not json\n")
    with pytest.raises(ConfigError):
        loads_record('{"kind": "something_else"}\n')


def test_nonfinite_floats_become_null():
    from zetasweep.records import _fmt_value
    assert _fmt_value(float("inf")) == "null"
    assert _fmt_value(float("nan")) == "null"
    assert _fmt_value(1.5) == "1.5"
    assert _fmt_value("a\"b") == '"a\\"b"'
