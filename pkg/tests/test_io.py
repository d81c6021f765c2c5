import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legw.errors import FormatError
from legw.io import (
    dumps_json,
    fmt,
    format_checkpoint,
    parse_checkpoint,
    read_checkpoint,
    read_csv,
    write_checkpoint,
    write_csv,
    write_field_csv,
)


def test_checkpoint_round_trip_flat_torus(flat32, tmp_path):
    path = tmp_path / "ckpt_0.lewgrid"
    write_checkpoint(path, flat32, time=0.125)
    grid, t = read_checkpoint(path)
    assert np.abs(grid.values - flat32.values).max() == 0.0
    assert t == 0.125


def test_checkpoint_round_trip_perturbed(perturbed32, tmp_path):
    write_checkpoint(tmp_path / "c.lewgrid", perturbed32, time=1.0 / 3.0)
    grid, t = read_checkpoint(tmp_path / "c.lewgrid")
    np.testing.assert_array_equal(grid.values, perturbed32.values)
    assert t == 1.0 / 3.0


def test_checkpoint_header_layout(flat32):
    lines = format_checkpoint(flat32, 2.5).splitlines()
    assert lines[0] == "LEWGRID 1"
    assert lines[1] == "32 32 2.5"
    assert len(lines) == 2 + 32 * 32
    assert all(len(line.split()) == 6 for line in lines[2:])
    # row-major in u then v: the second value line is (u_0, v_1)
    np.testing.assert_array_equal([float(x) for x in lines[3].split()], flat32.values[0, 1])


def test_truncated_file_names_short_line(flat32):
    text = "\n".join(format_checkpoint(flat32).splitlines()[:100]) + "\n"
    with pytest.raises(FormatError) as info:
        parse_checkpoint(text)
    assert info.value.line == 101
    assert "101" in str(info.value)


def test_unsupported_version(flat32):
    text = format_checkpoint(flat32).replace("LEWGRID 1", "LEWGRID 2", 1)
    with pytest.raises(FormatError, match="unsupported version"):
        parse_checkpoint(text)


@pytest.mark.parametrize(
    "mutate, line",
    [
        (lambda ls: ["NOTGRID 1"] + ls[1:], 1),
        (lambda ls: [ls[0], "32 32"] + ls[2:], 2),
        (lambda ls: ls[:5] + ["1 2 3"] + ls[6:], 6),
        (lambda ls: ls[:7] + ["0 0 0 0 0 x"] + ls[8:], 8),
        (lambda ls: ls + ["1 0 0 0 0 0"], 2 + 32 * 32 + 1),
    ],
)
def test_malformed_checkpoints(flat32, mutate, line):
    lines = mutate(format_checkpoint(flat32).splitlines())
    with pytest.raises(FormatError) as info:
        parse_checkpoint("\n".join(lines))
    assert info.value.line == line


def test_empty_checkpoint():
    with pytest.raises(FormatError):
        parse_checkpoint("")


def test_non_unit_values_are_format_errors(flat32):
    lines = format_checkpoint(flat32).splitlines()
    lines[2] = "2 0 0 0 0 0"
    with pytest.raises(FormatError):
        parse_checkpoint("\n".join(lines))


@settings(max_examples=200)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips_doubles(x):
    assert float(fmt(x)) == x


def test_fmt_integers_and_bools():
    assert fmt(3) == "3"
    assert fmt(np.int64(7)) == "7"
    assert fmt(True) == "true"
    assert fmt(0.1) == "0.10000000000000001"


def test_json_uses_17_digits():
    text = dumps_json({"a": 0.1, "b": [1, np.float64(2.5)], "c": float("nan"), "d": None, "e": "x"})
    assert '"a": 0.10000000000000001' in text
    data = json.loads(text)
    assert data == {"a": 0.1, "b": [1, 2.5], "c": None, "d": None, "e": "x"}


def test_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        dumps_json({"a": object()})


def test_csv_round_trip(tmp_path):
    rows = [[0, 0.0, 1e-10, 22.5, 0.1, 1e-15, 3.0], [1, 1e-10, 1e-10, 22.4, 0.2, 2e-15, 2.0]]
    write_csv(tmp_path / "s.csv", ["step", "time", "dt", "W", "dissipation", "legendre_drift", "max_sf"], rows)
    header, back = read_csv(tmp_path / "s.csv")
    assert header[0] == "step"
    assert back == [[float(x) for x in r] for r in rows]


def test_field_csv_layout(tmp_path):
    field = np.arange(12.0).reshape(3, 4) / 7
    write_field_csv(tmp_path / "f.csv", field)
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert len(lines) == 3
    np.testing.assert_array_equal(np.array([[float(x) for x in ln.split(",")] for ln in lines]), field)


def test_atomic_write_leaves_no_temporaries(flat32, tmp_path):
    write_checkpoint(tmp_path / "a.lewgrid", flat32)
    write_checkpoint(tmp_path / "a.lewgrid", flat32, time=1.0)
    assert [p.name for p in tmp_path.iterdir()] == ["a.lewgrid"]
