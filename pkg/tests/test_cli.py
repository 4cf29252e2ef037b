import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ahg import __version__
from ahg import cli
from ahg import reporting as rp
from ahg import spectral_algebra as sa

from conftest import configurations

SQUARE = {"A": [[1, 0], [0, 1], [1, 1]], "c": ["1/3", "1/5"]}


def job(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(data, strict=False):
    return rp.run(rp.parse_config(data), strict=strict)


def test_all_j0_degrees():
    result = run(SQUARE)
    assert [r.j0 for r in result.results] == [1, 2, 3]
    assert [r.degree for r in result.results] == [2, 2, 2]
    assert result.exit_code == rp.EXIT_OK


def test_non_generating_rejected(tmp_path, capsys):
    with pytest.raises(rp.ConfigError, match=r"A does not generate Z\^n \(divisors: \[2\]\)"):
        run({"A": [[2]], "c": ["1/3"]}, strict=True)
    assert cli.main(["compute", "-i", job(tmp_path, {"A": [[2]], "c": ["1/3"]})]) == rp.EXIT_INVALID
    assert "A does not generate Z^n (divisors: [2])" in capsys.readouterr().err


def test_allow_non_generating(tmp_path, capsys):
    data = {"A": [[3, 0], [0, 3], [1, 1]], "c": ["1/3", "1/5"], "j0": 3}
    assert cli.main(["compute", "-i", job(tmp_path, data)]) == rp.EXIT_INVALID
    capsys.readouterr()
    assert cli.main(["compute", "-i", job(tmp_path, data), "--allow-non-generating"]) == rp.EXIT_OK
    (r,) = json.loads(capsys.readouterr().out)["results"]
    assert r["theorem_hypotheses_met"] is False and r["t_minus_one_exponent"] == 9
    # a lower-dimensional A is never accepted
    flat = {"A": [[1, 0], [2, 0]], "c": ["1/3", "1/5"]}
    with pytest.raises(rp.ConfigError):
        run(flat)


@pytest.mark.slow
def test_verify_kummer(tmp_path, capsys):
    result = run(dict(SQUARE, verify=True))
    assert result.verify.catalog == "kummer_square" and result.verify.j0 == 3
    assert result.verify.passed and result.verify.max_distance < 1e-6
    assert cli.main(["verify", "-i", job(tmp_path, SQUARE), "--catalog", "kummer_square"]) == rp.EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["verify"]["passed"] is True


@pytest.mark.slow
def test_verify_mismatch_exit_code(tmp_path):
    # a tolerance below the integrator's accuracy cannot be met
    data = dict(SQUARE, verify={"catalog": "kummer_square", "tol": 1e-300})
    assert cli.main(["verify", "-i", job(tmp_path, data), "--catalog", "kummer_square"]) == rp.EXIT_MISMATCH


def test_render_text_examples():
    text = rp.render_text(run({"A": [[3, 0], [0, 3], [1, 1]], "c": ["1/3", "1/5"], "j0": 3}))
    assert "λ(t) = (t − 1)^9" in text
    text = rp.render_text(run(dict(SQUARE, j0=3)))
    assert "λ(t) = (t − e(−1/3))^1 (t − e(−1/5))^1" in text
    assert "WARNING" not in text
    text = rp.render_text(run({"A": SQUARE["A"], "c": ["1", "1/2"]}))
    assert "WARNING: c is resonant; Theorem hypotheses not met" in text


def test_resonant_flag_in_json():
    out = json.loads(rp.render_json(run({"A": SQUARE["A"], "c": ["1", "1/2"], "j0": 3})))
    (r,) = out["results"]
    assert r["theorem_hypotheses_met"] is False
    assert r["resonance"]["status"] == "resonant"


def test_json_shape():
    out = json.loads(rp.render_json(run(dict(SQUARE, j0=3))))
    assert out["version"] == __version__
    (r,) = out["results"]
    assert r["j0"] == 3 and r["degree"] == 2 and r["t_minus_one_exponent"] == 0
    assert {json.dumps(f["mu"], sort_keys=True) for f in r["factors"]} == {
        '{"kind": "rational_angle", "q": "-1/3"}',
        '{"kind": "rational_angle", "q": "-1/5"}',
    }


@pytest.mark.parametrize(
    "data",
    [
        SQUARE,
        {"A": [[3, 0], [0, 3], [1, 1]], "c": ["1/3", "1/5"], "j0": 3},
        dict(SQUARE, z=["1", "1", "1"]),
        {"A": [[1], [2]], "c": [{"re": 0.3, "im": 0.1}], "z": [2, {"re": 1.0, "im": -1.0}]},
    ],
)
def test_round_trip_and_determinism(data):
    first = rp.render_json(run(data))
    assert rp.render_json(run(data)) == first
    assert rp.parse_result(first) == run(data)
    assert rp.render_json(rp.parse_result(first)) == first


@settings(max_examples=25, deadline=None)
@given(configurations())
def test_round_trip_random(case):
    A, c = case
    data = {"A": [list(p) for p in A.points], "c": [str(x) for x in c.entries]}
    result = run(data)
    assert rp.parse_result(rp.render_json(result)) == result


def test_orientation_conjugates():
    ccw = run(SQUARE)
    cw = run(dict(SQUARE, orientation="cw"))
    for a, b in zip(ccw.results, cw.results):
        assert b.char_poly == a.char_poly.conjugate()
        assert {(f.h, -f.mu.angle % 1, f.mult) for f in a.char_poly.factors} == {
            (f.h, f.mu.angle, f.mult) for f in b.char_poly.factors
        }


@pytest.mark.parametrize(
    "data, pointer",
    [
        ({"A": [[1, 0], [0, 1]], "c": ["1/3", "1/5", "x"]}, "/c/2"),
        ({"A": [[1, 0], [0, 1]], "c": ["1/3", "1/5"], "j0": [1, 3]}, "/j0/1"),
        ({"A": [[1, 0], [0, 1]], "c": ["1/3", "1/5"], "j0": 5}, "/j0"),
        ({"A": [[1, 0], [0, 1]], "c": ["1/3"]}, "/c"),
        ({"A": [[1, 0], [0, 1.5]], "c": ["1/3", "1/5"]}, "/A/1/1"),
        ({"c": ["1/3"]}, ""),
        ({"A": [[1, 0], [0, 1]], "c": ["1/3", "1/5"], "orientation": "up"}, "/orientation"),
    ],
)
def test_schema_pointers(data, pointer):
    with pytest.raises(rp.ConfigError) as info:
        rp.parse_config(data)
    assert info.value.pointer == pointer


def test_check_nondegeneracy_cli(tmp_path, capsys):
    assert cli.main(["check-nondegeneracy", "-i", job(tmp_path, SQUARE)]) == rp.EXIT_INVALID
    assert "/z" in capsys.readouterr().err
    path = job(tmp_path, dict(SQUARE, z=[0, 1, 1]))
    assert cli.main(["check-nondegeneracy", "-i", path, "--format", "text"]) == rp.EXIT_OK
    assert "non-degeneracy: degenerate" in capsys.readouterr().out


def test_compute_cli_text_and_output_file(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert cli.main(["compute", "-i", job(tmp_path, SQUARE), "-o", str(out), "--orientation", "cw"]) == 0
    result = rp.parse_result(out.read_text())
    assert result.results[2].char_poly == sa.product(
        [sa.make_factor(1, F(1, 3)), sa.make_factor(1, F(1, 5))]
    )
    assert cli.main(["compute", "-i", job(tmp_path, SQUARE), "--format", "text"]) == 0
    assert "j0 = 3, a(j0) = (1, 1)" in capsys.readouterr().out


def test_missing_file_and_bad_json(tmp_path):
    assert cli.main(["compute", "-i", str(tmp_path / "nope.json")]) == rp.EXIT_INVALID
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli.main(["compute", "-i", str(bad)]) == rp.EXIT_INVALID


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out
