import json
from pathlib import Path

from click.testing import CliRunner

from conftest import FIXTURES
from hornkit.cli import main

ZONO = str(FIXTURES / "zonotope.json")
TRI = str(FIXTURES / "triangle_sides.json")
SIMPLEX = str(FIXTURES / "triangle_simplex.json")
ATOMIC = str(FIXTURES / "atomic_32_43.json")
EX21 = str(FIXTURES / "example21.json")


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env or {})


def test_analyze_zonotope():
    r = run("analyze", ZONO, "--window", "20")
    assert r.exit_code == 0, r.output
    d = json.loads(r.output)
    assert d["rank"] == 31
    assert d["persistent_dim"] == 6
    assert d["classification"]["kind"] == "Zonotope"
    assert d["S_per_vertex"] == [25] * 8
    assert d["rank_attained"] is True


def test_analyze_triangle_sides():
    r = run("analyze", TRI, "--window", "20")
    d = json.loads(r.output)
    assert d["rank"] == 40
    assert d["persistent_dim"] == 5
    assert d["classification"]["kind"] == "TrianglePlusSegments"


def test_malformed_input_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run("analyze", str(bad))
    assert r.exit_code == 2
    assert "error" in json.loads(r.stderr)


def test_confluent_exit_3(tmp_path):
    conf = tmp_path / "confluent.json"
    conf.write_text(json.dumps({"matrix": [[3, 2], [-4, -3]], "parameters": [0, 0]}))
    r = run("analyze", str(conf))
    assert r.exit_code == 3


def test_solve_atomic_example():
    r = run("solve", ATOMIC, "--window", "16")
    assert r.exit_code == 0, r.output
    d = json.loads(r.output)
    # 6 monomials + the binomial + the 4-term completion; the one fully
    # supported branch collapses onto the monomial 1 at zero parameters
    assert d["rank"] == 9
    persistent = [s for s in d["solutions"] if s["persistent"]]
    assert len(persistent) == 8
    sizes = sorted(len(s["terms"]) for s in persistent)
    assert sizes == [1, 1, 1, 1, 1, 1, 2, 4]
    assert all(s["verified"] for s in d["solutions"])
    binom = next(s for s in d["solutions"] if len(s["terms"]) == 2)
    assert [t["coefficient"] for t in binom["terms"]] == ["1", "-1/3"]


def test_solve_triangle_simplex():
    r = run("solve", SIMPLEX, "--window", "12")
    d = json.loads(r.output)
    assert len(d["solutions"]) == 4
    assert d["rank_attained"] is True


def test_solve_zonotope_reaches_rank():
    r = run("solve", ZONO, "--window", "20")
    d = json.loads(r.output)
    assert len(d["solutions"]) == 31
    assert d["rank_attained"] is True


def test_rank_and_classify():
    r = run("rank", ZONO)
    assert json.loads(r.output)["rank"] == 31
    r = run("classify", TRI)
    d = json.loads(r.output)
    assert d["classification"]["kind"] == "TrianglePlusSegments"
    assert d["maximally_reducible"] is True


def test_series_listing_and_table():
    r = run("series", EX21)
    d = json.loads(r.output)
    assert len(d["branches"]) == 3  # three unordered pairs, each |det| = 1
    r = run("series", EX21, "--submatrix", "1,2", "--window", "3")
    d = json.loads(r.output)
    assert d["initial_exponent"] == ["-1/3", "-1/5"]
    coeffs = {tuple(c["offset"]): c["value"] for c in d["coefficients"]}
    assert coeffs[(0, 0)] == "1"


def test_verify_command(tmp_path):
    sol = tmp_path / "sol.json"
    sol.write_text(json.dumps({"terms": [
        {"exponent": ["0", "0"], "coefficient": "4"},
        {"exponent": ["1", "0"], "coefficient": "2"},
        {"exponent": ["0", "1"], "coefficient": "2"},
        {"exponent": ["1", "1"], "coefficient": "6"},
        {"exponent": ["2", "1"], "coefficient": "1"},
        {"exponent": ["1", "2"], "coefficient": "1"},
    ]}))
    r = run("verify", SIMPLEX, "--solution", str(sol))
    d = json.loads(r.output)
    assert d["is_solution"] is True
    assert d["is_persistent"] is False

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"terms": [{"exponent": ["1", "0"], "coefficient": "1"}]}))
    r = run("verify", SIMPLEX, "--solution", str(bad))
    d = json.loads(r.output)
    assert d["is_solution"] is False
    assert len(d["residuals"]) >= 1


def test_verify_persistent_monomial():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("sol.json").write_text(json.dumps({"terms": [
            {"exponent": ["0", "1"], "coefficient": "1"}]}))
        r = runner.invoke(main, ["verify", ZONO, "--solution", "sol.json"])
        d = json.loads(r.output)
        assert d["is_solution"] is True and d["is_persistent"] is True


def test_render_deterministic(tmp_path):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    for out in (out1, out2):
        r = run("render", ZONO, "--what", "polygon", "--out", str(out))
        assert r.exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("<?xml")

    r = run("render", ZONO, "--what", "supports", "--window", "20",
            "--out", str(tmp_path / "s.svg"))
    assert r.exit_code == 0
    assert (tmp_path / "s.svg").stat().st_size > 500


def test_render_unknown_what(tmp_path):
    r = run("render", ZONO, "--what", "amoeba", "--out", str(tmp_path / "x.svg"))
    assert r.exit_code == 2


def test_suggest_params_cli():
    r = run("suggest-params", str(FIXTURES / "quadrilateral.json"))
    assert r.exit_code == 3


def test_window_env_override():
    r = run("solve", SIMPLEX, env={"HORNKIT_WINDOW": "10"})
    d = json.loads(r.output)
    assert d["window"] == 10


def test_every_fixture_analyzes_quickly():
    import time

    for name in ("zonotope", "triangle_sides", "triangle_simplex", "example21",
                 "example31", "simplicial22", "quadrilateral"):
        t0 = time.monotonic()
        r = run("analyze", str(FIXTURES / f"{name}.json"))
        assert r.exit_code == 0, (name, r.output)
        assert time.monotonic() - t0 < 10.0


def test_round_trip_fixture_files():
    for name in ("zonotope", "triangle_sides", "triangle_simplex", "atomic_32_43",
                 "example21", "example31", "simplicial22", "quadrilateral"):
        path = FIXTURES / f"{name}.json"
        data = json.loads(path.read_text())
        from hornkit.system import HornSystem

        assert HornSystem.from_json(data).to_json() == data
