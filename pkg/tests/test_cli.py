"""CLI surface: JSON/pretty output, exit codes, and round trips."""
import json

from exactgf.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_guess_golden(capsys):
    code, out, _ = invoke(
        capsys, "guess", "--data", "1,4,15,56,209,780,2911,10864,40545,151316"
    )
    assert code == 0
    assert json.loads(out) == {"initial": [1, 4], "rec": [4, -1]}


def test_guess_no_fit_exit_one(capsys):
    code, out, _ = invoke(capsys, "guess", "--data", "1,2,4,8,16,32,64,129")
    assert code == 1
    assert "error" in json.loads(out)


def test_gf_grid_pretty_two_rows(capsys):
    code, out, _ = invoke(capsys, "gf-grid", "--k", "2", "--pretty")
    assert code == 0
    assert out.strip() == "t/(t^2-4*t+1)"


def test_gf_grid_json(capsys):
    code, out, _ = invoke(capsys, "gf-grid", "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["num"] == ["0", "1"]
    assert payload["den"] == ["1", "-4", "1"]
    assert payload["offset"] == 1


def test_toeplitz_transfer_pretty(capsys):
    code, out, _ = invoke(
        capsys, "toeplitz-gf", "--row", "2,3", "--col", "2,4,5",
        "--mode", "det", "--method", "transfer", "--pretty",
    )
    assert code == 0
    assert out.strip() == "-1/(45*t^3-12*t^2+2*t-1)"


def test_toeplitz_guess_and_transfer_agree(capsys):
    _, out_guess, _ = invoke(
        capsys, "toeplitz-gf", "--row", "2,3", "--col", "2,4,5",
        "--mode", "det", "--method", "guess",
    )
    _, out_transfer, _ = invoke(
        capsys, "toeplitz-gf", "--row", "2,3", "--col", "2,4,5",
        "--mode", "det", "--method", "transfer",
    )
    a, b = json.loads(out_guess), json.loads(out_transfer)
    assert a["num"] == b["num"] and a["den"] == b["den"]


def test_emit_data_round_trip(capsys):
    code, out, _ = invoke(capsys, "gf-grid", "--k", "3", "--emit-data")
    assert code == 0
    payload = json.loads(out)
    code, out2, _ = invoke(capsys, "guess", "--data", ",".join(payload["data"]))
    assert code == 0
    guessed = json.loads(out2)
    # same recurrence: den = 1 - sum(rec_i t^i)
    den = [1] + [-c for c in guessed["rec"]]
    assert [str(c) for c in den] == payload["den"]


def test_resistance_json(capsys):
    code, out, _ = invoke(capsys, "resistance", "--k", "1", "--n", "5")
    assert code == 0
    assert json.loads(out)["resistance"] == "4"


def test_moments_json(capsys):
    code, out, _ = invoke(capsys, "moments", "--k", "2", "--n", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["mean"] == "3/2"
    assert payload["variance"] == "1/4"


def test_c_poly_pretty(capsys):
    code, out, _ = invoke(capsys, "c-poly", "--k", "2", "--pretty")
    assert code == 0
    assert out.strip() == "t-1"


def test_gf_ver_json(capsys):
    code, out, _ = invoke(capsys, "gf-ver", "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["num"] == [[], [0, 1]]
    assert payload["den"] == [[1], [-2, -2], [1]]


def test_toeplitz_scheme_dump(capsys):
    code, out, _ = invoke(capsys, "toeplitz-scheme", "--row", "2,3", "--col", "2,4,5")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["states"]) == 3
    assert payload["states"][0]["row"] == ["2", "3"]
    assert payload["transitions"][0] == [["2", 0], ["-3", 1]]


def test_long_run_gate(capsys):
    code, _out, err = invoke(capsys, "gf-grid", "--k", "6")
    assert code == 2
    assert "--allow-long" in err


def test_malformed_graph_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _out, err = invoke(capsys, "gf-product", "--graph", str(bad))
    assert code == 2
    assert "graph JSON" in err


def test_graph_file_pipeline(tmp_path, capsys):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps({
        "n": 3,
        "edges": [[0, 1, "other", 1], [1, 2, "other", 1], [0, 2, "other", 1]],
    }))
    code, out, _ = invoke(capsys, "gf-product", "--graph", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] >= 1


def test_unknown_flag_rejected(capsys):
    code, _out, err = invoke(capsys, "gf-grid", "--k", "2", "--bogus")
    assert code == 2


def test_bad_vertex_pair_is_usage_error(capsys):
    code, _out, _err = invoke(capsys, "resistance", "--k", "1", "--n", "1")
    assert code == 2
