"""CLI behavior: subcommands, exit codes, config handling, determinism."""

import json

from charmatch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- coeffs ------------------------------------------------------------------------


def test_coeffs_taylor_exp(capsys):
    code, out, _ = run(capsys, "coeffs", "--f", "exp(x)", "--kind", "taylor",
                       "--order", "3")
    assert code == 0
    rows = [line.split() for line in out.splitlines()
            if line.split() and line.split()[0].isdigit()]
    assert [r[0] for r in rows] == ["0", "1", "2", "3"]
    assert all(r[1] == "1" for r in rows)


def test_coeffs_nsbf_sin(capsys):
    code, out, _ = run(capsys, "coeffs", "--f", "sin(x)", "--kind", "nsbf",
                       "--order", "5")
    assert code == 0
    values = [line.split()[1] for line in out.splitlines()
              if line.split() and line.split()[0].isdigit()]
    assert values == ["0", "2", "0", "-2", "0", "2"]


def test_coeffs_unknown_kind(capsys):
    code, _, err = run(capsys, "coeffs", "--f", "exp(x)", "--kind", "gauss")
    assert code == 2
    assert "unknown expansion kind" in err


def test_coeffs_bad_expression(capsys):
    code, _, err = run(capsys, "coeffs", "--f", "exp(", "--kind", "taylor")
    assert code == 2


def test_coeffs_json_output(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "coeffs", "--f", "sin(x)", "--kind", "taylor",
                     "--order", "4", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["kind"] == "taylor" and len(data["a"]) == 5


# -- verify -------------------------------------------------------------------------


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--f", "exp(x)", "--kind", "taylor",
                       "--order", "8")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True and report["max_residual"] == 0.0


def test_verify_newpade_alias(capsys):
    code, out, _ = run(capsys, "verify", "--f", "exp(x)", "--kind", "newpade",
                       "--order", "8")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_corrupted_coefficient_fails(capsys):
    code, out, _ = run(capsys, "verify", "--f", "exp(x)", "--kind", "taylor",
                       "--order", "4", "--perturb", "2,0.001")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_ws_preset(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "ws-a", "--order", "10")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_family_mismatch_exits_3(capsys):
    code, _, err = run(capsys, "verify", "--preset", "ws-a", "--order", "6",
                       "--f", "1 - x^2", "--family", "derivative")
    assert code == 3
    assert "family mismatch" in err


# -- figure --------------------------------------------------------------------------


def test_figure_unknown_name(capsys):
    code, _, err = run(capsys, "figure", "totally-made-up")
    assert code == 2


def test_figure_deterministic(tmp_path, capsys):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    for path in (first, second):
        code, _, _ = run(capsys, "figure", "ws-d", "--csv", str(path),
                         "--svg", str(path.with_suffix(".svg")))
        assert code == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.with_suffix(".svg").read_bytes() == second.with_suffix(".svg").read_bytes()


def test_figure_csv_format(tmp_path, capsys):
    path = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "figure", "exppoly", "--csv", str(path),
                     "--svg", str(tmp_path / "fig.svg"))
    assert code == 0
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "x" and "sin" in header
    assert any("err_" in h for h in header)
    # 17 significant digits survive a round trip
    row = lines[1].split(",")
    assert all(f"{float(v):.17g}" == v for v in row)


def test_figure_aliases(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "inargpow", "--csv",
                     str(tmp_path / "i.csv"), "--svg", str(tmp_path / "i.svg"))
    assert code == 0


def test_figure_svg_is_wellformed(tmp_path, capsys):
    import xml.etree.ElementTree as ET

    svg = tmp_path / "fig.svg"
    run(capsys, "figure", "ws-d", "--csv", str(tmp_path / "fig.csv"),
        "--svg", str(svg))
    root = ET.fromstring(svg.read_text())
    assert root.tag.endswith("svg")


# -- compare --------------------------------------------------------------------------


def test_compare_nsbf_beats_taylor(capsys):
    code, out, _ = run(capsys, "compare", "--f", "sin(x)",
                       "--grid", "0,9.42,301", "--order", "10",
                       "--kind", "nsbf,taylor")
    assert code == 0
    lines = [l.split() for l in out.splitlines()[1:]]
    errors = {row[0]: float(row[1]) for row in lines}
    assert errors["nsbf"] < errors["taylor"] / 10


def test_compare_identical_configs(capsys):
    code, out, _ = run(capsys, "compare", "--f", "exp(x)",
                       "--grid=-1,1,51", "--order", "6",
                       "--kind", "taylor,taylor")
    assert code == 0
    lines = [l.split() for l in out.splitlines()[1:]]
    assert lines[0][1] == lines[1][1]


def test_compare_needs_two(capsys):
    code, _, err = run(capsys, "compare", "--f", "exp(x)",
                       "--grid", "-1,1,11", "--kind", "taylor")
    assert code == 2


def test_compare_invalid_grid(capsys):
    code, _, err = run(capsys, "compare", "--f", "exp(x)",
                       "--grid", "0,1,1", "--kind", "taylor,nsbf")
    assert code == 2


def test_compare_mismatched_grids_via_configs(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"f": "sin(x)", "kind": "taylor", "order": 6,
                             "grid": "0,1,11"}))
    b.write_text(json.dumps({"f": "sin(x)", "kind": "nsbf", "order": 6,
                             "grid": "0,2,11"}))
    code, _, err = run(capsys, "compare", "--config", str(a), "--config", str(b))
    assert code == 2
    assert "share the grid" in err


# -- config files ----------------------------------------------------------------------


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"f": "exp(x)", "kind": "taylor", "order": 3}))
    code, out, _ = run(capsys, "coeffs", "--config", str(cfg), "--order", "5")
    assert code == 0
    rows = [l for l in out.splitlines() if l.split() and l.split()[0].isdigit()]
    assert len(rows) == 6  # the flag wins over the file


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"f": "exp(x)", "kind": "taylor", "bogus": 1}))
    code, _, err = run(capsys, "coeffs", "--config", str(cfg))
    assert code == 2


def test_usage_error_on_missing_subcommand(capsys):
    assert main([]) == 2
