import csv
import json
import math

import numpy as np
import pytest

from fracvel import Direction, default_zoo
from fracvel.cli import (
    DataError,
    SampledFunction,
    UsageError,
    build_function,
    load_samples,
    main,
    parse_args,
    render_csv,
    render_json,
)


def write_samples(path, xs, ys):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "value"])
        for x, y in zip(xs, ys):
            w.writerow([repr(float(x)), repr(float(y))])
    return str(path)


class TestParseArgs:
    def test_analyze_defaults(self):
        cfg = parse_args(["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5"])
        assert cfg.command == "analyze"
        assert cfg.direction == "both"
        assert cfg.tol is None
        assert cfg.eps0 == 2.0 ** -4
        assert cfg.ratio == 0.5
        assert cfg.count == 40
        assert cfg.fmt == "json"

    def test_scan_interval_parsed(self):
        cfg = parse_args(["scan", "--fn", "cusp:", "--interval=-1,1",
                          "--beta", "0.5", "--n", "11"])
        assert cfg.interval == (-1.0, 1.0)

    @pytest.mark.parametrize("argv", [
        ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "1.5"],
        ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0"],
        ["lfd", "--fn", "cusp:", "--x", "0", "--beta", "1"],
        ["verify", "--fn", "cusp:", "--theorem", "mean_value",
         "--interval", "0,1", "--beta", "1"],
        ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5",
         "--ratio", "1.0"],
        ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5",
         "--eps0", "0"],
        ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5",
         "--count", "3"],
        ["scan", "--fn", "cusp:", "--interval", "1,0", "--beta", "0.5",
         "--n", "11"],
        ["scan", "--fn", "cusp:", "--interval", "0;1", "--beta", "0.5",
         "--n", "11"],
        ["zoo", "list", "--format", "csv"],
    ])
    def test_usage_errors(self, argv):
        with pytest.raises(UsageError):
            parse_args(argv)

    def test_bad_choice_exits_2(self):
        with pytest.raises(SystemExit) as exc_info:
            parse_args(["analyze", "--fn", "cusp:", "--x", "0",
                        "--beta", "0.5", "--direction", "sideways"])
        assert exc_info.value.code == 2


class TestBuildFunction:
    def test_cusp_with_params(self):
        f = build_function("cusp:a=1,beta=0.25,k=2,c0=3")
        assert f.id == "cusp(a=1,beta=0.25,K=2,c0=3)"
        assert f(1.0) == 3.0

    def test_kind_is_case_insensitive(self):
        f = build_function("CUSP:A=0")
        assert f(0.0) == 0.0

    def test_chirp(self):
        f = build_function("chirp:gamma=0.5")
        assert f(-1.0) == 0.0

    def test_weierstrass_defaults(self):
        f = build_function("weierstrass:")
        assert f.id.startswith("weierstrass(")

    def test_poly(self):
        f = build_function("poly:coeffs=0;0;1,domain=-1;1")
        assert f(0.5) == 0.25
        assert f.domain == (-1.0, 1.0)

    def test_file_kind(self, tmp_path):
        xs = np.linspace(0.0, 1.0, 32)
        path = write_samples(tmp_path / "d.csv", xs, xs)
        f = build_function(f"file:{path}")
        assert isinstance(f, SampledFunction)
        assert f.id == f"file:{path}"

    @pytest.mark.parametrize("spec", [
        "mystery:a=0",
        "cusp:a",
        "cusp:a=zero",
        "cusp:spin=1",
        "poly:",
        "poly:coeffs=1;two",
        "poly:coeffs=1,domain=0",
        "chirp:gamma=1.5",
        "weierstrass:amp=0.2,freq=3",
        "file:",
    ])
    def test_rejected_specs(self, spec):
        with pytest.raises(UsageError):
            build_function(spec)


class TestLoadSamples:
    def test_round_trip(self, tmp_path):
        xs = np.linspace(0.0, 2.0, 64)
        f = load_samples(write_samples(tmp_path / "d.csv", xs, xs ** 2))
        assert f.domain == (0.0, 2.0)
        assert f.resolution == pytest.approx(2.0 / 63.0)
        assert f.eps_floor == pytest.approx(8.0 / 63.0)
        assert f(1.0) == pytest.approx(1.0, abs=1e-3)  # interp error only

    def test_queries_outside_domain_rejected(self, tmp_path):
        xs = np.linspace(0.0, 1.0, 32)
        f = load_samples(write_samples(tmp_path / "d.csv", xs, xs))
        from fracvel import DomainError
        with pytest.raises(DomainError):
            f(1.5)

    def test_missing_header(self, tmp_path):
        p = tmp_path / "d.csv"
        rows = "\n".join(f"{i * 0.1},{i}" for i in range(20))
        p.write_text(rows + "\n")
        with pytest.raises(DataError, match="header"):
            load_samples(str(p))

    def test_empty_file(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("")
        with pytest.raises(DataError, match="empty"):
            load_samples(str(p))

    def test_too_few_rows(self, tmp_path):
        xs = np.linspace(0.0, 1.0, 8)
        with pytest.raises(DataError, match="at least 16"):
            load_samples(write_samples(tmp_path / "d.csv", xs, xs))

    def test_one_column(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("x\n" + "\n".join(str(i) for i in range(20)) + "\n")
        with pytest.raises(DataError, match="two columns"):
            load_samples(str(p))

    def test_non_numeric_cell(self, tmp_path):
        p = tmp_path / "d.csv"
        body = "\n".join(f"{i},{i}" for i in range(18))
        p.write_text(f"x,value\n{body}\nnineteen,19\n")
        with pytest.raises(DataError):
            load_samples(str(p))

    def test_non_finite_entries(self, tmp_path):
        p = tmp_path / "d.csv"
        body = "\n".join(f"{i},{i}" for i in range(18))
        p.write_text(f"x,value\n{body}\n18,inf\n")
        with pytest.raises(DataError, match="non-finite"):
            load_samples(str(p))

    def test_non_increasing_abscissae(self, tmp_path):
        xs = np.linspace(0.0, 1.0, 32)
        xs[10] = xs[9]
        with pytest.raises(DataError, match="strictly increasing"):
            load_samples(write_samples(tmp_path / "d.csv", xs, xs))


class TestSampledAnalyze:
    def test_order_one_slope_recovered(self, tmp_path, capsys):
        # 2^14 gaps on [0, 1]; the floor keeps 8 increments, all grid-aligned
        xs = np.linspace(0.0, 1.0, 2 ** 14 + 1)
        path = write_samples(tmp_path / "grid.csv", xs, xs ** 2)
        code = main(["analyze", "--fn", f"file:{path}", "--x", "0.5",
                     "--beta", "1", "--tol", "0.01"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schedule"]["effective_count"] == 8
        fwd = payload["reports"]["forward"]
        assert fwd["status"] == "converged"
        assert abs(fwd["value"] - 1.0) <= 0.02

    def test_floor_leaves_too_little(self, tmp_path, capsys):
        xs = np.linspace(0.0, 1.0, 32)
        path = write_samples(tmp_path / "grid.csv", xs, xs)
        code = main(["analyze", "--fn", f"file:{path}", "--x", "0.5",
                     "--beta", "1"])
        assert code == 1
        assert "usable increments" in capsys.readouterr().err


class TestRendering:
    def test_keys_sorted_and_floats_repr(self):
        text = render_json({"b": 0.1, "a": 2.0, "z": [1, True, None]})
        assert text == '{"a":2.0,"b":0.1,"z":[1,true,null]}'

    def test_non_finite_becomes_null(self):
        assert render_json({"v": math.inf, "w": math.nan}) == '{"v":null,"w":null}'

    def test_enums_render_as_values(self):
        assert render_json([Direction.FORWARD]) == '["forward"]'

    def test_numpy_scalars_and_arrays(self):
        text = render_json({"a": np.float64(0.5), "b": np.arange(3)})
        assert text == '{"a":0.5,"b":[0,1,2]}'

    def test_unserializable_rejected(self):
        with pytest.raises(TypeError):
            render_json(object())

    def test_csv_unix_newlines(self):
        text = render_csv(("a", "b"), [(1.0, True), (math.inf, False)])
        assert text == "a,b\n1.0,true\nnull,false\n"
        assert "\r" not in text


class TestMainCommands:
    def test_zoo_list_json_lines(self, capsys):
        assert main(["zoo", "list"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 6
        ids = [json.loads(line)["id"] for line in lines]
        assert ids == [f.id for f in default_zoo()]

    def test_analyze_cusp(self, capsys):
        code = main(["analyze", "--fn", "cusp:a=0,beta=0.5", "--x", "0",
                     "--beta", "0.5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["reports"]["forward"]["value"] == 1.0
        assert payload["reports"]["backward"]["value"] == 1.0
        assert payload["meta"]["tool"] == "fracvel"

    def test_analyze_csv_format(self, capsys):
        code = main(["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5",
                     "--format", "csv"])
        assert code == 0
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0] == "direction,status,value,residual,c1_constant,c2_oscillation"
        assert len(lines) == 3  # header + both directions

    def test_holder_cusp(self, capsys):
        code = main(["holder", "--fn", "cusp:beta=0.5", "--x", "0",
                     "--direction", "fwd", "--eps0", "0.015625",
                     "--count", "15"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["estimate"]["exponent"] == pytest.approx(0.5, abs=1e-6)
        assert payload["estimate"]["low_confidence"] is False

    def test_scan_csv_rows(self, capsys):
        code = main(["scan", "--fn", "cusp:", "--interval=-1,1",
                     "--beta", "0.5", "--n", "11", "--format", "csv"])
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "x,direction,status,value,flagged"
        assert len(lines) == 1 + 2 * 11 - 2

    def test_scan_json_flags_cusp(self, capsys):
        code = main(["scan", "--fn", "cusp:", "--interval=-1,1",
                     "--beta", "0.5", "--n", "11", "--threshold", "1e-3"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["flagged_fraction"] == pytest.approx(1.0 / 11.0)
        assert {w["x"] for w in payload["flagged"]} == {0.0}

    def test_lfd_cusp(self, capsys):
        code = main(["lfd", "--fn", "cusp:", "--x", "0", "--beta", "0.5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        assert payload["velocity"] == 1.0

    def test_verify_mean_value(self, capsys):
        code = main(["verify", "--fn", "cusp:", "--theorem", "mean_value",
                     "--interval", "0,1", "--beta", "0.5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["holds"] is True
        assert payload["witness"]["x"] == 0.0

    def test_verify_rolle_polynomial(self, capsys):
        code = main(["verify", "--fn", "poly:coeffs=0;1;-1,domain=-1;2",
                     "--theorem", "rolle", "--interval", "0,1", "--beta", "1",
                     "--count", "24"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["holds"] is True
        assert payload["witness"]["x"] == 0.5

    def test_usage_error_exit_2(self, capsys):
        code = main(["analyze", "--fn", "mystery:", "--x", "0", "--beta", "0.5"])
        assert code == 2
        assert "unknown function kind" in capsys.readouterr().err

    def test_analysis_error_exit_1(self, capsys):
        # cusp domain is (-2, 2); probing at 5 fails inside analysis
        code = main(["analyze", "--fn", "cusp:", "--x", "5", "--beta", "0.5"])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_file_exit_1(self, capsys):
        code = main(["analyze", "--fn", "file:/no/such/file.csv", "--x", "0",
                     "--beta", "0.5"])
        assert code == 1


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, capsys):
        argv = ["analyze", "--fn", "cusp:", "--x", "0", "--beta", "0.5"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_out_file_matches_stdout(self, tmp_path, capsys):
        argv = ["scan", "--fn", "cusp:", "--interval=-1,1", "--beta", "0.5",
                "--n", "11", "--format", "csv"]
        assert main(argv) == 0
        stdout_text = capsys.readouterr().out
        dest = tmp_path / "scan.csv"
        assert main(argv + ["--out", str(dest)]) == 0
        assert dest.read_text() == stdout_text
