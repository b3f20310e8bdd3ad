"""Command line: config validation, sweeps, reports and exit codes."""

import csv
import io
import json

import pytest

from bnineq.cli import (BAND_COLUMNS, CSV_COLUMNS, EXIT_ACCURACY, EXIT_OK, EXIT_USAGE, EXIT_VERIFY,
                        fmt, main, parse_exponent)


def write_config(tmp_path, **over):
    cfg = {"command": "sweep", "witnesses": ["exponential"], "n_list": [4], "s_list": [1],
           "pq_pairs": [[1, "inf"]], "seed": 0, "grid_overrides": {}, "output_dir": str(tmp_path)}
    cfg.update(over)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return path


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_fmt_round_trip():
    for x in (0.1, 1 / 3, 2.5e-300, 123456789.123):
        assert float(fmt(x)) == x
    assert fmt(float("inf")) == "inf"
    assert fmt(4.0) == "4" and fmt(7) == "7"


def test_parse_exponent():
    assert parse_exponent("1/3", "x") == 1 / 3
    assert parse_exponent("inf", "x") == float("inf")
    with pytest.raises(Exception):
        parse_exponent("abc", "x")


class TestSweep:
    def test_minimal(self, tmp_path):
        assert main(["sweep", str(write_config(tmp_path))]) == EXIT_OK
        rows = read_rows(tmp_path / "sweep.csv")
        assert len(rows) == 1
        assert list(rows[0]) == CSV_COLUMNS
        assert rows[0]["q"] == "inf"

    def test_grid_sorted(self, tmp_path):
        path = write_config(tmp_path, witnesses=["exponential", "modulated_jackson"],
                            n_list=[40, 8, 64], s_list=[2, 1, 3], pq_pairs=[[2, "inf"], [1, 2]])
        assert main(["sweep", str(path)]) == EXIT_OK
        rows = read_rows(tmp_path / "sweep.csv")
        assert len([r for r in rows if r["witness"] == "exponential"]) == 18
        key = [(r["witness"], int(r["n"]), float(r["s"]), float(r["p"]), float(r["q"])) for r in rows]
        assert key == sorted(key)

    def test_count_3x3x2x2(self, tmp_path):
        path = write_config(tmp_path, witnesses=["exponential", "extremal"], n_list=[1, 2, 3],
                            s_list=[1, 2, 3], pq_pairs=[[1, "inf"], [2, "inf"]])
        assert main(["sweep", str(path)]) == EXIT_OK
        # extremal is defined at (1, inf) only; its (2, inf) cells are skipped
        assert len(read_rows(tmp_path / "sweep.csv")) == 9 * 2 + 9

    def test_deterministic_across_workers(self, tmp_path):
        path = write_config(tmp_path, witnesses=["exponential", "modulated_jackson", "concave_tnl"],
                            n_list=[8, 32], s_list=[1, 2], pq_pairs=[[1, "inf"], ["1/2", 1]])
        main(["sweep", str(path), "--output", str(tmp_path / "a.csv")])
        main(["sweep", str(path), "--output", str(tmp_path / "b.csv"), "--workers", "3"])
        main(["sweep", str(path), "--output", str(tmp_path / "c.csv")])
        a, b, c = ((tmp_path / f).read_bytes() for f in ("a.csv", "b.csv", "c.csv"))
        assert a == b == c

    def test_entire_bump_once(self, tmp_path):
        path = write_config(tmp_path, witnesses=["entire_bump"], n_list=[4, 8, 16], s_list=[3],
                            pq_pairs=[[2, "inf"]])
        assert main(["sweep", str(path)]) == EXIT_OK
        rows = read_rows(tmp_path / "sweep.csv")
        assert len(rows) == 1 and rows[0]["n"] == "0" and rows[0]["grid_M"] == "0"

    def test_inadmissible_skipped(self, tmp_path, capsys):
        path = write_config(tmp_path, witnesses=["modulated_jackson"], n_list=[4], s_list=[1])
        assert main(["sweep", str(path)]) == EXIT_OK
        assert "skip modulated_jackson" in capsys.readouterr().err
        assert read_rows(tmp_path / "sweep.csv") == []

    def test_accuracy_failure(self, tmp_path):
        path = write_config(tmp_path, witnesses=["entire_bump"], s_list=[2], pq_pairs=[["1/2", 1]],
                            grid_overrides={"bump_xi_max": 64})
        assert main(["sweep", str(path)]) == EXIT_ACCURACY

    @pytest.mark.parametrize("over,needle", [
        ({"colour": 1}, "colour"),
        ({"witnesses": ["bogus"]}, "witnesses[0]"),
        ({"pq_pairs": [[2, 1]]}, "p < q"),
        ({"n_list": [1.5]}, "n_list[0]"),
        ({"grid_overrides": {"M": 4}}, "grid_overrides"),
        ({"seed": "x"}, "seed"),
    ])
    def test_bad_config(self, tmp_path, capsys, over, needle):
        assert main(["sweep", str(write_config(tmp_path, **over))]) == EXIT_USAGE
        assert needle in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        p = tmp_path / "x.json"
        p.write_text("{\n  \"witnesses\": [,]\n}")
        assert main(["sweep", str(p)]) == EXIT_USAGE
        assert ":2:" in capsys.readouterr().err


class TestReport:
    def make_csv(self, tmp_path, name, **over):
        path = write_config(tmp_path, **over)
        out = tmp_path / name
        assert main(["sweep", str(path), "--output", str(out)]) == EXIT_OK
        return out

    def test_single_row(self, tmp_path, capsys):
        f = self.make_csv(tmp_path, "one.csv")
        capsys.readouterr()
        assert main(["report", "band-summary", str(f)]) == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert list(rows[0]) == BAND_COLUMNS
        assert rows[0]["min_norm_ratio"] == rows[0]["max_norm_ratio"]
        assert rows[0]["count"] == "1" and rows[0]["spread"] == "1"

    def test_concatenation(self, tmp_path, capsys):
        a = self.make_csv(tmp_path, "a.csv", n_list=[4, 8])
        b = self.make_csv(tmp_path, "b.csv", n_list=[16])
        both = self.make_csv(tmp_path, "ab.csv", n_list=[4, 8, 16])
        capsys.readouterr()
        main(["report", "band-summary", str(a), str(b)])
        split = capsys.readouterr().out
        main(["report", "band-summary", str(both)])
        assert split == capsys.readouterr().out

    def test_scan_table(self, tmp_path, capsys):
        f = self.make_csv(tmp_path, "a.csv", n_list=[4, 8], pq_pairs=[[2, "inf"]])
        capsys.readouterr()
        assert main(["report", "scan-table", str(f)]) == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        # e^{inx}: ratio n^s (2 pi)^{-1/2}, so the scan is n^{-1/2} (2 pi)^{-1/2}
        assert [float(r["scan_value"]) for r in rows] == pytest.approx(
            [n ** -0.5 * (2 * 3.141592653589793) ** -0.5 for n in (4, 8)])

    def test_schema_mismatch(self, tmp_path, capsys):
        f = tmp_path / "bad.csv"
        f.write_text(",".join(CSV_COLUMNS).replace("normalized", "norm") + "\n")
        assert main(["report", "band-summary", str(f)]) == EXIT_USAGE
        assert "'norm'" in capsys.readouterr().err


class TestOtherCommands:
    def test_unknown_suite(self):
        assert main(["verify", "nope"]) == EXIT_USAGE

    def test_verify_trig(self, capsys):
        assert main(["verify", "trig"]) == EXIT_OK
        assert "parseval" in capsys.readouterr().out

    def test_extremal(self, capsys):
        assert main(["extremal", "--n", "2", "--s", "1"]) == EXIT_OK
        out = json.loads(capsys.readouterr().out)
        assert out["constant"] == pytest.approx(0.6035533905932737, rel=1e-9)

    def test_extremal_infeasible(self):
        assert main(["extremal", "--n", "0", "--s", "1"]) == EXIT_USAGE

    def test_atoms(self, capsys):
        assert main(["hardy", "atoms", "--p", "1/2", "--count", "4"]) == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 4 and all(r["valid"] == "1" for r in rows)

    def test_atoms_bad_p(self):
        assert main(["hardy", "atoms", "--p", "2", "--count", "1"]) == EXIT_USAGE

    def test_missing_args(self):
        assert main(["extremal", "--n", "2"]) == EXIT_USAGE


def test_verify_failure_code(monkeypatch):
    from bnineq import suites

    monkeypatch.setitem(suites._CHECKS, "trig", [("always fails", lambda: (False, "x"))])
    assert main(["verify", "trig"]) == EXIT_VERIFY
