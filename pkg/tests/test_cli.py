import csv
import io
import json
import subprocess
import sys

import pytest

from bsc_exponents.cli import EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, fmt, main
from bsc_exponents.rates import global_constants


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestFormatting:
    def test_fmt(self):
        assert fmt(True) == "true"
        assert fmt(0.1) == "0.10000000000000001"
        assert float(fmt(1 / 3)) == 1 / 3
        assert fmt(7) == "7"


class TestConstants:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "constants")
        header, rows = table(out)
        assert code == EXIT_OK
        assert header == ["name", "value", "reference", "delta", "tolerance", "passed"]
        names = [r[0] for r in rows]
        assert names == ["tau0", "R0", "p0", "p1", "tau0_equation_residual"]
        assert all(r[-1] == "true" for r in rows)
        assert float(rows[1][1]) == global_constants().r0

    def test_json(self, capsys):
        code, out, _ = run(capsys, "constants", "--json")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["data"]["name"][0] == "tau0"
        assert obj["data"]["passed"] == [True] * 5

    def test_tight_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, "constants", "--tol", "1e-12")
        assert code == EXIT_FAIL
        assert "false" in out


class TestRates:
    def test_reference_channel(self, capsys):
        code, out, _ = run(capsys, "rates", "--p", "0.01")
        header, rows = table(out)
        assert code == EXIT_OK
        vals = {r[0]: float(r[1]) for r in rows}
        assert vals["C"] == pytest.approx(0.9192, abs=5e-4)
        assert vals["R2"] == pytest.approx(0.5370, abs=5e-4)

    def test_json_metadata(self, capsys):
        _, out, _ = run(capsys, "rates", "--p", "0.01", "--format", "json")
        assert json.loads(out)["metadata"] == {"p": 0.01}

    @pytest.mark.parametrize("p", ["0", "0.5", "0.7"])
    def test_domain(self, p):
        with pytest.raises(SystemExit) as exc:
            main(["rates", "--p", p])
        assert exc.value.code == EXIT_DOMAIN


class TestFigure1:
    def test_columns_and_shape(self, capsys):
        code, out, _ = run(capsys, "figure1", "--points", "12")
        header, rows = table(out)
        assert code == EXIT_OK
        assert header == ["p", "R1", "R2", "Rcrit", "C"]
        assert len(rows) == 12
        vals = [[float(x) for x in r] for r in rows]
        for j in range(1, 5):
            col = [v[j] for v in vals]
            assert all(b < a for a, b in zip(col, col[1:]))
        p0 = global_constants().p0
        for v in vals:
            assert v[2] <= v[1] + 1e-12
            if v[0] > p0 * 1.01:
                assert v[2] == pytest.approx(v[1], abs=1e-8)

    def test_bad_range(self, capsys):
        code, _, err = run(capsys, "figure1", "--p-min", "0.3", "--p-max", "0.2")
        assert code == EXIT_DOMAIN
        assert "error" in err


class TestFigure2:
    def test_columns_and_seams(self, capsys):
        code, out, _ = run(capsys, "figure2", "--p", "0.01", "--points", "32", "--format", "json")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["columns"] == ["R", "E_low", "E_up", "region_tag"]
        meta = obj["metadata"]
        for key in ("seam_R2", "seam_R_crit", "seam_R_min", "seam_R0", "seam_C"):
            assert key in meta
        assert meta["seam_R2"] in obj["data"]["R"]
        assert set(obj["data"]["region_tag"]) == {"below_R2", "straight_line", "sphere_packing"}

    def test_csv_json_agree(self, capsys):
        _, text, _ = run(capsys, "figure2", "--points", "16")
        _, js, _ = run(capsys, "figure2", "--points", "16", "--format", "json")
        header, rows = table(text)
        data = json.loads(js)["data"]
        for j, name in enumerate(header[:3]):
            assert [float(r[j]) for r in rows] == data[name]

    def test_out_file_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["figure2", "--points", "24", "--out", str(a)]) == EXIT_OK
        assert main(["figure2", "--points", "24", "--out", str(b)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert a.read_bytes() == b.read_bytes()


class TestMu:
    def test_all_methods_at_half(self, capsys):
        code, out, _ = run(capsys, "mu", "--R", "0.2", "--alpha", "0.5", "--omega", "0.2", "--all")
        _, rows = table(out)
        vals = {r[0]: float(r[1]) for r in rows}
        assert code == EXIT_OK
        assert set(vals) == {"mu_quad", "mu_closed", "mu_half", "spread"}
        assert vals["spread"] <= 1e-10

    def test_upper_end(self, capsys):
        code, out, _ = run(capsys, "mu", "--R", "0.4", "--alpha", "0.45", "--omega", "G")
        _, rows = table(out)
        vals = {r[0]: float(r[1]) for r in rows}
        assert code == EXIT_OK
        assert abs(vals["lemma4_residual"]) <= 1e-9

    def test_outside_domain(self, capsys):
        code, _, err = run(capsys, "mu", "--R", "0.4", "--alpha", "0.05", "--omega", "0.01")
        assert code == EXIT_DOMAIN
        assert err.startswith("error:")


class TestVerify:
    def test_identities(self, capsys):
        code, out, err = run(capsys, "verify", "identities")
        header, rows = table(out)
        assert code == EXIT_OK
        assert header[:3] == ["suite", "part", "cases"]
        assert all(r[5] == "true" for r in rows)
        assert err.startswith("PASS identities")

    def test_impossible_tolerance(self, capsys):
        code, _, err = run(capsys, "verify", "constants", "--tol", "1e-30")
        assert code == EXIT_FAIL
        assert err.startswith("FAIL")

    def test_json(self, capsys):
        code, out, _ = run(capsys, "verify", "oracle", "--format", "json", "--seed", "3")
        rep = json.loads(out)
        assert code == EXIT_OK
        assert rep[0]["suite"] == "oracle" and rep[0]["seeds"] == [3]


class TestEntryPoint:
    def test_module_runs(self):
        res = subprocess.run([sys.executable, "-m", "bsc_exponents", "rates", "--p", "0.1"],
                             capture_output=True, text=True, check=True)
        assert res.stdout.startswith("name,value\n")
