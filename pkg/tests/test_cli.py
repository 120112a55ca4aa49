import io
import json
import subprocess
import sys

import pytest

from vcbound.bounds import BoundReport
from vcbound.cli import EXAMPLE_ARCHITECTURE, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "arch.json"
    path.write_text(json.dumps(EXAMPLE_ARCHITECTURE.to_dict()))
    return path


class TestBound:
    def test_text(self, example_file):
        code, text = run("bound", str(example_file))
        assert code == EXIT_OK
        assert "d = 4" in text and "H(v|u)" in text

    def test_json_round_trip(self, example_file):
        code, text = run("bound", str(example_file), "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(text)
        rep = BoundReport.from_dict(doc["report"])
        assert rep.k == 70 and rep.degree_profile == (3, 1)
        assert rep.gj_vc == pytest.approx(761.977306, abs=1e-6)

    def test_single_layer_eq43_equals_gj(self, tmp_path):
        path = tmp_path / "one.json"
        path.write_text(json.dumps({"input_dim": 2, "layers": [
            {"neurons": 1, "weight_count": 5, "alpha": 3, "beta": 2}]}))
        doc = json.loads(run("bound", str(path), "--format", "json")[1])["report"]
        assert doc["eq43_vc"] == doc["gj_vc"]

    def test_guard_warning(self, tmp_path, capsys):
        path = tmp_path / "thin.json"
        path.write_text(json.dumps({"input_dim": 1, "layers": [
            {"neurons": 2, "weight_count": 1, "alpha": 2, "beta": 1},
            {"neurons": 1, "weight_count": 3, "alpha": 1, "beta": 2}]}))
        code, _ = run("bound", str(path))
        assert code == EXIT_OK
        assert "warning" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"input_dim": 2,\n "layers": [}')
        assert run("bound", str(path))[0] == EXIT_USAGE
        assert "line 2" in capsys.readouterr().err

    def test_unknown_field(self, tmp_path):
        doc = EXAMPLE_ARCHITECTURE.to_dict()
        doc["dropout"] = 0.5
        path = tmp_path / "extra.json"
        path.write_text(json.dumps(doc))
        assert run("bound", str(path))[0] == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert run("bound", str(tmp_path / "nope.json"))[0] == EXIT_USAGE

    def test_bad_arguments(self):
        assert run("bound")[0] == EXIT_USAGE
        assert run("verify", "--budget", "0")[0] == EXIT_USAGE


class TestExample:
    def test_values(self):
        code, text = run("example-paper")
        assert code == EXIT_OK
        assert "H(v|u) = 0.684033" in text
        assert "lg(4ed) = 5.4427" in text
        assert "0.12567" in text

    def test_byte_identical(self):
        assert run("example-paper")[1] == run("example-paper")[1]

    def test_json(self):
        doc = json.loads(run("example-paper", "--format", "json")[1])
        assert doc["H_printed_order"] == pytest.approx(0.684033, abs=1e-6)
        assert doc["gj_vc"] - doc["eq43_vc_printed_order"] == pytest.approx(140 * doc["H_printed_order"])


class TestVerify:
    def test_clean_run(self, tmp_path):
        code, text = run("verify", "--cert-dir", str(tmp_path))
        assert code == EXIT_OK
        assert "all bounds respected" in text
        assert "[grid-estimate]" in text
        assert list(tmp_path.glob("*.json"))

    def test_tampered_bound_is_caught(self):
        code, text = run("verify", "--tamper-eq41-divisor", "2")
        assert code == EXIT_VIOLATION
        assert "VIOLATION" in text and "reproducer" in text

    def test_json_output(self):
        doc = json.loads(run("verify", "--format", "json", "--seed", "3")[1])
        assert doc["violations"] == 0
        assert {c["suite"] for c in doc["checks"]} == {"sturm", "grid", "containment", "shatter"}


class TestVerifyCert:
    @pytest.fixture
    def cert_path(self, tmp_path):
        assert run("verify", "--cert-dir", str(tmp_path))[0] == EXIT_OK
        return sorted(tmp_path.glob("*.json"))[0]

    def test_valid(self, cert_path):
        code, text = run("verify-cert", str(cert_path))
        assert code == EXIT_OK and "valid" in text

    def test_corrupted(self, cert_path):
        doc = json.loads(cert_path.read_text())
        first = sorted(doc["witnesses"])[0]
        for bits in doc["witnesses"]:
            doc["witnesses"][bits] = doc["witnesses"][first]
        cert_path.write_text(json.dumps(doc))
        code, text = run("verify-cert", str(cert_path))
        assert code == EXIT_VIOLATION and "INVALID" in text

    def test_unparseable(self, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("not json")
        assert run("verify-cert", str(path))[0] == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vcbound.cli", "example-paper"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.684033" in proc.stdout
