import json
from pathlib import Path

import jsonschema
import pytest

from annlab.cli import run

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    with open(SCHEMA_DIR / f"{name}.schema.json") as fh:
        return json.load(fh)


def run_to_file(tmp_path, name, argv):
    out = tmp_path / "report.json"
    code = run(argv + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def check(tmp_path, name, argv, expect=0):
    code, text = run_to_file(tmp_path, name, argv)
    assert code == expect
    report = json.loads(text)
    jsonschema.validate(report, load_schema(name))
    return report


@pytest.fixture()
def code_file(tmp_path):
    path = tmp_path / "code.json"
    assert run(["gen-code", "--n", "4", "--code-length", "16",
                "--min-dist", "4", "--seed", "1", "--out", str(path)]) == 0
    return str(path)


class TestSubcommands:
    def test_gen_code(self, tmp_path):
        report = check(tmp_path, "gen-code",
                       ["gen-code", "--n", "4", "--code-length", "16",
                        "--min-dist", "4", "--seed", "1"])
        assert report["min_distance"] >= 4
        assert len(report["codewords"]) == 4

    def test_gen_code_usage_error(self):
        assert run(["gen-code", "--n", "4", "--code-length", "2",
                    "--min-dist", "4"]) == 2

    def test_gen_code_missing_flags(self):
        assert run(["gen-code", "--n", "4"]) == 2

    def test_build_instance(self, tmp_path, code_file):
        report = check(tmp_path, "build-instance",
                       ["build-instance", "--code", code_file, "--x", "0110"])
        assert report["x"] == "0110"
        assert all(p[-1] == b for p, b in zip(report["dataset"], "0110"))

    def test_verify_forcing_clean(self, tmp_path, code_file):
        report = check(tmp_path, "verify-forcing",
                       ["verify-forcing", "--code", code_file, "--c", "2"])
        assert report["violations"] == []
        assert report["checked"] == 16 * 4

    def test_verify_forcing_inline_generation(self, tmp_path):
        report = check(tmp_path, "verify-forcing",
                       ["verify-forcing", "--n", "8", "--code-length", "32",
                        "--min-dist", "4", "--c", "2", "--seed", "0"])
        assert report["violations"] == []

    def test_qrac_eval(self, tmp_path):
        report = check(tmp_path, "qrac-eval",
                       ["qrac-eval", "--scheme", "2to1"])
        assert report["worst_p"] == pytest.approx(0.8535533906, abs=1e-9)
        assert len(report["table"]) == 8

    def test_qrac_eval_csv(self, tmp_path):
        out = tmp_path / "table.csv"
        assert run(["qrac-eval", "--scheme", "3to1", "--format", "csv",
                    "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "x,i,p"
        assert len(lines) == 1 + 8 * 3

    def test_nayak_check(self, tmp_path):
        report = check(tmp_path, "nayak-check",
                       ["nayak-check", "--scheme", "basis", "--n", "3"])
        assert report["satisfied"] and report["slack"] == 0.0

    def test_info_audit(self, tmp_path):
        report = check(tmp_path, "info-audit",
                       ["info-audit", "--scheme", "3to1"])
        assert report["sandwich_ok"] and report["chain_ok"]

    def test_sketch_reduce(self, tmp_path, code_file):
        report = check(tmp_path, "sketch-reduce",
                       ["sketch-reduce", "--code", code_file,
                        "--sketch", "noisy", "--p0", "0.9"])
        assert report["evaluation"]["worst_p"] == pytest.approx(0.9, abs=1e-9)
        assert report["certificate"]["satisfied"]

    def test_grover_sim(self, tmp_path):
        report = check(tmp_path, "grover-sim",
                       ["grover-sim", "--m", "4", "--t", "1", "--k", "1"])
        assert report["success_probability"] == 1.0
        assert report["queries_used"] == 1

    def test_grover_scaling(self, tmp_path):
        report = check(tmp_path, "grover-scaling",
                       ["grover-scaling", "--m-list", "16,64", "--t", "1",
                        "--num-seeds", "5"])
        assert len(report["rows"]) == 2

    def test_bbbv_hybrid(self, tmp_path):
        report = check(tmp_path, "bbbv-hybrid",
                       ["bbbv-hybrid", "--m", "16", "--q", "2"])
        assert report["satisfied"]
        assert report["bound"] == 1.0

    def test_bbbv_hybrid_csv(self, tmp_path):
        out = tmp_path / "hybrid.csv"
        assert run(["bbbv-hybrid", "--m", "16", "--q", "2",
                    "--format", "csv", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "s,D_s" and lines[-1].startswith("bound,")

    def test_vc_shatter(self, tmp_path, code_file):
        report = check(tmp_path, "vc-shatter",
                       ["vc-shatter", "--code", code_file, "--r", "0",
                        "--p", "0.85"])
        assert report["shattered"]
        assert report["distinct_labelings"] == 16
        assert report["bound_at_p"]["p"] == 0.85

    def test_unknown_subcommand(self):
        assert run(["no-such-command"]) == 2

    def test_missing_code_file(self, tmp_path):
        assert run(["build-instance", "--code", str(tmp_path / "nope.json"),
                    "--x", "01"]) == 2


class TestDeterminism:
    CASES = [
        ("gen-code", ["gen-code", "--n", "4", "--code-length", "16",
                      "--min-dist", "4", "--seed", "7"]),
        ("verify-forcing", ["verify-forcing", "--n", "5", "--code-length",
                            "24", "--min-dist", "4", "--c", "2",
                            "--seed", "7"]),
        ("qrac-eval", ["qrac-eval", "--scheme", "3to1"]),
        ("grover-sim", ["grover-sim", "--m", "64", "--t", "2", "--k", "3",
                        "--seed", "7"]),
        ("grover-scaling", ["grover-scaling", "--m-list", "16,64",
                            "--t", "1", "--num-seeds", "10", "--seed", "7",
                            "--format", "csv"]),
        ("bbbv-hybrid", ["bbbv-hybrid", "--m", "64", "--q", "4"]),
    ]

    @pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
    def test_reruns_byte_identical(self, tmp_path, name, argv):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(argv + ["--out", str(out1)]) == 0
        assert run(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
