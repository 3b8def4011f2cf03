import json
import subprocess
import sys

import pytest

from ppir.fixtures import fixture_path
from ppir.selftest import CHECKS, run_selftest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "ppir", *args], capture_output=True, text=True, check=False
    )


def fixture(name):
    return str(fixture_path(name))


class TestRun:
    def test_five_class_trace(self, tmp_path):
        out = tmp_path / "trace.json"
        proc = run_cli("run", fixture("five_class.json"), "--demand", "3", "--seed", "5", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert doc["rate"] == "1/12"
        assert doc["mode"] == "single"
        assert doc["code"] == {"dimension": 5, "length": 8}
        assert len(doc["plan"]) == 4
        assert all(len(a["parities"]) == 3 for a in doc["answers"])

    def test_two_user_trace(self, tmp_path):
        out = tmp_path / "trace.json"
        proc = run_cli(
            "run", fixture("two_user_seven_class.json"),
            "--demand", "2", "--demand", "3", "--seed", "1", "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert doc["rate"] == "1/20"
        assert doc["mode"] == "multi"
        assert [u["desired_class"] for u in doc["users"]] == [2, 3]

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            proc = run_cli("run", fixture("five_class.json"), "--demand", "4", "--seed", "9", "--out", str(out))
            assert proc.returncode == 0, proc.stderr
        assert a.read_bytes() == b.read_bytes()

    def test_malformed_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("run", str(bad), "--demand", "1").returncode == 2

    def test_missing_key_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"field_order": 11}))
        assert run_cli("run", str(bad), "--demand", "1").returncode == 2

    def test_duplicate_side_information_exits_2(self, tmp_path):
        doc = json.loads(fixture_path("tiny_two_class.json").read_text())
        doc["users"][0]["side_information"][0] = [1, 1]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        assert run_cli("run", str(bad), "--demand", "1").returncode == 2

    def test_nonprime_field_exits_2(self, tmp_path):
        doc = json.loads(fixture_path("tiny_two_class.json").read_text())
        doc["field_order"] = 10
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        assert run_cli("run", str(bad), "--demand", "1").returncode == 2

    def test_validation_refused_exits_3(self):
        proc = run_cli("run", fixture("two_user_three_class.json"), "--demand", "1", "--demand", "2")
        assert proc.returncode == 3
        assert "validation refused" in proc.stderr

    def test_recovery_failure_exits_4(self):
        proc = run_cli(
            "run", fixture("two_user_three_class.json"),
            "--demand", "1", "--demand", "1", "--seed", "1", "--force",
        )
        assert proc.returncode == 4

    def test_forced_run_can_succeed(self):
        proc = run_cli(
            "run", fixture("two_user_three_class.json"),
            "--demand", "1", "--demand", "1", "--seed", "0", "--force",
        )
        assert proc.returncode == 0

    def test_demand_required(self):
        assert run_cli("run", fixture("five_class.json")).returncode == 2

    def test_single_mode_rejects_multiple_demands(self):
        proc = run_cli("run", fixture("five_class.json"), "--demand", "1", "--demand", "2", "--mode", "single")
        assert proc.returncode == 2


class TestRates:
    def test_six_class(self, tmp_path):
        out = tmp_path / "rates.json"
        proc = run_cli("rates", fixture("six_class.json"), "--out", str(out))
        assert proc.returncode == 0
        doc = json.loads(out.read_text())
        assert doc["rates"]["identified"] == ["1/12"]
        assert doc["rates"]["unidentified_baseline"] == ["1/23"]
        assert doc["comparison_conditions"]["sparse_side_information"]["status"] == "holds"

    def test_five_class(self, tmp_path):
        out = tmp_path / "rates.json"
        run_cli("rates", fixture("five_class.json"), "--out", str(out))
        doc = json.loads(out.read_text())
        assert doc["rates"]["identified"] == ["1/12"]
        assert doc["rates"]["unidentified_baseline"] == ["1/16"]
        statuses = {c["status"] for c in doc["comparison_conditions"].values()}
        assert "holds" not in statuses

    def test_two_user(self, tmp_path):
        out = tmp_path / "rates.json"
        run_cli("rates", fixture("two_user_seven_class.json"), "--out", str(out))
        doc = json.loads(out.read_text())
        assert doc["rates"]["multi_user"] == "1/20"
        assert doc["rates"]["naive_multi_user"] == "1/24"
        assert doc["comparison_conditions"] is None

    def test_fully_identifiable(self, tmp_path):
        out = tmp_path / "rates.json"
        run_cli("rates", fixture("fsi_three_class.json"), "--out", str(out))
        doc = json.loads(out.read_text())
        assert doc["rates"]["identified"] == ["1"]


class TestAudit:
    def test_tiny_enumeration_audit(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("audit", fixture("tiny_two_class.json"), "--runs", "50", "--out", str(out))
        assert proc.returncode == 0
        doc = json.loads(out.read_text())
        privacy = doc["privacy"]
        assert privacy["pass_rate"] == "1"
        assert privacy["non_repetition_checks"] == 100
        assert privacy["distribution"]["method"] == "enumeration"
        assert privacy["distribution"]["pairs"][0]["tv"] == "0"

    def test_default_runs_documented_as_1000(self):
        proc = run_cli("audit", "--help")
        assert "1000" in proc.stdout

    def test_audit_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            run_cli("audit", fixture("tiny_two_class.json"), "--runs", "25", "--out", str(out))
        assert a.read_bytes() == b.read_bytes()


class TestSelftest:
    def test_exit_zero_and_lists_checks(self):
        proc = run_cli("selftest")
        assert proc.returncode == 0
        lines = [l for l in proc.stdout.splitlines() if l.startswith("ok")]
        assert len(lines) == len(CHECKS) >= 8

    def test_corrupted_golden_fails_by_name(self, monkeypatch):
        import ppir.selftest as st

        corrupted = tuple(
            (name, (lambda: (_ for _ in ()).throw(AssertionError("corrupted"))) if name == "encode_first_row" else fn)
            for name, fn in st.CHECKS
        )
        monkeypatch.setattr(st, "CHECKS", corrupted)
        lines = []
        failures = run_selftest(write=lines.append)
        assert failures == 1
        assert any(l.startswith("FAIL encode_first_row") for l in lines)


def test_stdout_default(tmp_path):
    proc = run_cli("run", fixture("fsi_three_class.json"), "--demand", "1", "--seed", "2")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["rate"] == "1"
