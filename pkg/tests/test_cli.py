import json
import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from algebroids.cli import main
from algebroids.structfile import parse_text

STRUCTURES = Path(__file__).resolve().parent.parent / "structures"
CONTACT = str(STRUCTURES / "contact_r3.yaml")
JKV = str(STRUCTURES / "jkv_line.yaml")
HESSIAN = str(STRUCTURES / "hessian_diag.yaml")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_contact_passes(capsys):
    code, out, _ = run(capsys, "check", "--input", CONTACT)
    doc = yaml.safe_load(out)
    assert code == 0
    assert doc["verdict"] == "pass"
    assert doc["input"]["kind"] == "jacobi" and len(doc["input"]["sha256"]) == 64
    assert set(doc["checks"]) == {"lie-axioms", "phi0-closed", "jacobi", "twisted-half-pi-pi"}


def test_failing_check_serializes_defects(capsys):
    code, out, _ = run(capsys, "check", "--input", HESSIAN, "--check", "kv-manifold")
    doc = yaml.safe_load(out)
    assert code == 1
    entry = doc["checks"]["kv-manifold"]["defects"]["kv_manifold"]
    assert entry == {"verdict": "fail", "nonzero": {"0,1,1": "1"}}


def test_json_output(capsys):
    code, out, _ = run(capsys, "defect", "jacobi", "--input", CONTACT, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["checks"]["jacobi"]["verdict"] == "pass"
    assert list(doc) == sorted(doc)


def test_unknown_defect_is_input_error(capsys):
    code, _, err = run(capsys, "defect", "nonsense", "--input", CONTACT)
    assert code == 2 and "no defect 'nonsense'" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "--input", "/nonexistent/structure.yaml")
    assert code == 2 and err.startswith("error:")


def test_syntax_error_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("kind: lie\nbase_vars: [x]\nrank: 1\nanchor: [[exp(x*t)]]\ntable: {}\n")
    code, _, err = run(capsys, "check", "--input", str(bad))
    assert code == 2 and "line 4" in err


def test_isolated_violation_fails(capsys):
    code, out, _ = run(capsys, "defect", "jkv", "--input", str(STRUCTURES / "jkv_only_ii.yaml"))
    doc = yaml.safe_load(out)
    assert code == 1
    defects = doc["checks"]["jkv"]["defects"]
    assert [k for k, v in defects.items() if v["verdict"] == "fail"] == ["ii"]


@pytest.mark.parametrize(
    "argv, kind",
    [
        (("dualize", "jacobi", "--input", CONTACT), "jacobi"),
        (("extend-line", "bar", "--input", CONTACT), "lie"),
        (("poissonize", "--input", CONTACT), "lie"),
        (("kvize", "--input", JKV), "lsa"),
    ],
)
def test_constructions_emit_reparseable_structures(capsys, argv, kind):
    code, out, _ = run(capsys, *argv)
    doc = yaml.safe_load(out)
    assert code == 0
    structure = parse_text(yaml.safe_dump(doc["structure"], sort_keys=False))
    assert structure.kind == kind


def test_poissonize_needs_jacobi_file(capsys):
    code, _, err = run(capsys, "poissonize", "--input", JKV)
    assert code == 2


def test_verify_identity_random(capsys):
    code, out, _ = run(capsys, "verify-identity", "cocyc", "--instances", "3", "--seed", "5")
    doc = yaml.safe_load(out)
    assert code == 0 and doc["random"] == {"seed": 5, "max_degree": 2, "instances": 3}


def test_verify_identity_on_file(capsys):
    code, out, _ = run(capsys, "verify-identity", "pack-H-equivalence", "--input", str(STRUCTURES / "jkv_only_ii.yaml"))
    assert code == 0 and yaml.safe_load(out)["verdict"] == "pass"


def test_verify_identity_not_applicable(capsys):
    code, _, err = run(capsys, "verify-identity", "cocyc", "--input", CONTACT)
    assert code == 2 and "does not apply" in err


def test_unknown_identity(capsys):
    code, _, err = run(capsys, "verify-identity", "no-such-identity")
    assert code == 2 and "frozen names" in err


def test_timing_goes_to_stderr_only(capsys):
    code, out, err = run(capsys, "defect", "jacobi", "--input", CONTACT, "--timing")
    assert code == 0 and "elapsed" in err and "elapsed" not in out


def test_output_is_deterministic(capsys):
    first = run(capsys, "check", "--input", HESSIAN)[1]
    second = run(capsys, "check", "--input", HESSIAN)[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "algebroids", "check", "--input", JKV, "--check", "jkv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert "verdict: pass" in proc.stdout
