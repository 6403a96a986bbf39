import json
import subprocess
import sys

import pytest

from homleib import corpus
from homleib.cli import run
from homleib.fileformat import load_document

D = corpus.corpus_path("SL2").parent


def p(name):
    return str(D / f"{name}.json")


COMMANDS = [
    (["validate", p("SL2")], 0),
    (["validate", p("HEIS")], 0),
    (["uce", p("SL2")], 0),
    (["uce", "--alpha", p("TW2")], 0),
    (["uce", p("AB2")], 2),
    (["uce", "--alpha", p("HEIS")], 2),
    (["semidirect", p("SL2"), p("SL2"), p("SELF_SL2")], 0),
    (["semidirect", p("NL2"), p("AB2"), p("BAD_AB2_NL2")], 1),
    (["check-split", p("SPLIT_SD1")], 0),
    (["check-split", p("SPLIT_DP")], 0),
    (["lift-aut", p("COVER_OBS"), p("SHEAR_SL2V4")], 1),
    (["lift-aut", p("COVER_OBS"), p("SCALE_SL2V4")], 0),
    (["lift-aut", p("U_SL2"), p("PHI_SL2")], 0),
    (["check-s5", p("SPLIT_SD1")], 0),
    (["check-s5", p("SPLIT_ADJ")], 2),
]


@pytest.mark.parametrize("argv,status", COMMANDS, ids=[" ".join(a[:2]) for a, _ in COMMANDS])
def test_exit_codes_and_determinism(argv, status):
    for fmt in ("human", "machine"):
        a = run(argv + ["--format", fmt])
        b = run(argv + ["--format", fmt])
        assert a == b
        assert a[0] == status


@pytest.mark.parametrize("argv,status", COMMANDS[:10], ids=[" ".join(a[:2]) for a, _ in COMMANDS[:10]])
def test_renderings_agree(argv, status):
    _, human, _ = run(argv)
    _, machine, _ = run(argv + ["--format", "machine"])
    doc = json.loads(machine)
    assert doc["status"] == status
    lines = human.splitlines()
    assert lines[0] == "$ " + " ".join(["homleib", *argv])
    checks = [c for r in doc["reports"] for c in r["checks"]]
    marked = [ln.strip() for ln in lines if ln.startswith("  PASS ") or ln.startswith("  FAIL ")]
    assert len(marked) == len(checks)
    for c, ln in zip(checks, marked):
        assert ln.startswith(("PASS " if c["pass"] else "FAIL ") + c["name"])
    assert lines[-1].startswith(f"exit {status}")
    # exit 0 exactly when every listed check passed
    assert (status == 0) == (doc["error"] is None and all(c["pass"] for c in checks))


def test_refusal_names_the_precondition():
    status, text, _ = run(["uce", p("AB2")])
    assert status == 2 and "not perfect" in text


def test_obstruction_witness_reported():
    status, text, _ = run(["lift-aut", p("COVER_OBS"), p("SHEAR_SL2V4"), "--format", "machine"])
    doc = json.loads(text)
    check = doc["reports"][0]["checks"][0]
    assert status == 1 and not check["pass"] and len(check["witness"]) == 10


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1,\n "kind": "algebra", "dim": 2.5}')
    status, text, _ = run(["validate", str(bad)])
    assert status == 2 and ".dim" in text
    bad.write_text('{"format_version": 1,\n "kind": }')
    status, text, _ = run(["validate", str(bad)])
    assert status == 2 and "bad.json:2:10" in text
    status, text, _ = run(["validate", str(tmp_path / "missing.json")])
    assert status == 2
    status, _, _ = run(["no-such-command"])
    assert status == 2
    status, text, _ = run(["validate", p("SELF_SL2")])
    assert status == 2 and "expected kind" in text


def test_out_file_round_trips(tmp_path):
    out = tmp_path / "sd1.json"
    status, _, _ = run(["semidirect", p("SL2"), p("SL2"), p("SELF_SL2"), "--out", str(out)])
    assert status == 0
    G = load_document(out)
    assert G == corpus.get("SD1")
    status, _, _ = run(["validate", str(out)])
    assert status == 0
    uo = tmp_path / "uce.json"
    assert run(["--out", str(uo), "uce", p("SL2")])[0] == 0
    assert load_document(uo).dim == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "homleib", "validate", p("NL2")], capture_output=True, text=True)
    assert r.returncode == 0
    assert "PASS hom_leibniz" in r.stdout
