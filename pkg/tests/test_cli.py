import json
import subprocess
import sys

import pytest

from ehtorus import cli


def run(*args):
    return cli.run(list(args))


def test_tight_text():
    code, out = run("tight", "(aba)^2 B a")
    assert code == 0 and out.startswith("Tight, c = 1/2")
    assert run("tight", "B")[1].startswith("Overtwisted")


def test_fdtc_json_is_exact():
    code, out = run("fdtc", "d", "--format", "json")
    assert json.loads(out)["fdtc"] == [1, 1]


def test_classify():
    code, out = run("classify", "Ba", "--format", "json")
    assert json.loads(out)["type"] == "PseudoAnosov"


def test_parse_error_exit_code():
    code, out = run("fdtc", "a(b")
    assert code == cli.EXIT_PARSE and "position 1" in out


def test_fdtc_undetermined_exit_code():
    code, _ = run("fdtc", "(aba)^2 B a", "--orbit-depth", "0")
    assert code == cli.EXIT_FDTC


def test_precondition_exit_codes():
    assert run("diagram", "annulus")[0] == cli.EXIT_PRECONDITION
    assert run("diagram", "torus", "a", "--basis", "1,2;2,1")[0] == cli.EXIT_PRECONDITION


def test_diagram_summaries():
    assert "generators: 2" in run("diagram", "annulus", "--twist", "0")[1]
    out = run("diagram", "torus", "d")[1]
    assert "filtration_minimal: 7" in out and "periodic_rank: 2" in out


def test_diagram_files(tmp_path):
    code, _ = run("diagram", "torus", "ab", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "diagram.json").exists() and (tmp_path / "diagram.svg").exists()


def test_certify_and_replay(tmp_path):
    f = tmp_path / "cert.json"
    code, out = run("certify", "torus", "(aba)^2 B a", "--out", str(f))
    assert code == 0 and out.startswith("NonzeroByEmptiness")
    assert run("replay", str(f)) == (0, "OK\n")
    assert run("certify", "annulus", "--twist", "-1")[1].startswith("ZeroByLeftArc")


def test_certify_inconclusive_exit_code():
    assert run("certify", "torus", "")[0] == cli.EXIT_INCONCLUSIVE


def test_certify_from_input_file(tmp_path):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"schema_version": 1, "surface": "annulus", "twist": 1}))
    assert run("certify", "torus", str(f))[1].startswith("NonzeroByEmptiness")


def test_replay_failure_exit_code(tmp_path):
    _, out = run("certify", "torus", "B", "--format", "json")
    doc = json.loads(out)
    doc["evidence"]["x"] = doc["evidence"]["y"]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    assert run("replay", str(f))[0] == cli.EXIT_REPLAY


def test_corpus_is_deterministic():
    a = run("corpus", "--seed", "0", "--max-len", "4", "--count", "12", "--format", "json")
    b = run("corpus", "--seed", "0", "--max-len", "4", "--count", "12", "--format", "json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["summary"]["disagreements"] == 0


def test_corpus_identity_only():
    code, out = run("corpus", "--max-len", "0", "--format", "json")
    doc = json.loads(out)
    assert [r["word"] for r in doc["rows"]] == [""]
    assert doc["rows"][0]["tight"] == "Tight"


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "ehtorus.cli", "fdtc", "ab"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "1/6"


def test_help_documents_word_syntax():
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["--help"])
