import json
import subprocess
import sys

import pytest

from multistair.cli import (EXIT_CAP, EXIT_DISAGREE, EXIT_OK, EXIT_PARSE, main, parse_diagram)
from multistair.diagram import corner7, from_partition, star

STAR5 = json.dumps({"k": 5, "boxes": [list(b) for b in sorted(star(5).boxes)]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_diagram_forms():
    assert parse_diagram("(3,6)") == from_partition([6, 3])
    assert parse_diagram("(2,|3|,2)").k == 3
    assert parse_diagram(STAR5) == star(5)


def test_classify_partition(capsys):
    code, out, _ = run(capsys, "classify", "(3,6)")
    assert code == EXIT_OK
    assert "form:  TameConcealed" in out and "table: TameConcealed" in out


def test_classify_flat(capsys):
    code, out, _ = run(capsys, "classify", "--flat", "(2,|3|,2)")
    assert code == EXIT_OK and "TameConcealed" in out


def test_classify_json_star(capsys):
    code, out, _ = run(capsys, "classify", "--json", STAR5)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["form"]["kind"] == "Wild" and data["form"]["certificate"]["value"] == -1
    assert data["agree"]


def test_json_output_is_stable(capsys):
    a = run(capsys, "--json", "classify", "(2,2,2,1)")[1]
    b = run(capsys, "classify", "(2,2,2,1)", "--json")[1]
    assert a == b
    assert "seconds" not in json.loads(a)


def test_text_and_json_carry_the_same_verdicts(capsys):
    text = run(capsys, "classify", "(5,4)")[1]
    data = json.loads(run(capsys, "--json", "classify", "(5,4)")[1])
    assert data["form"]["kind"] in text and data["table"]["kind"] in text


def test_form_only(capsys):
    code, out, _ = run(capsys, "classify", "--form-only", "(4,4)")
    assert code == EXIT_OK and "table:" not in out


def test_roots(capsys):
    code, out, _ = run(capsys, "--json", "roots", "(2,2)")
    assert code == EXIT_OK and json.loads(out)["count"] == 11


def test_nullroot_star(capsys):
    code, out, _ = run(capsys, "nullroot", "--k", "4", "--star")
    assert code == EXIT_OK
    assert out.strip() == "(1,1,1,1):2 (1,1,1,2):1 (1,1,2,1):1 (1,2,1,1):1 (2,1,1,1):1"


def test_quiver_dot(capsys):
    code, out, _ = run(capsys, "quiver", "--dot", "(3,3,2,1,1)")
    nodes = [ln for ln in out.splitlines() if ln.strip().endswith('";') and "->" not in ln]
    assert code == EXIT_OK and len(nodes) == 10


def test_quiver_json(capsys):
    code, out, _ = run(capsys, "--json", "quiver", "(2,2)")
    assert len(json.loads(out)["vertices"]) == 4


def test_finiteness(capsys):
    dims = json.dumps({"k": 3, "dims": [[list(b), 1] for b in sorted(corner7().boxes)]})
    code, out, _ = run(capsys, "--json", "finiteness", dims)
    assert code == EXIT_OK and json.loads(out)["kind"] == "Infinite"


def test_oracle(capsys):
    code, out, _ = run(capsys, "--json", "oracle", "(2,2)", "--dv", "1,1,1,1")
    assert json.loads(out)["points"] == 10


def test_oracle_cap(capsys):
    code, _, err = run(capsys, "oracle", "(3,3)", "--dv", "2,2,2,2,2,2", "--point-cap", "1000")
    assert code == EXIT_CAP and "cap" in err


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "classify", "(3,x)")
    assert code == EXIT_PARSE and "'x'" in err
    assert run(capsys, "classify", '{"k": 2, "boxes": [[2,1]]}')[0] == EXIT_PARSE


def test_verify_tables_k2(capsys):
    code, out, _ = run(capsys, "--json", "verify-tables", "--k", "2", "--max-boxes", "10")
    data = json.loads(out)
    assert code == EXIT_OK and data["checked"] == 75 and not data["disagreements"]
    assert data["census"] == {"Finite": 46, "TameConcealed": 5, "TameNonConcealed": 5, "Wild": 19}


def test_verify_tables_output_independent_of_jobs(capsys):
    a = run(capsys, "--json", "verify-tables", "--k", "3", "--max-boxes", "7", "--jobs", "1")
    b = run(capsys, "--json", "verify-tables", "--k", "3", "--max-boxes", "7", "--jobs", "3")
    assert a == b


def test_disagreement_exit_code(capsys):
    code, out, _ = run(capsys, "verify-tables", "--k", "3", "--max-boxes", "8")
    # the 2x2x2 cube is the one diagram here where the two classifiers differ
    assert code == EXIT_DISAGREE and out.count("DISAGREE") == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "multistair", "classify", "(2)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "Finite" in r.stdout
