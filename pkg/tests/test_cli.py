import json
import os
import re
import subprocess
import sys
from pathlib import Path

import pytest

from ratinv.cli import main

from helpers import FIXTURE_DIR, FIXTURES

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("RATINV_REGEN_GOLDEN") == "1"

SCALING_TARGET = "(z1^2+4*z1*z2+z2^2)/(z1^2-3*z2^2)"
DELTA = "zeta^2-(z1^2+z2^2-1)/z2^2*zeta-z1^2/z2^2"

CASES = (
    [(f"graph-{n}", ["graph", n]) for n in FIXTURES]
    + [(f"invariants-{n}", ["invariants", n]) for n in FIXTURES]
    + [(f"section-validate-{n}", ["section-validate", n]) for n in FIXTURES]
    + [(f"section-invariants-{n}", ["section-invariants", n])
       for n in ("scaling", "rotation", "translation", "sl2", "euclidean")]
    + [(f"replacement-{n}", ["replacement", n])
       for n in ("scaling", "translation", "rotation", "sl2", "euclidean")]
    + [(f"moving-frame-{n}", ["moving-frame", n]) for n in ("scaling", "rotation", "trivial")]
    + [
        ("rewrite-scaling", ["rewrite", "scaling", "--target", SCALING_TARGET]),
        ("rewrite-scaling-section", ["rewrite", "scaling", "--via-section", "--target",
                                     SCALING_TARGET]),
        ("rewrite-rotation-section", ["rewrite", "rotation", "--via-section", "--target",
                                      "(z1^2+z2^2)^3"]),
        ("rewrite-sl2", ["rewrite", "sl2", "--target", "z6^2-z7*z5"]),
        ("rewrite-euclidean", ["rewrite", "euclidean", "--target", "y2^4/(1+y1^2)^6"]),
        ("invariantize-alpha", ["invariantize", "scaling_circle", "--poly", "zeta-z1"]),
        ("invariantize-beta", ["invariantize", "scaling_circle", "--poly",
                               "zeta^3+zeta^2+z2*zeta+1"]),
        ("invariantize-gamma", ["invariantize", "scaling_circle", "--poly", "zeta-z1^2"]),
        ("invariantize-delta", ["invariantize", "scaling_circle", "--poly", DELTA]),
        ("orbit-scaling", ["orbit", "scaling", "--point", "1,2"]),
        ("orbit-rotation", ["orbit", "rotation", "--point", "0,1"]),
        ("random-section-rotation", ["section-validate", "rotation", "--random-section",
                                     "--seed", "1"]),
        ("graph-rotation-lex", ["graph", "rotation", "--order", "lex"]),
    ]
)
JSON_CASES = [("invariants-rotation", ["invariants", "rotation"]),
              ("graph-scaling", ["graph", "scaling"]),
              ("rewrite-scaling", ["rewrite", "scaling", "--target", SCALING_TARGET])]


def argv(args, *extra):
    cmd, name, *rest = args
    return [cmd, str(FIXTURE_DIR / f"{name}.toml"), *rest, *extra]


def run(capsys, args):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def strip_text(out):
    return re.sub(r"^elapsed_ms: \d+\n", "", out, flags=re.M)


def strip_json(out):
    data = json.loads(out)
    assert isinstance(data.pop("elapsed_ms"), int)
    return json.dumps(data, indent=2) + "\n"


def check_golden(path, text):
    if REGEN:
        path.write_text(text)
    assert path.exists(), f"missing golden file {path.name}"
    assert text == path.read_text()


@pytest.mark.parametrize("case,args", CASES, ids=[c for c, _ in CASES])
def test_text_golden(capsys, case, args):
    code, out, err = run(capsys, argv(args))
    assert code == 0, err
    check_golden(GOLDEN / f"{case}.txt", strip_text(out))


@pytest.mark.parametrize("case,args", JSON_CASES, ids=[c for c, _ in JSON_CASES])
def test_json_golden(capsys, case, args):
    code, out, err = run(capsys, argv(args, "--output", "json"))
    assert code == 0, err
    check_golden(GOLDEN / f"{case}.json", strip_json(out))


def test_json_schema(capsys):
    code, out, _ = run(capsys, argv(["invariants", "rotation"], "--output", "json"))
    data = json.loads(out)
    assert code == 0
    assert list(data) == ["command", "order", "invariants", "basis", "degree", "result",
                          "warnings", "elapsed_ms"]
    assert data["invariants"] == ["z1^2+z2^2"]
    assert data["warnings"] == []
    assert '"warnings": []' in out


def test_sl2_section_invariants_text(capsys):
    code, out, _ = run(capsys, argv(["section-invariants", "sl2"]))
    assert code == 0
    block = out.split("invariants:\n")[1].split("basis:")[0]
    assert len(block.strip().splitlines()) == 4


def test_scaling_examples(capsys):
    code, out, _ = run(capsys, argv(["invariants", "scaling"]))
    assert code == 0 and "  y1 = z2/z1\n" in out
    code, out, _ = run(capsys, argv(["rewrite", "scaling", "--target", SCALING_TARGET]))
    assert code == 0 and "result: (-y1^2-4*y1-1)/(3*y1^2-1)\n" in out


@pytest.mark.parametrize("args", [["graph", "sl2"], ["section-validate", "rotation",
                                                      "--random-section", "--seed", "4"]])
def test_output_is_deterministic(capsys, args):
    outs = {strip_text(run(capsys, argv(args))[1]) for _ in range(2)}
    assert len(outs) == 1


@pytest.mark.parametrize("args,code,msg", [
    (["orbit", "scaling", "--point", "0,0"], 2, "point (0,0)"),
    (["section-validate", "scaling"], 0, None),
    (["rewrite", "scaling", "--target", "z1"], 2, "not an invariant"),
    (["rewrite", "scaling"], 1, "--target"),
    (["orbit", "scaling"], 1, "--point"),
    (["orbit", "scaling", "--point", "1"], 1, "2 comma-separated"),
    (["invariantize", "scaling_circle"], 1, "--poly"),
    (["invariantize", "scaling_circle", "--poly", "2*zeta-1"], 1, "monic"),
    (["invariantize", "scaling_circle", "--poly", "z1"], 1, "positive degree"),
    (["invariantize", "scaling_circle", "--poly", "1/zeta"], 1, "zeta"),
    (["rewrite", "scaling", "--target", "q1"], 1, "unknown identifier"),
    (["graph", "scaling", "--seed", "-1"], 1, "nonnegative"),
])
def test_exit_codes(capsys, args, code, msg):
    got, out, err = run(capsys, argv(args))
    assert got == code, err
    if msg:
        assert msg in err


def write(tmp_path, text):
    p = tmp_path / "problem.toml"
    p.write_text(text)
    return str(p)


def test_parse_error_exit_code(capsys, tmp_path):
    text = (FIXTURE_DIR / "scaling.toml").read_text().replace('"l1*z1"', '"z1 / z2"')
    code, _, err = run(capsys, ["graph", write(tmp_path, text)])
    assert code == 1 and "non-constant division" in err
    assert re.search(r"\d+:\d+: non-constant division", err)


def test_missing_section_is_a_usage_error(capsys, tmp_path):
    text = (FIXTURE_DIR / "scaling.toml").read_text()
    text = text.replace('[cross_section]\nrelations = ["Z1 - 1"]\n', "")
    code, _, err = run(capsys, ["section-validate", write(tmp_path, text)])
    assert code == 1 and "cross_section" in err


def test_rejected_section_exit_code(capsys, tmp_path):
    text = (FIXTURE_DIR / "scaling.toml").read_text().replace('"Z1 - 1"', '"Z1^2"')
    code, _, err = run(capsys, ["section-validate", write(tmp_path, text)])
    assert code == 2 and "not radical" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, ["graph", str(tmp_path / "nope.toml")])
    assert code == 1 and err.startswith("error:")


def test_bad_command_line(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "x.toml"])
    assert exc.value.code == 1


def test_missing_product_warns(capsys, tmp_path):
    text = "\n".join(line for line in (FIXTURE_DIR / "rotation.toml").read_text().splitlines()
                     if not line.startswith(("product", "inverse")))
    code, out, _ = run(capsys, ["graph", write(tmp_path, text)])
    assert code == 0 and "composition axiom not checked" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ratinv", "graph",
                           str(FIXTURE_DIR / "scaling.toml")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "  Z2*z1-Z1*z2\n" in proc.stdout
