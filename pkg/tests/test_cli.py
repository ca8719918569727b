import io
import subprocess
import sys

import pytest

from crnormal.cli import run
from crnormal.germfile import dump_germ

from conftest import germ


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in {
        "sphere": germ({(1, 1, 0): 1}, 8),
        "quartic": germ({(1, 1, 0): 1, (2, 2, 0): 1}, 8),
        "s4": germ({(2, 2, 0): 1}, 12, 4),
        "case2": germ({(3, 1, 0): 1, (1, 3, 0): 1}, 12, 4),
        "tube": germ({(1, 3, 0): 4, (2, 2, 0): 6, (3, 1, 0): 4}, 8, 4),
        "flat": germ({(1, 1, 1): 1}, 8),
    }.items():
        p = tmp_path / f"{name}.germ"
        p.write_text(dump_germ(g))
        paths[name] = str(p)
    bad = tmp_path / "bad.germ"
    bad.write_text(dump_germ(germ({(1, 1, 0): 1}, 4)).replace('"re": "1"', '"re": "1/0"'))
    paths["bad"] = str(bad)
    return paths


def test_count():
    code, out, _ = call("count", "--max-n", "9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n N Nprime solvable_expected"
    assert lines[-2] == "9 219 216 false"
    assert lines[-1] == "threshold: 9"


def test_levi(files):
    code, out, _ = call("levi", files["sphere"])
    assert code == 0 and out.splitlines()[0] == "+1"


def test_type_and_model(files):
    assert call("type", files["s4"])[1] == "type: 4\n"
    code, out, _ = call("type", files["flat"], "--max-order", "6")
    assert code == 0 and "infinite" in out
    code, out, _ = call("model", files["case2"])
    assert code == 0 and "class: Generic" in out and "l: 1" in out


def test_normalize_report(files):
    code, out, _ = call("normalize", files["quartic"], "--order", "8")
    assert code == 0
    assert out.startswith("case: ChernMoser\n")
    assert "z^4 zbar^4 u^0: 10/3" in out
    assert "NONZERO" not in out


def test_classify(files):
    code, out, _ = call("classify", files["case2"], "--order", "12")
    assert code == 0
    assert "case: 2" in out and "m: 4" in out and "jet_order: 1" in out
    out = call("classify", files["s4"], "--order", "12")[1]
    assert "case: 1" in out and "jet_order: 2" in out


def test_equiv(files):
    code, out, _ = call("equiv", files["sphere"], files["quartic"], "--order", "8")
    assert code == 0 and out.startswith("DistinctToOrder")


def test_exit_codes(files):
    code, _, err = call("normalize", files["tube"], "--order", "6")
    assert code == 1 and err.startswith("TubularUnsupported") and "[Ko1]" in err
    code, _, err = call("levi", files["bad"])
    assert code == 2 and "line" in err and "terms[0].re" in err
    assert call("normalize", files["flat"], "--order", "6")[0] == 1
    assert call("count", "--max-n", "0")[0] == 2
    assert call("frobnicate")[0] == 2


def test_deterministic(files):
    a = call("normalize", files["quartic"], "--order", "8")[1]
    b = call("normalize", files["quartic"], "--order", "8")[1]
    assert a == b


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crnormal.cli", "count", "--max-n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("n N Nprime")
