import json
import subprocess
import sys

import pytest

from ipword.cli import RunReport, emit_report, main
from ipword.errors import UnsupportedFormat


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def result(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_generate_fibonacci(capsys):
    code, doc = result(capsys, "generate", "fibonacci", "--length", "20")
    assert code == 0
    assert doc["result"]["letters"] == "01001010010010100101"
    assert doc["command"] == {"name": "generate",
                              "params": {"alpha": None, "conv": None, "length": 20, "rho": None,
                                         "word": "fibonacci"}}


def test_zeckendorff(capsys):
    assert result(capsys, "zeckendorff", "50")[1]["result"]["digits"] == "10100100"
    assert result(capsys, "zeckendorff", "1111011", "--decode")[1]["result"]["value"] == 50


def test_fs_check_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "fs-check", "--target", "fib|0", "--gens", "fib-odd", "--count", "10",
                       "--horizon", "10000")
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] and doc["result"]["sums_checked"] == 1023
    assert doc["horizon"] >= 17711
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, ver = result(capsys, "verify", str(path))
    assert code == 0 and ver["result"]["valid"]
    doc["result"]["generators"][0] = 4
    path.write_text(json.dumps(doc))
    code, ver = result(capsys, "verify", str(path))
    assert code == 1 and not ver["result"]["valid"]


def test_fs_check_violation_exits_1(capsys):
    code, doc = result(capsys, "fs-check", "--target", "fib|0", "--gens", "2,5,6")
    assert code == 1 and doc["result"]["kind"] == "fs-violation"


@pytest.mark.parametrize("argv", [
    ["non-ip-cert", "--bound", "500"],
    ["separation", "mechanical", "mechanical", "--rho2", "1/2", "--horizon", "2000"],
    ["separation", "mechanical", "mechanical", "--conv2", "upper", "--horizon", "2000"],
    ["ip-search", "--target", "0+fib|10", "--k", "3", "--bound", "3000"],
])
def test_certificates_reverify(capsys, tmp_path, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    path = tmp_path / "c.json"
    path.write_text(out)
    assert run(capsys, "verify", str(path))[0] == 0


def test_verdict_expect(capsys):
    assert run(capsys, "verdict", "010", "--rho", "1/2", "--expect", "central")[0] == 0
    assert run(capsys, "verdict", "100", "--rho", "1/2", "--expect", "central")[0] == 1
    assert run(capsys, "verdict", "100", "--rho", "1/2", "--expect", "not-IP")[0] == 0
    code, doc = result(capsys, "verdict", "1010", "--rho", "0")
    assert doc["result"]["reason"] == "prefix-of-ω′"


def test_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "complexity", "fibonacci", "--n-max", "3")
    assert code == 0 and out == "n,rho\n1,2\n2,3\n3,4\n"
    code, out, err = run(capsys, "--format", "csv", "t4")
    assert code == 2 and "nested" in err
    code, out, _ = run(capsys, "occurrences", "fibonacci", "1", "--horizon", "10", "--format", "csv")
    assert out == "position\n1\n4\n6\n9\n"


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "generate", "nope")[0] == 2
    assert run(capsys, "generate", "fibonacci", "--length", "-3")[0] == 2
    assert run(capsys, "classify", "--rho", "sqrt(2)")[0] == 2
    assert run(capsys, "coincidence", "--i", "1", "--j", "1")[0] == 2
    assert run(capsys, "fs-check", "--target", "fib|0", "--gens", "fib-odd", "--count", "40")[0] == 2
    assert run(capsys, "verify", "/nonexistent.json")[0] == 2


def test_classify_and_misc(capsys):
    assert result(capsys, "classify", "--rho", "alpha")[1]["result"]["label"] == "singular(0)"
    assert result(capsys, "classify", "--rho", "1/2")[1]["result"]["singular"] is False
    assert result(capsys, "pal-closure", "aaba", "--iterate")[1]["result"]["output"] == "aabaaabaa"
    assert result(capsys, "psi", "periodic:01", "--length", "8")[1]["result"]["letters"] == "01001010"
    code, doc = result(capsys, "partition", "--horizon", "100")
    assert code == 0 and doc["verified"]
    code, doc = result(capsys, "t3", "--shifts", "5")
    assert doc["result"]["verdicts"]["4"].count(True) == 1
    code, doc = result(capsys, "proximality", "tm:2:1", "tm:2:2", "--horizon", "1000")
    assert doc["result"]["max_run"] == 0


def test_emit_rejects_floats():
    with pytest.raises(UnsupportedFormat):
        emit_report(RunReport("x", {}, {"kind": "x", "v": 0.5}))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ipword", "zeckendorff", "12"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["digits"] == "10101"
