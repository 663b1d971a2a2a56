import csv
import io
import json
import subprocess
import sys

import pytest

from quintic_mirror.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gw_csv():
    code, text = run("gw", "--order", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["degree", "value"], ["1", "2875"], ["2", "609250"], ["3", "317206375"]]


def test_gw_json():
    code, text = run("gw", "--order", "4")
    doc = json.loads(text)
    assert code == 0 and doc["integral"] and doc["divisor_sum_holds"]
    assert doc["table"][0] == {"degree": 1, "value": "2875/1", "N_d": "2875/1"}


def test_gw_paper_plus_warns(capsys):
    code, text = run("gw", "--order", "2", "--sign-convention", "paper-plus")
    assert code == 0
    assert not json.loads(text)["integral"]
    assert "not integral" in capsys.readouterr().err


def test_open_gw():
    code, text = run("open-gw", "--order", "5", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["degree,value", "1,30", "3,4600/3", "5,5441256/5"]
    doc = json.loads(run("open-gw", "--order", "5")[1])
    assert [r["disk_count"] for r in doc["table"]] == ["30/1", "1530/1", "1088250/1"]


def test_precision_column():
    doc = json.loads(run("gw", "--order", "1", "--precision", "6")[1])
    assert doc["table"][0]["approx_value"] == "2875.0"


@pytest.mark.parametrize("cmd", ["periods", "mirror-map", "yukawa", "frames", "monodromy",
                                 "normal-function"])
def test_commands_emit_json(cmd):
    code, text = run(cmd, "--order", "4")
    assert code == 0
    assert isinstance(json.loads(text), dict)


def test_frames_document():
    doc = json.loads(run("frames", "--order", "3")[1])
    assert doc["pairing_matrix"][3] == ["1/1", "1/1", "5/1", "0/1"]
    assert doc["cjk_matches_table"]


@pytest.mark.parametrize("argv", [["gw", "--order", "0"], ["gw", "--order", "x"],
                                  ["nope"], ["gw", "--format", "xml"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 2


def test_verify_subprocess_is_reproducible():
    cmd = [sys.executable, "-m", "quintic_mirror", "verify", "--order", "5", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.decode().splitlines()[0] == "check,passed"
