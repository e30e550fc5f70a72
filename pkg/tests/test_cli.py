import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from hessian_hgf.cli import DISTRIBUTION_COLUMNS, MOMENT_COLUMNS, main, report_schema
from hessian_hgf.config import CONFIG_ENV, RunConfig, load_config


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def table(out):
    return list(csv.DictReader(io.StringIO(out)))


def test_bridge(capsys):
    code, out, _ = run(["bridge", "--p", "7"], capsys)
    rows = table(out)
    assert code == 0 and [r["lam"] for r in rows] == ["1", "2", "4"]
    code, out, _ = run(["bridge", "--p", "13"], capsys)
    assert code == 0 and len(table(out)) == 9


def test_bridge_rejects_q2_mod3(capsys):
    code, _, err = run(["bridge", "--p", "5"], capsys)
    assert code == 2 and "1 mod 3" in err


@pytest.mark.parametrize("p", [7, 5])
def test_moments_exact_rows(p, capsys):
    code, out, _ = run(["moments", "--p", str(p), "--m-max", "6", "--method", "both"], capsys)
    rows = table(out)
    assert code == 0
    assert list(rows[0].keys()) == MOMENT_COLUMNS
    for r in rows:
        sign = (-1) ** int(r["m"]) if p % 3 == 1 else 1
        assert sign * int(r["direct"]) == int(r["classnum"])


def test_moments_r_even_json(capsys):
    code, out, _ = run(["moments", "--p", "5", "--r", "2", "--m-max", "4", "--format", "json"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema())
    assert code == 0 and doc["summary"]["R"] == "4" and doc["summary"]["R_normalization"] == "trace"


def test_moments_asymptotic_flag(capsys):
    code, _, _ = run(["moments", "--p", "13", "--m-max", "2", "--asymptotic"], capsys)
    assert code == 1


def test_distribution(capsys):
    code, out, _ = run(["distribution", "--p", "7", "--bins", "4"], capsys)
    rows = table(out)
    assert code == 0 and list(rows[0].keys()) == DISTRIBUTION_COLUMNS
    assert sum(int(r["count"]) for r in rows) == 7
    code, _, _ = run(["distribution", "--p", "7", "--bins", "0"], capsys)
    assert code == 2
    code, out, _ = run(["distribution", "--p", "11", "--bins", "4"], capsys)
    assert code == 0


def test_classnum(capsys):
    code, out, _ = run(["classnum", "--d-max", "25"], capsys)
    rows = {r["D"]: r for r in table(out)}
    assert code == 0
    assert rows["3"]["Hstar"] == "1/3" and rows["4"]["Hstar"] == "1/2" and rows["23"]["Hstar"] == "3"
    assert rows["0"]["Hstar"] == "-1/12"


def test_census(capsys):
    code, out, _ = run(["census", "--q", "13"], capsys)
    rows = table(out)
    assert code == 0 and any(r["case"] == "4" and r["n"] == "3" for r in rows)
    code, _, _ = run(["census", "--q", "67"], capsys)
    assert code == 2


def test_identities(capsys):
    code, out, _ = run(["identities", "--nu-max", "30", "--n-max", "50", "--format", "json"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema())
    assert code == 0 and doc["status"] == "pass" and doc["summary"]["failures"] == 0


def test_sweep(capsys):
    code, out, _ = run(["sweep", "--p-list", "7,11,13", "--m-max", "2"], capsys)
    assert code == 0 and len(table(out)) == 6
    code, _, _ = run(["sweep", "--p-list", "x"], capsys)
    assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["moments"])
    assert exc.value.code == 2
    code, _, _ = run(["moments", "--p", "9"], capsys)
    assert code == 2


def test_arithmetic_error_exit(monkeypatch, capsys):
    from hessian_hgf import cli
    from hessian_hgf.errors import LiftOutOfRange

    def boom(args, cfg):
        raise LiftOutOfRange("synthetic")
    monkeypatch.setitem(cli.COMMANDS, "bridge", boom)
    code, _, err = run(["bridge", "--p", "7"], capsys)
    assert code == 3 and "synthetic" in err


def test_every_command_json_validates(capsys):
    schema = report_schema()
    for argv in (["bridge", "--p", "13"], ["distribution", "--p", "13", "--bins", "5"],
                 ["classnum", "--d-max", "30"], ["census", "--q", "7"], ["sweep", "--p-list", "7"]):
        code, out, _ = run(argv + ["--format", "json"], capsys)
        jsonschema.validate(json.loads(out), schema)
        assert code == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "m.csv"
    code, out, _ = run(["moments", "--p", "7", "--m-max", "2", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == ",".join(MOMENT_COLUMNS)


def test_thread_count_does_not_change_output(capsys):
    _, one, _ = run(["moments", "--p", "31", "--m-max", "4"], capsys)
    _, three, _ = run(["moments", "--p", "31", "--m-max", "4", "--threads", "3"], capsys)
    assert one == three


def test_config_defaults_and_file(tmp_path, monkeypatch):
    cfg = RunConfig()
    assert (cfg.km2, cfg.km4, cfg.km6, cfg.kodd, cfg.ks) == (0.05, 0.1, 0.25, 0.05, 0.05)
    assert cfg.tolerance(3) == 0.05 and cfg.tolerance(4) == 0.1
    path = tmp_path / "run.cfg"
    path.write_text("threads = 2\nks = 0.03\nformat = json\n")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    cfg = load_config(threads=None)
    assert cfg.threads == 2 and cfg.ks == 0.03 and cfg.format == "json"
    assert load_config(threads=4).threads == 4


@pytest.mark.parametrize("kw", [{"ks": 0}, {"threads": 0}, {"cap": 2**18}, {"format": "xml"}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        RunConfig(**kw)


def test_config_unknown_key(tmp_path, monkeypatch):
    path = tmp_path / "bad.cfg"
    path.write_text("nope = 1\n")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    with pytest.raises(ValueError):
        load_config()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hessian_hgf", "bridge", "--p", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("lam,")
