import json

import pytest

from barneswall import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_m1(capsys):
    code, out, _ = run(capsys, "construct", "-m", "1", "--target", "M")
    assert code == 0
    js = json.loads(out)
    assert js["basis"] == [["√2", "0"], ["1", "1"]]
    assert js["gram"] == [["2", "√2"], ["√2", "2"]]


def test_construct_l2(capsys):
    _, out, _ = run(capsys, "construct", "-m", "2", "--target", "L")
    assert json.loads(out)["basis"] == [
        ["2", "0", "0", "0"], ["0", "2", "0", "0"], ["0", "0", "2", "0"], ["1", "1", "1", "1"]]


def test_construct_lprime_scaled(capsys):
    _, out, _ = run(capsys, "construct", "-m", "2", "--target", "Lprime", "--scaled")
    assert json.loads(out)["basis"][0] == ["2√2", "0", "0", "0"]


def test_construct_bad_m(capsys):
    code, _, err = run(capsys, "construct", "-m", "0")
    assert code == 2 and "m must be" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["kissing", "-m", "2", "--threads", "0"])
    assert exc.value.code == 2


def test_theta(capsys):
    _, out, _ = run(capsys, "theta", "-m", "1", "--which", "Lprime", "--max-norm", "4")
    assert json.loads(out)["norms"] == [["0", 1], ["1", 4], ["2", 4], ["4", 4]]


def test_theta_csv(capsys):
    _, out, _ = run(capsys, "theta", "-m", "1", "--which", "Lprime", "--max-norm", "4", "--format", "csv")
    assert out.splitlines() == ["norm,count", "0,1", "1,4", "2,4", "4,4"]


def test_kissing(capsys):
    _, out, _ = run(capsys, "kissing", "-m", "3", "--which", "L")
    assert json.loads(out)["kissing"] == 240


def test_design(capsys):
    _, out, _ = run(capsys, "design", "-m", "3", "--t-max", "8")
    js = json.loads(out)
    assert [r["pass"] for r in js["moments"]] == [True, True, True, True, False]
    assert js["strength"] == 7


def test_group_orders(capsys):
    _, out, _ = run(capsys, "group", "-m", "1", "--order", "--molien", "12", "--validate")
    js = json.loads(out)
    assert js["order"] == "16"
    assert js["molien"] == ["1", "0", "1", "0", "1", "0", "1", "0", "2", "0", "2", "0", "2"]
    assert js["generators"][0] == [["1/2√2", "1/2√2"], ["1/2√2", "-1/2√2"]]
    assert js["validate"]["same_elements"]


def test_group_capacity(capsys):
    code, _, err = run(capsys, "group", "-m", "2", "--cap", "100")
    assert code == 3 and "cap 100" in err


def test_group_m3_molien_rejected(capsys):
    code, _, _ = run(capsys, "group", "-m", "3", "--molien", "4")
    assert code == 2


def test_codes_classify(capsys):
    _, out, _ = run(capsys, "codes", "classify", "-n", "8")
    js = json.loads(out)
    assert js["classes"] == 2 and js["certified"]


def test_codes_certificate_failure(capsys, monkeypatch):
    from barneswall.codes import ClassificationError

    def boom(n):
        raise ClassificationError("mass mismatch")

    monkeypatch.setattr(cli, "classify_self_dual", boom)
    code, _, err = run(capsys, "codes", "classify", "-n", "8")
    assert code == 4 and "mass mismatch" in err


def test_cwe_from_file(capsys, tmp_path):
    f = tmp_path / "h8.txt"
    f.write_text("11110000\n00111100\n00001111\n01010101\n")
    _, out, _ = run(capsys, "cwe", "--code", str(f), "-m", "1")
    assert json.loads(out)["text"] == "x0^8 + 14*x0^4*x1^4 + x1^8"


def test_cwe_missing_file(capsys):
    code, _, _ = run(capsys, "cwe", "--code", "/no/such/file", "-m", "1")
    assert code == 2


def test_runge(capsys):
    _, out, _ = run(capsys, "runge", "-m", "1", "--k", "4")
    js = json.loads(out)
    assert js["spanning"] and js["span_rank"] == 2 and js["invariant_dim"] == 2


def test_deterministic_and_cache(capsys, tmp_path, monkeypatch):
    args = ["kissing", "-m", "2", "--which", "Lprime"]
    _, plain, _ = run(capsys, *args)
    _, again, _ = run(capsys, *args, "--threads", "3")
    _, cached1, _ = run(capsys, *args, "--cache-dir", str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    _, cached2, _ = run(capsys, *args, "--cache-dir", str(tmp_path))
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    _, from_env, _ = run(capsys, *args)
    assert plain == again == cached1 == cached2 == from_env
    assert len(list(tmp_path.iterdir())) == 1


def test_cache_key_depends_on_args():
    a = cli.cache_key("kissing", {"m": 2})
    assert a == cli.cache_key("kissing", {"m": 2})
    assert a != cli.cache_key("kissing", {"m": 3})
    assert a != cli.cache_key("theta", {"m": 2})


def test_repro_quick(capsys):
    code, out, _ = run(capsys, "repro-paper", "--quick")
    assert code == 0
    assert json.loads(out)["all_match"]


def test_repro_mismatch(capsys, tmp_path):
    golden = json.loads(cli.golden_path().read_text())
    golden["order_C1"] = "17"
    (tmp_path / "repro.json").write_text(json.dumps(golden))
    code, _, err = run(capsys, "repro-paper", "--quick", "--golden-dir", str(tmp_path))
    assert code == 4 and "order_C1" in err
