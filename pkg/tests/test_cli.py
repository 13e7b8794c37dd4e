import json

from onefac import cli, cyclic, docio
from onefac.core import MultiFactorization


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_writes_document_and_summary(tmp_path, capsys):
    out = tmp_path / "n9l3.json"
    code, stdout, _ = run_cli(capsys, "construct", "--n", "9",
                              "--lambda", "3", "--out", str(out))
    assert code == 0
    assert "factors=51 valid=true simple=false certificate=proven" in stdout
    mf = docio.read_mf(out)
    assert mf.n == 9 and mf.lam == 3 and len(mf.factors) == 51


def test_construct_document_on_stdout(capsys):
    code, stdout, stderr = run_cli(capsys, "construct", "--n", "5", "--lambda", "2")
    assert code == 0
    doc = docio.parse(stdout)
    assert doc["lambda"] == 2
    assert "certificate=proven" in stderr


def test_construct_t3(tmp_path, capsys):
    out = tmp_path / "t3.json"
    code, stdout, _ = run_cli(capsys, "construct", "--family", "t3",
                              "--p", "5", "--m", "1", "--out", str(out))
    assert code == 0
    assert "factors=10" in stdout and "simple=true" in stdout
    assert docio.read_mf(out).model["tag"] == "field"


def test_construct_out_of_range_exits_2(capsys):
    code, _, stderr = run_cli(capsys, "construct", "--n", "9", "--lambda", "30")
    assert code == 2 and "no family" in stderr


def test_construct_family_out_of_domain_exits_2(capsys):
    code, _, _ = run_cli(capsys, "construct", "--family", "P1",
                         "--n", "9", "--lambda", "4")
    assert code == 2


def test_verify_passing_checks(tmp_path, capsys):
    out = tmp_path / "t3.json"
    run_cli(capsys, "construct", "--family", "t3", "--p", "5", "--m", "1",
            "--out", str(out))
    code, stdout, _ = run_cli(capsys, "verify", str(out),
                              "--checks", "validity,simple,indecomposable")
    assert code == 0
    report = json.loads(stdout)
    assert report["validity"] == "pass"
    assert report["simple"] == "pass"
    assert report["indecomposable"] == "pass"


def test_verify_decomposable_fails_with_witness(tmp_path, capsys):
    mf = MultiFactorization.make(2, 2, cyclic.lucas_factorization(4) * 2)
    path = tmp_path / "gk4x2.json"
    docio.write_mf(mf, path)
    code, stdout, _ = run_cli(capsys, "verify", str(path),
                              "--checks", "indecomposable")
    assert code == 1
    report = json.loads(stdout)
    assert report["indecomposable"] == "fail"
    assert report["witness"]["lambda0"] == 1


def test_verify_truncated_file_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"format": 1, "model"')
    code, _, stderr = run_cli(capsys, "verify", str(path))
    assert code == 2 and "error" in stderr


def test_verify_unknown_check_exits_2(tmp_path, capsys):
    path = tmp_path / "doc.json"
    mf = MultiFactorization.make(2, 1, cyclic.lucas_factorization(4))
    docio.write_mf(mf, path)
    code, _, _ = run_cli(capsys, "verify", str(path), "--checks", "bogus")
    assert code == 2


def test_verify_budget_exhaustion_exits_4(tmp_path, capsys, monkeypatch):
    path = tmp_path / "doc.json"
    from onefac import families
    docio.write_mf(families.construct(6, 4), path)
    code, stdout, _ = run_cli(capsys, "verify", str(path),
                              "--checks", "indecomposable", "--max-nodes", "5")
    assert code == 4
    assert json.loads(stdout)["indecomposable"] == "exhausted"


def test_coverage_output(capsys):
    code, stdout, _ = run_cli(capsys, "coverage", "--s", "18")
    lines = stdout.strip().splitlines()
    assert code == 0 and len(lines) == 16
    assert lines[0] == "lambda=2 base_n=5 family=P2"
    assert lines[-1] == "lambda=17 base_n=9 family=P8"


def test_coverage_small_s_exits_2(capsys):
    code, _, _ = run_cli(capsys, "coverage", "--s", "10")
    assert code == 2


def test_selftest_quick(capsys):
    code, stdout, _ = run_cli(capsys, "selftest", "--scale", "quick")
    lines = stdout.strip().splitlines()
    assert code == 0
    assert [line.split()[0] for line in lines] == ["A1", "A2", "A3", "A4", "A5"]
    assert all("PASS" in line for line in lines)


def test_selftest_fails_on_corrupted_fixture(capsys, monkeypatch):
    from onefac import acceptance, families
    table = dict(families._fixture_table())
    table[("P3", 9, 10)] = [{0: 9}, {1: 9}]  # unrealizable starters
    monkeypatch.setattr(families, "_fixture_table", lambda: table)
    results = acceptance.run(["A8"])
    assert not results[0].passed
