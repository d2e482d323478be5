"""Command-line surface: subcommands, exit codes, cache, determinism."""

import json

import pytest

from hopfq.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_hamiltonian_minus_one(capsys):
    code, out = run(["hamiltonian", "--n", "-1", "--weight", "0",
                     "--no-cache"], capsys)
    assert code == 0
    assert out.strip() == "(1 * u0^1) Id"


def test_hamiltonian_constant_correction(capsys):
    code, out = run(["hamiltonian", "--n", "0", "--weight", "4",
                     "--no-cache"], capsys)
    assert code == 0
    assert "-1/24 * eps^2" in out


def test_naive_has_no_corrections(capsys):
    code, out = run(["hamiltonian", "--n", "2", "--naive", "--weight", "4",
                     "--no-cache"], capsys)
    assert code == 0
    assert "eps" not in out


def test_invalid_index_is_usage_error(capsys):
    code, _ = run(["hamiltonian", "--n", "-2", "--weight", "2",
                   "--no-cache"], capsys)
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_disk(capsys):
    code, out = run(["verify", "disk", "--K", "2", "--no-cache"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["disk"]["passed"] is True


def test_verify_hurwitz(capsys):
    code, out = run(["verify", "hurwitz", "--n", "4", "--m", "4",
                     "--no-cache"], capsys)
    assert code == 0


def test_verify_commute_small(capsys):
    code, out = run(["verify", "commute", "--N", "2", "--weight", "5",
                     "--no-cache"], capsys)
    assert code == 0
    assert json.loads(out)["commute"]["passed"] is True


def test_verify_all_parallel_is_deterministic(capsys):
    args = ["verify", "all", "--N", "2", "--K", "2", "--weight", "5",
            "--jobs", "2", "--no-cache"]
    code1, out1 = run(args, capsys)
    code2, out2 = run(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_operator_cache_roundtrip(tmp_path, capsys):
    args = ["hamiltonian", "--n", "1", "--weight", "4",
            "--cache-dir", str(tmp_path)]
    code1, out1 = run(args, capsys)
    assert code1 == 0
    assert list(tmp_path.glob("hamiltonian_1_4.json"))
    code2, out2 = run(args, capsys)
    assert code2 == 0 and out1 == out2
    # stale version header is ignored, not an error
    path = tmp_path / "hamiltonian_1_4.json"
    payload = json.loads(path.read_text())
    payload["code_version"] = "0.0.0"
    path.write_text(json.dumps(payload))
    code3, out3 = run(args, capsys)
    assert code3 == 0 and out3 == out1


def test_tables_disk_text(capsys):
    code, out = run(["tables", "disk", "--weight", "1", "--K", "1",
                     "--no-cache"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("partition")
    assert len(lines) == 3  # header + [] + [1]


def test_tables_hurwitz_csv(capsys):
    code, out = run(["tables", "hurwitz", "--n", "3", "--m", "2",
                     "--format", "csv", "--no-cache"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,m,cycle_type,count_over_nfact"
    assert "3,2,[3],1" in lines


def test_tables_p1_json(capsys):
    code, out = run(["tables", "p1", "--degree", "2", "--K", "1", "--u0", "0",
                     "--hbar", "1", "--format", "json", "--no-cache"], capsys)
    assert code == 0
    rows = json.loads(out)
    degree2 = [r for r in rows if r["degree"] == 2]
    assert len(degree2) == 2  # partitions (2) and (1,1)


def test_hbar_square_root_refusal(capsys):
    code, _ = run(["tables", "p1", "--degree", "1", "--K", "1",
                   "--hbar", "2", "--no-cache"], capsys)
    assert code == 2
