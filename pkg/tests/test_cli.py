"""CLI surface: exit codes, machine-readable sections, determinism."""

import pytest

from metaplectic.cli import EXIT_CHECK_FAILED, EXIT_IO, EXIT_MISSING_DATA, EXIT_OK, EXIT_USAGE, SENTINEL, main


def machine_section(output):
    head, _, tail = output.partition(SENTINEL + "\n")
    assert tail, f"no machine section in output:\n{output}"
    return tail


def test_category_check_su24(capsys):
    assert main(["category", "check", "su2_4"]) == EXIT_OK
    tail = machine_section(capsys.readouterr().out)
    assert "pentagon_skipped=0" in tail
    assert "pass=1" in tail


def test_category_check_so52_skips_ok(capsys):
    assert main(["category", "check", "so5_2"]) == EXIT_OK
    tail = machine_section(capsys.readouterr().out)
    assert "pass=1" in tail
    skips = int(next(l for l in tail.splitlines() if l.startswith("skips=")).split("=")[1])
    assert skips > 0


def test_category_dump_and_reparse(tmp_path, capsys):
    out = tmp_path / "su2_4.cat"
    assert main(["category", "dump", "su2_4", "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    assert main(["category", "check", "--file", str(out)]) == EXIT_OK


def test_category_fuse(capsys):
    assert main(["category", "fuse", "su2_4", "eps", "eps"]) == EXIT_OK
    assert "fusion=0,2" in machine_section(capsys.readouterr().out)


def test_group_order_projective(capsys):
    assert main(["group", "order", "--model", "su2_4-qutrit", "--projective",
                 "--expect", "216"]) == EXIT_OK
    tail = machine_section(capsys.readouterr().out)
    assert "order=216" in tail


def test_group_order_wrong_expectation(capsys):
    assert main(["group", "order", "--model", "su2_4-qubit", "--expect", "25"]) \
        == EXIT_CHECK_FAILED


def test_group_cap_exceeded(capsys):
    assert main(["group", "order", "--gates", "H3,P3[1]", "--projective",
                 "--cap", "500"]) == EXIT_OK
    assert "cap_exceeded=1" in machine_section(capsys.readouterr().out)


def test_verify_suites(capsys):
    assert main(["verify", "suite", "--category", "su2_4"]) == EXIT_OK
    assert main(["verify", "suite", "--category", "so5_2"]) == EXIT_OK


def test_verify_identity(capsys):
    assert main(["verify", "identity", "--model", "so5_2-qupit",
                 "--word", "1 -3", "--target", "Z5"]) == EXIT_OK
    assert main(["verify", "identity", "--model", "so5_2-qupit",
                 "--word", "1 -3", "--target", "X5"]) == EXIT_CHECK_FAILED
    capsys.readouterr()


def test_rep_check_and_show(capsys):
    assert main(["rep", "check", "--model", "su2_4-qutrit"]) == EXIT_OK
    capsys.readouterr()
    assert main(["rep", "show", "--model", "su2_4-qubit"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "sigma_1" in out
    # row-major fixed-point entries with 12 decimals: sigma_1[1,1] = e^{i pi/12}
    assert "+0.965925826289+0.258819045103i" in out


def test_rep_missing_data_exit(capsys):
    code = main(["rep", "check", "--category", "so5_2",
                 "--leaves", "eps eps eps eps eps eps", "--total", "y1"])
    assert code == EXIT_MISSING_DATA


def test_braid_eval_named(capsys):
    assert main(["braid", "eval", "--model", "su2_4-qutrit", "--named", "p"]) == EXIT_OK
    assert main(["braid", "eval", "--model", "su2_4-qutrit", "--named", "nope"]) == EXIT_USAGE
    capsys.readouterr()


def test_witness_commands(capsys):
    assert main(["witness", "qutrit", "--level", "0"]) == EXIT_OK
    assert main(["witness", "imprimitivity", "--gate", "SUM3"]) == EXIT_OK
    assert main(["witness", "qupit-chain", "--p", "5"]) == EXIT_OK
    assert main(["witness", "so5-partial"]) == EXIT_OK
    assert main(["witness", "infinite-order", "--gate", "Z3", "--k-max", "10"]) \
        == EXIT_CHECK_FAILED  # Z3 has order 3
    capsys.readouterr()


def test_protocol_flip_csv(capsys):
    assert main(["protocol", "flip", "--trials", "4000", "--rounds", "4",
                 "--seed", "7"]) == EXIT_OK
    tail = machine_section(capsys.readouterr().out)
    lines = tail.strip().splitlines()
    assert lines[0] == "n,p_hat,p_exact,stderr"
    assert len(lines) == 5


def test_machine_section_byte_identical(capsys):
    argv = ["protocol", "flip", "--trials", "2000", "--rounds", "3", "--seed", "5"]
    assert main(argv) == EXIT_OK
    first = machine_section(capsys.readouterr().out)
    assert main(argv) == EXIT_OK
    second = machine_section(capsys.readouterr().out)
    assert first == second


def test_usage_error_exit_code(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["group", "order", "--model", "not-a-model"]) == EXIT_USAGE
    capsys.readouterr()


def test_io_error_exit_code(capsys):
    assert main(["category", "check", "--file", "/no/such/file"]) == EXIT_IO
    capsys.readouterr()


def test_malformed_category_file(tmp_path, capsys):
    bad = tmp_path / "bad.cat"
    bad.write_text("label a qdim 1.0\nfuse a a -> a\nF broken\n")
    assert main(["category", "check", "--file", str(bad)]) == EXIT_IO
    capsys.readouterr()
