import json
import subprocess
import sys

import pytest

from bmhomology.cli import ReportRow, load_table, main, report_rows
from bmhomology.corpus import table_text
from bmhomology.homology import AbelianGroup


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.fixture
def a1_file(tmp_path):
    path = tmp_path / "a1.tbl"
    path.write_text(table_text("A1"))
    return str(path)


# ---- table loading ---------------------------------------------------------


def test_load_table_by_name_and_path(a1_file):
    assert load_table("A1") == load_table(a1_file)


def test_malformed_table(capsys, tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text("0 1\n1 1\n")
    rc, _, err = run(capsys, "check", str(bad))
    assert rc == 2
    assert "NotLatin" in err and "line 2" in err


def test_missing_file(capsys):
    rc, _, err = run(capsys, "check", "/nonexistent/table.tbl")
    assert rc == 2 and "error" in err


# ---- check -----------------------------------------------------------------


def test_check_a1(capsys, a1_file):
    rc, out, _ = run(capsys, "check", a1_file)
    assert rc == 0
    satisfied = next(line for line in out.splitlines() if line.startswith("satisfied:")).split()[1:]
    assert set(satisfied) >= {"A25", "A23", "B25", "E25", "A14", "F25", "C25", "A35"}
    assert "loop class: LeftLoopOnly" in out


def test_check_group(capsys, tmp_path):
    z4 = tmp_path / "z4.tbl"
    z4.write_text("\n".join(" ".join(str((x + y) % 4) for y in range(4)) for x in range(4)))
    rc, out, _ = run(capsys, "check", str(z4))
    assert rc == 0 and "group: all identities satisfied" in out


def test_check_json(capsys):
    rc, out, _ = run(capsys, "--json", "check", "A1")
    data = json.loads(out)
    assert rc == 0 and data["loop_class"] == "LeftLoopOnly" and data["group"] is False
    assert [1, 1] in data["substitutions"]


# ---- homology --------------------------------------------------------------


@pytest.mark.parametrize("argv, text", [
    (["h2", "A1", "-i", "E25", "--t", "1", "--s", "1"], "Z/2"),
    (["h2", "A13", "-i", "A35", "--t", "-1", "--s", "1"], "Z^12 (+) (Z/2)^4"),
    (["h1", "A4", "--t", "-2", "--s", "1"], "Z/10"),
])
def test_homology_examples(capsys, argv, text):
    rc, out, _ = run(capsys, *argv)
    assert rc == 0 and out.strip() == text


def test_h2_requires_identity(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["h2", "A1"])
    assert exc.value.code == 1


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_bad_identity_is_usage_error(capsys):
    rc, _, err = run(capsys, "h2", "A1", "-i", "Q99")
    assert rc == 1 and "malformed identity" in err


def test_golden_pass_and_mismatch(capsys):
    rc, out, _ = run(capsys, "h1", "A1", "--t", "1", "--s", "1", "--golden")
    assert rc == 0 and out.strip().endswith("PASS")
    rc, out, _ = run(capsys, "h1", "A1", "--t", "1", "--s", "-1", "--golden")
    assert rc == 3 and "expected Z/4" in out and out.strip().endswith("FAIL")


def test_warnings(capsys):
    rc, _, err = run(capsys, "h2", "A2", "-i", "E25")
    assert "IdentityNotSatisfied" in err
    rc, _, err = run(capsys, "h2", "A1", "-i", "A23", "--t", "-1", "--s", "-1")
    assert "SubstitutionNotValid" in err


def test_homology_json_round_trip(capsys):
    rc, out, _ = run(capsys, "--json", "h2", "A1", "-i", "F25", "--golden")
    row = ReportRow.from_json(json.loads(out))
    assert row.group == AbelianGroup(6, (2, 2)) and row.match
    rc, text, _ = run(capsys, "h2", "A1", "-i", "F25", "--golden")
    assert text.split("\t")[0] == str(row.group)


# ---- other subcommands -----------------------------------------------------


def test_affine_solve(capsys):
    rc, out, _ = run(capsys, "affine-solve", "-i", "E25", "-n", "7")
    assert rc == 0 and out.splitlines()[0] == "14 solutions mod 7"
    rc, out, _ = run(capsys, "--json", "affine-solve", "-i", "A23", "-n", "5")
    sols = json.loads(out)
    assert len(sols) == 20 and sols == sorted(sols, key=lambda d: (d["t"], d["s"], d["c0"]))
    rc, _, _ = run(capsys, "affine-solve", "-i", "E25", "-n", "0")
    assert rc == 1


def test_parastrophe(capsys):
    rc, out, _ = run(capsys, "parastrophe", "A1", "--kind", "transpose")
    assert rc == 0 and out.splitlines()[1] == "1 0 3 2"
    rc, _, _ = run(capsys, "parastrophe", "A1", "--kind", "nope")
    assert rc == 1


def test_mlt(capsys):
    rc, out, _ = run(capsys, "mlt", "A1")
    assert rc == 0 and out.splitlines()[0] == "order: 8"
    rc, _, err = run(capsys, "--budget", "3", "mlt", "A1")
    assert rc == 2 and "GroupTooLarge" in err


def test_cat_homology(capsys):
    rc, out, _ = run(capsys, "--json", "cat-homology", "--source", "mlt", "--table", "A1")
    data = json.loads(out)
    assert data["order"] == 8
    assert AbelianGroup.from_json(data["H1"]) == AbelianGroup(0, (2, 2))
    assert AbelianGroup.from_json(data["H2"]) == AbelianGroup(0, (2,))
    rc, out, _ = run(capsys, "cat-homology", "--source", "end", "--table", "A1")
    assert "H1: 0" in out and "H2: 0" in out


def test_extend(capsys, tmp_path):
    rc, out, _ = run(capsys, "extend", "--base", "A1", "--modulus", "2", "--identity", "E25")
    assert rc == 0 and len(out.splitlines()) == 9 and "cocycle for E25: yes" in out
    phi = tmp_path / "phi.txt"
    phi.write_text("0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 1\n")
    rc, out, _ = run(capsys, "--json", "extend", "--base", "A1", "--modulus", "2", "--phi", str(phi))
    assert rc == 0 and json.loads(out)["phi"][3][3] == 1
    rc1, out1, _ = run(capsys, "--seed", "5", "extend", "--base", "A1", "--modulus", "3", "--phi", "random")
    rc2, out2, _ = run(capsys, "--seed", "5", "extend", "--base", "A1", "--modulus", "3", "--phi", "random")
    assert rc1 == rc2 == 0 and out1 == out2
    phi.write_text("0 0\n0 0\n")
    rc, _, _ = run(capsys, "extend", "--base", "A1", "--modulus", "2", "--phi", str(phi))
    assert rc == 2


# ---- report ----------------------------------------------------------------


def test_report_clean_subset(capsys):
    rc, out, _ = run(capsys, "report", "--only", "A2", "A4")
    assert rc == 0
    assert out.splitlines()[-1].startswith("# ")
    assert "2/2 quasigroups fully PASS" in out


def test_report_mismatch_exit_code(capsys):
    rc, out, _ = run(capsys, "report", "--only", "A1")
    assert rc == 3
    fails = [line for line in out.splitlines() if line.endswith("FAIL")]
    assert len(fails) == 2


def test_report_json_and_text_agree(capsys):
    rc, out, _ = run(capsys, "--json", "report", "--only", "A1", "A3")
    from_json = [ReportRow.from_json(d) for d in json.loads(out)["cells"]]
    rc, out, _ = run(capsys, "report", "--only", "A1", "A3")
    from_text = [ReportRow.from_text(line) for line in out.splitlines() if not line.startswith("#")]
    assert from_json == from_text


def test_report_parallel_matches_serial():
    serial = report_rows(["A2", "A3"], jobs=1)
    parallel = report_rows(["A2", "A3"], jobs=2)
    assert serial == parallel


def test_report_row_text_round_trip():
    row = ReportRow("A1", 2, "E25", 1, -1, AbelianGroup(1, (2,)), AbelianGroup(0, (4,)))
    assert ReportRow.from_text(row.to_text()) == row
    bare = ReportRow("A1", 1, "", 1, 1, AbelianGroup())
    assert ReportRow.from_text(bare.to_text()) == bare


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bmhomology", "h1", "A1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Z/2"
