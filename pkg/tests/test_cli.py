import json
import subprocess
import sys

import pytest

from funsemi.cayley import format_table, parse_table
from funsemi.cli import main
from funsemi.embedding import recheck_witness
from funsemi.errors import ParseError
from funsemi.formats import load_group, load_semigroup, parse_strong_semilattice
from funsemi.groups import make_cyclic, serialize_group
from funsemi.semigroups import (
    is_clifford, is_inverse_semigroup, is_isomorphic, left_zero, make_brandt, make_group_with_zero, null_semigroup,
    semigroup_direct_product, serialize_semigroup,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["c4"] = tmp_path / "c4.tbl"
    paths["c4"].write_text(serialize_group(make_cyclic(4)))
    paths["brandt"] = tmp_path / "brandt.tbl"
    paths["brandt"].write_text(serialize_semigroup(make_brandt(make_cyclic(2), 2)))
    paths["lz2"] = tmp_path / "lz2.tbl"
    paths["lz2"].write_text(serialize_semigroup(left_zero(2)))
    paths["c2z"] = tmp_path / "c2z.tbl"
    paths["c2z"].write_text(serialize_semigroup(make_group_with_zero(make_cyclic(2))))
    paths["odd"] = tmp_path / "odd.tbl"
    paths["odd"].write_text(serialize_semigroup(semigroup_direct_product(null_semigroup(2), left_zero(2))))
    paths["bad"] = tmp_path / "bad.tbl"
    paths["bad"].write_text("2\n0 1\n1 x\n")
    paths["m"] = tmp_path / "m.measure"
    paths["m"].write_text("1: 1/2\n3: 1/2\n")
    paths["ss"] = tmp_path / "ss.txt"
    paths["ss"].write_text(
        "# a three-step chain\n"
        "semilattice 3\nbelow 0 1\nbelow 1 2\n"
        "group 0 C1\ngroup 1 C2\ngroup 2 c4.tbl\n"
        "link 2 1 : 0 1 0 1\nlink 1 0 : 0 0\n")
    return {k: str(v) for k, v in paths.items()}


def test_analyze_examples(capsys, files):
    code, out, _ = run(capsys, "analyze", files["c4"])
    assert code == 0 and "group: yes" in out and "Clifford: yes" in out
    code, out, _ = run(capsys, "analyze", files["brandt"])
    assert "inverse: yes" in out and "Clifford: no" in out
    code, out, _ = run(capsys, "analyze", files["lz2"])
    assert "regular: yes" in out and "inverse: no" in out
    code, out, _ = run(capsys, "analyze", files["c2z"])
    assert "group: no" in out and "semilattice Hasse edges: 2<0" in out


def test_analyze_json(capsys, files):
    code, out, _ = run(capsys, "analyze", files["brandt"], "--json")
    d = json.loads(out)
    assert d["order"] == 9 and d["inverse"] and not d["clifford"] and len(d["idempotents"]) == 3


def test_parse_error_exit_code(capsys, files):
    code, _, err = run(capsys, "analyze", files["bad"])
    assert code == 1 and "line 3" in err
    code, _, err = run(capsys, "analyze", "/nonexistent/file")
    assert code == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 1
    capsys.readouterr()


def test_exp_commands(capsys, files):
    code, out, _ = run(capsys, "exp", files["c4"], "--regular")
    assert code == 0 and out.startswith("7 regular elements")
    assert "{1,3} = {0,2}*1" in out
    code, out, _ = run(capsys, "exp", "C4", "--product", "{0,2}", "{1}")
    assert out.strip() == "{0,2}*{1} = {1,3}"
    code, out, _ = run(capsys, "exp", "C4", "--classify", "0,1")
    assert out.strip() == "{0,1}: not regular"
    code, out, _ = run(capsys, "exp", "K4", "--idempotents", "--json")
    assert json.loads(out)["idempotents"] == [1, 3, 5, 9, 15]
    code, out, _ = run(capsys, "exp", "C2", "--table")
    assert out.splitlines()[-3:] == ["0 1 2", "1 0 2", "2 2 2"]


def test_exp_resource_limit(capsys):
    code, _, err = run(capsys, "exp", "C11", "--table")
    assert code == 4 and "11" in err


def test_conv_commands(capsys, files):
    code, out, _ = run(capsys, "conv", "classify", files["c4"], files["m"])
    assert code == 0 and "regular: Haar({0,2})*1" in out and "idempotent: no" in out
    code, out, _ = run(capsys, "conv", "classify", "C4", "1/3,2/3,0,0")
    assert "regular: no" in out
    code, out, _ = run(capsys, "conv", "mul", "C2", "1/2,1/2", "1/2,1/2")
    assert out.strip() == "0: 1/2\n1: 1/2"
    code, out, _ = run(capsys, "conv", "support-iso", "K4", "--json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["pairs_checked"] == 121
    code, _, err = run(capsys, "conv", "mul", "C2", "1/2,1/3", "1,0")
    assert code == 1


def test_superext(capsys, files):
    code, out, _ = run(capsys, "superext", files["c4"])
    rows = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert code == 0 and rows[0] == "12" and len(rows) == 13
    code, out, _ = run(capsys, "superext", files["c4"], "--json")
    d = json.loads(out)
    assert d["report"]["order"] == 12 and d["report"]["inverse"] and d["report"]["clifford"]
    code, out, _ = run(capsys, "superext", "C2", "--functor", "G", "--json")
    assert json.loads(out)["report"]["order"] == 4


def test_embed_exit_codes(capsys, files):
    code, out, _ = run(capsys, "embed", files["c2z"])
    assert code == 0 and "verified: yes" in out
    code, out, _ = run(capsys, "embed", files["c2z"], "--target", "conv", "--json")
    d = json.loads(out)
    assert code == 0 and d["verified"] and d["exit_code"] == 0
    code, out, _ = run(capsys, "embed", files["brandt"])
    assert code == 2 and "condition (3): FAIL" in out
    code, out, _ = run(capsys, "embed", files["lz2"])
    assert code == 2 and "condition (1): FAIL" in out
    code, out, _ = run(capsys, "embed", files["odd"])
    assert code == 3 and "inconclusive" in out


def test_embed_resource_limit(capsys, files):
    code, _, err = run(capsys, "embed", files["ss"], "--max-product-order", "4")
    assert code == 4 and "16" in err


def test_embed_json_witnesses_recheck(capsys, files):
    code, out, _ = run(capsys, "embed", files["brandt"], "--json")
    d = json.loads(out)
    S = load_semigroup(files["brandt"])
    fails = [v for v in d["report"]["verdicts"] if v["status"] == "FAIL"]
    assert fails and all(recheck_witness(S, v) for v in fails)


def test_json_is_deterministic(capsys, files):
    outs = [run(capsys, "embed", files["ss"], "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "verify-paper", "--only", "1", "5", "--json", "--seed", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["all_passed"]


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "1", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("[PASS]  1.") and lines[1].startswith("[PASS]  2.")
    assert lines[-1] == "2/2 claims passed"


def test_module_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "funsemi", "analyze", files["c4"]], capture_output=True, text=True)
    assert r.returncode == 0 and "order: 4" in r.stdout


# formats -------------------------------------------------------------------------

def test_strong_semilattice_file(files):
    S = load_semigroup(files["ss"])
    assert S.order == 7 and is_clifford(S) and is_inverse_semigroup(S)
    # the missing 2 -> 0 link was composed from 2 -> 1 -> 0
    S2 = parse_strong_semilattice(open(files["ss"]).read() + "link 2 0 : 0 0 0 0\n",
                                  base_dir=files["ss"].rsplit("/", 1)[0]).semigroup
    assert is_isomorphic(S, S2)


@pytest.mark.parametrize("text,msg", [
    ("below 0 1\n", "missing 'semilattice"),
    ("semilattice 2\nfrobnicate\n", "line 2: unknown keyword"),
    ("semilattice 2\nbelow 0 x\n", "line 2: cannot read"),
    ("semilattice 2\nbelow 0 1\ngroup 0 C1\n", "no group given for idempotent 1"),
    ("semilattice 2\nbelow 0 1\nbelow 1 0\ngroup 0 C1\ngroup 1 C1\n", "cycle"),
    ("semilattice 2\ngroup 0 C1\ngroup 1 C1\n", "greatest lower bound"),
    ("semilattice 2\nbelow 0 1\ngroup 0 C2\ngroup 1 C2\nlink 1 0 : 1 0\n", "homomorphism"),
])
def test_strong_semilattice_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_strong_semilattice(text)


def test_load_group_variants(files):
    assert load_group(files["c4"]).table == make_cyclic(4).table
    assert load_group("C2xC2").order == 4
    with pytest.raises(ParseError):
        load_group("Z7")
    assert load_semigroup("C3").order == 3


def test_table_format_round_trip():
    text = format_table([[0, 1], [1, 0]], "C2")
    assert text.splitlines()[0] == "# name: C2"
    assert parse_table(text) == (((0, 1), (1, 0)), "C2")
