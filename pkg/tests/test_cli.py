import json

from symtrop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_of_c2(capsys):
    code, out, _ = run(capsys, "rank", "--symmetric", "catalog:c2")
    assert code == 0 and "rank: 3" in out


def test_conic(capsys):
    code, out, _ = run(capsys, "conic", "1", "0", "1", "0", "0", "0")
    assert code == 0 and out.strip() == "singular: union of two tropical lines"


def test_catalog_path_matches_file(capsys, tmp_path):
    from symtrop.core import format_matrix
    from symtrop.witness import catalog
    f = tmp_path / "c2.txt"
    f.write_text(format_matrix(catalog("c2").matrix))
    a = run(capsys, "rank", "--symmetric", "--format", "structured", "catalog:c2")[1]
    b = run(capsys, "rank", "--symmetric", "--format", "structured", str(f))[1]
    da, db = json.loads(a), json.loads(b)
    assert da["results"] == db["results"] and da["matrix"] == db["matrix"]


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("0 1\n1 zz\n")
    code, _, err = run(capsys, "rank", str(f))
    assert code == 2 and "line 2, column 3" in err


def test_usage_errors(capsys):
    assert run(capsys, "rank")[0] == 2
    assert run(capsys, "witness", "-r", "4", "-n", "6")[0] == 2
    assert run(capsys, "lift", "catalog:c2")[0] == 2
    assert run(capsys, "extend", "border", "catalog:c2", "--P", "1")[0] == 2


def test_lift_and_verify(capsys, tmp_path):
    f = tmp_path / "c1.ser"
    code, out, _ = run(capsys, "lift", "catalog:c1", "--seed", "2", "-o", str(f))
    assert code == 0 and "valid: True" in out
    assert run(capsys, "verify-lift", "catalog:c1", str(f), "--rank", "2")[0] == 0
    assert run(capsys, "verify-lift", "catalog:c1", str(f), "--rank", "1")[0] == 1


def test_structured_output_is_deterministic(capsys):
    a = run(capsys, "lift", "catalog:c1", "--seed", "4", "--format", "structured")[1]
    b = run(capsys, "lift", "catalog:c1", "--seed", "4", "--format", "structured")[1]
    assert a == b
    doc = json.loads(a)
    assert doc["schema"].startswith("symtrop-report/") and doc["results"]["valid"]


def test_text_and_structured_agree(capsys):
    text = run(capsys, "det", "catalog:c2", "--symmetric")[1]
    doc = json.loads(run(capsys, "det", "catalog:c2", "--symmetric", "--format", "structured")[1])
    assert f"tropdet: {doc['results']['tropdet']}" in text
    assert f"symmetrically_singular: {doc['results']['symmetrically_singular']}" in text


def test_decompose_normalize(capsys):
    code, out, _ = run(capsys, "decompose", "catalog:c1")
    assert code == 0 and "zero: [3]" in out
    assert run(capsys, "decompose", "catalog:c2")[0] == 2
    code, out, _ = run(capsys, "normalize", "catalog:c1")
    assert code == 0 and "symmetric" in out


def test_witness_and_extend(capsys):
    code, out, _ = run(capsys, "witness", "-r", "6", "-n", "8", "--verify")
    assert code == 0 and '"ok": true' in out and "claimed_sym_trop_rank: 5" in out
    code, out, _ = run(capsys, "extend", "border", "catalog:c2", "--verify")
    assert code == 0 and "claimed_sym_trop_rank: 4" in out
    code, out, _ = run(capsys, "extend", "duplicate", "catalog:c1", "--verify")
    assert code == 0 and "claimed_sym_trop_rank: 2" in out


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "fano13" in out.split()
    code, out, _ = run(capsys, "catalog", "shitov6")
    assert code == 0 and "claimed_trop_rank: 4" in out


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out
