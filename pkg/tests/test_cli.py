import json

import jsonschema
import pytest

from conftest import CORPUS_TXT, SCHEMA
from plateau.cli import main
from plateau.field import build_field, ff_mul, ff_pow, trace
from plateau.pfunc import dump_function_file, from_table

VALIDATOR = jsonschema.Draft202012Validator(json.loads(SCHEMA.read_text()))
BENT = ["--quad", "1,0,0", "--field", "p=3,m=5"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    VALIDATOR.validate(doc)
    return code, doc


def test_classify_affine_witness(capsys):
    code, doc = run_json(capsys, "classify", "--corpus", str(CORPUS_TXT))
    assert code == 2
    assert doc["profile"]["balanced"] and not doc["certificate"]["holds"]
    assert doc["function"]["linear"] == 1
    code, text, _ = run(capsys, "classify", "--corpus", str(CORPUS_TXT))
    assert f"s={doc['profile']['s']} epsilon=+1 balanced not-wrpb" in text


def test_code_bent_quadric(capsys):
    code, doc = run_json(capsys, "code", *BENT, "--punctured", "--dual", "--sss", "--oracle", "--check")
    assert code == 0
    d0, punc = doc["codes"]
    assert d0["params"] == [80, 5, 48] and punc["params"] == [40, 5, 24]
    assert punc["sss"]["coverage"] == {"1": 54} and punc["oracle"]["num_minimal_access_sets"] == 81
    assert d0["check"]["verdict"] == "UNCOVERED"
    code, text, _ = run(capsys, "code", *BENT, "--punctured", "--dual", "--sss")
    assert "[D0] [80,5,48] 1 + 90y^48 + 80y^54 + 72y^60" in text
    assert "[PuncD0] [40,5,24]" in text and "coverage: l=1:54" in text


def test_text_and_json_agree(capsys):
    argv = ["code", "--corpus", str(CORPUS_TXT), "--pick", "2", "--kind", "all"]
    _, doc = run_json(capsys, *argv)
    _, text, _ = run(capsys, *argv)
    for rep in doc["codes"]:
        n, k, d = rep["params"]
        assert f"[{rep['kind']}] [{n},{k},{d}] {rep['enumerator']} hash={rep['hash']}" in text


def test_csv(capsys):
    code, out, _ = run(capsys, "code", *BENT, "--kind", "D0", "--format", "csv")
    assert out.splitlines() == ["kind,weight,multiplicity", "D0,0,1", "D0,48,90", "D0,54,80", "D0,60,72"]


def test_check_mismatch_exit(capsys):
    code, doc = run_json(capsys, "code", "--corpus", str(CORPUS_TXT), "--check")
    assert code == 3 and doc["codes"][0]["check"]["verdict"] == "MISMATCH"


def test_unbalanced_kind_exit(capsys):
    code, doc = run_json(capsys, "code", *BENT, "--kind", "D1")
    assert code == 2 and doc["error"]["type"] == "NotBalanced"


def test_puncture_not_available(capsys):
    code, doc = run_json(capsys, "code", "--corpus", str(CORPUS_TXT), "--punctured")
    assert code == 0 and "error" in doc["codes"][1]
    code, _ = run_json(capsys, "code", "--corpus", str(CORPUS_TXT), "--punctured", "--check")
    assert code == 3


def test_not_weakly_regular_file(capsys, tmp_path):
    ctx = build_field(3, 6)
    coef = ff_pow(ctx, ctx.generator, 7)
    f = from_table(ctx, [trace(ctx, ff_mul(ctx, coef, ff_pow(ctx, x, 98))) for x in range(ctx.order)])
    path = tmp_path / "hk.txt"
    path.write_text(dump_function_file(f))
    code, doc = run_json(capsys, "classify", "--file", str(path))
    assert code == 2 and doc["error"]["type"] == "NotWeaklyRegular" and doc["error"]["omegas"]


def test_sss_command(capsys):
    code, doc = run_json(capsys, "sss", *BENT)
    assert code == 0 and doc["codes"][0]["sss"]["partial_count"] == 54


@pytest.mark.parametrize("argv", [
    ["code", "--quad", "1,0,0"],
    ["code", *BENT, "--kind", "D7"],
    ["code", "--corpus", str(CORPUS_TXT), "--pick", "99"],
    ["classify", "--quad", "1", "--table", "0", "--field", "p=3,m=2"],
    ["classify", "--quad", "1,0", "--field", "p=4,m=2"],
    ["search", "--target", "3,3"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 4


def test_search_writes_files(capsys, tmp_path):
    out, js = tmp_path / "w.txt", tmp_path / "w.json"
    code, doc = run_json(capsys, "search", "--target", "3,3,1", "--cap", "800", "--out", str(out), "--json", str(js))
    assert code == 0 and len(doc["witnesses"]) == 2
    assert out.read_text().splitlines()[1] == "3 3 1 +1 - coeffs=1,8 linear=1 family=affine wrpb=0"
    assert json.loads(js.read_text())["witnesses"] == doc["witnesses"]
