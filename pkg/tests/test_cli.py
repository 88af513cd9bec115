import json
import subprocess
import sys
from importlib import resources

import pytest

from cohodim.cli import RunConfig, UsageError, dispatch, main, parse_config
from cohodim.fpgroup import parse_presentations
from cohodim.simplicial import SimplicialComplex


def run(args, capsys):
    status = main(args)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_abelianize_gamma2(capsys):
    status, out, _ = run(["abelianize", "corpus/gamma2.grp"], capsys)
    assert status == 0 and out.strip() == "Z/4 ⊕ Z/4"


def test_reduce_s4(capsys):
    status, out, _ = run(["reduce", "corpus/s4.grp"], capsys)
    assert status == 0 and out.strip().splitlines()[-1] == "terminal order 1"


def test_empty_generators(tmp_path, capsys):
    f = tmp_path / "e.grp"
    f.write_text("< | >\n")
    status, out, _ = run(["abelianize", str(f)], capsys)
    assert status == 0 and out.strip() == "0"


def test_json_schema(capsys):
    status, out, _ = run(["--format", "json", "abelianize", "dinfty"], capsys)
    data = json.loads(out)
    assert status == 0 and data["schema"] == "1" and data["command"] == "abelianize"
    assert data["results"][0]["group"] == {"free_rank": 0, "invariant_factors": [2, 2]}
    status, out2, _ = run(["abelianize", "dinfty", "--format", "json"], capsys)
    assert out2 == out


def test_resource_error_exit_2(capsys):
    status, out, err = run(["enumerate", "dinfty", "--max-cosets", "500"], capsys)
    assert status == 2 and out == ""
    assert "coset enumeration" in err and "high-water" in err


def test_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("COHODIM_SIMPLEX_CAP", "50")
    status, _, err = run(["pontryagin", "--generations", "2"], capsys)
    assert status == 2 and "simplex cap 50" in err
    monkeypatch.setenv("COHODIM_MAX_COSETS", "many")
    status, _, err = run(["abelianize", "s3"], capsys)
    assert status == 1 and "COHODIM_MAX_COSETS" in err


def test_flag_overrides_env(monkeypatch):
    monkeypatch.setenv("COHODIM_MAX_COSETS", "10")
    assert parse_config(["enumerate", "s3", "--max-cosets", "99"]).max_cosets == 99
    assert parse_config(["enumerate", "s3"]).max_cosets == 10


@pytest.mark.parametrize("args", [
    ["bogus"], [], ["abelianize"], ["abelianize", "s3", "--max-cosets", "0"],
    ["homology", "rp2_6", "--format", "xml"],
])
def test_usage_errors_exit_1(args, capsys):
    status, out, err = run(args, capsys)
    assert status == 1 and out == "" and err


def test_domain_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("< x | y >")
    status, _, err = run(["abelianize", str(bad)], capsys)
    assert status == 1 and "parsing" in err and "unknown generator" in err
    status, _, err = run(["abelianize", str(tmp_path / "missing.grp")], capsys)
    assert status == 1 and "reading" in err
    status, _, err = run(["bockstein", "rp2_6", "--sequence", "z,z/4,z/2"], capsys)
    assert status == 1
    status, _, err = run(["homology", "rp2_6", "--relative"], capsys)
    assert status == 1 and "relative" in err


def test_runconfig_validation():
    with pytest.raises(UsageError):
        RunConfig("nope")
    with pytest.raises(UsageError):
        RunConfig("abelianize", ["s3"], simplex_cap=-1)


def test_dispatch_direct():
    status, out = dispatch(RunConfig("series", ["q8"]))
    assert status == 0 and "class 2" in out


@pytest.mark.parametrize("args, expected", [
    (["series", "s3"], "nilpotent        no"),
    (["classify13", "q8"], "  2    yes           no        yes  met"),
    (["lemma32", "d4"], "p = 2: ab is p-group yes, group is p-group yes, consistent yes"),
    (["amalgam", "amalgam_z4_z2_z4", "--f1", "x^2", "--f2", "y^2"], "abelianization Z/2 ⊕ Z/4"),
    (["homology", "corpus/mobius.json", "--relative"], "H_1(Z, rel) = Z/2"),
    (["homology", "rp2_6", "--coefficients", "z/3", "--cohomology"], "H^2(Z/3) = 0"),
    (["bockstein", "rp2_6", "--sequence", "modular:2"], "sequence exact"),
    (["pontryagin", "--prime", "3"], "  2        33       123         81  0"),
    (["enumerate", "s4", "--subgroup", "a"], "12 cosets"),
])
def test_subcommands(args, expected, capsys):
    status, out, _ = run(args, capsys)
    assert status == 0
    assert expected in out.splitlines()


def test_lemma32_every_level(capsys):
    _, out, _ = run(["--format", "json", "lemma32", "heis27"], capsys)
    data = json.loads(out)["results"][0]
    assert [lv["level"] for lv in data["levels"]] == [1, 2]
    assert all(lv["surjective"] for lv in data["levels"])


def test_enumerate_table(capsys):
    _, out, _ = run(["enumerate", "cyclic5", "--table"], capsys)
    assert out.splitlines()[1] == "coset,x,x^-1"


def test_pontryagin_export(tmp_path, capsys):
    path = tmp_path / "stage.json"
    status, out, _ = run(["pontryagin", "--generations", "1", "--export", str(path)], capsys)
    assert status == 0
    k, rel = SimplicialComplex.load(path)
    assert k.f_vector() == [6, 15, 9] and rel.f_vector() == [3, 3]


def test_deterministic_output(capsys):
    for args in (["reduce", "a4"], ["--format", "json", "lemma32", "q8"],
                 ["bockstein", "mobius", "--relative", "--sequence", "integral:3"]):
        first = run(args, capsys)
        assert run(args, capsys) == first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cohodim.cli", "abelianize", "corpus/gamma1.grp"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "Z/2 ⊕ Z/2 ⊕ Z/4"


def test_every_corpus_file_loads():
    corpus = resources.files("cohodim") / "corpus"
    names = sorted(f.name for f in corpus.iterdir())
    assert {"gamma1.grp", "gamma2.grp", "dinfty.grp", "s3.grp", "s4.grp", "a4.grp", "a5.grp",
            "d4.grp", "q8.grp", "heis27.grp"} <= set(names)
    for name in names:
        text = (corpus / name).read_text(encoding="utf-8")
        if name.endswith(".grp"):
            assert parse_presentations(text)
        elif name.endswith(".json"):
            SimplicialComplex.from_json(json.loads(text))
