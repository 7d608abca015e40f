import json
import shutil
from importlib import resources

import jsonschema
import pytest

from onecomm.cli import INPUT_ERROR, OK, PipelineConfig, main
from onecomm.groupfile import GroupFileError, corpus_dir, corpus_path, load_group, marker_path, parse_group

SCHEMA = json.loads(resources.files("onecomm.data").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", corpus_path("a5"))
    assert code == OK and "0 noncommutators; perfect: true" in out
    code, out, _ = run(capsys, "analyze", corpus_path("z2"))
    assert "1 noncommutator; perfect: false" in out
    code, out, _ = run(capsys, "analyze", corpus_path("s3"))
    assert "3 noncommutators" in out


@pytest.mark.parametrize("method", ["brute", "class-reduced", "frobenius", "auto"])
def test_analyze_methods_agree(capsys, method):
    code, doc = run_json(capsys, "analyze", corpus_path("sl2_3"), "--method", method)
    assert code == OK
    assert doc["commutators"]["commutator_count"] == 8


def test_analyze_json_schema(capsys):
    code, doc = run_json(capsys, "analyze", corpus_path("s3"))
    assert doc["perfect_threshold"] == "vacuous"
    assert [n["images"] for n in doc["commutators"]["noncommutators"]] == [[2, 1, 3], [3, 2, 1], [1, 3, 2]]


def test_analyze_with_ingested_table(capsys, tmp_path):
    table = tmp_path / "a4.json"
    assert run(capsys, "chartable", corpus_path("a4"), "-o", table)[0] == OK
    code, doc = run_json(capsys, "analyze", corpus_path("a4"), "--method", "frobenius", "--table", table)
    assert doc["commutators"]["method"] == "frobenius"
    assert doc["commutators"]["commutator_count"] == 4


def test_analyze_bad_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"degree": 3,\n "generators": [[1, 1, 2]]}')
    code, _, err = run(capsys, "analyze", bad)
    assert code == INPUT_ERROR and "generators[0]" in err
    bad.write_text('{"degree": 3,\n "generators": [[1, 2, 3]')
    code, _, err = run(capsys, "analyze", bad)
    assert code == INPUT_ERROR and "line 2" in err
    code, _, _ = run(capsys, "analyze", tmp_path / "missing.json")
    assert code == INPUT_ERROR


def test_parse_group_errors():
    with pytest.raises(GroupFileError, match="degree"):
        parse_group('{"generators": [[1]]}')
    with pytest.raises(GroupFileError, match="builtin"):
        parse_group('{"builtin": "monster"}')


def test_chartable_emission(capsys, tmp_path):
    code, out, _ = run(capsys, "chartable", corpus_path("z2"))
    doc = json.loads(out)
    assert doc["characters"] == [[[1.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [-1.0, 0.0]]]
    out_file = tmp_path / "s3.json"
    code, out, _ = run(capsys, "chartable", corpus_path("s3"), "-o", out_file)
    assert "degrees [1, 1, 2]" in out
    assert "class 1 size 3: sum +0.000000+0.000000i -> noncommutator" in out
    from onecomm.characters import load_character_table
    assert load_character_table(out_file).to_json() == out_file.read_text()


def test_chartable_cap(capsys, monkeypatch):
    monkeypatch.setenv("ONECOMM_CAP", "100")
    code, _, err = run(capsys, "chartable", corpus_path("a6"))
    assert code == INPUT_ERROR and "cap" in err


def test_chartable_seed_deterministic(capsys):
    a = run(capsys, "chartable", corpus_path("a5"), "--seed", "3")[1]
    b = run(capsys, "chartable", corpus_path("a5"), "--seed", "3")[1]
    assert a == b


def test_search_corpus_no_hits(capsys):
    code, doc = run_json(capsys, "search", corpus_dir())
    assert code == OK and doc["hits"] == []
    assert len(doc["groups"]) == 11


def test_search_empty_dir(capsys, tmp_path):
    code, doc = run_json(capsys, "search", tmp_path)
    assert code == OK and doc["hits"] == [] and doc["groups"] == []


def test_search_skips_unreadable(capsys, tmp_path):
    (tmp_path / "junk.json").write_text("{not json")
    shutil.copy(corpus_path("a5"), tmp_path)
    code, doc = run_json(capsys, "search", tmp_path)
    assert code == OK and len(doc["skipped"]) == 1 and len(doc["groups"]) == 1


def test_search_uses_table_dir(capsys, tmp_path):
    groups, tables = tmp_path / "g", tmp_path / "t"
    groups.mkdir()
    tables.mkdir()
    shutil.copy(corpus_path("sl2_5"), groups)
    run(capsys, "chartable", corpus_path("sl2_5"), "-o", tables / "sl2_5.json")
    code, doc = run_json(capsys, "search", groups, "--table-dir", tables)
    (row,) = doc["groups"]
    assert row["count_method"] == "frobenius" and row["commutator_count"] == 120 and not row["hit"]


def test_search_with_paper_marker(capsys, tmp_path):
    for name in ("a5", "z2", "sl2_5"):
        shutil.copy(corpus_path(name), tmp_path)
    shutil.copy(marker_path(), tmp_path / "zz_paper_group.json")
    code, doc = run_json(capsys, "search", tmp_path, "--figures", tmp_path / "figs")
    assert code == OK
    hits = [g for g in doc["groups"] if g["hit"]]
    assert len(hits) == 1 and hits[0]["order"] == 368_640
    assert hits[0]["commutator_count"] == 368_639
    assert (tmp_path / "figs" / "search_timings.png").exists()


def test_search_first_terminates(capsys, tmp_path):
    shutil.copy(marker_path(), tmp_path / "a_paper.json")
    shutil.copy(marker_path(), tmp_path / "b_paper.json")
    code, doc = run_json(capsys, "search", tmp_path, "--first")
    assert len(doc["groups"]) == 1 and len(doc["hits"]) == 1


def test_figures(capsys, tmp_path):
    code, doc = run_json(capsys, "analyze", corpus_path("a5"), "--method", "frobenius",
                         "--figures", tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == ["A5_classes.png", "A5_frobenius.png"]
    assert all(p.stat().st_size > 1000 for p in tmp_path.iterdir())


def test_marker_loads_paper_group():
    assert load_group(marker_path()).order == 368_640


def test_pipeline_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(tolerance=2.0)
    with pytest.raises(ValueError):
        PipelineConfig(brute_cap=0)


def test_bad_tolerance_exit(capsys):
    code, _, _ = run(capsys, "analyze", corpus_path("a5"), "--tolerance", "5")
    assert code == INPUT_ERROR


def test_dump_actions(capsys, tmp_path):
    out = tmp_path / "actions.txt"
    assert run(capsys, "dump-actions", "-o", out)[0] == OK
    assert out.read_text().count("\n# ") == 359


def test_verify_dry_run(capsys):
    code, out, _ = run(capsys, "verify-paper-group", "--dry-run")
    assert code == OK and "A6 order 360" in out


def test_verify_threads_and_schema(capsys, tmp_path):
    code, doc = run_json(capsys, "verify-paper-group", "--threads", "4", "--figures", tmp_path)
    assert code == OK and all(c["passed"] for c in doc["checks"])
    assert doc["commutators"]["method"] == "class-reduced"
    assert doc["blocks"] == {"M_sigma": True, "M_eta": True}
    assert len(list(tmp_path.glob("*.png"))) == 1


def test_verify_missing_fixture(capsys, tmp_path):
    code, _, _ = run(capsys, "verify-paper-group", "--m-sigma", tmp_path / "nope.txt")
    assert code == INPUT_ERROR


def test_reports_deterministic_apart_from_timings(capsys):
    docs = [run_json(capsys, "analyze", corpus_path("sl2_5"), "--method", "frobenius")[1] for _ in range(2)]
    for d in docs:
        d.pop("timings")
    assert docs[0] == docs[1]


@pytest.mark.slow
def test_verify_with_character_table(capsys):
    code, doc = run_json(capsys, "verify-paper-group", "--frobenius")
    assert code == OK
    check = next(c for c in doc["checks"] if c["name"] == "frobenius_agrees")
    assert check["passed"] and check["detail"].startswith("368639")
