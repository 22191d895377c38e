import csv
import json
import os
import subprocess
import sys

import pytest

from talktime.cli import apply_filter, demographics, main, parse_filter, quartile_columns, DataError
from talktime.ingest import dump_transcripts
from talktime.model import Conversation, Utterance
from talktime.synth import Blueprint, primary_led


def write_corpus(path, convs):
    path.write_text(dump_transcripts(convs), encoding="utf-8")
    return path


def turns(cid, a, b, pattern, turn=10.0):
    """Build a conversation from a string of speaker keys, one fixed-length turn each."""
    names = {"a": a, "b": b}
    utts = [Utterance(names[k], i * turn, (i + 1) * turn, f"{k} says hi") for i, k in enumerate(pattern)]
    return Conversation.build(cid, utts)


@pytest.fixture
def corpus(tmp_path):
    convs = [
        turns("c1", "P1", "P2", "aaaaaaaab" * 4),
        turns("c2", "P3", "P1", "ab" * 18),
        turns("c3", "P2", "P4", "aaab" * 9),
    ]
    return write_corpus(tmp_path / "corpus.csv", convs)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_analyze_three(tmp_path, corpus, capsys):
    out = tmp_path / "out"
    assert main(["analyze", str(corpus), "--out-dir", str(out)]) == 0
    assert sorted(p.name for p in (out / "reports").iterdir()) == ["c1.json", "c2.json", "c3.json"]
    rows = read_csv(out / "summary.csv")
    assert [r["id"] for r in rows] == ["c1", "c2", "c3"]
    assert all(r["status"] == "ok" for r in rows)
    assert rows[0]["stereotype"] == "DominatingThroughout" and rows[1]["stereotype"] == "BackAndForth"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["window"]["k_seconds"] == 150 and str(corpus) in manifest["inputs"]


def test_analyze_skips_short(tmp_path, capsys):
    src = write_corpus(tmp_path / "t.csv", [turns("long", "A", "B", "ab" * 20), turns("short", "A", "B", "ab" * 5)])
    out = tmp_path / "out"
    assert main(["analyze", str(src), "--out-dir", str(out)]) == 0
    rows = {r["id"]: r for r in read_csv(out / "summary.csv")}
    assert rows["short"]["status"] == "skipped" and "shorter" in rows["short"]["reason"]
    assert [p.name for p in (out / "reports").iterdir()] == ["long.json"]


def test_analyze_malformed_writes_nothing(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("conversation_id,speaker,start,end\nc1,A,0,ten\n")
    out = tmp_path / "out"
    assert main(["analyze", str(src), "--out-dir", str(out)]) == 2
    assert not out.exists()
    assert "bad.csv:2" in capsys.readouterr().err


def test_analyze_missing_input(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path / "o")]) == 2


def test_analyze_byte_identical(tmp_path, corpus, capsys):
    o1, o2 = tmp_path / "o1", tmp_path / "o2"
    main(["analyze", str(corpus), "--out-dir", str(o1)])
    main(["analyze", str(corpus), "--out-dir", str(o2)])
    for p in o1.rglob("*"):
        if p.is_file() and p.name != "manifest.json":
            assert p.read_bytes() == (o2 / p.relative_to(o1)).read_bytes()


def test_analyze_overrides_and_roles(tmp_path, corpus, capsys):
    roles = tmp_path / "roles.json"
    roles.write_text(json.dumps({"thresholds": {"P1": 0.8}}))
    out = tmp_path / "out"
    assert main(["analyze", str(corpus), "--k", "120", "--l", "30", "--roles", str(roles), "--out-dir", str(out)]) == 0
    rep = json.loads((out / "reports" / "c1.json").read_text())
    assert rep["config"]["k_seconds"] == 120
    assert rep["config"]["dominance_thresholds"] == {"P1": 0.8}
    assert main(["analyze", str(corpus), "--k", "10", "--l", "30", "--out-dir", str(out)]) == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


SURVEY = """conversation_id,speaker,enjoyment,gender,age,comment_positive,comment_negative
c1,P1,9,male,40,we talked about travel and food,nothing
c1,P2,6,female,25,good listener,i did not get to talk
c2,P3,8,female,30,fun back and forth,none
c2,P1,9,male,40,great back and forth chat,none
c3,P2,7,female,25,she had great stories,too long
c3,P4,5,male,33,interesting person,i talked too little
"""


@pytest.fixture
def analyzed(tmp_path, corpus, capsys):
    out = tmp_path / "out"
    main(["analyze", str(corpus), "--out-dir", str(out)])
    survey = tmp_path / "survey.csv"
    survey.write_text(SURVEY)
    return out, survey


def test_compare_identical_groups(tmp_path, analyzed, capsys):
    out, survey = analyzed
    cmp_dir = tmp_path / "cmp"
    args = ["compare", "--summary", str(out / "summary.csv"), "--survey", str(survey),
            "--group-a", "role=primary", "--group-b", "role=primary", "--out-dir", str(cmp_dir)]
    assert main(args) == 0
    rows = read_csv(cmp_dir / "fightin_words_a_vs_b.csv")
    assert rows and all(float(r["z"]) == 0 for r in rows)
    result = json.loads((cmp_dir / "compare.json").read_text())
    assert result["mann_whitney"]["p_value"] == 1.0


def test_compare_groups(tmp_path, analyzed, capsys):
    out, survey = analyzed
    cmp_dir = tmp_path / "cmp"
    args = ["compare", "--summary", str(out / "summary.csv"), "--survey", str(survey),
            "--group-a", "stereotype=BackAndForth", "--group-b", "stereotype!=BackAndForth",
            "--field", "comment_negative", "--ngram-max", "1", "--out-dir", str(cmp_dir)]
    assert main(args) == 0
    a_vs_b = {r["ngram"]: float(r["z"]) for r in read_csv(cmp_dir / "fightin_words_a_vs_b.csv")}
    b_vs_a = {r["ngram"]: float(r["z"]) for r in read_csv(cmp_dir / "fightin_words_b_vs_a.csv")}
    assert a_vs_b["none"] > 0 and all(a_vs_b[g] == -b_vs_a[g] for g in a_vs_b)
    result = json.loads((cmp_dir / "compare.json").read_text())
    assert result["group_a"]["n"] == 2 and result["group_a"]["mean_enjoyment"] == 8.5


def test_compare_empty_group(tmp_path, analyzed, capsys):
    out, survey = analyzed
    args = ["compare", "--summary", str(out / "summary.csv"), "--survey", str(survey),
            "--group-a", "imbalance>2", "--group-b", "role=primary", "--out-dir", str(tmp_path / "cmp")]
    assert main(args) == 2
    assert "imbalance>2" in capsys.readouterr().err


def test_viz_modes(tmp_path, analyzed, capsys, monkeypatch):
    out, _ = analyzed
    reports = out / "reports"
    assert main(["viz", "--report", str(reports / "c1.json"), "--mode", "strip", "--out", str(tmp_path / "s.svg")]) == 0
    assert (tmp_path / "s.svg").read_text().count("<rect") == 8
    assert main(["viz", "--reports-dir", str(reports), "--mode", "pie", "--out", str(tmp_path / "pies")]) == 0
    assert len(list((tmp_path / "pies").glob("*.pie.svg"))) == 3
    assert main(["viz", "--reports-dir", str(reports), "--mode", "grid", "--out", str(tmp_path / "g.svg")]) == 0
    grid = (tmp_path / "g.svg").read_text()
    assert grid.index('data-id="c1"') < grid.index('data-id="c3"') < grid.index('data-id="c2"')
    monkeypatch.setenv("NO_COLOR", "1")
    capsys.readouterr()
    assert main(["viz", "--reports-dir", str(reports), "--mode", "term"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "c1\t" + "B" * 8
    assert main(["viz", "--report", str(tmp_path / "missing.json"), "--mode", "strip", "--out", "x.svg"]) == 2


def test_consistency(tmp_path, analyzed, capsys):
    out, survey = analyzed
    args = ["consistency", "--summary", str(out / "summary.csv"), "--survey", str(survey)]
    assert main(args + ["--out", str(tmp_path / "k.json")]) == 0
    result = json.loads((tmp_path / "k.json").read_text())
    # P1 is primary in c1 and c2 (tie broken by name); P2 secondary in c1, primary in c3
    assert result["n_speakers"] == 2
    assert result["agreement"] == 0.5


def test_consistency_same_role_twice():
    from talktime.cli import consistency

    rows = [
        {"conversation_id": f"c{i}", "speaker": s, "role": r}
        for i in range(2)
        for s, r in (("X", "primary"), ("Y", "secondary"), ("Z", "primary"), ("W", "secondary"))
    ]
    res = consistency(rows, seed=0)
    assert res["agreement"] == 1.0 and res["kappa"] == 1.0
    assert consistency(rows[:4], seed=0)["kappa"] == "not computable"


def _pair_rows(cid, g_primary, g_secondary, a_primary=30, a_secondary=30, stereo="BackAndForth"):
    base = {"conversation_id": cid, "stereotype": stereo}
    return [
        {**base, "speaker": f"{cid}p", "role": "primary", "gender": g_primary, "age": a_primary},
        {**base, "speaker": f"{cid}s", "role": "secondary", "gender": g_secondary, "age": a_secondary},
    ]


def test_demographics_sign_test():
    rows = []
    for i in range(100):
        rows += _pair_rows(f"m{i}", *(("male", "female") if i < 56 else ("female", "male")))
    rows += _pair_rows("same", "male", "male")
    res = demographics(rows, None, 3.0)
    g = res["gender_test"]
    assert (g["n"], g["primary_male"]) == (100, 56)
    assert g["sign_test"]["p_value"] == pytest.approx(0.2712530240738347, rel=1e-12)
    assert res["gender_table"]["overall"]["shares"]["both male"] == pytest.approx(1 / 101)


def test_demographics_age_gap_filter():
    rows = _pair_rows("a", "male", "female", 40, 38) + _pair_rows("b", "male", "female", 50, 30)
    res = demographics(rows, 35, 3.0)
    assert res["age_test"]["n"] == 1 and res["age_test"]["primary_older"] == 1
    assert res["age_table"]["overall"]["shares"]["both older"] == 0.5
    assert demographics([], None, 3.0)["age_test"]["sign_test"] == "not computable"


def test_demographics_command(tmp_path, analyzed, capsys):
    out, survey = analyzed
    capsys.readouterr()
    assert main(["demographics", "--summary", str(out / "summary.csv"), "--survey", str(survey)]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["n_conversations"] == 3 and res["age_split"] == 31.5


def test_synth_round_trip(tmp_path, capsys):
    bp = tmp_path / "bp.json"
    bp.write_text(json.dumps(Blueprint((primary_led(1500, 0.85),), seed=3, id="planted").to_dict()))
    csv_out = tmp_path / "planted.csv"
    assert main(["synth", "--blueprint", str(bp), "--out", str(csv_out)]) == 0
    assert main(["analyze", str(csv_out), "--out-dir", str(tmp_path / "out")]) == 0
    [row] = read_csv(tmp_path / "out" / "summary.csv")
    assert row["stereotype"] == "DominatingThroughout"


def test_validate_intervals(tmp_path, capsys):
    ref = tmp_path / "ref.csv"
    ref.write_text("A,0,5\nB,5,9\n")
    disjoint = tmp_path / "dis.csv"
    disjoint.write_text("A,10,15\nB,20,29\n")
    assert main(["validate-intervals", "--reference", str(ref), "--hypothesis", str(ref)]) == 0
    assert json.loads(capsys.readouterr().out)["median"]["f1"] == 1.0
    assert main(["validate-intervals", "--reference", str(ref), "--hypothesis", str(disjoint), "--out", str(tmp_path / "v.json")]) == 0
    assert json.loads((tmp_path / "v.json").read_text())["median"]["f1"] == 0.0


def test_filter_language():
    rows = [{"a": 0.2, "s": "x"}, {"a": 0.7, "s": "y"}, {"a": None, "s": "y"}]
    assert apply_filter(rows, "a < 0.5") == rows[:1]
    assert apply_filter(rows, "a>=0.5, s=y") == rows[1:2]
    assert apply_filter(rows, "") == rows
    assert parse_filter("blue_frac<0.5,gray_frac<0.4") == [("blue_frac", "<", "0.5"), ("gray_frac", "<", "0.4")]
    with pytest.raises(DataError):
        apply_filter(rows, "nope=1")
    with pytest.raises(DataError):
        parse_filter("a ~ 1")


def test_quartile_columns_boundaries():
    vals = [0.5, 0.6, 0.7, 0.8, 0.9]
    got = quartile_columns(vals, "LowIsBalanced")
    assert [q for q, _ in got] == ["balanced", "balanced", "middle", "imbalanced", "imbalanced"]
    assert [q for q, _ in quartile_columns(vals, "HighIsBalanced")][0] == "imbalanced"


def test_module_entry_point(tmp_path):
    env = {**os.environ, "NO_COLOR": "1"}
    res = subprocess.run([sys.executable, "-m", "talktime", "--version"], capture_output=True, text=True, env=env)
    assert res.returncode == 0 and "talktime" in res.stdout
