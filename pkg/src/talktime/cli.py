"""Command-line entry point: ``talktime <command> ...``.

Exit codes: 0 success (possibly with skipped conversations), 1 usage
error, 2 data error. Every output file is written atomically, and apart
from ``manifest.json`` reruns on identical inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import hashlib
import io
import json
import logging
import os
import random
import re
import statistics
import sys
import tempfile
from collections import defaultdict
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence

from . import __version__
from .config import AnalysisConfig, ConfigError, RoleMap, load_config, load_roles, with_overrides
from .dynamics import AnalysisError, DynamicsReport, analyze
from .ingest import ParseError, parse_intervals, parse_survey, parse_transcripts, dump_transcripts
from .model import DEFAULT_MAX_ENJOYMENT, Stereotype
from .stats import (
    cohens_kappa,
    fightin_words,
    group_summary,
    interval_prf,
    mann_whitney_u,
    quartile_cuts,
    sign_test,
)
from .synth import load_blueprint, synthesize
from .viz import render_corpus_grid, render_pie, render_strip, render_terminal

log = logging.getLogger("talktime")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

SUMMARY_COLUMNS = (
    "id", "status", "reason", "duration", "imbalance", "primary", "secondary",
    "blue_frac", "red_frac", "gray_frac", "stereotype", "flips",
    "mixed_first", "mixed_last", "mixed_transition", "imbalance_quartile", "imbalance_tail",
)
_NUMERIC = {"duration", "imbalance", "blue_frac", "red_frac", "gray_frac", "flips", "enjoyment", "age"}


class DataError(Exception):
    """Bad input data; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- file helpers

def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def safe_name(conv_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", conv_id) or "_"


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _manifest(config: dict, inputs: Sequence[Path], seed: int) -> dict:
    return {
        "tool": "talktime",
        "version": __version__,
        "config": config,
        "inputs": {str(p): _digest(p) for p in inputs},
        "seed": seed,
        "timestamp": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
    }


# ---------------------------------------------------------------- summary / filters

def quartile_columns(values: Sequence[float], direction: str) -> list[tuple[str, str]]:
    """``(imbalance_quartile, imbalance_tail)`` per value.

    Boundary values belong to the tail (<= lower quartile, >= upper quartile).
    """
    if not values:
        return []
    q1, q3 = quartile_cuts(sorted(values))
    out = []
    for v in values:
        tail = "bottom" if v <= q1 else "top" if v >= q3 else "middle"
        if tail == "middle":
            quart = "middle"
        elif direction == "LowIsBalanced":
            quart = "balanced" if tail == "bottom" else "imbalanced"
        else:
            quart = "balanced" if tail == "top" else "imbalanced"
        out.append((quart, tail))
    return out


def summary_rows(
    results: Sequence[tuple[str, Optional[DynamicsReport], str]], direction: str
) -> list[dict]:
    rows = []
    for cid, rep, reason in results:
        if rep is None:
            rows.append({"id": cid, "status": "skipped", "reason": reason})
            continue
        rows.append({
            "id": cid,
            "status": "ok",
            "reason": "",
            "duration": rep.duration,
            "imbalance": rep.imbalance.value,
            "primary": rep.regimes.primary_party,
            "secondary": rep.regimes.secondary_party,
            "blue_frac": rep.composition.blue_frac,
            "red_frac": rep.composition.red_frac,
            "gray_frac": rep.composition.gray_frac,
            "stereotype": rep.stereotype.value,
            "flips": rep.flips,
            "mixed_first": rep.mixed.first.value if rep.mixed else None,
            "mixed_last": rep.mixed.last.value if rep.mixed else None,
            "mixed_transition": rep.mixed.transition if rep.mixed else None,
        })
    ok = [r for r in rows if r["status"] == "ok"]
    for r, (quart, tail) in zip(ok, quartile_columns([r["imbalance"] for r in ok], direction)):
        r["imbalance_quartile"] = quart
        r["imbalance_tail"] = tail
    return rows


def read_summary(path: str | Path) -> list[dict]:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "id" not in reader.fieldnames:
            raise DataError(f"{path}: not a summary CSV (missing 'id' column)")
        rows = []
        for row in reader:
            rec: dict[str, Any] = {}
            for k, v in row.items():
                if k in _NUMERIC and v not in ("", None):
                    try:
                        rec[k] = int(v) if k == "flips" else float(v)
                    except ValueError:
                        raise DataError(f"{path}:{reader.line_num}: {k}: not a number: {v!r}") from None
                else:
                    rec[k] = v if v != "" else None
            rows.append(rec)
    return rows


_FILTER_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(<=|>=|!=|=|<|>)\s*(.*?)\s*$")
_OPS: dict[str, Callable[[Any, Any], bool]] = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def parse_filter(expr: str) -> list[tuple[str, str, str]]:
    """Parse ``col op value[, col op value ...]`` into clauses (all must hold)."""
    clauses = []
    for part in expr.split(","):
        if not part.strip():
            continue
        m = _FILTER_RE.match(part)
        if not m:
            raise DataError(f"bad filter clause {part.strip()!r} in {expr!r}")
        clauses.append((m.group(1), m.group(2), m.group(3)))
    return clauses


def _coerce(v: Any) -> Any:
    if isinstance(v, (int, float)):
        return float(v)
    try:
        return float(v)
    except (TypeError, ValueError):
        return v


def apply_filter(rows: Sequence[dict], expr: str) -> list[dict]:
    clauses = parse_filter(expr)
    if rows:
        known = set().union(*(r.keys() for r in rows))
        for col, _, _ in clauses:
            if col not in known:
                raise DataError(f"filter {expr!r}: unknown column {col!r}")
    out = []
    for r in rows:
        keep = True
        for col, op, raw in clauses:
            have = r.get(col)
            if have is None:
                keep = False
                break
            a, b = _coerce(have), _coerce(raw)
            if isinstance(a, float) != isinstance(b, float):
                a, b = str(have), raw
            try:
                if not _OPS[op](a, b):
                    keep = False
                    break
            except TypeError:
                keep = False
                break
        if keep:
            out.append(r)
    return out


def join_survey(summary: Sequence[dict], survey_path: str | Path, max_enjoyment: int) -> list[dict]:
    """One row per surveyed speaker of each analyzed conversation, with its role."""
    ok = {r["id"]: r for r in summary if r.get("status") == "ok"}
    records = parse_survey(survey_path, max_enjoyment, conversation_ids=ok.keys())
    rows = []
    for rec in records:
        conv = ok.get(rec.conversation_id)
        if conv is None:
            continue
        role = (
            "primary" if rec.speaker == conv["primary"]
            else "secondary" if rec.speaker == conv["secondary"] else "other"
        )
        rows.append({
            **conv,
            "conversation_id": rec.conversation_id,
            "speaker": rec.speaker,
            "enjoyment": rec.enjoyment,
            "gender": rec.gender,
            "age": rec.age,
            "comment_positive": rec.comment_positive,
            "comment_negative": rec.comment_negative,
            "outcome": rec.outcome,
            "role": role,
        })
    return rows


# ---------------------------------------------------------------- commands

def _load_analysis_config(args) -> AnalysisConfig:
    cfg = load_config(args.config) if args.config else AnalysisConfig()
    return with_overrides(cfg, k=args.k, l=args.l, m=args.m)


def cmd_analyze(args) -> int:
    cfg = _load_analysis_config(args)
    roles: Optional[RoleMap] = load_roles(args.roles) if args.roles else None
    corpus = parse_transcripts(args.transcripts, args.format)
    results: list[tuple[str, Optional[DynamicsReport], str]] = []
    for conv in corpus:
        try:
            rep = analyze(conv, cfg, roles)
        except AnalysisError as exc:
            log.warning("skipping %s", exc)
            results.append((conv.id, None, str(exc)))
            continue
        results.append((conv.id, rep, ""))
    rows = summary_rows(results, cfg.quartile_direction.value)

    out = Path(args.out_dir)
    for cid, rep, _ in results:
        if rep is not None:
            write_atomic(out / "reports" / f"{safe_name(cid)}.json", _json(rep.to_dict()))
    write_atomic(
        out / "summary.csv",
        _csv(SUMMARY_COLUMNS, ([_fmt(r.get(c)) for c in SUMMARY_COLUMNS] for r in rows)),
    )
    inputs = [Path(args.transcripts)] + [Path(p) for p in (args.config, args.roles) if p]
    write_atomic(out / "manifest.json", _json(_manifest(cfg.to_dict(), inputs, cfg.rng_seed)))
    n_ok = sum(1 for _, rep, _ in results if rep is not None)
    print(f"analyzed {n_ok} conversation(s), skipped {len(results) - n_ok}; wrote {out}")
    return EXIT_OK


def _fw_csv(entries) -> str:
    return _csv(("ngram", "count_a", "count_b", "z"), ((e.phrase, e.count_a, e.count_b, repr(e.z)) for e in entries))


def cmd_compare(args) -> int:
    cfg = load_config(args.config) if args.config else AnalysisConfig()
    ngram_max = args.ngram_max or cfg.fightin_words.ngram_max
    alpha = args.alpha or cfg.fightin_words.alpha
    rows = join_survey(read_summary(args.summary), args.survey, args.max_enjoyment)
    groups = {}
    for name, expr in (("a", args.group_a), ("b", args.group_b)):
        sel = apply_filter(rows, expr)
        if not sel:
            raise DataError(f"group {name} is empty after filter {expr!r}")
        groups[name] = sel
    texts = {k: [r[args.field] for r in v if r.get(args.field)] for k, v in groups.items()}
    for k, t in texts.items():
        if not t:
            raise DataError(f"group {k} has no {args.field} comments")
    a_vs_b = fightin_words(texts["a"], texts["b"], ngram_max, alpha)
    b_vs_a = fightin_words(texts["b"], texts["a"], ngram_max, alpha)
    ea = [r["enjoyment"] for r in groups["a"]]
    eb = [r["enjoyment"] for r in groups["b"]]
    result = {
        "field": args.field,
        "group_a": {"filter": args.group_a, **group_summary(ea, args.max_enjoyment).to_dict()},
        "group_b": {"filter": args.group_b, **group_summary(eb, args.max_enjoyment).to_dict()},
        "mann_whitney": mann_whitney_u(ea, eb).to_dict(),
        "fightin_words": {"ngram_max": ngram_max, "alpha": alpha},
    }
    out = Path(args.out_dir)
    write_atomic(out / "fightin_words_a_vs_b.csv", _fw_csv(a_vs_b))
    write_atomic(out / "fightin_words_b_vs_a.csv", _fw_csv(b_vs_a))
    write_atomic(out / "compare.json", _json(result))
    print(_json(result), end="")
    return EXIT_OK


def _load_reports(args) -> list[DynamicsReport]:
    paths: list[Path]
    if args.report:
        paths = [Path(args.report)]
    else:
        d = Path(args.reports_dir)
        if not d.is_dir():
            raise DataError(f"reports directory {d} does not exist")
        paths = sorted(d.glob("*.json"))
        if not paths:
            raise DataError(f"no report JSON files in {d}")
    reports = []
    for p in paths:
        if not p.is_file():
            raise DataError(f"report {p} does not exist")
        try:
            reports.append(DynamicsReport.from_dict(json.loads(p.read_text(encoding="utf-8"))))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise DataError(f"{p}: not a valid report ({exc})") from None
    return reports


def cmd_viz(args) -> int:
    reports = _load_reports(args)
    if args.mode == "term":
        lines = "".join(f"{r.id}\t{render_terminal(r)}\n" for r in reports)
        if args.out:
            write_atomic(Path(args.out), lines)
        else:
            sys.stdout.write(lines)
        return EXIT_OK
    if not args.out:
        raise DataError(f"--out is required for mode {args.mode}")
    out = Path(args.out)
    if args.mode == "grid":
        write_atomic(out, render_corpus_grid(reports, args.sort))
        return EXIT_OK
    render = (lambda r: render_strip(r)) if args.mode == "strip" else (lambda r: render_pie(r.composition))
    if args.report:
        write_atomic(out, render(reports[0]))
    else:
        for r in reports:
            write_atomic(out / f"{safe_name(r.id)}.{args.mode}.svg", render(r))
    return EXIT_OK


NOT_COMPUTABLE = "not computable"


def consistency(rows: Sequence[dict], seed: int) -> dict:
    """Role agreement for speakers seen in at least two qualifying conversations."""
    by_speaker: dict[str, dict[str, str]] = defaultdict(dict)
    for r in rows:
        if r["role"] in ("primary", "secondary"):
            by_speaker[r["speaker"]][r["conversation_id"]] = r["role"]
    rng = random.Random(seed)
    first, second = [], []
    for spk in sorted(by_speaker):
        convs = sorted(by_speaker[spk])
        if len(convs) < 2:
            continue
        c1, c2 = rng.sample(convs, 2)
        first.append(by_speaker[spk][c1])
        second.append(by_speaker[spk][c2])
    out: dict[str, Any] = {"n_speakers": len(first), "seed": seed}
    if not first:
        out.update(agreement=NOT_COMPUTABLE, kappa=NOT_COMPUTABLE)
        return out
    out["agreement"] = sum(a == b for a, b in zip(first, second)) / len(first)
    try:
        out["kappa"] = cohens_kappa(first, second)
    except ValueError:
        out["kappa"] = NOT_COMPUTABLE
    return out


def cmd_consistency(args) -> int:
    rows = join_survey(read_summary(args.summary), args.survey, args.max_enjoyment)
    if args.filter:
        rows = apply_filter(rows, args.filter)
    result = consistency(rows, args.seed)
    text = _json(result)
    if args.out:
        write_atomic(Path(args.out), text)
    print(text, end="")
    return EXIT_OK


GENDER_GROUPS = ("male and female", "both male", "both female", "others")
AGE_GROUPS = ("younger and older", "both younger", "both older")


def _gender_group(g1: Optional[str], g2: Optional[str]) -> str:
    pair = sorted(((g1 or "").lower(), (g2 or "").lower()))
    if pair == ["female", "male"]:
        return "male and female"
    if pair == ["male", "male"]:
        return "both male"
    if pair == ["female", "female"]:
        return "both female"
    return "others"


def _share_table(groups: Sequence[str], labelled: Sequence[tuple[str, str]]) -> dict:
    """Per stereotype (plus ``overall``): count and share of each group."""
    buckets: dict[str, list[str]] = defaultdict(list)
    for stereo, grp in labelled:
        buckets["overall"].append(grp)
        buckets[stereo].append(grp)
    order = ["overall"] + [s.value for s in Stereotype if s.value in buckets]
    table = {}
    for key in order:
        vals = buckets[key]
        table[key] = {
            "n": len(vals),
            "shares": {g: sum(v == g for v in vals) / len(vals) for g in groups},
        }
    return table


def demographics(rows: Sequence[dict], age_split: Optional[float], age_gap: float) -> dict:
    per_conv: dict[str, dict[str, dict]] = defaultdict(dict)
    for r in rows:
        if r["role"] in ("primary", "secondary"):
            per_conv[r["conversation_id"]][r["role"]] = r
    pairs = [(cid, d["primary"], d["secondary"]) for cid, d in sorted(per_conv.items()) if len(d) == 2]
    out: dict[str, Any] = {"n_conversations": len(pairs)}

    mixed = [(p, s) for _, p, s in pairs if _gender_group(p["gender"], s["gender"]) == "male and female"]
    male_primary = sum(1 for p, _ in mixed if (p["gender"] or "").lower() == "male")
    out["gender_test"] = (
        {"n": len(mixed), "primary_male": male_primary, "share": male_primary / len(mixed),
         "sign_test": sign_test(male_primary, len(mixed), "two").to_dict()}
        if mixed else {"n": 0, "sign_test": NOT_COMPUTABLE}
    )

    aged = [(p, s) for _, p, s in pairs
            if p["age"] is not None and s["age"] is not None and abs(p["age"] - s["age"]) >= age_gap]
    older_primary = sum(1 for p, s in aged if p["age"] > s["age"])
    out["age_test"] = (
        {"n": len(aged), "min_gap": age_gap, "primary_older": older_primary,
         "share": older_primary / len(aged),
         "sign_test": sign_test(older_primary, len(aged), "two").to_dict()}
        if aged else {"n": 0, "min_gap": age_gap, "sign_test": NOT_COMPUTABLE}
    )

    out["gender_table"] = _share_table(
        GENDER_GROUPS, [(p["stereotype"], _gender_group(p["gender"], s["gender"])) for _, p, s in pairs]
    ) if pairs else NOT_COMPUTABLE

    if age_split is None:
        ages = {r["speaker"]: r["age"] for r in rows if r["age"] is not None}
        age_split = statistics.median(ages.values()) if ages else None
    with_age = [(p, s) for _, p, s in pairs if p["age"] is not None and s["age"] is not None]
    if age_split is None or not with_age:
        out["age_table"] = NOT_COMPUTABLE
    else:
        def group(p, s):
            young = (p["age"] < age_split) + (s["age"] < age_split)
            return AGE_GROUPS[{1: 0, 2: 1, 0: 2}[young]]
        out["age_split"] = age_split
        out["age_table"] = _share_table(AGE_GROUPS, [(p["stereotype"], group(p, s)) for p, s in with_age])
    return out


def cmd_demographics(args) -> int:
    rows = join_survey(read_summary(args.summary), args.survey, args.max_enjoyment)
    result = demographics(rows, args.age_split, args.age_gap)
    text = _json(result)
    if args.out:
        write_atomic(Path(args.out), text)
    print(text, end="")
    return EXIT_OK


def cmd_synth(args) -> int:
    bp = load_blueprint(args.blueprint)
    conv = synthesize(bp)
    write_atomic(Path(args.out), dump_transcripts([conv], "csv"))
    return EXIT_OK


def validate_intervals(ref: dict, hyp: dict) -> dict:
    speakers = sorted(set(ref) | set(hyp))
    per = {s: interval_prf(ref.get(s, []), hyp.get(s, [])).to_dict() for s in speakers}
    if not per:
        return {"speakers": {}, "median": NOT_COMPUTABLE}
    median = {k: statistics.median(v[k] for v in per.values()) for k in ("precision", "recall", "f1")}
    return {"speakers": per, "median": median}


def cmd_validate_intervals(args) -> int:
    result = validate_intervals(parse_intervals(args.reference), parse_intervals(args.hypothesis))
    text = _json(result)
    if args.out:
        write_atomic(Path(args.out), text)
    print(text, end="")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="talktime", description="Talk-time sharing dynamics for timestamped conversations.")
    p.add_argument("--version", action="version", version=f"talktime {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log informational messages")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="per-conversation dynamics reports and corpus summary")
    a.add_argument("transcripts")
    a.add_argument("--format", choices=("csv", "jsonl"))
    a.add_argument("--config")
    a.add_argument("--roles", help="role map JSON (party grouping, per-party thresholds)")
    a.add_argument("--k", type=float, help="window length in seconds")
    a.add_argument("--l", type=float, help="window stride in seconds")
    a.add_argument("--m", type=float, help="symmetric dominance threshold")
    a.add_argument("--out-dir", required=True)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", help="Fightin' Words and enjoyment comparison of two groups")
    c.add_argument("--summary", required=True)
    c.add_argument("--survey", required=True)
    c.add_argument("--group-a", required=True, metavar="FILTER")
    c.add_argument("--group-b", required=True, metavar="FILTER")
    c.add_argument("--field", choices=("comment_positive", "comment_negative"), default="comment_positive")
    c.add_argument("--config")
    c.add_argument("--ngram-max", type=int)
    c.add_argument("--alpha", type=float)
    c.add_argument("--max-enjoyment", type=int, default=DEFAULT_MAX_ENJOYMENT)
    c.add_argument("--out-dir", required=True)
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("viz", help="render reports as SVG or terminal strips")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--report")
    src.add_argument("--reports-dir")
    v.add_argument("--mode", choices=("strip", "pie", "grid", "term"), required=True)
    v.add_argument("--sort", choices=("imbalance_desc", "id"), default="imbalance_desc")
    v.add_argument("--out")
    v.set_defaults(func=cmd_viz)

    k = sub.add_parser("consistency", help="role consistency of repeat speakers")
    k.add_argument("--summary", required=True)
    k.add_argument("--survey", required=True)
    k.add_argument("--filter", default="", metavar="FILTER",
                   help="restrict conversations, e.g. imbalance_quartile=imbalanced")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--max-enjoyment", type=int, default=DEFAULT_MAX_ENJOYMENT)
    k.add_argument("--out")
    k.set_defaults(func=cmd_consistency)

    d = sub.add_parser("demographics", help="gender/age sign tests and stereotype share tables")
    d.add_argument("--summary", required=True)
    d.add_argument("--survey", required=True)
    d.add_argument("--age-split", type=float, help="younger/older cut (default: median participant age)")
    d.add_argument("--age-gap", type=float, default=3.0)
    d.add_argument("--max-enjoyment", type=int, default=DEFAULT_MAX_ENJOYMENT)
    d.add_argument("--out")
    d.set_defaults(func=cmd_demographics)

    s = sub.add_parser("synth", help="generate a synthetic transcript from a blueprint")
    s.add_argument("--blueprint", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)

    i = sub.add_parser("validate-intervals", help="precision/recall/F1 between two interval files")
    i.add_argument("--reference", required=True)
    i.add_argument("--hypothesis", required=True)
    i.add_argument("--out")
    i.set_defaults(func=cmd_validate_intervals)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (DataError, ParseError, ConfigError, AnalysisError, ValueError, OSError) as exc:
        print(f"talktime: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
