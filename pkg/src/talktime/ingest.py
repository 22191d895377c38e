"""Readers and writers for transcripts, surveys, interval files and configs.

Transcript CSV columns are ``conversation_id,speaker,start,end[,text]``;
the JSONL variant carries one utterance object per line with the same keys.
Every rejected row is reported with its line number.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .config import (
    AnalysisConfig,
    ConfigError,
    RoleMap,
    config_from_dict,
    load_config,
    load_roles,
    roles_from_dict,
)
from .model import (
    DEFAULT_MAX_ENJOYMENT,
    Conversation,
    SurveyRecord,
    Utterance,
    validate_conversation,
)

__all__ = [
    "AnalysisConfig",
    "ConfigError",
    "ParseError",
    "RoleMap",
    "ValidationError",
    "config_from_dict",
    "dump_transcripts",
    "load_config",
    "load_roles",
    "parse_intervals",
    "parse_survey",
    "parse_transcripts",
    "roles_from_dict",
    "write_transcripts",
]

log = logging.getLogger(__name__)

TRANSCRIPT_COLUMNS = ("conversation_id", "speaker", "start", "end", "text")
SURVEY_COLUMNS = (
    "conversation_id",
    "speaker",
    "enjoyment",
    "gender",
    "age",
    "comment_positive",
    "comment_negative",
    "outcome",
)
_REQUIRED = ("conversation_id", "speaker", "start", "end")


class ParseError(ValueError):
    def __init__(self, path, line: Optional[int], message: str):
        self.path = str(path)
        self.line = line
        loc = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{loc}: {message}")


class ValidationError(ParseError):
    """A record parsed but violates a domain invariant."""


def _seconds(raw, path, line, name) -> float:
    if isinstance(raw, bool):
        raise ParseError(path, line, f"{name}: expected seconds, got {raw!r}")
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ParseError(path, line, f"{name}: expected seconds, got {raw!r}") from None
    if not math.isfinite(value):
        raise ParseError(path, line, f"{name}: non-finite value {raw!r}")
    return value


def _utterance(rec: Mapping, path, line) -> tuple[str, Utterance]:
    cid = rec.get("conversation_id")
    speaker = rec.get("speaker")
    if cid in (None, "") or speaker in (None, ""):
        raise ParseError(path, line, "conversation_id and speaker must be non-empty")
    start = _seconds(rec.get("start"), path, line, "start")
    end = _seconds(rec.get("end"), path, line, "end")
    if start < 0:
        raise ValidationError(path, line, f"negative start time {start}")
    if end <= start:
        raise ValidationError(path, line, f"end {end} not after start {start}")
    text = rec.get("text")
    return str(cid), Utterance(str(speaker), start, end, text if text else None)


def _csv_rows(path: Path, required: Iterable[str], known: Iterable[str]):
    """Yield ``(line_number, row_dict)`` from a headered CSV file."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return
        header = [h.strip() for h in header]
        missing = [c for c in required if c not in header]
        if missing:
            raise ParseError(path, 1, f"missing required column(s): {', '.join(missing)}")
        extra = [h for h in header if h not in known]
        if extra:
            log.warning("%s: ignoring unknown column(s): %s", path, ", ".join(extra))
        start_line = reader.line_num + 1
        for row in reader:
            line = start_line
            start_line = reader.line_num + 1
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) > len(header):
                raise ParseError(path, line, f"expected at most {len(header)} fields, got {len(row)}")
            yield line, dict(zip(header, row))


def _jsonl_rows(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(path, line, f"invalid JSON: {exc.msg}") from None
            if not isinstance(rec, dict):
                raise ParseError(path, line, "expected a JSON object")
            extra = set(rec) - set(TRANSCRIPT_COLUMNS)
            if extra:
                log.warning("%s:%d: ignoring unknown key(s): %s", path, line, ", ".join(sorted(extra)))
            yield line, rec


def _infer_format(path: Path, fmt: Optional[str]) -> str:
    if fmt:
        if fmt not in ("csv", "jsonl"):
            raise ValueError(f"unsupported transcript format {fmt!r}")
        return fmt
    return "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"


def parse_transcripts(
    path: str | Path,
    format: Optional[str] = None,
    party_of: Optional[Mapping[str, str]] = None,
) -> list[Conversation]:
    """Read a transcript file into conversations sorted by id.

    Structural errors abort with :class:`ParseError`; validation warnings
    are logged.
    """
    path = Path(path)
    fmt = _infer_format(path, format)
    rows = _jsonl_rows(path) if fmt == "jsonl" else _csv_rows(path, _REQUIRED, TRANSCRIPT_COLUMNS)
    grouped: dict[str, list[Utterance]] = defaultdict(list)
    for line, rec in rows:
        cid, utt = _utterance(rec, path, line)
        grouped[cid].append(utt)
    corpus = []
    for cid in sorted(grouped):
        conv = Conversation.build(cid, grouped[cid], party_of=party_of)
        for f in validate_conversation(conv):
            if f.severity == "error" and "fewer than 2" not in f.message:
                raise ValidationError(path, None, f"conversation {cid!r}: {f}")
            log.warning("%s: conversation %r: %s", path, cid, f)
        corpus.append(conv)
    return corpus


def write_transcripts(corpus: Iterable[Conversation], path: str | Path, format: Optional[str] = None) -> None:
    path = Path(path)
    path.write_text(dump_transcripts(corpus, _infer_format(path, format)), encoding="utf-8")


def dump_transcripts(corpus: Iterable[Conversation], format: str = "csv") -> str:
    """Serialize conversations; floats use ``repr`` so they re-parse exactly."""
    buf = io.StringIO()
    if format == "jsonl":
        for conv in corpus:
            for u in conv.utterances:
                rec = {"conversation_id": conv.id, "speaker": u.speaker, "start": u.start, "end": u.end}
                if u.text is not None:
                    rec["text"] = u.text
                buf.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return buf.getvalue()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRANSCRIPT_COLUMNS)
    for conv in corpus:
        for u in conv.utterances:
            writer.writerow([conv.id, u.speaker, repr(u.start), repr(u.end), u.text or ""])
    return buf.getvalue()


def _opt(value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    value = value.strip()
    return value or None


def parse_survey(
    path: str | Path,
    max_enjoyment: int = DEFAULT_MAX_ENJOYMENT,
    conversation_ids: Optional[Iterable[str]] = None,
) -> list[SurveyRecord]:
    """Read per-speaker survey records.

    When ``conversation_ids`` is given, records whose conversation is not
    among them are kept but reported as warnings.
    """
    path = Path(path)
    records = []
    for line, row in _csv_rows(path, ("conversation_id", "speaker", "enjoyment"), SURVEY_COLUMNS):
        cid, speaker = _opt(row.get("conversation_id")), _opt(row.get("speaker"))
        if cid is None or speaker is None:
            raise ParseError(path, line, "conversation_id and speaker must be non-empty")
        try:
            enjoyment = int(row["enjoyment"])
        except (TypeError, ValueError):
            raise ParseError(path, line, f"enjoyment: expected an integer, got {row.get('enjoyment')!r}") from None
        if not (0 <= enjoyment <= max_enjoyment):
            raise ValidationError(path, line, f"enjoyment {enjoyment} outside [0, {max_enjoyment}]")
        age_raw = _opt(row.get("age"))
        try:
            age = int(age_raw) if age_raw is not None else None
        except ValueError:
            raise ParseError(path, line, f"age: expected an integer, got {age_raw!r}") from None
        records.append(
            SurveyRecord(
                conversation_id=cid,
                speaker=speaker,
                enjoyment=enjoyment,
                gender=_opt(row.get("gender")),
                age=age,
                comment_positive=_opt(row.get("comment_positive")),
                comment_negative=_opt(row.get("comment_negative")),
                outcome=_opt(row.get("outcome")),
            )
        )
    if conversation_ids is not None:
        known = set(conversation_ids)
        unmatched = sorted({r.conversation_id for r in records} - known)
        for cid in unmatched:
            log.warning("%s: survey conversation %r has no transcript", path, cid)
    return records


def parse_intervals(path: str | Path) -> dict[str, list[tuple[float, float]]]:
    """Read ``speaker,start,end`` rows into sorted per-speaker interval lists.

    A header row is optional.
    """
    path = Path(path)
    out: dict[str, list[tuple[float, float]]] = defaultdict(list)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next_line = 1
        for row in reader:
            line = next_line
            next_line = reader.line_num + 1
            if not row or all(not c.strip() for c in row):
                continue
            if line == 1 and [c.strip() for c in row[:3]] == ["speaker", "start", "end"]:
                continue
            if len(row) != 3:
                raise ParseError(path, line, f"expected 3 fields (speaker,start,end), got {len(row)}")
            speaker = row[0].strip()
            if not speaker:
                raise ParseError(path, line, "empty speaker")
            start = _seconds(row[1], path, line, "start")
            end = _seconds(row[2], path, line, "end")
            if end <= start:
                raise ValidationError(path, line, f"end {end} not after start {start}")
            out[speaker].append((start, end))
    return {s: sorted(v) for s, v in sorted(out.items())}
