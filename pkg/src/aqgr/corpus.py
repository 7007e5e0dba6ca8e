"""Judgments and structured summaries: schema, validation, rendering, storage.

A structured summary always carries every parent field; fields the
extractor could not fill stay empty and are reported as warnings rather
than errors, so a partially successful extraction remains usable. The
validator also normalizes the shape drift typical of generative output:
single objects are promoted to one-element lists, name-keyed maps become
authority lists, and party fields are reduced to (role, name) pairs.

On disk a corpus is ``<root>/judgments/<id>.txt`` plus
``<root>/summaries/<id>.json``, one JSON file per summary.
"""

import json
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import AqgrError, NotAnObjectError, NotFoundError, UnrecoverableShapeError

PARTY_ROLES = ("appellant", "respondent", "petitioner", "other")

PARENT_FIELDS = (
    "court", "case_no", "kind_of_judgment", "parties", "date", "bench_of_judges",
    "facts", "arguments", "issues_or_questions", "reasoning", "disposed_in_favour_of",
    "final_judgment", "statutes_referred", "precedents_referred",
    "new_legal_principles", "important_subjects", "source_judgment_id",
)

_ID_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*\Z")
_VERSUS_RE = re.compile(r"\s+(?:v|vs|versus)\.?\s+", re.IGNORECASE)


@dataclass(frozen=True)
class Judgment:
    id: str
    text: str
    char_count: int
    word_count: int

    @classmethod
    def from_text(cls, doc_id: str, text: str) -> "Judgment":
        if not _ID_RE.match(doc_id):
            raise AqgrError(f"invalid judgment id: {doc_id!r}")
        return cls(id=doc_id, text=text, char_count=len(text), word_count=len(text.split()))


@dataclass(frozen=True)
class Party:
    role: str
    name: str


@dataclass(frozen=True)
class CitedAuthority:
    name: str
    principle: str = ""
    application: str = ""


@dataclass(frozen=True)
class LegalPrinciple:
    principle: str
    application: str = ""


@dataclass(frozen=True)
class SummaryRenderOptions:
    include_precedents: bool = True
    compact: bool = False


@dataclass(frozen=True)
class StructuredSummary:
    court: str = ""
    case_no: str = ""
    kind_of_judgment: str = ""
    parties: tuple[Party, ...] = ()
    date: str = ""
    bench_of_judges: str = ""
    facts: str = ""
    arguments: str = ""
    issues_or_questions: tuple[str, ...] = ()
    reasoning: str = ""
    disposed_in_favour_of: str = ""
    final_judgment: str = ""
    statutes_referred: tuple[CitedAuthority, ...] = ()
    precedents_referred: tuple[CitedAuthority, ...] = ()
    new_legal_principles: tuple[LegalPrinciple, ...] = ()
    important_subjects: tuple[str, ...] = ()
    source_judgment_id: str = ""

    def parties_line(self) -> str:
        rendered = "; ".join(f"{p.role.capitalize()}: {p.name}" for p in self.parties)
        return f"Parties: {rendered}" if rendered else "Parties:"


# ---------------------------------------------------------------------------
# validation

_ALIAS_SOURCES = {
    "court": ["court"],
    "case_no": ["case_no", "caseno", "case number"],
    "kind_of_judgment": ["kind_of_judgment", "kind of judgment (appeal/petition)",
                         "kind of judgment(appeal/petition)", "judgment kind"],
    "parties": ["parties", "party names", "party"],
    "date": ["date", "date of judgment"],
    "bench_of_judges": ["bench_of_judges", "bench", "judges"],
    "facts": ["facts"],
    "arguments": ["arguments"],
    "issues_or_questions": ["issues_or_questions", "issues or questions", "issues",
                            "questions", "issues/questions"],
    "reasoning": ["reasoning", "reasoning of the questions"],
    "disposed_in_favour_of": ["disposed_in_favour_of", "case disposed of in favour of",
                              "case disposed in favor of", "disposed in favour of",
                              "disposed in favor of", "in favour of"],
    "final_judgment": ["final_judgment", "final judgment"],
    "statutes_referred": ["statutes_referred", "statutes referred", "statutes"],
    "precedents_referred": ["precedents_referred", "precedents referred", "precedents"],
    "new_legal_principles": ["new_legal_principles", "new legal principles",
                             "new legal principle",
                             "new legal principle that can be applied to future cases"],
    "important_subjects": ["important_subjects", "important subjects",
                           "important subjects discussed", "subjects"],
    "source_judgment_id": ["source_judgment_id", "sourcejudgmentid", "source id"],
}


def _norm_key(key: str) -> str:
    return re.sub(r"[^a-z0-9]", "", key.lower())


_ALIASES = {_norm_key(alias): canon
            for canon, aliases in _ALIAS_SOURCES.items() for alias in aliases}


class _ShapeError(Exception):
    pass


def _coerce_text(value, depth: int = 0) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, float, bool)):
        return str(value)
    if depth >= 4:
        raise _ShapeError("nesting too deep")
    if isinstance(value, list):
        parts = [_coerce_text(item, depth + 1) for item in value]
        return "\n".join(p for p in parts if p)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {_coerce_text(v, depth + 1)}" for k, v in value.items())
    raise _ShapeError(f"cannot coerce {type(value).__name__} to text")


def _coerce_text_list(value) -> tuple[str, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        return (value,) if value else ()
    if isinstance(value, (int, float, bool)):
        return (str(value),)
    if isinstance(value, list):
        items = [_coerce_text(item) for item in value]
        return tuple(item for item in items if item)
    if isinstance(value, dict):
        items = [_coerce_text(v) for v in value.values()]
        return tuple(item for item in items if item)
    raise _ShapeError(f"cannot coerce {type(value).__name__} to a text list")


def _role_for(key: str) -> str:
    normed = _norm_key(key)
    for role in ("appellant", "respondent", "petitioner"):
        if normed.startswith(role):
            return role
    return "other"


def _coerce_parties(value) -> tuple[Party, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        if not value.strip():
            return ()
        halves = _VERSUS_RE.split(value.strip(), maxsplit=1)
        if len(halves) == 2:
            return (Party("appellant", halves[0].strip()), Party("respondent", halves[1].strip()))
        return (Party("other", value.strip()),)
    if isinstance(value, dict):
        out: list[Party] = []
        for key, val in value.items():
            names = val if isinstance(val, list) else [val]
            for name in names:
                text = _coerce_text(name).strip()
                if text:
                    out.append(Party(_role_for(str(key)), text))
        return tuple(out)
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, dict) and _norm_key_set(item) >= {"role", "name"}:
                role = _coerce_text(_value_by_norm(item, "role")).strip().lower()
                name = _coerce_text(_value_by_norm(item, "name")).strip()
                if name:
                    out.append(Party(role if role in PARTY_ROLES else "other", name))
            elif isinstance(item, dict):
                out.extend(_coerce_parties(item))
            else:
                text = _coerce_text(item).strip()
                if text:
                    out.append(Party("other", text))
        return tuple(out)
    raise _ShapeError(f"cannot coerce {type(value).__name__} to parties")


def _norm_key_set(d: dict) -> set[str]:
    return {_norm_key(str(k)) for k in d}


def _value_by_norm(d: dict, normed: str):
    for k, v in d.items():
        if _norm_key(str(k)) == normed:
            return v
    return None


def _authority_from_dict(d: dict) -> CitedAuthority | None:
    keys = _norm_key_set(d)
    if "name" in keys:
        name = _coerce_text(_value_by_norm(d, "name")).strip()
        if not name:
            return None
        return CitedAuthority(
            name=name,
            principle=_coerce_text(_value_by_norm(d, "principle")).strip(),
            application=_coerce_text(_value_by_norm(d, "application")).strip(),
        )
    if len(d) == 1:
        # single-entry map: the key is the authority name, unless the key is
        # itself a schema word (a nameless fragment like {"Principle": ...})
        ((name, body),) = d.items()
        if _norm_key(str(name)) in ("principle", "application", "name"):
            return None
        return _authority_from_map_entry(str(name), body)
    return None


def _authority_from_map_entry(name: str, body) -> CitedAuthority | None:
    name = name.strip()
    if not name:
        return None
    if isinstance(body, dict):
        return CitedAuthority(
            name=name,
            principle=_coerce_text(_value_by_norm(body, "principle")).strip(),
            application=_coerce_text(_value_by_norm(body, "application")).strip(),
        )
    return CitedAuthority(name=name, principle=_coerce_text(body).strip())


def _coerce_authorities(value, field_name: str, warnings: list[str]) -> tuple[CitedAuthority, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        return (CitedAuthority(name=value.strip()),) if value.strip() else ()
    if isinstance(value, dict):
        single = _authority_from_dict(value)
        if single is not None:
            return (single,)
        if _norm_key_set(value) & {"principle", "application"}:
            warnings.append(f"{field_name}: skipped entry without a name")
            return ()
        out = []
        for name, body in value.items():
            authority = _authority_from_map_entry(str(name), body)
            if authority is None:
                warnings.append(f"{field_name}: skipped entry without a name")
            else:
                out.append(authority)
        return tuple(out)
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, str):
                if item.strip():
                    out.append(CitedAuthority(name=item.strip()))
            elif isinstance(item, dict):
                authority = _authority_from_dict(item)
                if authority is None:
                    warnings.append(f"{field_name}: skipped entry without a name")
                else:
                    out.append(authority)
            else:
                raise _ShapeError(f"cannot coerce {type(item).__name__} authority entry")
        return tuple(out)
    raise _ShapeError(f"cannot coerce {type(value).__name__} to authority list")


def _principle_from_dict(d: dict) -> LegalPrinciple | None:
    keys = _norm_key_set(d)
    if "principle" in keys:
        text = _coerce_text(_value_by_norm(d, "principle")).strip()
        if not text:
            return None
        return LegalPrinciple(principle=text,
                              application=_coerce_text(_value_by_norm(d, "application")).strip())
    return None


def _coerce_principles(value, warnings: list[str]) -> tuple[LegalPrinciple, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        return (LegalPrinciple(principle=value.strip()),) if value.strip() else ()
    if isinstance(value, dict):
        single = _principle_from_dict(value)
        if single is not None:
            return (single,)
        out = []
        for text, application in value.items():
            text = str(text).strip()
            if text:
                out.append(LegalPrinciple(principle=text,
                                          application=_coerce_text(application).strip()))
        return tuple(out)
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, str):
                if item.strip():
                    out.append(LegalPrinciple(principle=item.strip()))
            elif isinstance(item, dict):
                principle = _principle_from_dict(item)
                if principle is None:
                    warnings.append("new_legal_principles: skipped entry without a principle")
                else:
                    out.append(principle)
            else:
                raise _ShapeError(f"cannot coerce {type(item).__name__} principle entry")
        return tuple(out)
    raise _ShapeError(f"cannot coerce {type(value).__name__} to principle list")


def validate_summary(raw) -> tuple[StructuredSummary, list[str]]:
    """Normalize a parsed JSON tree into a StructuredSummary.

    Missing parent fields become empty values plus one warning each;
    a field "present" but of a shape with no sensible reading raises
    UnrecoverableShapeError listing every such field.
    """
    if not isinstance(raw, dict):
        raise NotAnObjectError(f"summary root must be an object, got {type(raw).__name__}")

    warnings: list[str] = []
    errors: list[str] = []
    found: dict[str, object] = {}
    for key, value in raw.items():
        canon = _ALIASES.get(_norm_key(str(key)))
        if canon is None:
            warnings.append(f"ignored unknown field: {key}")
        elif canon in found:
            warnings.append(f"duplicate field ignored: {key}")
        else:
            found[canon] = value

    for name in PARENT_FIELDS:
        if name not in found:
            warnings.append(f"missing field: {name}")
        elif found[name] is None:
            warnings.append(f"null field: {name}")

    values: dict[str, object] = {}
    text_fields = ("court", "case_no", "kind_of_judgment", "date", "bench_of_judges",
                   "facts", "arguments", "reasoning", "disposed_in_favour_of",
                   "final_judgment", "source_judgment_id")
    for name in PARENT_FIELDS:
        value = found.get(name)
        try:
            if name in text_fields:
                values[name] = _coerce_text(value).strip()
            elif name in ("issues_or_questions", "important_subjects"):
                values[name] = _coerce_text_list(value)
            elif name == "parties":
                values[name] = _coerce_parties(value)
            elif name in ("statutes_referred", "precedents_referred"):
                values[name] = _coerce_authorities(value, name, warnings)
            else:
                values[name] = _coerce_principles(value, warnings)
        except _ShapeError as exc:
            errors.append(f"{name}: {exc}")

    if errors:
        raise UnrecoverableShapeError("; ".join(errors))
    return StructuredSummary(**values), warnings


def summary_to_dict(summary: StructuredSummary) -> dict:
    """Canonical JSON-ready form; round-trips through validate_summary."""
    return {
        "court": summary.court,
        "case_no": summary.case_no,
        "kind_of_judgment": summary.kind_of_judgment,
        "parties": [{"role": p.role, "name": p.name} for p in summary.parties],
        "date": summary.date,
        "bench_of_judges": summary.bench_of_judges,
        "facts": summary.facts,
        "arguments": summary.arguments,
        "issues_or_questions": list(summary.issues_or_questions),
        "reasoning": summary.reasoning,
        "disposed_in_favour_of": summary.disposed_in_favour_of,
        "final_judgment": summary.final_judgment,
        "statutes_referred": [
            {"name": a.name, "principle": a.principle, "application": a.application}
            for a in summary.statutes_referred],
        "precedents_referred": [
            {"name": a.name, "principle": a.principle, "application": a.application}
            for a in summary.precedents_referred],
        "new_legal_principles": [
            {"principle": p.principle, "application": p.application}
            for p in summary.new_legal_principles],
        "important_subjects": list(summary.important_subjects),
        "source_judgment_id": summary.source_judgment_id,
    }


# ---------------------------------------------------------------------------
# rendering

def _authority_lines(heading: str, authorities: tuple[CitedAuthority, ...]) -> list[str]:
    lines = [f"{heading}:"]
    for a in authorities:
        segments = [a.name]
        if a.principle:
            segments.append(f"Principle: {a.principle}")
        if a.application:
            segments.append(f"Application: {a.application}")
        lines.append("- " + " | ".join(segments))
    return lines


def render_for_index(summary: StructuredSummary, opts: SummaryRenderOptions) -> str:
    """Deterministic text rendering of a summary for indexing.

    Always starts with the parties line so retrieved text self-identifies.
    Compact mode keeps only parties, case number, facts, issues, and
    reasoning; empty fields are omitted entirely.
    """
    lines = [summary.parties_line()]
    if summary.case_no:
        lines.append(f"Case No: {summary.case_no}")
    if not opts.compact:
        if summary.court:
            lines.append(f"Court: {summary.court}")
        if summary.kind_of_judgment:
            lines.append(f"Kind of Judgment: {summary.kind_of_judgment}")
        if summary.date:
            lines.append(f"Date: {summary.date}")
        if summary.bench_of_judges:
            lines.append(f"Bench of Judges: {summary.bench_of_judges}")
    if summary.facts:
        lines.append(f"Facts: {summary.facts}")
    if not opts.compact and summary.arguments:
        lines.append(f"Arguments: {summary.arguments}")
    if summary.issues_or_questions:
        lines.append("Issues or Questions:")
        lines.extend(f"- {q}" for q in summary.issues_or_questions)
    if summary.reasoning:
        lines.append(f"Reasoning: {summary.reasoning}")
    if not opts.compact:
        if summary.disposed_in_favour_of:
            lines.append(f"Disposed in Favour of: {summary.disposed_in_favour_of}")
        if summary.final_judgment:
            lines.append(f"Final Judgment: {summary.final_judgment}")
        if summary.statutes_referred:
            lines.extend(_authority_lines("Statutes Referred", summary.statutes_referred))
        if opts.include_precedents and summary.precedents_referred:
            lines.extend(_authority_lines("Precedents Referred", summary.precedents_referred))
        if summary.new_legal_principles:
            lines.append("New Legal Principles:")
            for p in summary.new_legal_principles:
                if p.application:
                    lines.append(f"- {p.principle} | Application: {p.application}")
                else:
                    lines.append(f"- {p.principle}")
        if summary.important_subjects:
            lines.append("Important Subjects: " + "; ".join(summary.important_subjects))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# storage

def _atomic_write(path: Path, data: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


class SummaryStore:
    """One JSON file per summary, named <judgmentId>.json; atomic writes."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, doc_id: str) -> Path:
        if not _ID_RE.match(doc_id):
            raise AqgrError(f"invalid summary id: {doc_id!r}")
        return self.root / f"{doc_id}.json"

    def put(self, summary: StructuredSummary) -> str:
        doc_id = summary.source_judgment_id
        if not doc_id:
            raise AqgrError("summary has no source_judgment_id; cannot store")
        payload = json.dumps(summary_to_dict(summary), ensure_ascii=False, indent=2)
        _atomic_write(self.path_for(doc_id), payload + "\n")
        return doc_id

    def get(self, doc_id: str) -> StructuredSummary:
        path = self.path_for(doc_id)
        if not path.exists():
            raise NotFoundError(f"no summary stored for id {doc_id!r}")
        raw = json.loads(path.read_text(encoding="utf-8"))
        summary, _ = validate_summary(raw)
        return summary

    def list(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))


class JudgmentStore:
    """Plain-text judgments, one <id>.txt per document."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, doc_id: str) -> Path:
        if not _ID_RE.match(doc_id):
            raise AqgrError(f"invalid judgment id: {doc_id!r}")
        return self.root / f"{doc_id}.txt"

    def put(self, judgment: Judgment) -> str:
        _atomic_write(self.path_for(judgment.id), judgment.text)
        return judgment.id

    def get(self, doc_id: str) -> Judgment:
        path = self.path_for(doc_id)
        if not path.exists():
            raise NotFoundError(f"no judgment stored for id {doc_id!r}")
        return Judgment.from_text(doc_id, path.read_text(encoding="utf-8"))

    def list(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.txt"))
