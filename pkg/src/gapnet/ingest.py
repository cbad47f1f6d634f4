"""TSV ingestion and emission for task sheets, lexicon dumps, result files.

All sheets are UTF-8 (BOM tolerated on read, never written), LF line ends,
tab-separated, header row mandatory. A header that does not match the
documented schema is fatal; everything else is a per-row rejection collected
in a ParseReport, so one bad row in a community-edited sheet never poisons
the rest. Partition law: accepted + rejected = total data rows, per file.

Multi-valued cells split on the Arabic semicolon U+061B (commas occur inside
Arabic glosses). Example cells are groups split on the same separator, group
i belonging to lemma i; several examples for one lemma are separated by "|"
within the group. Surplus groups attach to the last lemma.

Tabs and newlines never appear inside cells (emit refuses them), items of
multi-valued cells must not contain the separator, and "|" is reserved in
example cells. Glosses and comments are single-valued and may contain the
Arabic semicolon, except the validation cell where the first one splits the
status from the comment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core import (
    DeletionCode,
    DeletionReason,
    Example,
    Gloss,
    LexicalizationStatus,
    Lexicon,
    PartOfSpeech,
    Phraset,
    Provenance,
    Sense,
    Synset,
    normalize_form,
    validate_synset,
)
from .errors import HeaderMismatchError, InvariantViolation
from .workflow import (
    EPOCH_TIMESTAMP,
    AuditEvent,
    Contribution,
    MarkGap,
    MergeV1,
    SenseDraft,
    Skip,
    StateKind,
    TaskView,
    Translate,
)

__all__ = [
    "MULTI_SEP",
    "EXAMPLE_SEP",
    "TASK_SHEET_COLUMNS",
    "LEXICON_COLUMNS",
    "FINAL_COLUMNS",
    "DELTA_COLUMNS",
    "IMPORT_ACTOR",
    "RejectedRow",
    "ParseReport",
    "TaskRecord",
    "NamedEntityFilter",
    "apply_ne_filter",
    "load_column_mapping",
    "split_multi",
    "join_multi",
    "split_example_groups",
    "join_example_groups",
    "parse_task_sheet",
    "emit_task_sheet",
    "parse_lexicon_sheet",
    "emit_lexicon_sheet",
    "parse_result_files",
    "emit_result_files",
    "record_to_contribution",
    "task_to_record",
]

MULTI_SEP = "؛"  # ؛
EXAMPLE_SEP = "|"
IMPORT_ACTOR = "import"

TASK_SHEET_COLUMNS = (
    "synset_id",
    "pos",
    "en_lemmas",
    "en_gloss",
    "en_examples",
    "ar_lemmas_v1",
    "new_lemmas",
    "deleted_lemmas",
    "deletion_reasons",
    "ar_gloss",
    "ar_examples",
    "gap_flag",
    "phrasets",
    "translator_comment",
    "validation",
)

LEXICON_COLUMNS = ("id", "pos", "lemmas", "gloss", "examples")

FINAL_COLUMNS = ("synset_id", "pos", "lemmas", "gloss", "examples", "gap_flag", "phrasets")

DELTA_COLUMNS = ("synset_id", "pos", "change", "value", "detail")

_DELTA_KINDS = (
    "added-lemma",
    "deleted-lemma",
    "added-gloss",
    "added-example",
    "gap-marked",
    "phraset-added",
)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class RejectedRow:
    sheet: str
    row_number: int
    kind: str
    message: str


@dataclass
class ParseReport:
    total: int = 0
    rejected: list[RejectedRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> int:
        return self.total - len(self.rejected)

    def reject(self, sheet: str, row_number: int, kind: str, message: str) -> None:
        self.rejected.append(RejectedRow(sheet, row_number, kind, message))

    def merge(self, other: "ParseReport") -> None:
        self.total += other.total
        self.rejected.extend(other.rejected)
        self.warnings.extend(other.warnings)


# ---------------------------------------------------------------------------
# cell helpers


def split_multi(cell: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in cell.split(MULTI_SEP) if p.strip())


def join_multi(values: Iterable[str]) -> str:
    out = []
    for v in values:
        v = v.strip()
        if MULTI_SEP in v:
            raise ValueError(f"cell item may not contain {MULTI_SEP!r}: {v!r}")
        out.append(v)
    return MULTI_SEP.join(out)


def split_example_groups(cell: str) -> tuple[tuple[str, ...], ...]:
    if not cell.strip():
        return ()
    groups = []
    for group in cell.split(MULTI_SEP):
        groups.append(tuple(e.strip() for e in group.split(EXAMPLE_SEP) if e.strip()))
    return tuple(groups)


def join_example_groups(groups: Iterable[Iterable[str]]) -> str:
    parts = []
    for group in groups:
        items = []
        for e in group:
            e = e.strip()
            if MULTI_SEP in e or EXAMPLE_SEP in e:
                raise ValueError(f"example may not contain {MULTI_SEP!r} or '|': {e!r}")
            items.append(e)
        parts.append(EXAMPLE_SEP.join(items))
    return MULTI_SEP.join(parts)


def _cell(value: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise ValueError(f"cell may not contain tab or newline: {value!r}")
    return value


def _decode_rows(data: bytes) -> list[list[str]]:
    text = data.decode("utf-8-sig")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r").split("\t") for line in lines]


def _encode_rows(rows: Iterable[Sequence[str]]) -> bytes:
    out = []
    for row in rows:
        out.append("\t".join(_cell(c) for c in row))
    return ("\n".join(out) + "\n").encode("utf-8")


def load_column_mapping(path: str | Path) -> dict[str, str]:
    """Sidecar JSON mapping external header names to schema roles.

    A role of "" or "-" drops the column. Lets real published files with
    renamed or reordered headers pass the strict header law without code
    changes.
    """
    with open(path, "rb") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
    ):
        raise HeaderMismatchError(f"column mapping {path} must be a string-to-string object")
    return doc


def _resolve_header(
    header: Sequence[str],
    schema: Sequence[str],
    mapping: Mapping[str, str] | None,
    sheet: str,
) -> dict[str, int]:
    if mapping is None:
        if tuple(h.strip() for h in header) != tuple(schema):
            raise HeaderMismatchError(
                f"{sheet}: header {header!r} does not match required columns {list(schema)}"
            )
        return {name: i for i, name in enumerate(schema)}
    index: dict[str, int] = {}
    for i, raw in enumerate(header):
        role = mapping.get(raw.strip(), raw.strip())
        if role in ("", "-"):
            continue
        if role not in schema:
            raise HeaderMismatchError(f"{sheet}: column {raw!r} maps to unknown role {role!r}")
        if role in index:
            raise HeaderMismatchError(f"{sheet}: two columns map to role {role!r}")
        index[role] = i
    missing = [c for c in schema if c not in index]
    if missing:
        raise HeaderMismatchError(f"{sheet}: missing columns for roles {missing}")
    return index


def _pad(row: list[str], width: int) -> list[str]:
    if len(row) < width:
        return row + [""] * (width - len(row))
    return row


# ---------------------------------------------------------------------------
# task sheets


@dataclass(frozen=True)
class TaskRecord:
    """One task-sheet row, faithful to the cells."""

    row_number: int
    synset_id: str
    pos: PartOfSpeech
    en_lemmas: tuple[str, ...]
    en_gloss: str = ""
    en_examples: tuple[tuple[str, ...], ...] = ()
    ar_lemmas_v1: tuple[str, ...] = ()
    new_lemmas: tuple[str, ...] = ()
    deleted_lemmas: tuple[str, ...] = ()
    deletion_reasons: tuple[DeletionReason, ...] = ()
    ar_gloss: str = ""
    ar_examples: tuple[tuple[str, ...], ...] = ()
    gap_flag: bool = False
    phrasets: tuple[str, ...] = ()
    translator_comment: str = ""
    validation_status: str = ""
    validation_comment: str = ""


def _parse_reason_item(item: str) -> DeletionReason:
    code_str, _, comment = item.partition(":")
    code = DeletionCode(code_str.strip())
    return DeletionReason(code, comment.strip())


def _emit_reason_item(reason: DeletionReason) -> str:
    if reason.comment:
        return f"{reason.code.value}:{reason.comment}"
    return reason.code.value


def parse_task_sheet(
    data: bytes,
    pos: PartOfSpeech,
    *,
    column_mapping: Mapping[str, str] | None = None,
    sheet: str = "task-sheet",
) -> tuple[list[TaskRecord], ParseReport]:
    """Rows of one per-POS task sheet. Header mismatch is fatal; bad rows are
    collected, good rows survive. Row numbers are physical line numbers
    (header is line 1)."""
    rows = _decode_rows(data)
    if not rows:
        raise HeaderMismatchError(f"{sheet}: empty file, header required")
    index = _resolve_header(rows[0], TASK_SHEET_COLUMNS, column_mapping, sheet)
    width = len(rows[0])
    report = ParseReport(total=len(rows) - 1)
    records: list[TaskRecord] = []
    seen_ids: set[str] = set()

    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) > width:
            report.reject(sheet, lineno, "malformed-row", f"{len(row)} cells, header has {width}")
            continue
        row = _pad(row, width)
        get = lambda role: row[index[role]].strip()  # noqa: E731

        synset_id = get("synset_id")
        if not synset_id:
            report.reject(sheet, lineno, "missing-id", "empty synset_id")
            continue
        try:
            row_pos = PartOfSpeech.parse(get("pos"))
        except ValueError:
            report.reject(sheet, lineno, "bad-pos", f"unparseable pos {get('pos')!r}")
            continue
        if row_pos is not pos:
            report.reject(
                sheet, lineno, "bad-pos", f"{row_pos.value} row in a {pos.value} sheet"
            )
            continue
        en_lemmas = split_multi(get("en_lemmas"))
        if not en_lemmas:
            report.reject(sheet, lineno, "empty-pivot-synset", f"{synset_id} has no pivot lemmas")
            continue
        if synset_id in seen_ids:
            report.reject(sheet, lineno, "duplicate-id", f"{synset_id} appears twice")
            continue
        gap_cell = get("gap_flag")
        if gap_cell not in ("", "0", "1"):
            report.reject(sheet, lineno, "malformed-row", f"gap_flag must be 0 or 1, got {gap_cell!r}")
            continue

        deleted = split_multi(get("deleted_lemmas"))
        reason_items = split_multi(get("deletion_reasons"))
        if reason_items and len(reason_items) != len(deleted):
            report.reject(
                sheet,
                lineno,
                "malformed-row",
                f"{len(deleted)} deleted lemmas but {len(reason_items)} reasons",
            )
            continue
        try:
            if reason_items:
                reasons = tuple(_parse_reason_item(r) for r in reason_items)
            else:
                reasons = tuple(
                    DeletionReason(DeletionCode.NOT_COVERED_BY_GLOSS) for _ in deleted
                )
        except (ValueError, InvariantViolation) as exc:
            report.reject(sheet, lineno, "malformed-row", f"bad deletion reason: {exc}")
            continue

        status, _, validation_comment = get("validation").partition(MULTI_SEP)
        records.append(
            TaskRecord(
                row_number=lineno,
                synset_id=synset_id,
                pos=row_pos,
                en_lemmas=en_lemmas,
                en_gloss=get("en_gloss"),
                en_examples=split_example_groups(get("en_examples")),
                ar_lemmas_v1=split_multi(get("ar_lemmas_v1")),
                new_lemmas=split_multi(get("new_lemmas")),
                deleted_lemmas=deleted,
                deletion_reasons=reasons,
                ar_gloss=get("ar_gloss"),
                ar_examples=split_example_groups(get("ar_examples")),
                gap_flag=gap_cell == "1",
                phrasets=split_multi(get("phrasets")),
                translator_comment=get("translator_comment"),
                validation_status=status.strip(),
                validation_comment=validation_comment.strip(),
            )
        )
        seen_ids.add(synset_id)
    return records, report


def emit_task_sheet(records: Iterable[TaskRecord]) -> bytes:
    rows: list[Sequence[str]] = [TASK_SHEET_COLUMNS]
    for r in records:
        validation = r.validation_status
        if r.validation_comment:
            validation = f"{validation}{MULTI_SEP}{r.validation_comment}"
        rows.append(
            (
                r.synset_id,
                r.pos.value,
                join_multi(r.en_lemmas),
                r.en_gloss,
                join_example_groups(r.en_examples),
                join_multi(r.ar_lemmas_v1),
                join_multi(r.new_lemmas),
                join_multi(r.deleted_lemmas),
                join_multi(_emit_reason_item(x) for x in r.deletion_reasons),
                r.ar_gloss,
                join_example_groups(r.ar_examples),
                "1" if r.gap_flag else "0",
                join_multi(r.phrasets),
                r.translator_comment,
                validation,
            )
        )
    return _encode_rows(rows)


# ---------------------------------------------------------------------------
# lexicon sheets (pivot and inherited-release dumps share the layout)


def _senses_from_cells(
    lemmas: Sequence[str],
    groups: Sequence[Sequence[str]],
    language: str,
    provenance: Provenance,
    report: ParseReport,
    sheet: str,
    lineno: int,
) -> tuple[Sense, ...]:
    """Ranked senses from a lemma list and positional example groups."""
    unique: list[str] = []
    seen: set[str] = set()
    for form in lemmas:
        norm = normalize_form(form)
        if norm in seen:
            report.warnings.append(
                f"{sheet}:{lineno}: duplicate lemma {form!r} dropped"
            )
            continue
        seen.add(norm)
        unique.append(form)
    senses = []
    for i, form in enumerate(unique):
        texts: list[str] = list(groups[i]) if i < len(groups) else []
        if i == len(unique) - 1 and len(groups) > len(unique):
            for extra in groups[len(unique):]:
                texts.extend(extra)
        senses.append(
            Sense(
                form=form,
                rank=i + 1,
                provenance=provenance,
                examples=tuple(Example(text=t, language=language) for t in texts),
            )
        )
    return tuple(senses)


def parse_lexicon_sheet(
    data: bytes,
    *,
    language: str,
    tag: str,
    column_mapping: Mapping[str, str] | None = None,
    sheet: str = "lexicon",
    require_lemmas: bool = True,
) -> tuple[Lexicon, ParseReport]:
    """A whole lexicon from one TSV (columns: id, pos, lemmas, gloss,
    examples). Rows become lexicalized, unapproved synsets; the gloss cell
    may be empty. Used for both the pivot wordnet and the inherited release.

    With ``require_lemmas=False`` a row without lemmas is a pending synset
    (known id, not yet worked), which inherited release files contain."""
    rows = _decode_rows(data)
    if not rows:
        raise HeaderMismatchError(f"{sheet}: empty file, header required")
    index = _resolve_header(rows[0], LEXICON_COLUMNS, column_mapping, sheet)
    width = len(rows[0])
    report = ParseReport(total=len(rows) - 1)
    lexicon = Lexicon(language, tag)

    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) > width:
            report.reject(sheet, lineno, "malformed-row", f"{len(row)} cells, header has {width}")
            continue
        row = _pad(row, width)
        get = lambda role: row[index[role]].strip()  # noqa: E731

        synset_id = get("id")
        if not synset_id:
            report.reject(sheet, lineno, "missing-id", "empty id")
            continue
        try:
            pos = PartOfSpeech.parse(get("pos"))
        except ValueError:
            report.reject(sheet, lineno, "bad-pos", f"unparseable pos {get('pos')!r}")
            continue
        lemmas = split_multi(get("lemmas"))
        if not lemmas and require_lemmas:
            report.reject(sheet, lineno, "empty-pivot-synset", f"{synset_id} has no lemmas")
            continue
        if synset_id in lexicon:
            report.reject(sheet, lineno, "duplicate-id", f"{synset_id} appears twice")
            continue
        senses = _senses_from_cells(
            lemmas,
            split_example_groups(get("examples")),
            language,
            Provenance.IMPORTED_V1,
            report,
            sheet,
            lineno,
        )
        gloss_text = get("gloss")
        status = (
            LexicalizationStatus.LEXICALIZED
            if senses
            else LexicalizationStatus.PENDING
        )
        try:
            synset = Synset(
                id=synset_id,
                pos=pos,
                status=status,
                gloss=Gloss(text=gloss_text, language=language) if gloss_text else None,
                senses=senses,
            )
            report.warnings.extend(validate_synset(synset))
            lexicon.add_synset(synset)
        except InvariantViolation as exc:
            report.reject(sheet, lineno, "invariant-violation", exc.message)
    return lexicon, report


def emit_lexicon_sheet(lexicon: Lexicon) -> bytes:
    rows: list[Sequence[str]] = [LEXICON_COLUMNS]
    for syn in lexicon.synsets():
        active = syn.active_senses()
        rows.append(
            (
                syn.id,
                syn.pos.value,
                join_multi(s.form for s in active),
                syn.gloss.text if syn.gloss else "",
                join_example_groups([e.text for e in s.examples] for s in active),
            )
        )
    return _encode_rows(rows)


# ---------------------------------------------------------------------------
# named-entity exclusion


@dataclass(frozen=True)
class NamedEntityFilter:
    """Synset ids excluded from the translation effort, as data not code."""

    ids: frozenset[str]

    def __contains__(self, synset_id: str) -> bool:
        return synset_id in self.ids

    def __len__(self) -> int:
        return len(self.ids)

    @classmethod
    def from_bytes(cls, data: bytes) -> "NamedEntityFilter":
        ids = set()
        for line in data.decode("utf-8-sig").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                ids.add(line)
        return cls(frozenset(ids))

    @classmethod
    def from_file(cls, path: str | Path) -> "NamedEntityFilter":
        return cls.from_bytes(Path(path).read_bytes())

    @classmethod
    def empty(cls) -> "NamedEntityFilter":
        return cls(frozenset())


def apply_ne_filter(
    records: Iterable[TaskRecord], ne: NamedEntityFilter
) -> tuple[list[TaskRecord], int]:
    """Partition task records into (kept, excluded count)."""
    kept = []
    excluded = 0
    for record in records:
        if record.synset_id in ne:
            excluded += 1
        else:
            kept.append(record)
    return kept, excluded


# ---------------------------------------------------------------------------
# result files (final sheet + delta sheet per POS)


def parse_result_files(
    final_data: bytes,
    delta_data: bytes,
    pos: PartOfSpeech,
    *,
    language: str = "ar",
    tag: str = "awn",
    final_mapping: Mapping[str, str] | None = None,
    delta_mapping: Mapping[str, str] | None = None,
) -> tuple[list[Synset], list[AuditEvent], ParseReport]:
    """Published per-POS results: the final synsets plus their change log.

    The final sheet carries approved synsets (gap rows: flag 1, empty lemma
    cell, phrasets mandatory); the delta sheet carries one approved change
    per row and becomes audit events (actor "import", epoch timestamps,
    sequence in file order). Sense provenance and deleted senses are
    reconstructed from the delta: a lemma listed as added gets provenance
    "added", deleted lemmas reappear as deleted senses ranked after the
    active block.
    """
    report = ParseReport()

    frows = _decode_rows(final_data)
    if not frows:
        raise HeaderMismatchError("final: empty file, header required")
    findex = _resolve_header(frows[0], FINAL_COLUMNS, final_mapping, "final")
    fwidth = len(frows[0])
    report.total += len(frows) - 1

    drows = _decode_rows(delta_data)
    if not drows:
        raise HeaderMismatchError("delta: empty file, header required")
    dindex = _resolve_header(drows[0], DELTA_COLUMNS, delta_mapping, "delta")
    dwidth = len(drows[0])
    report.total += len(drows) - 1

    # first pass: delta rows, grouped by synset for reconstruction
    delta_parsed: list[tuple[int, str, str, str, str]] = []
    by_synset: dict[str, list[tuple[int, str, str, str]]] = {}
    for lineno, row in enumerate(drows[1:], start=2):
        if len(row) > dwidth:
            report.reject("delta", lineno, "malformed-row", f"{len(row)} cells")
            continue
        row = _pad(row, dwidth)
        get = lambda role: row[dindex[role]].strip()  # noqa: E731
        synset_id = get("synset_id")
        if not synset_id:
            report.reject("delta", lineno, "missing-id", "empty synset_id")
            continue
        try:
            row_pos = PartOfSpeech.parse(get("pos"))
        except ValueError:
            report.reject("delta", lineno, "bad-pos", f"unparseable pos {get('pos')!r}")
            continue
        if row_pos is not pos:
            report.reject("delta", lineno, "bad-pos", f"{row_pos.value} row in {pos.value} delta")
            continue
        change = get("change")
        if change not in _DELTA_KINDS:
            report.reject("delta", lineno, "malformed-row", f"unknown change {change!r}")
            continue
        if change != "gap-marked" and not get("value"):
            report.reject("delta", lineno, "malformed-row", f"{change} needs a value")
            continue
        delta_parsed.append((lineno, synset_id, change, get("value"), get("detail")))
        by_synset.setdefault(synset_id, []).append((lineno, change, get("value"), get("detail")))

    # second pass: final rows, materialized with their delta group
    synsets: list[Synset] = []
    accepted_ids: set[str] = set()
    for lineno, row in enumerate(frows[1:], start=2):
        if len(row) > fwidth:
            report.reject("final", lineno, "malformed-row", f"{len(row)} cells")
            continue
        row = _pad(row, fwidth)
        get = lambda role: row[findex[role]].strip()  # noqa: E731
        synset_id = get("synset_id")
        if not synset_id:
            report.reject("final", lineno, "missing-id", "empty synset_id")
            continue
        try:
            row_pos = PartOfSpeech.parse(get("pos"))
        except ValueError:
            report.reject("final", lineno, "bad-pos", f"unparseable pos {get('pos')!r}")
            continue
        if row_pos is not pos:
            report.reject("final", lineno, "bad-pos", f"{row_pos.value} row in {pos.value} sheet")
            continue
        if synset_id in accepted_ids:
            report.reject("final", lineno, "duplicate-id", f"{synset_id} appears twice")
            continue
        gap_cell = get("gap_flag")
        if gap_cell not in ("", "0", "1"):
            report.reject("final", lineno, "malformed-row", f"bad gap_flag {gap_cell!r}")
            continue
        gap = gap_cell == "1"
        lemmas = split_multi(get("lemmas"))
        if gap and lemmas:
            report.reject(
                "final", lineno, "conflicting-gap", f"{synset_id} flagged gap but has lemmas"
            )
            continue

        group = by_synset.get(synset_id, ())
        added_forms = {
            normalize_form(value) for _, change, value, _ in group if change == "added-lemma"
        }
        deletions = [
            (value, detail) for _, change, value, detail in group if change == "deleted-lemma"
        ]
        gloss_text = get("gloss")
        try:
            # active senses, provenance per the delta
            unique: list[str] = []
            seen: set[str] = set()
            for form in lemmas:
                norm = normalize_form(form)
                if norm in seen:
                    report.warnings.append(
                        f"final:{lineno}: duplicate lemma {form!r} dropped"
                    )
                    continue
                seen.add(norm)
                unique.append(form)
            groups = split_example_groups(get("examples"))
            senses: list[Sense] = []
            for i, form in enumerate(unique):
                texts: list[str] = list(groups[i]) if i < len(groups) else []
                if i == len(unique) - 1 and len(groups) > len(unique):
                    for extra in groups[len(unique):]:
                        texts.extend(extra)
                senses.append(
                    Sense(
                        form=form,
                        rank=i + 1,
                        provenance=(
                            Provenance.ADDED
                            if normalize_form(form) in added_forms
                            else Provenance.IMPORTED_V1
                        ),
                        examples=tuple(Example(text=t, language=language) for t in texts),
                    )
                )
            next_rank = len(senses) + 1
            for form, detail in deletions:
                reason = _parse_reason_item(detail) if detail else DeletionReason(
                    DeletionCode.NOT_COVERED_BY_GLOSS
                )
                senses.append(
                    Sense(
                        form=form,
                        rank=next_rank,
                        provenance=Provenance.IMPORTED_V1,
                        examples=(),
                        deleted=reason,
                    )
                )
                next_rank += 1
            synset = Synset(
                id=synset_id,
                pos=pos,
                status=LexicalizationStatus.GAP if gap else LexicalizationStatus.LEXICALIZED,
                gloss=Gloss(text=gloss_text, language=language) if gloss_text else None,
                senses=tuple(senses),
                phrasets=tuple(
                    Phraset(text=t, language=language) for t in split_multi(get("phrasets"))
                ),
                approved=True,
            )
            report.warnings.extend(validate_synset(synset))
        except InvariantViolation as exc:
            report.reject("final", lineno, "invariant-violation", exc.message)
            continue
        except ValueError as exc:
            report.reject("final", lineno, "malformed-row", str(exc))
            continue
        synsets.append(synset)
        accepted_ids.add(synset_id)

    # third pass: events for delta rows whose synset survived
    events: list[AuditEvent] = []
    seq = 0
    for lineno, synset_id, change, value, detail in delta_parsed:
        if synset_id not in accepted_ids:
            report.reject(
                "delta",
                lineno,
                "id-in-delta-missing-from-final",
                f"{synset_id} has delta rows but no accepted final row",
            )
            continue
        payload: dict = {"pos": pos.value, "submission": None}
        if change == "added-lemma":
            payload["form"] = value
        elif change == "deleted-lemma":
            try:
                reason = _parse_reason_item(detail) if detail else DeletionReason(
                    DeletionCode.NOT_COVERED_BY_GLOSS
                )
            except (ValueError, InvariantViolation) as exc:
                report.reject("delta", lineno, "malformed-row", f"bad reason: {exc}")
                continue
            payload["form"] = value
            payload["reason"] = {"code": reason.code.value, "comment": reason.comment}
        elif change == "added-gloss":
            payload["text"] = value
            payload["language"] = language
        elif change == "added-example":
            payload["form"] = detail or None
            payload["text"] = value
            payload["language"] = language
        elif change == "phraset-added":
            payload["text"] = value
            payload["language"] = language
        seq += 1
        events.append(
            AuditEvent(
                seq=seq,
                timestamp=EPOCH_TIMESTAMP,
                actor=IMPORT_ACTOR,
                task=synset_id,
                kind=change,
                payload=payload,
            )
        )
    return synsets, events, report


def emit_result_files(
    synsets: Iterable[Synset],
    events: Iterable[AuditEvent],
    pos: PartOfSpeech,
) -> tuple[bytes, bytes]:
    """The per-POS final and delta sheets for a set of approved synsets."""
    frows: list[Sequence[str]] = [FINAL_COLUMNS]
    for syn in sorted((s for s in synsets if s.pos is pos), key=lambda s: s.id):
        active = syn.active_senses()
        frows.append(
            (
                syn.id,
                syn.pos.value,
                join_multi(s.form for s in active),
                syn.gloss.text if syn.gloss else "",
                join_example_groups([e.text for e in s.examples] for s in active),
                "1" if syn.status is LexicalizationStatus.GAP else "0",
                join_multi(p.text for p in syn.phrasets),
            )
        )

    drows: list[Sequence[str]] = [DELTA_COLUMNS]
    for ev in sorted(events, key=lambda e: e.seq):
        if ev.kind not in _DELTA_KINDS or ev.payload.get("pos") != pos.value:
            continue
        value, detail = "", ""
        if ev.kind == "added-lemma":
            value = ev.payload["form"]
        elif ev.kind == "deleted-lemma":
            value = ev.payload["form"]
            r = ev.payload.get("reason") or {}
            detail = _emit_reason_item(
                DeletionReason(DeletionCode(r.get("code", "not-covered-by-gloss")), r.get("comment", ""))
            )
        elif ev.kind == "added-gloss":
            value = ev.payload["text"]
        elif ev.kind == "added-example":
            value = ev.payload["text"]
            detail = ev.payload.get("form") or ""
        elif ev.kind == "phraset-added":
            value = ev.payload["text"]
        drows.append((ev.task, pos.value, ev.kind, value, detail))
    return _encode_rows(frows), _encode_rows(drows)


# ---------------------------------------------------------------------------
# offline sheet work <-> workflow


def record_to_contribution(record: TaskRecord, language: str = "ar") -> Contribution | None:
    """Interpret a filled task-sheet row as a contribution.

    Returns None for an untouched row. Example groups align with the final
    lemma order: inherited survivors first (their original order), then new
    lemmas, matching how the draft is assembled.
    """
    if record.gap_flag:
        return MarkGap(
            phrasets=tuple(Phraset(text=t, language=language) for t in record.phrasets),
            comment=record.translator_comment,
        )
    touched = (
        record.new_lemmas
        or record.deleted_lemmas
        or record.ar_gloss
        or record.ar_examples
        or record.phrasets
    )
    if not touched:
        if record.translator_comment:
            return Skip(comment=record.translator_comment)
        return None

    deleted_norm = {normalize_form(f) for f in record.deleted_lemmas}
    survivors = [f for f in record.ar_lemmas_v1 if normalize_form(f) not in deleted_norm]
    final_order = survivors + list(record.new_lemmas)
    groups = record.ar_examples
    per_form: dict[int, tuple[Example, ...]] = {}
    for i in range(len(final_order)):
        texts: list[str] = list(groups[i]) if i < len(groups) else []
        if i == len(final_order) - 1 and len(groups) > len(final_order):
            for extra in groups[len(final_order):]:
                texts.extend(extra)
        per_form[i] = tuple(Example(text=t, language=language) for t in texts)

    sense_examples = tuple(
        (form, per_form[i]) for i, form in enumerate(survivors) if per_form.get(i)
    )
    add_senses = tuple(
        SenseDraft(form=form, examples=per_form.get(len(survivors) + j, ()))
        for j, form in enumerate(record.new_lemmas)
    )
    return MergeV1(
        add_senses=add_senses,
        delete_forms=tuple(zip(record.deleted_lemmas, record.deletion_reasons)),
        gloss=Gloss(text=record.ar_gloss, language=language) if record.ar_gloss else None,
        sense_examples=sense_examples,
        phrasets=tuple(Phraset(text=t, language=language) for t in record.phrasets),
    )


def task_to_record(view: TaskView, row_number: int = 2) -> TaskRecord:
    """Render a workflow task back into the task-sheet layout for offline work."""
    pivot_active = view.pivot.active_senses()
    v1_forms = view.v1.lemmas()
    new_lemmas: tuple[str, ...] = ()
    deleted: tuple[str, ...] = ()
    reasons: tuple[DeletionReason, ...] = ()
    ar_gloss = ""
    ar_groups: tuple[tuple[str, ...], ...] = ()
    gap_flag = False
    phrasets: tuple[str, ...] = ()
    comment = ""
    if view.draft is not None:
        draft = view.draft
        v1_norm = {normalize_form(f) for f in v1_forms}
        active = draft.active_senses()
        new_lemmas = tuple(
            s.form for s in active if normalize_form(s.form) not in v1_norm
        )
        pairs = [(s.form, s.deleted) for s in draft.deleted_senses() if s.deleted]
        deleted = tuple(f for f, _ in pairs)
        reasons = tuple(r for _, r in pairs)
        ar_gloss = draft.gloss.text if draft.gloss else ""
        ar_groups = tuple(tuple(e.text for e in s.examples) for s in active)
        gap_flag = draft.status is LexicalizationStatus.GAP
        phrasets = draft.phraset_texts()
    if isinstance(view.contribution, (MarkGap, Skip)):
        comment = view.contribution.comment
    validation_status = ""
    validation_comment = ""
    if view.state.kind is StateKind.APPROVED:
        validation_status = "accepted"
    elif view.state.kind is StateKind.EXPERT_REJECTED:
        validation_status = "rejected"
        validation_comment = view.state.comment or ""
    return TaskRecord(
        row_number=row_number,
        synset_id=view.id,
        pos=view.pos,
        en_lemmas=tuple(s.form for s in pivot_active),
        en_gloss=view.pivot.gloss.text if view.pivot.gloss else "",
        en_examples=tuple(tuple(e.text for e in s.examples) for s in pivot_active),
        ar_lemmas_v1=v1_forms,
        new_lemmas=new_lemmas,
        deleted_lemmas=deleted,
        deletion_reasons=reasons,
        ar_gloss=ar_gloss,
        ar_examples=ar_groups,
        gap_flag=gap_flag,
        phrasets=phrasets,
        translator_comment=comment,
        validation_status=validation_status,
        validation_comment=validation_comment,
    )
