"""Quality and progress metrics computed from the audit log and lexicon.

Counting rules:

* Component events (added-lemma, deleted-lemma, added-gloss, added-example,
  gap-marked, phraset-added) are the unit of counting. Events emitted by a
  workflow submission reference that submission; events from ingested result
  files reference none and count as approved work.
* Scope "approved" keeps components whose submission was expert-accepted
  (plus imports); scope "all" keeps every component. Skips never produce
  components, so skipped tasks never enter a denominator.
* An updated synset is one whose lemma set changed: it received at least one
  counted added-lemma, deleted-lemma, or gap-marked event. Gloss and example
  additions alone do not mark a synset as updated (there are far more new
  glosses than updated synsets in a typical run).
* Correctness covers expert-decided submissions only. Every component of a
  decided submission lands in its category's denominator; it is correct when
  the decision's checklist passed the criterion the category rides on
  (lemmas for lemma changes, gloss for glosses, examples for examples, gap
  for gap marks and phrasets). A rejected-then-fixed change therefore counts
  once per attempt. Undecided submissions are reported and excluded.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import (
    POS_ORDER,
    LexicalizationStatus,
    Lexicon,
    PartOfSpeech,
    Synset,
    normalize_form,
)
from .workflow import COMPONENT_KINDS, AuditEvent, StateKind

__all__ = [
    "PosCounts",
    "InputStats",
    "ContributionStats",
    "CategoryCount",
    "CorrectnessReport",
    "Finding",
    "PolysemyReport",
    "compute_input_stats",
    "compute_contribution_stats",
    "compute_correctness",
    "completeness_audit",
    "polysemy_report",
    "STAT_ROWS",
    "CATEGORY_ORDER",
    "format_table",
    "tsv_table",
]


@dataclass(frozen=True)
class PosCounts:
    noun: int = 0
    verb: int = 0
    adjective: int = 0
    adverb: int = 0

    @property
    def total(self) -> int:
        return self.noun + self.verb + self.adjective + self.adverb

    def get(self, pos: PartOfSpeech) -> int:
        return getattr(self, pos.value)

    @classmethod
    def from_mapping(cls, counts: Mapping[PartOfSpeech, int]) -> "PosCounts":
        return cls(**{p.value: counts.get(p, 0) for p in POS_ORDER})

    def cells(self) -> tuple[int, ...]:
        return (self.noun, self.verb, self.adjective, self.adverb, self.total)


STAT_ROWS = (
    ("updated_synsets", "Updated synsets"),
    ("new_lemmas", "New lemmas"),
    ("deleted_lemmas", "Deleted lemmas"),
    ("new_glosses", "New glosses"),
    ("new_examples", "New examples"),
    ("gaps", "Gaps"),
    ("phrasets", "Phrasets"),
)

_KIND_ROW = {
    "added-lemma": "new_lemmas",
    "deleted-lemma": "deleted_lemmas",
    "added-gloss": "new_glosses",
    "added-example": "new_examples",
    "gap-marked": "gaps",
    "phraset-added": "phrasets",
}

_LEMMA_SET_KINDS = frozenset({"added-lemma", "deleted-lemma", "gap-marked"})

CATEGORY_ORDER = (
    ("new_lemmas", "New lemmas", "lemmas"),
    ("deleted_lemmas", "Deleted lemmas", "lemmas"),
    ("new_glosses", "New glosses", "gloss"),
    ("new_examples", "New examples", "examples"),
    ("gaps", "Gaps", "gap"),
    ("phrasets", "Phrasets", "gap"),
)


@dataclass(frozen=True)
class InputStats:
    synsets: PosCounts
    words: PosCounts

    def to_dict(self) -> dict:
        return {
            "synsets": {**{p.value: self.synsets.get(p) for p in POS_ORDER}, "total": self.synsets.total},
            "words": {**{p.value: self.words.get(p) for p in POS_ORDER}, "total": self.words.total},
        }


@dataclass(frozen=True)
class ContributionStats:
    scope: str
    updated_synsets: PosCounts
    new_lemmas: PosCounts
    deleted_lemmas: PosCounts
    new_glosses: PosCounts
    new_examples: PosCounts
    gaps: PosCounts
    phrasets: PosCounts

    def row(self, key: str) -> PosCounts:
        return getattr(self, key)

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "rows": {
                key: {
                    **{p.value: self.row(key).get(p) for p in POS_ORDER},
                    "total": self.row(key).total,
                }
                for key, _ in STAT_ROWS
            },
        }


def compute_input_stats(synsets: Iterable[Synset]) -> InputStats:
    """Synsets and words (active senses) per POS, in the paper-table layout."""
    syn_counts: Counter = Counter()
    word_counts: Counter = Counter()
    for syn in synsets:
        syn_counts[syn.pos] += 1
        word_counts[syn.pos] += len(syn.active_senses())
    return InputStats(
        synsets=PosCounts.from_mapping(syn_counts),
        words=PosCounts.from_mapping(word_counts),
    )


def _submission_fates(events: Iterable[AuditEvent]) -> dict[int, bool]:
    """submission seq -> was it expert-accepted."""
    active: dict[str, int] = {}
    fates: dict[int, bool] = {}
    for ev in events:
        if ev.kind == "submitted" and ev.payload.get("state") == StateKind.SUBMITTED.value:
            active[ev.task] = ev.seq
            fates[ev.seq] = False
        elif ev.kind == "expert-decision":
            seq = active.get(ev.task)
            if seq is not None and ev.payload.get("state") == StateKind.APPROVED.value:
                fates[seq] = True
    return fates


def compute_contribution_stats(
    events: Iterable[AuditEvent], scope: str = "approved"
) -> ContributionStats:
    if scope not in ("approved", "all"):
        raise ValueError(f"scope must be 'approved' or 'all', got {scope!r}")
    events = list(events)
    fates = _submission_fates(events) if scope == "approved" else {}
    counts: dict[str, Counter] = {key: Counter() for key, _ in STAT_ROWS}
    updated: dict[PartOfSpeech, set[str]] = {p: set() for p in POS_ORDER}
    for ev in events:
        row = _KIND_ROW.get(ev.kind)
        if row is None:
            continue
        submission = ev.payload.get("submission")
        if scope == "approved" and submission is not None and not fates.get(submission, False):
            continue
        pos = PartOfSpeech(ev.payload["pos"])
        counts[row][pos] += 1
        if ev.kind in _LEMMA_SET_KINDS:
            updated[pos].add(ev.task)
    return ContributionStats(
        scope=scope,
        updated_synsets=PosCounts.from_mapping({p: len(updated[p]) for p in POS_ORDER}),
        new_lemmas=PosCounts.from_mapping(counts["new_lemmas"]),
        deleted_lemmas=PosCounts.from_mapping(counts["deleted_lemmas"]),
        new_glosses=PosCounts.from_mapping(counts["new_glosses"]),
        new_examples=PosCounts.from_mapping(counts["new_examples"]),
        gaps=PosCounts.from_mapping(counts["gaps"]),
        phrasets=PosCounts.from_mapping(counts["phrasets"]),
    )


# ---------------------------------------------------------------------------
# correctness


@dataclass(frozen=True)
class CategoryCount:
    correct: int = 0
    total: int = 0

    @property
    def ratio(self) -> float | None:
        if self.total == 0:
            return None
        return self.correct / self.total

    @property
    def percent(self) -> str:
        r = self.ratio
        return "-" if r is None else f"{r * 100:.2f}%"


@dataclass(frozen=True)
class CorrectnessReport:
    categories: dict[str, CategoryCount]
    overall: CategoryCount
    undecided: int

    def to_dict(self) -> dict:
        return {
            "categories": {
                key: {
                    "correct": self.categories[key].correct,
                    "total": self.categories[key].total,
                    "ratio": self.categories[key].ratio,
                }
                for key, _, _ in CATEGORY_ORDER
            },
            "overall": {
                "correct": self.overall.correct,
                "total": self.overall.total,
                "ratio": self.overall.ratio,
            },
            "undecided": self.undecided,
        }


def compute_correctness(events: Iterable[AuditEvent]) -> CorrectnessReport:
    """Expert-validated correctness per category, pooled overall.

    0 <= ratio <= 1 holds by construction; 97 correct of 100 reports as
    97.00%. Categories with an empty denominator report no ratio.
    """
    events = list(events)
    components: dict[int, Counter] = {}
    decided: dict[int, dict] = {}
    last_submission: dict[str, int] = {}
    criterion_of = {key: crit for key, _, crit in CATEGORY_ORDER}

    for ev in events:
        if ev.kind == "submitted" and ev.payload.get("state") == StateKind.SUBMITTED.value:
            components[ev.seq] = Counter()
            last_submission[ev.task] = ev.seq
        elif ev.kind in COMPONENT_KINDS:
            submission = ev.payload.get("submission")
            if submission in components:
                category = _KIND_ROW[ev.kind]
                components[submission][category] += 1
        elif ev.kind == "expert-decision":
            seq = last_submission.get(ev.task)
            if seq is not None and seq in components:
                decided[seq] = ev.payload["decision"]

    correct: Counter = Counter()
    total: Counter = Counter()
    undecided = 0
    in_flight = set(last_submission.values())
    for seq, counter in components.items():
        decision = decided.get(seq)
        if decision is None:
            # superseded attempts never reached the expert and stay out of
            # scope; the task's current submission is reported as undecided
            if seq in in_flight:
                undecided += 1
            continue
        checklist = decision.get("checklist", {})
        for category, n in counter.items():
            total[category] += n
            if bool(checklist.get(criterion_of[category], True)):
                correct[category] += n

    categories = {
        key: CategoryCount(correct=correct[key], total=total[key])
        for key, _, _ in CATEGORY_ORDER
    }
    overall = CategoryCount(correct=sum(correct.values()), total=sum(total.values()))
    return CorrectnessReport(categories=categories, overall=overall, undecided=undecided)


# ---------------------------------------------------------------------------
# completeness audit


@dataclass(frozen=True)
class Finding:
    kind: str
    synset_id: str
    detail: str


def completeness_audit(lexicon: Lexicon) -> tuple[Finding, ...]:
    """Work still owed on a lexicon. Empty for a fully approved one.

    Pending synsets are skipped: being unworked is their status, not a
    finding. Lexicalized synsets owe a gloss and one example per active
    sense; gaps owe phrasets.
    """
    findings: list[Finding] = []
    for syn in lexicon.synsets():
        if syn.status is LexicalizationStatus.PENDING:
            continue
        if syn.status is LexicalizationStatus.GAP:
            if not syn.phrasets:
                findings.append(Finding("gap-without-phraset", syn.id, "no phrasets"))
            continue
        active = syn.active_senses()
        if not active:
            findings.append(Finding("empty-synset", syn.id, "no active senses"))
        if syn.gloss is None:
            findings.append(Finding("missing-gloss", syn.id, "no gloss"))
        for s in active:
            if not s.examples:
                findings.append(
                    Finding("sense-without-example", syn.id, f"sense {s.form!r}")
                )
    return tuple(findings)


# ---------------------------------------------------------------------------
# polysemy screening


@dataclass(frozen=True)
class PolysemyReport:
    """Advisory screen for suspicious polysemy. Never blocks anything.

    ``histogram`` maps each normalized active form to the number of synsets
    it appears in; the sum over the histogram equals the number of active
    (form, synset) pairs. Candidates of degree >= k are tagged
    "compound-noun" when the form is also a token inside multi-word active
    forms of two or more other synsets, else "polysemy".
    """

    k: int
    histogram: dict[str, int]
    candidates: tuple[tuple[str, int, str], ...]

    @property
    def total_pairs(self) -> int:
        return sum(self.histogram.values())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "total_pairs": self.total_pairs,
            "candidates": [
                {"form": f, "degree": d, "tag": t} for f, d, t in self.candidates
            ],
        }


def polysemy_report(lexicon: Lexicon, k: int = 2) -> PolysemyReport:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    synsets_of: dict[str, set[str]] = {}
    token_hosts: dict[str, set[str]] = {}
    for syn in lexicon.synsets():
        for s in syn.active_senses():
            norm = normalize_form(s.form)
            synsets_of.setdefault(norm, set()).add(syn.id)
            tokens = norm.split()
            if len(tokens) > 1:
                for tok in tokens:
                    token_hosts.setdefault(tok, set()).add(syn.id)
    histogram = {form: len(ids) for form, ids in synsets_of.items()}
    candidates = []
    for form, degree in histogram.items():
        if degree < k:
            continue
        hosts = token_hosts.get(form, set()) - synsets_of[form]
        tag = "compound-noun" if len(hosts) >= 2 else "polysemy"
        candidates.append((form, degree, tag))
    candidates.sort(key=lambda c: (-c[1], c[0]))
    return PolysemyReport(k=k, histogram=histogram, candidates=tuple(candidates))


# ---------------------------------------------------------------------------
# rendering


def format_table(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> str:
    """Plain text table, first column left-aligned, the rest right-aligned."""
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(row: tuple[str, ...]) -> str:
        cells = [row[0].ljust(widths[0])]
        cells += [row[i].rjust(widths[i]) for i in range(1, len(row))]
        return "  ".join(cells).rstrip()
    lines = [fmt(header), fmt(tuple("-" * w for w in widths))]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines) + "\n"


def tsv_table(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(r) for r in rows)
    return "\n".join(lines) + "\n"


_POS_HEADER = ("", "Noun", "Verb", "Adjective", "Adverb", "Total")


def _counts_row(label: str, counts: PosCounts, pretty: bool) -> tuple[str, ...]:
    fmt = (lambda n: f"{n:,}") if pretty else str
    return (label, *[fmt(c) for c in counts.cells()])


def render_input_stats(stats: InputStats, fmt: str = "table") -> str:
    rows = [
        _counts_row("Synsets", stats.synsets, fmt == "table"),
        _counts_row("Words", stats.words, fmt == "table"),
    ]
    if fmt == "table":
        return format_table(_POS_HEADER, rows)
    return tsv_table(_POS_HEADER, rows)


def render_contribution_stats(stats: ContributionStats, fmt: str = "table") -> str:
    rows = [
        _counts_row(label, stats.row(key), fmt == "table") for key, label in STAT_ROWS
    ]
    if fmt == "table":
        return format_table(_POS_HEADER, rows)
    return tsv_table(_POS_HEADER, rows)


def render_correctness(report: CorrectnessReport, fmt: str = "table") -> str:
    header = ("", "Correct", "Total", "Correctness")
    rows = []
    for key, label, _ in CATEGORY_ORDER:
        c = report.categories[key]
        rows.append((label, str(c.correct), str(c.total), c.percent))
    rows.append(("Total", str(report.overall.correct), str(report.overall.total), report.overall.percent))
    if fmt == "table":
        return format_table(header, rows)
    return tsv_table(header, rows)


def render_findings(findings: Iterable[Finding], fmt: str = "table") -> str:
    header = ("Kind", "Synset", "Detail")
    rows = [(f.kind, f.synset_id, f.detail) for f in findings]
    if fmt == "table":
        return format_table(header, rows)
    return tsv_table(header, rows)
