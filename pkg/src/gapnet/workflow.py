"""Contribution workflow: task states, reviews, and the audit log.

Every synset travels through a two-cycle pipeline. A translator submits a
contribution (translate the concept, merge the inherited senses, mark a
lexical gap, or skip); a second translator peer-reviews it (four-eyes rule,
never the author); an expert gives the final verdict against a four-point
checklist (gap, gloss, lemmas, examples). Only an expert accept commits the
draft synset to the target lexicon.

All state lives in an append-only audit log with contiguous sequence numbers.
Commands validate, append events, then apply them through the same transition
function the replayer uses, so replaying a log always reproduces the exact
task states and lexicon of the engine that wrote it.

Audit log external format: newline-delimited JSON, one event per line, keys
in the order seq, ts, actor, task, kind, payload.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Callable, Container, Iterable, Mapping

from .canonical import synset_from_dict, synset_to_dict
from .core import (
    POS_ORDER,
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
    alignment_suffix,
    normalize_form,
    validate_synset,
)
from .errors import (
    ConfigError,
    GapnetError,
    IllegalStateError,
    IllegalTransitionError,
    InvariantViolation,
    LogSequenceError,
    RejectWithoutCommentError,
    SelfReviewError,
    StaleVersionError,
    UnknownActorError,
    UnknownTaskError,
    WrongRoleError,
)

__all__ = [
    "Role",
    "Actor",
    "SenseDraft",
    "MarkGap",
    "Translate",
    "MergeV1",
    "Skip",
    "Contribution",
    "Verdict",
    "Checklist",
    "ReviewDecision",
    "StateKind",
    "TaskState",
    "TaskView",
    "AuditEvent",
    "GenerationReport",
    "WorkflowEngine",
    "replay_audit_log",
    "build_draft",
    "decompose_changes",
    "contribution_to_dict",
    "contribution_from_dict",
    "decision_to_dict",
    "decision_from_dict",
    "event_to_json_line",
    "event_from_json_line",
    "STATE_CHANGE_KINDS",
    "COMPONENT_KINDS",
    "EPOCH_TIMESTAMP",
]


class Role(str, Enum):
    TRANSLATOR = "translator"
    EXPERT = "expert"


@dataclass(frozen=True)
class Actor:
    id: str
    role: Role


# ---------------------------------------------------------------------------
# contributions


@dataclass(frozen=True)
class SenseDraft:
    """A proposed written form with its illustrative examples."""

    form: str
    examples: tuple[Example, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "examples", tuple(self.examples))


@dataclass(frozen=True)
class MarkGap:
    """Assert the concept is not lexicalized; phrasets carry the meaning."""

    phrasets: tuple[Phraset, ...]
    comment: str = ""

    def __post_init__(self):
        object.__setattr__(self, "phrasets", tuple(self.phrasets))
        if not self.phrasets:
            raise InvariantViolation(
                "marking a gap requires at least one phraset",
                invariant="gap-requires-phraset",
                field="contribution.phrasets",
            )


@dataclass(frozen=True)
class Translate:
    """A fresh translation of the concept: gloss, ranked senses, phrasets."""

    gloss: Gloss
    senses: tuple[SenseDraft, ...]
    phrasets: tuple[Phraset, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "senses", tuple(self.senses))
        object.__setattr__(self, "phrasets", tuple(self.phrasets))
        if not self.senses:
            raise InvariantViolation(
                "a translation needs at least one sense",
                invariant="lexicalized-requires-sense",
                field="contribution.senses",
            )
        for s in self.senses:
            if not s.examples:
                raise InvariantViolation(
                    f"translated sense {s.form!r} needs at least one example",
                    invariant="sense-requires-example",
                    field="contribution.senses",
                )


@dataclass(frozen=True)
class MergeV1:
    """Curate the inherited sense set instead of retranslating.

    Deletions name surviving-baseline forms and carry a reason each; added
    senses are appended after the survivors. ``copy_gloss``/``copy_examples``
    keep whatever the inherited synset already had; ``gloss`` overrides.
    ``sense_examples`` attaches new examples to surviving forms.
    """

    add_senses: tuple[SenseDraft, ...] = ()
    delete_forms: tuple[tuple[str, DeletionReason], ...] = ()
    gloss: Gloss | None = None
    sense_examples: tuple[tuple[str, tuple[Example, ...]], ...] = ()
    phrasets: tuple[Phraset, ...] = ()
    copy_gloss: bool = True
    copy_examples: bool = True

    def __post_init__(self):
        object.__setattr__(self, "add_senses", tuple(self.add_senses))
        object.__setattr__(self, "delete_forms", tuple(tuple(d) for d in self.delete_forms))
        object.__setattr__(
            self, "sense_examples", tuple((f, tuple(ex)) for f, ex in self.sense_examples)
        )
        object.__setattr__(self, "phrasets", tuple(self.phrasets))


@dataclass(frozen=True)
class Skip:
    """Decline the task, e.g. a named entity that slipped through the filter."""

    comment: str

    def __post_init__(self):
        if not self.comment.strip():
            raise InvariantViolation(
                "skipping requires a comment",
                invariant="skip-requires-comment",
                field="contribution.comment",
            )


Contribution = MarkGap | Translate | MergeV1 | Skip


# ---------------------------------------------------------------------------
# review decisions


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"


CRITERIA = ("gap", "gloss", "lemmas", "examples")


@dataclass(frozen=True)
class Checklist:
    """The four review criteria; False marks a failed criterion."""

    gap: bool = True
    gloss: bool = True
    lemmas: bool = True
    examples: bool = True

    def failed(self) -> tuple[str, ...]:
        return tuple(c for c in CRITERIA if not getattr(self, c))

    def to_dict(self) -> dict:
        return {c: getattr(self, c) for c in CRITERIA}


@dataclass(frozen=True)
class ReviewDecision:
    verdict: Verdict
    checklist: Checklist = Checklist()
    comment: str = ""
    counter_lemma: str | None = None

    def __post_init__(self):
        failed = self.checklist.failed()
        if self.verdict is Verdict.REJECT:
            if not self.comment.strip():
                raise RejectWithoutCommentError(
                    "a rejection must say why", field="decision.comment"
                )
            if not failed:
                raise InvariantViolation(
                    "a rejection must fail at least one checklist criterion",
                    invariant="reject-requires-failed-criterion",
                    field="decision.checklist",
                )
        else:
            if failed:
                raise InvariantViolation(
                    "an acceptance cannot carry failed criteria",
                    invariant="accept-requires-clean-checklist",
                    field="decision.checklist",
                )


# ---------------------------------------------------------------------------
# task states


class StateKind(str, Enum):
    GENERATED = "generated"
    IN_TRANSLATION = "in-translation"
    SUBMITTED = "submitted"
    PEER_REVIEW = "peer-review"
    CHANGES_REQUESTED = "changes-requested"
    PEER_ACCEPTED = "peer-accepted"
    EXPERT_REVIEW = "expert-review"
    APPROVED = "approved"
    EXPERT_REJECTED = "expert-rejected"
    SKIPPED = "skipped"


TERMINAL_STATES = frozenset({StateKind.APPROVED})


@dataclass(frozen=True)
class TaskState:
    kind: StateKind
    actor: str | None = None
    comment: str | None = None


@dataclass
class _Task:
    """Engine-internal mutable record; external code sees TaskView."""

    id: str
    pos: PartOfSpeech
    pivot: Synset
    v1: Synset
    state: TaskState
    version: int
    submitter: str | None = None
    contribution: Contribution | None = None
    draft: Synset | None = None
    submission_seq: int | None = None


@dataclass(frozen=True)
class TaskView:
    id: str
    pos: PartOfSpeech
    state: TaskState
    version: int
    submitter: str | None
    pivot: Synset
    v1: Synset
    draft: Synset | None
    contribution: Contribution | None
    submission_seq: int | None


# ---------------------------------------------------------------------------
# audit events

STATE_CHANGE_KINDS = frozenset(
    {
        "task-generated",
        "claimed",
        "submitted",
        "peer-decision",
        "advanced",
        "expert-decision",
    }
)

COMPONENT_KINDS = frozenset(
    {
        "added-lemma",
        "deleted-lemma",
        "added-gloss",
        "added-example",
        "gap-marked",
        "phraset-added",
    }
)

EPOCH_TIMESTAMP = "1970-01-01T00:00:00+00:00"


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass(frozen=True)
class AuditEvent:
    seq: int
    timestamp: str
    actor: str
    task: str
    kind: str
    payload: dict


def event_to_json_line(event: AuditEvent) -> str:
    doc = {
        "seq": event.seq,
        "ts": event.timestamp,
        "actor": event.actor,
        "task": event.task,
        "kind": event.kind,
        "payload": event.payload,
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def event_from_json_line(line: str) -> AuditEvent:
    doc = json.loads(line)
    return AuditEvent(
        seq=doc["seq"],
        timestamp=doc["ts"],
        actor=doc["actor"],
        task=doc["task"],
        kind=doc["kind"],
        payload=doc["payload"],
    )


# ---------------------------------------------------------------------------
# contribution / decision serialization


def _example_dicts(examples: Iterable[Example]) -> list[dict]:
    return [{"text": e.text, "language": e.language} for e in examples]


def _examples_from(dicts: Iterable[Mapping]) -> tuple[Example, ...]:
    return tuple(Example(text=d["text"], language=d["language"]) for d in dicts)


def _phraset_dicts(phrasets: Iterable[Phraset]) -> list[dict]:
    return [
        {"text": p.text, "language": p.language, "examples": _example_dicts(p.examples)}
        for p in phrasets
    ]


def _phrasets_from(dicts: Iterable[Mapping]) -> tuple[Phraset, ...]:
    return tuple(
        Phraset(
            text=d["text"],
            language=d["language"],
            examples=_examples_from(d.get("examples", ())),
        )
        for d in dicts
    )


def contribution_to_dict(c: Contribution) -> dict:
    if isinstance(c, MarkGap):
        return {"type": "mark-gap", "phrasets": _phraset_dicts(c.phrasets), "comment": c.comment}
    if isinstance(c, Translate):
        return {
            "type": "translate",
            "gloss": {"text": c.gloss.text, "language": c.gloss.language},
            "senses": [
                {"form": s.form, "examples": _example_dicts(s.examples)} for s in c.senses
            ],
            "phrasets": _phraset_dicts(c.phrasets),
        }
    if isinstance(c, MergeV1):
        return {
            "type": "merge-v1",
            "add": [{"form": s.form, "examples": _example_dicts(s.examples)} for s in c.add_senses],
            "delete": [
                {"form": f, "reason": {"code": r.code.value, "comment": r.comment}}
                for f, r in c.delete_forms
            ],
            "gloss": (
                {"text": c.gloss.text, "language": c.gloss.language} if c.gloss else None
            ),
            "sense_examples": [
                {"form": f, "examples": _example_dicts(ex)} for f, ex in c.sense_examples
            ],
            "phrasets": _phraset_dicts(c.phrasets),
            "copy_gloss": c.copy_gloss,
            "copy_examples": c.copy_examples,
        }
    if isinstance(c, Skip):
        return {"type": "skip", "comment": c.comment}
    raise TypeError(f"not a contribution: {c!r}")


def contribution_from_dict(d: Mapping) -> Contribution:
    kind = d.get("type")
    if kind == "mark-gap":
        return MarkGap(phrasets=_phrasets_from(d["phrasets"]), comment=d.get("comment", ""))
    if kind == "translate":
        g = d["gloss"]
        return Translate(
            gloss=Gloss(text=g["text"], language=g["language"]),
            senses=tuple(
                SenseDraft(form=s["form"], examples=_examples_from(s.get("examples", ())))
                for s in d["senses"]
            ),
            phrasets=_phrasets_from(d.get("phrasets", ())),
        )
    if kind == "merge-v1":
        g = d.get("gloss")
        return MergeV1(
            add_senses=tuple(
                SenseDraft(form=s["form"], examples=_examples_from(s.get("examples", ())))
                for s in d.get("add", ())
            ),
            delete_forms=tuple(
                (
                    x["form"],
                    DeletionReason(
                        DeletionCode(x["reason"]["code"]), x["reason"].get("comment", "")
                    ),
                )
                for x in d.get("delete", ())
            ),
            gloss=Gloss(text=g["text"], language=g["language"]) if g else None,
            sense_examples=tuple(
                (x["form"], _examples_from(x.get("examples", ())))
                for x in d.get("sense_examples", ())
            ),
            phrasets=_phrasets_from(d.get("phrasets", ())),
            copy_gloss=bool(d.get("copy_gloss", True)),
            copy_examples=bool(d.get("copy_examples", True)),
        )
    if kind == "skip":
        return Skip(comment=d.get("comment", ""))
    raise ValueError(f"unknown contribution type: {kind!r}")


def decision_to_dict(d: ReviewDecision) -> dict:
    return {
        "verdict": d.verdict.value,
        "checklist": d.checklist.to_dict(),
        "comment": d.comment,
        "counter_lemma": d.counter_lemma,
    }


def decision_from_dict(d: Mapping) -> ReviewDecision:
    cl = d.get("checklist", {})
    return ReviewDecision(
        verdict=Verdict(d["verdict"]),
        checklist=Checklist(**{c: bool(cl.get(c, True)) for c in CRITERIA}),
        comment=d.get("comment", ""),
        counter_lemma=d.get("counter_lemma"),
    )


# ---------------------------------------------------------------------------
# draft construction and change decomposition


def build_draft(task_v1: Synset, task_pivot: Synset, contribution: Contribution,
                prior_draft: Synset | None = None) -> Synset | None:
    """Materialize the synset a contribution proposes. None for Skip.

    The draft must already satisfy commit-level invariants (gloss present,
    every active sense exemplified, gap content complete); submission is the
    last gate where the author can still fix things cheaply.

    When a gap claim was rejected and the task is retranslated, the prior
    draft's phrasets are kept on the new draft: a meaning expression stays
    useful even once a lexicalization is found.
    """
    if isinstance(contribution, Skip):
        return None

    target_id = task_v1.id
    pos = task_v1.pos
    pivot_ref = task_pivot.id

    if isinstance(contribution, MarkGap):
        draft = Synset(
            id=target_id,
            pos=pos,
            pivot_ref=pivot_ref,
            status=LexicalizationStatus.GAP,
            gloss=None,
            senses=(),
            phrasets=contribution.phrasets,
        )
    elif isinstance(contribution, Translate):
        v1_forms = {normalize_form(f) for f in task_v1.lemmas()}
        senses = []
        for i, sd in enumerate(contribution.senses, start=1):
            prov = (
                Provenance.IMPORTED_V1
                if normalize_form(sd.form) in v1_forms
                else Provenance.ADDED
            )
            senses.append(Sense(form=sd.form, rank=i, provenance=prov, examples=sd.examples))
        # inherited forms not retained are recorded as deletions
        kept = {normalize_form(s.form) for s in senses}
        for old in task_v1.active_senses():
            if normalize_form(old.form) not in kept:
                senses.append(
                    replace(old, deleted=DeletionReason(DeletionCode.NOT_COVERED_BY_GLOSS))
                )
        phrasets = list(contribution.phrasets)
        if prior_draft is not None and prior_draft.status is LexicalizationStatus.GAP:
            have = {normalize_form(p.text) for p in phrasets}
            for p in prior_draft.phrasets:
                if normalize_form(p.text) not in have:
                    phrasets.append(p)
        draft = Synset(
            id=target_id,
            pos=pos,
            pivot_ref=pivot_ref,
            status=LexicalizationStatus.LEXICALIZED,
            gloss=contribution.gloss,
            senses=tuple(senses),
            phrasets=tuple(phrasets),
        )
    elif isinstance(contribution, MergeV1):
        base = list(task_v1.active_senses())
        base_forms = {normalize_form(s.form): s for s in base}
        to_delete: dict[str, DeletionReason] = {}
        for form, reason in contribution.delete_forms:
            norm = normalize_form(form)
            if norm not in base_forms:
                raise InvariantViolation(
                    f"cannot delete {form!r}: not an inherited form of {target_id}",
                    invariant="unknown-form",
                    field="contribution.delete",
                )
            to_delete[norm] = reason
        extra_examples = {}
        for form, examples in contribution.sense_examples:
            extra_examples[normalize_form(form)] = tuple(examples)
        senses: list[Sense] = []
        rank = 1
        for old in base:
            norm = normalize_form(old.form)
            if norm in to_delete:
                continue
            examples = old.examples if contribution.copy_examples else ()
            examples = examples + extra_examples.pop(norm, ())
            senses.append(replace(old, rank=rank, examples=examples))
            rank += 1
        for sd in contribution.add_senses:
            norm = normalize_form(sd.form)
            examples = sd.examples + extra_examples.pop(norm, ())
            senses.append(
                Sense(form=sd.form, rank=rank, provenance=Provenance.ADDED, examples=examples)
            )
            rank += 1
        if extra_examples:
            raise InvariantViolation(
                f"examples target unknown forms: {sorted(extra_examples)}",
                invariant="unknown-form",
                field="contribution.sense_examples",
            )
        for old in base:
            norm = normalize_form(old.form)
            if norm in to_delete:
                senses.append(replace(old, deleted=to_delete[norm]))
        gloss = contribution.gloss
        if gloss is None and contribution.copy_gloss:
            gloss = task_v1.gloss
        draft = Synset(
            id=target_id,
            pos=pos,
            pivot_ref=pivot_ref,
            status=LexicalizationStatus.LEXICALIZED,
            gloss=gloss,
            senses=tuple(senses),
            phrasets=contribution.phrasets,
        )
    else:
        raise TypeError(f"not a contribution: {contribution!r}")

    # commit-level check now, not at approval time
    validate_synset(replace(draft, approved=True))
    return draft


def decompose_changes(
    baseline: Synset, draft: Synset, submission_seq: int | None
) -> list[tuple[str, dict]]:
    """Component changes a draft makes relative to the inherited synset.

    Returned as (kind, payload) pairs in a deterministic order: gap mark,
    lemma deletions (baseline rank order), lemma additions (draft rank
    order), gloss, examples (draft order), phrasets (draft order). Marking
    a gap does not emit lemma deletions: the inherited senses are dropped
    as a consequence of the status, not as curation of the lemma set.
    """
    pos = draft.pos.value
    head = {"pos": pos, "submission": submission_seq}
    out: list[tuple[str, dict]] = []

    base_forms = {normalize_form(s.form): s for s in baseline.active_senses()}
    draft_forms = {normalize_form(s.form): s for s in draft.active_senses()}

    if draft.status is LexicalizationStatus.GAP:
        if baseline.status is not LexicalizationStatus.GAP:
            out.append(("gap-marked", dict(head)))
    else:
        for old in baseline.active_senses():
            norm = normalize_form(old.form)
            if norm not in draft_forms:
                reason = next(
                    (
                        s.deleted
                        for s in draft.deleted_senses()
                        if normalize_form(s.form) == norm and s.deleted
                    ),
                    DeletionReason(DeletionCode.NOT_COVERED_BY_GLOSS),
                )
                out.append(
                    (
                        "deleted-lemma",
                        dict(
                            head,
                            form=old.form,
                            reason={"code": reason.code.value, "comment": reason.comment},
                        ),
                    )
                )
        for s in draft.active_senses():
            if normalize_form(s.form) not in base_forms:
                out.append(("added-lemma", dict(head, form=s.form)))

    if draft.gloss is not None and (
        baseline.gloss is None or baseline.gloss.text != draft.gloss.text
    ):
        out.append(
            ("added-gloss", dict(head, text=draft.gloss.text, language=draft.gloss.language))
        )

    for s in draft.active_senses():
        old = base_forms.get(normalize_form(s.form))
        old_texts = {e.text for e in old.examples} if old else set()
        for e in s.examples:
            if e.text not in old_texts:
                out.append(
                    ("added-example", dict(head, form=s.form, text=e.text, language=e.language))
                )

    base_phrasets = {normalize_form(p.text) for p in baseline.phrasets}
    for p in draft.phrasets:
        if normalize_form(p.text) not in base_phrasets:
            out.append(("phraset-added", dict(head, text=p.text, language=p.language)))

    return out


# ---------------------------------------------------------------------------
# the engine


@dataclass
class GenerationReport:
    created: dict[PartOfSpeech, int]
    excluded: int
    unaligned: list[str]

    @property
    def total(self) -> int:
        return sum(self.created.values())


class WorkflowEngine:
    """Single-writer workflow engine over one target lexicon.

    ``sink`` is called with each event before it is applied; a persistent
    store uses it to make the log line durable before the command returns.
    ``clock`` returns the timestamp string for new events (injectable for
    deterministic logs).
    """

    def __init__(
        self,
        actors: Iterable[Actor] = (),
        *,
        language: str = "ar",
        tag: str = "awn",
        clock: Callable[[], str] | None = None,
        sink: Callable[[AuditEvent], None] | None = None,
        return_to_author: bool = True,
        require_roster: bool = True,
    ):
        self._actors: dict[str, Actor] = {}
        for a in actors:
            if a.id in self._actors:
                raise ConfigError(f"duplicate actor id {a.id!r}", field="actors")
            self._actors[a.id] = a
        if require_roster:
            translators = sum(1 for a in self._actors.values() if a.role is Role.TRANSLATOR)
            experts = sum(1 for a in self._actors.values() if a.role is Role.EXPERT)
            if translators < 2 or experts < 1:
                raise ConfigError(
                    "roster needs at least two translators (four-eyes rule) and one expert",
                    field="actors",
                )
        self._lexicon = Lexicon(language, tag)
        self._tasks: dict[str, _Task] = {}
        self._log: list[AuditEvent] = []
        self._seq = 0
        self._clock = clock or utc_now_iso
        self._sink = sink
        self._return_to_author = return_to_author
        self._lock = threading.Lock()

    # -- plumbing -------------------------------------------------------------

    @property
    def language(self) -> str:
        return self._lexicon.language

    @property
    def tag(self) -> str:
        return self._lexicon.tag

    def lexicon(self) -> Lexicon:
        return self._lexicon

    def actors(self) -> tuple[Actor, ...]:
        return tuple(self._actors[k] for k in sorted(self._actors))

    def events(self) -> tuple[AuditEvent, ...]:
        with self._lock:
            return tuple(self._log)

    def set_sink(self, sink: Callable[[AuditEvent], None] | None) -> None:
        self._sink = sink

    def set_clock(self, clock: Callable[[], str]) -> None:
        self._clock = clock

    def _next_event(self, kind: str, actor: str, task: str, payload: dict) -> AuditEvent:
        self._seq += 1
        return AuditEvent(
            seq=self._seq,
            timestamp=self._clock(),
            actor=actor,
            task=task,
            kind=kind,
            payload=payload,
        )

    def _commit(self, events: list[AuditEvent]) -> None:
        # durability first: a line on disk for every acknowledged change
        if self._sink is not None:
            for ev in events:
                self._sink(ev)
        for ev in events:
            self._apply(ev)
            self._log.append(ev)

    def _require_actor(self, actor_id: str) -> Actor:
        actor = self._actors.get(actor_id)
        if actor is None:
            raise UnknownActorError(f"no actor {actor_id!r} in the roster", field="actor")
        return actor

    def _require_task(self, task_id: str) -> _Task:
        task = self._tasks.get(task_id)
        if task is None:
            raise UnknownTaskError(f"no task {task_id!r}", field="task_id")
        return task

    @staticmethod
    def _check_version(task: _Task, observed_version: int) -> None:
        if observed_version != task.version:
            raise StaleVersionError(
                f"task {task.id} is at version {task.version}, request observed"
                f" {observed_version}",
                field="observedVersion",
            )

    # -- task generation ------------------------------------------------------

    def generate_tasks(
        self,
        pivot: Lexicon,
        v1: Lexicon,
        exclude: Container[str] = frozenset(),
    ) -> GenerationReport:
        """One task per aligned pivot/v1 synset pair, minus the exclusion list.

        Alignment is by id suffix (tag stripped). Unaligned or pos-mismatched
        v1 synsets are reported, not fatal.
        """
        with self._lock:
            by_suffix = {alignment_suffix(p.id): p for p in pivot.synsets()}
            created: dict[PartOfSpeech, int] = {p: 0 for p in POS_ORDER}
            excluded = 0
            unaligned: list[str] = []
            pairs: list[tuple[Synset, Synset]] = []
            seen_suffixes: set[str] = set()
            for syn in v1.synsets():
                if syn.id in exclude:
                    excluded += 1
                    continue
                suffix = alignment_suffix(syn.id)
                seen_suffixes.add(suffix)
                psyn = by_suffix.get(suffix)
                if psyn is None:
                    unaligned.append(f"{syn.id}: no pivot synset")
                    continue
                if psyn.pos is not syn.pos:
                    unaligned.append(f"{syn.id}: pos differs from pivot {psyn.id}")
                    continue
                pairs.append((psyn, syn))
            for suffix, psyn in sorted(by_suffix.items()):
                if suffix not in seen_suffixes:
                    unaligned.append(f"{psyn.id}: no inherited synset")
            pairs.sort(key=lambda pv: (POS_ORDER.index(pv[1].pos), pv[1].id))

            events: list[AuditEvent] = []
            if self._seq == 0:
                events.append(
                    self._next_event(
                        "log-opened",
                        "system",
                        "-",
                        {
                            "language": self._lexicon.language,
                            "tag": self._lexicon.tag,
                            "actors": [
                                {"id": a.id, "role": a.role.value} for a in self.actors()
                            ],
                        },
                    )
                )
            for psyn, syn in pairs:
                if syn.id in self._tasks:
                    unaligned.append(f"{syn.id}: task already exists")
                    continue
                events.append(
                    self._next_event(
                        "task-generated",
                        "system",
                        syn.id,
                        {
                            "pos": syn.pos.value,
                            "pivot": synset_to_dict(psyn),
                            "v1": synset_to_dict(syn),
                            "state": StateKind.GENERATED.value,
                        },
                    )
                )
                created[syn.pos] += 1
            self._commit(events)
            return GenerationReport(created=created, excluded=excluded, unaligned=unaligned)

    # -- commands ---------------------------------------------------------------

    def claim(self, task_id: str, actor_id: str, observed_version: int) -> TaskView:
        """Take a task: for translation from the open states, for peer review
        from Submitted. Returned tasks may only be reclaimed by their author."""
        with self._lock:
            task = self._require_task(task_id)
            actor = self._require_actor(actor_id)
            self._check_version(task, observed_version)
            target = self._claim_target(task, actor)
            ev = self._next_event(
                "claimed", actor_id, task_id, {"state": target.value}
            )
            self._commit([ev])
            return self._view(task)

    def submit(
        self,
        task_id: str,
        actor_id: str,
        contribution: Contribution,
        observed_version: int,
    ) -> TaskView:
        with self._lock:
            task = self._require_task(task_id)
            actor = self._require_actor(actor_id)
            self._check_version(task, observed_version)
            self._check_submit(task, actor)
            draft = build_draft(task.v1, task.pivot, contribution, task.draft)
            new_kind = StateKind.SKIPPED if isinstance(contribution, Skip) else StateKind.SUBMITTED
            ev = self._next_event(
                "submitted",
                actor_id,
                task_id,
                {
                    "contribution": contribution_to_dict(contribution),
                    "state": new_kind.value,
                },
            )
            events = [ev]
            if draft is not None:
                for kind, payload in decompose_changes(task.v1, draft, ev.seq):
                    events.append(self._next_event(kind, actor_id, task_id, payload))
            self._commit(events)
            return self._view(task)

    def peer_review(
        self,
        task_id: str,
        actor_id: str,
        decision: ReviewDecision,
        observed_version: int,
    ) -> TaskView:
        with self._lock:
            task = self._require_task(task_id)
            actor = self._require_actor(actor_id)
            self._check_version(task, observed_version)
            self._check_peer(task, actor)
            if decision.verdict is Verdict.ACCEPT:
                events = [
                    self._next_event(
                        "peer-decision",
                        actor_id,
                        task_id,
                        {
                            "decision": decision_to_dict(decision),
                            "state": StateKind.PEER_ACCEPTED.value,
                        },
                    ),
                    self._next_event(
                        "advanced", actor_id, task_id, {"state": StateKind.EXPERT_REVIEW.value}
                    ),
                ]
            else:
                events = [
                    self._next_event(
                        "peer-decision",
                        actor_id,
                        task_id,
                        {
                            "decision": decision_to_dict(decision),
                            "state": StateKind.CHANGES_REQUESTED.value,
                        },
                    )
                ]
            self._commit(events)
            return self._view(task)

    def expert_review(
        self,
        task_id: str,
        actor_id: str,
        decision: ReviewDecision,
        observed_version: int,
    ) -> TaskView:
        with self._lock:
            task = self._require_task(task_id)
            actor = self._require_actor(actor_id)
            self._check_version(task, observed_version)
            self._check_expert(task, actor)
            new_kind = (
                StateKind.APPROVED
                if decision.verdict is Verdict.ACCEPT
                else StateKind.EXPERT_REJECTED
            )
            ev = self._next_event(
                "expert-decision",
                actor_id,
                task_id,
                {"decision": decision_to_dict(decision), "state": new_kind.value},
            )
            self._commit([ev])
            return self._view(task)

    # -- legality checks (shared by commands and replay) ----------------------

    def _claim_target(self, task: _Task, actor: Actor) -> StateKind:
        if actor.role is not Role.TRANSLATOR:
            raise WrongRoleError("only translators claim tasks", field="actor")
        kind = task.state.kind
        if kind in (StateKind.GENERATED, StateKind.SKIPPED):
            return StateKind.IN_TRANSLATION
        if kind in (StateKind.CHANGES_REQUESTED, StateKind.EXPERT_REJECTED):
            if self._return_to_author and task.submitter not in (None, actor.id):
                raise IllegalStateError(
                    f"task {task.id} was returned to {task.submitter}", field="actor"
                )
            return StateKind.IN_TRANSLATION
        if kind is StateKind.SUBMITTED:
            if actor.id == task.submitter:
                raise SelfReviewError(
                    "submitter cannot claim their own submission for review", field="actor"
                )
            return StateKind.PEER_REVIEW
        raise IllegalStateError(
            f"task {task.id} in state {kind.value} cannot be claimed", field="task_id"
        )

    def _check_submit(self, task: _Task, actor: Actor) -> None:
        if actor.role is not Role.TRANSLATOR:
            raise WrongRoleError("only translators submit contributions", field="actor")
        kind = task.state.kind
        allowed = (
            StateKind.GENERATED,
            StateKind.IN_TRANSLATION,
            StateKind.CHANGES_REQUESTED,
            StateKind.EXPERT_REJECTED,
        )
        if kind not in allowed:
            raise IllegalStateError(
                f"task {task.id} in state {kind.value} does not accept contributions",
                field="task_id",
            )
        if kind is StateKind.IN_TRANSLATION and task.state.actor != actor.id:
            raise IllegalStateError(
                f"task {task.id} is claimed by {task.state.actor}", field="actor"
            )
        if (
            kind in (StateKind.CHANGES_REQUESTED, StateKind.EXPERT_REJECTED)
            and self._return_to_author
            and task.submitter != actor.id
        ):
            raise IllegalStateError(
                f"task {task.id} was returned to {task.submitter}", field="actor"
            )

    def _check_peer(self, task: _Task, actor: Actor) -> None:
        if actor.role is not Role.TRANSLATOR:
            raise WrongRoleError("peer review is translator work", field="actor")
        kind = task.state.kind
        if kind not in (StateKind.SUBMITTED, StateKind.PEER_REVIEW):
            raise IllegalStateError(
                f"task {task.id} in state {kind.value} is not awaiting peer review",
                field="task_id",
            )
        if kind is StateKind.PEER_REVIEW and task.state.actor != actor.id:
            raise IllegalStateError(
                f"task {task.id} is under review by {task.state.actor}", field="actor"
            )
        if actor.id == task.submitter:
            raise SelfReviewError("cannot review one's own submission", field="actor")

    def _check_expert(self, task: _Task, actor: Actor) -> None:
        if actor.role is not Role.EXPERT:
            raise WrongRoleError("final validation is expert work", field="actor")
        if task.state.kind is not StateKind.EXPERT_REVIEW:
            raise IllegalStateError(
                f"task {task.id} in state {task.state.kind.value} is not awaiting expert"
                " review",
                field="task_id",
            )

    # -- the one transition function ------------------------------------------

    def _apply(self, event: AuditEvent) -> None:
        kind = event.kind
        if kind == "log-opened":
            p = event.payload
            if not self._tasks and not len(self._lexicon):
                self._lexicon = Lexicon(p.get("language", "ar"), p.get("tag", "awn"))
            for a in p.get("actors", ()):
                self._actors.setdefault(a["id"], Actor(a["id"], Role(a["role"])))
            return
        if kind == "task-generated":
            if event.task in self._tasks:
                raise IllegalTransitionError(
                    f"event {event.seq}: task {event.task} generated twice"
                )
            p = event.payload
            self._tasks[event.task] = _Task(
                id=event.task,
                pos=PartOfSpeech(p["pos"]),
                pivot=synset_from_dict(p["pivot"]),
                v1=synset_from_dict(p["v1"]),
                state=TaskState(StateKind.GENERATED),
                version=1,
            )
            return
        if kind in COMPONENT_KINDS:
            # informational projection of a submission or import; no state change
            return

        if kind not in STATE_CHANGE_KINDS:
            raise IllegalTransitionError(f"event {event.seq}: unknown kind {kind!r}")

        task = self._tasks.get(event.task)
        if task is None:
            raise IllegalTransitionError(
                f"event {event.seq}: no task {event.task!r} for {kind}"
            )
        try:
            actor = self._require_actor(event.actor)
            new_kind = StateKind(event.payload["state"])
            if kind == "claimed":
                target = self._claim_target(task, actor)
                if target is not new_kind:
                    raise IllegalStateError(f"claim cannot reach {new_kind.value}")
                task.state = TaskState(new_kind, actor=event.actor)
            elif kind == "submitted":
                self._check_submit(task, actor)
                contribution = contribution_from_dict(event.payload["contribution"])
                draft = build_draft(task.v1, task.pivot, contribution, task.draft)
                expect = (
                    StateKind.SKIPPED if isinstance(contribution, Skip) else StateKind.SUBMITTED
                )
                if expect is not new_kind:
                    raise IllegalStateError(f"submission cannot reach {new_kind.value}")
                task.contribution = contribution
                if isinstance(contribution, Skip):
                    task.draft = None
                    task.submitter = None
                    task.submission_seq = None
                    task.state = TaskState(new_kind, comment=contribution.comment)
                else:
                    task.draft = draft
                    task.submitter = event.actor
                    task.submission_seq = event.seq
                    task.state = TaskState(new_kind, actor=event.actor)
            elif kind == "peer-decision":
                self._check_peer(task, actor)
                decision = decision_from_dict(event.payload["decision"])
                expect = (
                    StateKind.PEER_ACCEPTED
                    if decision.verdict is Verdict.ACCEPT
                    else StateKind.CHANGES_REQUESTED
                )
                if expect is not new_kind:
                    raise IllegalStateError(f"peer {decision.verdict.value} cannot reach {new_kind.value}")
                comment = decision.comment or None
                task.state = TaskState(new_kind, actor=event.actor, comment=comment)
            elif kind == "advanced":
                if task.state.kind is not StateKind.PEER_ACCEPTED:
                    raise IllegalStateError("advance is only legal after a peer accept")
                if new_kind is not StateKind.EXPERT_REVIEW:
                    raise IllegalStateError(f"advance cannot reach {new_kind.value}")
                task.state = TaskState(new_kind)
            elif kind == "expert-decision":
                self._check_expert(task, actor)
                decision = decision_from_dict(event.payload["decision"])
                expect = (
                    StateKind.APPROVED
                    if decision.verdict is Verdict.ACCEPT
                    else StateKind.EXPERT_REJECTED
                )
                if expect is not new_kind:
                    raise IllegalStateError(
                        f"expert {decision.verdict.value} cannot reach {new_kind.value}"
                    )
                if decision.verdict is Verdict.ACCEPT:
                    if task.draft is None:
                        raise IllegalStateError("no draft to commit")
                    committed = replace(task.draft, approved=True)
                    self._lexicon.replace_synset(committed)
                    task.state = TaskState(new_kind)
                else:
                    task.state = TaskState(
                        new_kind, actor=event.actor, comment=decision.comment or None
                    )
            task.version += 1
        except IllegalTransitionError:
            raise
        except GapnetError as exc:
            raise IllegalTransitionError(
                f"event {event.seq}: {kind} on task {event.task}: {exc.message}"
            ) from exc
        except (KeyError, ValueError, TypeError) as exc:
            raise IllegalTransitionError(
                f"event {event.seq}: {kind} on task {event.task}: malformed payload ({exc})"
            ) from exc

    # -- queries ----------------------------------------------------------------

    def _view(self, task: _Task) -> TaskView:
        return TaskView(
            id=task.id,
            pos=task.pos,
            state=task.state,
            version=task.version,
            submitter=task.submitter,
            pivot=task.pivot,
            v1=task.v1,
            draft=task.draft,
            contribution=task.contribution,
            submission_seq=task.submission_seq,
        )

    def task_view(self, task_id: str) -> TaskView:
        with self._lock:
            return self._view(self._require_task(task_id))

    def tasks(
        self,
        *,
        actor: str | None = None,
        state: StateKind | None = None,
        pos: PartOfSpeech | None = None,
    ) -> tuple[TaskView, ...]:
        """Task views sorted by (pos, id). ``actor`` keeps only tasks the
        actor can currently act on."""
        with self._lock:
            tasks = sorted(
                self._tasks.values(), key=lambda t: (POS_ORDER.index(t.pos), t.id)
            )
            views = []
            for t in tasks:
                if state is not None and t.state.kind is not state:
                    continue
                if pos is not None and t.pos is not pos:
                    continue
                if actor is not None and not self._legal_actions(t, actor):
                    continue
                views.append(self._view(t))
            return tuple(views)

    def _legal_actions(self, task: _Task, actor_id: str) -> tuple[str, ...]:
        actor = self._actors.get(actor_id)
        if actor is None:
            return ()
        actions = []
        try:
            self._claim_target(task, actor)
            actions.append("claim")
        except GapnetError:
            pass
        try:
            self._check_submit(task, actor)
            actions.append("contribution")
        except GapnetError:
            pass
        try:
            self._check_peer(task, actor)
            actions.append("peer-review")
        except GapnetError:
            pass
        try:
            self._check_expert(task, actor)
            actions.append("expert-review")
        except GapnetError:
            pass
        return tuple(actions)

    def legal_actions(self, task_id: str, actor_id: str) -> tuple[str, ...]:
        with self._lock:
            return self._legal_actions(self._require_task(task_id), actor_id)

    def suggest_reviewer(self, task_id: str) -> str | None:
        """Least-loaded translator other than the submitter, ties by id."""
        with self._lock:
            task = self._require_task(task_id)
            load: dict[str, int] = {
                a.id: 0
                for a in self._actors.values()
                if a.role is Role.TRANSLATOR and a.id != task.submitter
            }
            if not load:
                return None
            for t in self._tasks.values():
                if t.state.kind is StateKind.PEER_REVIEW and t.state.actor in load:
                    load[t.state.actor] += 1
            return min(load, key=lambda k: (load[k], k))

    def state_digest(self) -> dict:
        """Deterministic summary used by equivalence tests."""
        with self._lock:
            return {
                tid: {
                    "state": t.state.kind.value,
                    "actor": t.state.actor,
                    "comment": t.state.comment,
                    "version": t.version,
                    "submitter": t.submitter,
                    "submission": t.submission_seq,
                }
                for tid, t in sorted(self._tasks.items())
            }

    # -- replay and forking -----------------------------------------------------

    def apply_events(self, events: Iterable[AuditEvent]) -> None:
        """Fold foreign events into this engine (log loading / replay)."""
        with self._lock:
            for ev in events:
                if ev.seq != self._seq + 1:
                    raise LogSequenceError(
                        f"expected seq {self._seq + 1}, log has {ev.seq}"
                    )
                self._apply(ev)
                self._seq = ev.seq
                self._log.append(ev)

    def fork(self) -> "WorkflowEngine":
        """An independent copy (no sink); used for what-if exploration."""
        with self._lock:
            twin = WorkflowEngine(
                self._actors.values(),
                language=self._lexicon.language,
                tag=self._lexicon.tag,
                clock=self._clock,
                return_to_author=self._return_to_author,
                require_roster=False,
            )
            twin._lexicon = self._lexicon.snapshot()
            twin._tasks = {
                tid: _Task(
                    id=t.id,
                    pos=t.pos,
                    pivot=t.pivot,
                    v1=t.v1,
                    state=t.state,
                    version=t.version,
                    submitter=t.submitter,
                    contribution=t.contribution,
                    draft=t.draft,
                    submission_seq=t.submission_seq,
                )
                for tid, t in self._tasks.items()
            }
            twin._log = list(self._log)
            twin._seq = self._seq
            return twin


def replay_audit_log(
    events: Iterable[AuditEvent], *, actors: Iterable[Actor] = ()
) -> WorkflowEngine:
    """Rebuild an engine from its audit log.

    Deterministic and idempotent: equal logs yield equal task states and
    lexicons. The roster comes from the log-opened event when present, so a
    complete log is self-contained.
    """
    engine = WorkflowEngine(actors, require_roster=False)
    engine.apply_events(events)
    return engine
