"""Shared builders for the test suite.

Builders take keyword overrides so each test states only what it cares
about. Arabic sample text is real MSA where the scenario calls for it and
generated-but-valid otherwise.
"""

from __future__ import annotations

import pytest

from gapnet import (
    Actor,
    Checklist,
    Example,
    Gloss,
    LexicalizationStatus,
    Lexicon,
    MarkGap,
    PartOfSpeech,
    Phraset,
    Provenance,
    ReviewDecision,
    Role,
    Sense,
    SenseDraft,
    Synset,
    Translate,
    Verdict,
    WorkflowEngine,
    make_synset_id,
)

# AWN-style tags used across the suite
PIVOT_TAG = "pwn"
TARGET_TAG = "awn"

ARABIC_WORDS = (
    "كتاب", "قلم", "مدرسة", "بيت", "شمس", "قمر", "بحر", "جبل",
    "نهر", "شجرة", "طريق", "مدينة", "قرية", "سماء", "أرض", "نجم",
)


def sense(form: str, rank: int = 1, *, examples=(), provenance=Provenance.IMPORTED_V1,
          deleted=None, language: str = "ar") -> Sense:
    return Sense(
        form=form,
        rank=rank,
        provenance=provenance,
        examples=tuple(Example(t, language) for t in examples),
        deleted=deleted,
    )


def synset(serial: int = 1, *, pos: PartOfSpeech = PartOfSpeech.NOUN,
           tag: str = TARGET_TAG, forms=("كتاب",), gloss: str | None = "تعريف",
           examples_per_sense: int = 0, status=LexicalizationStatus.LEXICALIZED,
           phrasets=(), pivot_ref: str | None = None, approved: bool = False,
           language: str = "ar") -> Synset:
    senses = []
    for i, form in enumerate(forms):
        ex = tuple(f"مثال {form} {k}" for k in range(examples_per_sense))
        senses.append(sense(form, i + 1, examples=ex, language=language))
    return Synset(
        id=make_synset_id(tag, pos, serial),
        pos=pos,
        pivot_ref=pivot_ref,
        status=status,
        gloss=Gloss(gloss, language) if gloss else None,
        senses=tuple(senses),
        phrasets=tuple(Phraset(p, language) for p in phrasets),
        approved=approved,
    )


def gap_synset(serial: int = 1, *, pos: PartOfSpeech = PartOfSpeech.NOUN,
               phrasets=("عبارة وصفية",), gloss: str | None = "تعريف",
               approved: bool = False) -> Synset:
    return synset(
        serial, pos=pos, forms=(), gloss=gloss,
        status=LexicalizationStatus.GAP, phrasets=phrasets, approved=approved,
    )


def pivot_synset(serial: int = 1, *, pos: PartOfSpeech = PartOfSpeech.NOUN,
                 forms=("book",), gloss: str = "a written work") -> Synset:
    return synset(
        serial, pos=pos, tag=PIVOT_TAG, forms=forms, gloss=gloss, language="en",
    )


def roster() -> tuple[Actor, ...]:
    return (
        Actor("t1", Role.TRANSLATOR),
        Actor("t2", Role.TRANSLATOR),
        Actor("t3", Role.TRANSLATOR),
        Actor("x1", Role.EXPERT),
    )


def aligned_pair(serial: int = 1, *, pos: PartOfSpeech = PartOfSpeech.NOUN,
                 pivot_forms=("book",), v1_forms=("كتاب",)) -> tuple[Synset, Synset]:
    p = pivot_synset(serial, pos=pos, forms=pivot_forms)
    v = synset(
        serial, pos=pos, forms=v1_forms, gloss=None, pivot_ref=p.id,
        status=LexicalizationStatus.LEXICALIZED if v1_forms else LexicalizationStatus.PENDING,
    )
    return p, v


def engine_with_tasks(n: int = 1, *, pos: PartOfSpeech = PartOfSpeech.NOUN,
                      sink=None, clock=None) -> WorkflowEngine:
    pivot = Lexicon("en", PIVOT_TAG)
    v1 = Lexicon("ar", TARGET_TAG)
    for i in range(1, n + 1):
        p, v = aligned_pair(i, pos=pos, v1_forms=(ARABIC_WORDS[(i - 1) % len(ARABIC_WORDS)],))
        pivot.add_synset(p)
        v1.add_synset(v)
    engine = WorkflowEngine(roster(), sink=sink, clock=clock)
    engine.generate_tasks(pivot, v1)
    return engine


def translate_contribution(form: str = "كتاب", gloss: str = "عمل مكتوب",
                           example: str | None = None, phrasets=()) -> Translate:
    ex = example or f"هذا {form} جديد"
    return Translate(
        gloss=Gloss(gloss, "ar"),
        senses=(SenseDraft(form, (Example(ex, "ar"),)),),
        phrasets=tuple(Phraset(p, "ar") for p in phrasets),
    )


def gap_contribution(phrasets=("بشكل معبر",), comment: str = "لا مقابل") -> MarkGap:
    return MarkGap(phrasets=tuple(Phraset(p, "ar") for p in phrasets), comment=comment)


def accept() -> ReviewDecision:
    return ReviewDecision(Verdict.ACCEPT, Checklist())


def reject(comment: str = "needs work", *, counter_lemma: str | None = None,
           **failed) -> ReviewDecision:
    flags = {"gap": True, "gloss": True, "lemmas": True, "examples": True}
    for key, value in failed.items():
        flags[key] = value
    return ReviewDecision(
        Verdict.REJECT, Checklist(**flags), comment=comment, counter_lemma=counter_lemma
    )


def approve_path(engine: WorkflowEngine, task_id: str, contribution,
                 *, submitter: str = "t1", reviewer: str = "t2",
                 expert: str = "x1") -> None:
    """Drive one task through the whole happy path."""
    view = engine.task_view(task_id)
    view = engine.submit(task_id, submitter, contribution, view.version)
    view = engine.peer_review(task_id, reviewer, accept(), view.version)
    engine.expert_review(task_id, expert, accept(), view.version)


@pytest.fixture
def three_actor_engine() -> WorkflowEngine:
    return engine_with_tasks(3)
