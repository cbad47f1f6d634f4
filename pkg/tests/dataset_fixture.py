"""Deterministic dataset generator for the full-scale reproduction check.

The published per-POS release files are not fetchable from the test
environment, so this module fabricates a dataset with exactly the released
per-POS totals: input synsets and words, updated synsets, added and deleted
lemmas, glosses, examples, gaps, and phrasets. Construction is pure
arithmetic (no randomness), so generated bytes are identical run to run.

Layout decisions mirror the package's own result-file emitter; the
acceptance test then parses those bytes back through the public ingest API
and recomputes every statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

from gapnet import (
    AuditEvent,
    DeletionCode,
    DeletionReason,
    EPOCH_TIMESTAMP,
    Example,
    Gloss,
    LexicalizationStatus,
    PartOfSpeech,
    Phraset,
    Provenance,
    Sense,
    Synset,
    emit_result_files,
    make_synset_id,
)
from gapnet.ingest import LEXICON_COLUMNS, join_example_groups, join_multi, _encode_rows

TARGET_TAG = "awn"

ARABIC_LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"


def arabic_token(n: int, min_len: int = 3) -> str:
    """Distinct valid Arabic letter string for each n."""
    base = len(ARABIC_LETTERS)
    out = []
    while n or len(out) < min_len:
        out.append(ARABIC_LETTERS[n % base])
        n //= base
    return "".join(out)


@dataclass(frozen=True)
class PosPlan:
    synsets: int
    words: int
    updated: int
    gaps: int
    added: int
    deleted: int
    glosses: int
    examples: int
    phrasets: int


# Published per-POS totals for the released dataset.
FULL_PLAN: dict[PartOfSpeech, PosPlan] = {
    PartOfSpeech.NOUN: PosPlan(6516, 13659, 3938, 28, 2581, 6050, 6511, 7597, 364),
    PartOfSpeech.VERB: PosPlan(2507, 5878, 1364, 187, 64, 2387, 2258, 3620, 275),
    PartOfSpeech.ADJECTIVE: PosPlan(446, 761, 181, 0, 72, 223, 446, 782, 0),
    PartOfSpeech.ADVERB: PosPlan(107, 262, 71, 21, 9, 91, 107, 205, 62),
}

# Scaled-down plan with the same feasibility shape, for fast round-trip tests.
MINI_PLAN: dict[PartOfSpeech, PosPlan] = {
    PartOfSpeech.NOUN: PosPlan(40, 85, 18, 3, 12, 20, 39, 50, 7),
    PartOfSpeech.VERB: PosPlan(20, 44, 9, 2, 4, 12, 17, 26, 5),
    PartOfSpeech.ADJECTIVE: PosPlan(8, 13, 3, 0, 2, 4, 8, 11, 0),
    PartOfSpeech.ADVERB: PosPlan(6, 12, 3, 1, 1, 3, 6, 8, 3),
}

_REASON_POOL = (
    DeletionCode.NOT_COVERED_BY_GLOSS,
    DeletionCode.WRONG_WORD_FORM,
    DeletionCode.DUPLICATE,
    DeletionCode.SPECIALIZATION_POLYSEMY,
)


@dataclass
class GeneratedPos:
    pos: PartOfSpeech
    v1_sheet: bytes
    final_sheet: bytes
    delta_sheet: bytes
    synsets: list[Synset]
    events: list[AuditEvent]


@dataclass
class GeneratedDataset:
    per_pos: dict[PartOfSpeech, GeneratedPos]

    def all_events(self) -> list[AuditEvent]:
        out = []
        for pos in self.per_pos:
            out.extend(self.per_pos[pos].events)
        return out

    def all_synsets(self) -> list[Synset]:
        out = []
        for pos in self.per_pos:
            out.extend(self.per_pos[pos].synsets)
        return out


def _check_plan(plan: PosPlan) -> None:
    s, w = plan.synsets, plan.words
    updated_lex = plan.updated - plan.gaps
    extras = w - s
    assert plan.gaps <= plan.updated, "gap synsets count as updated"
    assert extras >= updated_lex, "every updated synset needs a second word"
    assert plan.deleted >= updated_lex or plan.added >= updated_lex or True
    # one deletion per updated synset, remainder within v1-1 capacity
    assert plan.deleted <= extras, "deletions exceed removable words"
    assert plan.glosses <= s, "more gloss additions than synsets"
    assert plan.phrasets >= plan.gaps, "every gap needs a phraset"
    assert plan.added <= plan.examples, "every added lemma needs an example"


def generate_pos(pos: PartOfSpeech, plan: PosPlan) -> GeneratedPos:
    _check_plan(plan)
    s = plan.synsets
    gap_ids = list(range(1, plan.gaps + 1))
    updated_ids = list(range(plan.gaps + 1, plan.updated + 1))
    untouched_ids = list(range(plan.updated + 1, s + 1))
    lexical_ids = updated_ids + untouched_ids

    # word counts: everyone 1, extras round-robin over updated synsets
    v1_count = {i: 1 for i in range(1, s + 1)}
    extras = plan.words - s
    for k in range(extras):
        v1_count[updated_ids[k % len(updated_ids)]] += 1

    token = iter(range(10**6 * (1 + "nvar".index(pos.letter)), 10**9))
    v1_forms = {
        i: [arabic_token(next(token)) for _ in range(v1_count[i])]
        for i in range(1, s + 1)
    }

    added: dict[int, list[str]] = {i: [] for i in range(1, s + 1)}
    for k in range(plan.added):
        added[updated_ids[k % len(updated_ids)]].append(arabic_token(next(token), 4))

    # deletions: one per updated synset first, remainder round-robin, always
    # leaving at least one inherited survivor
    deleted_count = {i: 0 for i in range(1, s + 1)}
    budget = plan.deleted
    for i in updated_ids:
        if budget == 0:
            break
        deleted_count[i] = 1
        budget -= 1
    guard = 0
    while budget > 0:
        progress = False
        for i in updated_ids:
            if budget == 0:
                break
            if deleted_count[i] < v1_count[i] - 1:
                deleted_count[i] += 1
                budget -= 1
                progress = True
        assert progress, "deletion budget does not fit the word distribution"
        guard += 1
        assert guard < 10_000

    # gloss additions: lexicalized synsets first, overflow onto gaps
    added_gloss_ids = set(lexical_ids[: min(plan.glosses, len(lexical_ids))])
    overflow = plan.glosses - len(added_gloss_ids)
    added_gloss_ids.update(gap_ids[:overflow])
    gloss_text = {i: f"تعريف {arabic_token(i)} {i}" for i in range(1, s + 1)}

    # phrasets: one per gap, extras onto updated lexicalized synsets
    phraset_count = {i: 0 for i in range(1, s + 1)}
    for i in gap_ids:
        phraset_count[i] = 1
    extra_ph = plan.phrasets - plan.gaps
    targets = updated_ids or gap_ids
    for k in range(extra_ph):
        phraset_count[targets[k % len(targets)]] += 1

    # example budget: added senses first (they cannot inherit), then
    # inherited survivors, leftover becomes second examples
    survivors = {i: v1_forms[i][: v1_count[i] - deleted_count[i]] for i in lexical_ids}
    added_sense_slots = [(i, f) for i in lexical_ids for f in added[i]]
    survivor_slots = [(i, f) for i in lexical_ids for f in survivors[i]]
    budget = plan.examples
    event_examples: dict[tuple[int, str], list[str]] = {}
    inherited_examples: dict[tuple[int, str], str] = {}
    exno = 0
    for slot in added_sense_slots:
        exno += 1
        event_examples[slot] = [f"مثال {slot[1]} {exno}"]
        budget -= 1
    for slot in survivor_slots:
        if budget > 0:
            exno += 1
            event_examples[slot] = [f"مثال {slot[1]} {exno}"]
            budget -= 1
        else:
            inherited_examples[slot] = f"مثال موروث {slot[1]}"
    all_slots = added_sense_slots + survivor_slots
    k = 0
    while budget > 0:
        slot = all_slots[k % len(all_slots)]
        exno += 1
        event_examples.setdefault(slot, []).append(f"مثال {slot[1]} {exno}")
        budget -= 1
        k += 1

    # materialize final synsets and the event stream, id order, fixed
    # per-synset kind order
    synsets: list[Synset] = []
    events: list[AuditEvent] = []
    seq = 0

    def emit(kind: str, synset_id: str, payload: dict) -> None:
        nonlocal seq
        seq += 1
        events.append(
            AuditEvent(
                seq=seq,
                timestamp=EPOCH_TIMESTAMP,
                actor="import",
                task=synset_id,
                kind=kind,
                payload={"pos": pos.value, "submission": None, **payload},
            )
        )

    for i in range(1, s + 1):
        sid = make_synset_id(TARGET_TAG, pos, i)
        is_gap = i <= plan.gaps
        phrasets = tuple(
            Phraset(f"عبارة {arabic_token(i)} رقم {k + 1}", "ar")
            for k in range(phraset_count[i])
        )
        if is_gap:
            if i in added_gloss_ids:
                emit("added-gloss", sid, {"text": gloss_text[i], "language": "ar"})
            emit("gap-marked", sid, {})
            for p in phrasets:
                emit("phraset-added", sid, {"text": p.text, "language": "ar"})
            synsets.append(
                Synset(
                    id=sid,
                    pos=pos,
                    status=LexicalizationStatus.GAP,
                    gloss=Gloss(gloss_text[i], "ar"),
                    phrasets=phrasets,
                    approved=True,
                )
            )
            continue

        keep = survivors[i]
        dropped = v1_forms[i][len(keep):]
        senses = []
        for rank, form in enumerate(keep, start=1):
            texts = event_examples.get((i, form), [])
            if (i, form) in inherited_examples:
                texts = [inherited_examples[(i, form)]] + texts
            senses.append(
                Sense(
                    form=form,
                    rank=rank,
                    provenance=Provenance.IMPORTED_V1,
                    examples=tuple(Example(t, "ar") for t in texts),
                )
            )
        for offset, form in enumerate(added[i]):
            texts = event_examples.get((i, form), [])
            senses.append(
                Sense(
                    form=form,
                    rank=len(keep) + offset + 1,
                    provenance=Provenance.ADDED,
                    examples=tuple(Example(t, "ar") for t in texts),
                )
            )
        next_rank = len(senses) + 1
        for offset, form in enumerate(dropped):
            senses.append(
                Sense(
                    form=form,
                    rank=next_rank + offset,
                    provenance=Provenance.IMPORTED_V1,
                    deleted=DeletionReason(_REASON_POOL[(i + offset) % len(_REASON_POOL)]),
                )
            )

        for offset, form in enumerate(dropped):
            reason = _REASON_POOL[(i + offset) % len(_REASON_POOL)]
            emit("deleted-lemma", sid, {"form": form, "reason": {"code": reason.value, "comment": ""}})
        for form in added[i]:
            emit("added-lemma", sid, {"form": form})
        if i in added_gloss_ids:
            emit("added-gloss", sid, {"text": gloss_text[i], "language": "ar"})
        for form in keep + added[i]:
            for text in event_examples.get((i, form), []):
                emit("added-example", sid, {"form": form, "text": text, "language": "ar"})
        for p in phrasets:
            emit("phraset-added", sid, {"text": p.text, "language": "ar"})

        synsets.append(
            Synset(
                id=sid,
                pos=pos,
                status=LexicalizationStatus.LEXICALIZED,
                gloss=Gloss(gloss_text[i], "ar"),
                senses=tuple(senses),
                phrasets=phrasets,
                approved=True,
            )
        )

    # V1 input sheet: full pre-change lemma lists; gloss only where the
    # release inherited it; inherited examples aligned to their lemma slot
    rows: list[tuple[str, ...]] = [LEXICON_COLUMNS]
    for i in range(1, s + 1):
        sid = make_synset_id(TARGET_TAG, pos, i)
        groups = [
            [inherited_examples[(i, f)]] if (i, f) in inherited_examples else []
            for f in v1_forms[i]
        ]
        rows.append(
            (
                sid,
                pos.value,
                join_multi(v1_forms[i]),
                "" if i in added_gloss_ids else gloss_text[i],
                join_example_groups(groups),
            )
        )
    v1_sheet = _encode_rows(rows)

    final_sheet, delta_sheet = emit_result_files(synsets, events, pos)
    return GeneratedPos(
        pos=pos,
        v1_sheet=v1_sheet,
        final_sheet=final_sheet,
        delta_sheet=delta_sheet,
        synsets=synsets,
        events=events,
    )


def generate_dataset(plans: dict[PartOfSpeech, PosPlan] = FULL_PLAN) -> GeneratedDataset:
    return GeneratedDataset({pos: generate_pos(pos, plan) for pos, plan in plans.items()})
