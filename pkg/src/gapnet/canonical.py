"""Canonical JSON serialization of lexicons.

The document layout is fixed so that equal lexicon values always serialize
to identical bytes: synsets ascending by id, active senses by rank followed
by deleted senses by (rank, form), keys in the order they are written below,
UTF-8 without BOM, LF only, two-space indent, no trailing whitespace.
"""

from __future__ import annotations

import json
from typing import Any

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
)

FORMAT = "gapnet-lexicon/1"

__all__ = [
    "FORMAT",
    "synset_to_dict",
    "synset_from_dict",
    "lexicon_to_dict",
    "lexicon_from_dict",
    "dump_lexicon",
    "load_lexicon",
    "dump_json",
]


def _gloss_to_dict(g: Gloss) -> dict:
    return {"text": g.text, "language": g.language}


def _example_to_dict(e: Example) -> dict:
    return {"text": e.text, "language": e.language}


def _reason_to_dict(r: DeletionReason) -> dict:
    return {"code": r.code.value, "comment": r.comment}


def _sense_to_dict(s: Sense) -> dict:
    return {
        "form": s.form,
        "rank": s.rank,
        "provenance": s.provenance.value,
        "examples": [_example_to_dict(e) for e in s.examples],
        "deleted": _reason_to_dict(s.deleted) if s.deleted else None,
    }


def _phraset_to_dict(p: Phraset) -> dict:
    return {
        "text": p.text,
        "language": p.language,
        "examples": [_example_to_dict(e) for e in p.examples],
    }


def synset_to_dict(syn: Synset) -> dict:
    ordered = list(syn.active_senses()) + sorted(
        syn.deleted_senses(), key=lambda s: (s.rank, s.form)
    )
    return {
        "id": syn.id,
        "pos": syn.pos.value,
        "pivot_ref": syn.pivot_ref,
        "status": syn.status.value,
        "approved": syn.approved,
        "gloss": _gloss_to_dict(syn.gloss) if syn.gloss else None,
        "senses": [_sense_to_dict(s) for s in ordered],
        "phrasets": [_phraset_to_dict(p) for p in syn.phrasets],
    }


def _example_from_dict(d: dict) -> Example:
    return Example(text=d["text"], language=d["language"])


def synset_from_dict(d: dict) -> Synset:
    gloss = d.get("gloss")
    senses = []
    for sd in d.get("senses", ()):
        deleted = sd.get("deleted")
        senses.append(
            Sense(
                form=sd["form"],
                rank=sd["rank"],
                provenance=Provenance(sd.get("provenance", "added")),
                examples=tuple(_example_from_dict(e) for e in sd.get("examples", ())),
                deleted=(
                    DeletionReason(DeletionCode(deleted["code"]), deleted.get("comment", ""))
                    if deleted
                    else None
                ),
            )
        )
    phrasets = tuple(
        Phraset(
            text=pd["text"],
            language=pd["language"],
            examples=tuple(_example_from_dict(e) for e in pd.get("examples", ())),
        )
        for pd in d.get("phrasets", ())
    )
    return Synset(
        id=d["id"],
        pos=PartOfSpeech(d["pos"]),
        pivot_ref=d.get("pivot_ref"),
        status=LexicalizationStatus(d.get("status", "pending")),
        gloss=Gloss(text=gloss["text"], language=gloss["language"]) if gloss else None,
        senses=tuple(senses),
        phrasets=phrasets,
        approved=bool(d.get("approved", False)),
    )


def lexicon_to_dict(lexicon: Lexicon) -> dict:
    return {
        "format": FORMAT,
        "language": lexicon.language,
        "tag": lexicon.tag,
        "synsets": [synset_to_dict(s) for s in lexicon.synsets()],
    }


def lexicon_from_dict(d: dict) -> Lexicon:
    if d.get("format") != FORMAT:
        raise ValueError(f"not a {FORMAT} document: format={d.get('format')!r}")
    return Lexicon(
        language=d["language"],
        tag=d.get("tag", ""),
        synsets=(synset_from_dict(sd) for sd in d["synsets"]),
    )


def dump_json(value: Any) -> bytes:
    """Serialize any already-ordered structure with the canonical settings."""
    return (json.dumps(value, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def dump_lexicon(lexicon: Lexicon) -> bytes:
    return dump_json(lexicon_to_dict(lexicon))


def load_lexicon(data: bytes) -> Lexicon:
    return lexicon_from_dict(json.loads(data.decode("utf-8")))
