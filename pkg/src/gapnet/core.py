"""Core model for a bilingual, gap-aware lexicon.

A :class:`Lexicon` holds :class:`Synset` values keyed by id. A synset is
either *lexicalized* (it has ranked senses, i.e. words of the language),
a *gap* (the concept is not lexicalized; it carries one or more phrasets,
free multi-word combinations that express the meaning), or *pending*
(not yet worked on). Gaps are first-class: a gap is a recorded fact about
the language, never the mere absence of data.

Synset values are immutable. Mutation happens by replacing whole synsets
inside a lexicon, which keeps snapshot semantics trivial: readers hold a
consistent view, the single writer swaps values under a lock.
"""

from __future__ import annotations

import re
import threading
import unicodedata
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    AlreadyDeletedError,
    DuplicateIdError,
    InvariantViolation,
    UnknownRankError,
    UnknownSynsetError,
)

__all__ = [
    "PartOfSpeech",
    "POS_ORDER",
    "LexicalizationStatus",
    "Provenance",
    "DeletionCode",
    "DeletionReason",
    "Gloss",
    "Example",
    "Sense",
    "Phraset",
    "Synset",
    "Lexicon",
    "CrossLingualHit",
    "normalize_form",
    "skeleton_form",
    "make_synset_id",
    "split_synset_id",
    "alignment_suffix",
    "validate_synset",
    "add_sense",
    "cross_lingual_lookup",
]


class PartOfSpeech(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"

    @property
    def letter(self) -> str:
        return _POS_LETTER[self]

    @classmethod
    def parse(cls, text: str) -> "PartOfSpeech":
        """Accept the full name or the single-letter code, case-insensitive."""
        t = text.strip().lower()
        if t in _LETTER_POS:
            return _LETTER_POS[t]
        try:
            return cls(t)
        except ValueError:
            raise ValueError(f"not a part of speech: {text!r}") from None


_POS_LETTER = {
    PartOfSpeech.NOUN: "n",
    PartOfSpeech.VERB: "v",
    PartOfSpeech.ADJECTIVE: "a",
    PartOfSpeech.ADVERB: "r",
}
_LETTER_POS = {v: k for k, v in _POS_LETTER.items()}

# Canonical display/iteration order for per-POS tables.
POS_ORDER = (
    PartOfSpeech.NOUN,
    PartOfSpeech.VERB,
    PartOfSpeech.ADJECTIVE,
    PartOfSpeech.ADVERB,
)


class LexicalizationStatus(str, Enum):
    LEXICALIZED = "lexicalized"
    GAP = "gap"
    PENDING = "pending"


class Provenance(str, Enum):
    """Where a sense came from: the inherited first release, or new work."""

    IMPORTED_V1 = "imported-v1"
    ADDED = "added"


class DeletionCode(str, Enum):
    NOT_COVERED_BY_GLOSS = "not-covered-by-gloss"
    WRONG_WORD_FORM = "wrong-word-form"
    DUPLICATE = "duplicate"
    SPECIALIZATION_POLYSEMY = "specialization-polysemy"
    COMPOUND_NOUN_POLYSEMY = "compound-noun-polysemy"
    OTHER = "other"


@dataclass(frozen=True)
class DeletionReason:
    code: DeletionCode
    comment: str = ""

    def __post_init__(self):
        if self.code is DeletionCode.OTHER and not self.comment.strip():
            raise InvariantViolation(
                "deletion reason 'other' requires a comment",
                invariant="other-requires-comment",
                field="reason.comment",
            )


# ---------------------------------------------------------------------------
# text normalization

_TATWEEL = "ـ"


def normalize_form(text: str) -> str:
    """Canonical written form: Unicode NFC, surrounding whitespace trimmed.

    Applied before any duplicate comparison and at construction time, so
    stored text is always canonical. Idempotent.
    """
    return unicodedata.normalize("NFC", text).strip()


def skeleton_form(text: str) -> str:
    """Diacritic-insensitive skeleton used for near-duplicate warnings.

    Strips combining marks (Arabic short vowels, shadda, sukun, ...) and the
    tatweel filler from the normalized form. Two forms that differ only in
    diacritics share a skeleton but are distinct canonical forms.
    """
    norm = normalize_form(text)
    return "".join(
        ch for ch in norm if ch != _TATWEEL and unicodedata.category(ch) != "Mn"
    )


_WS_INSIDE = re.compile(r"\S\s+\S")


def _clean_text(text: str, what: str, field_name: str) -> str:
    norm = normalize_form(text)
    if not norm:
        raise InvariantViolation(
            f"{what} must not be empty", invariant="non-empty-text", field=field_name
        )
    if "\t" in norm or "\n" in norm or "\r" in norm:
        raise InvariantViolation(
            f"{what} must not contain tabs or newlines",
            invariant="no-control-chars",
            field=field_name,
        )
    return norm


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Gloss:
    text: str
    language: str

    def __post_init__(self):
        object.__setattr__(self, "text", _clean_text(self.text, "gloss text", "gloss.text"))


@dataclass(frozen=True)
class Example:
    text: str
    language: str

    def __post_init__(self):
        object.__setattr__(self, "text", _clean_text(self.text, "example text", "example.text"))


@dataclass(frozen=True)
class Sense:
    """One written form of a synset, with its preference rank.

    Rank 1 is the preferred term. Deleted senses stay on the synset for audit
    purposes; they keep the rank they had when deleted and are ignored by all
    rank arithmetic on active senses.
    """

    form: str
    rank: int
    provenance: Provenance = Provenance.ADDED
    examples: tuple[Example, ...] = ()
    deleted: DeletionReason | None = None

    def __post_init__(self):
        object.__setattr__(self, "form", _clean_text(self.form, "sense form", "sense.form"))
        object.__setattr__(self, "examples", tuple(self.examples))
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvariantViolation(
                f"sense rank must be a positive integer, got {self.rank!r}",
                invariant="positive-rank",
                field="sense.rank",
            )

    @property
    def active(self) -> bool:
        return self.deleted is None


@dataclass(frozen=True)
class Phraset:
    """A free multi-word combination expressing a meaning.

    Not a lexical unit; it lives alongside senses and is the required payload
    of a lexical gap. Must contain internal whitespace after normalization,
    otherwise it would be a (single-word) lemma.
    """

    text: str
    language: str
    examples: tuple[Example, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "text", _clean_text(self.text, "phraset text", "phraset.text"))
        object.__setattr__(self, "examples", tuple(self.examples))
        if not _WS_INSIDE.search(self.text):
            raise InvariantViolation(
                f"a phraset must be multi-word: {self.text!r}",
                invariant="phraset-multi-word",
                field="phraset.text",
            )


# ---------------------------------------------------------------------------
# synset ids

_ID_SCHEME = re.compile(r"^([^:\s]+):([nvar]):(\d+)$")


def make_synset_id(tag: str, pos: PartOfSpeech, serial: int) -> str:
    return f"{tag}:{pos.letter}:{serial:05d}"


def split_synset_id(synset_id: str) -> tuple[str, PartOfSpeech, int] | None:
    """(lexicon tag, pos, serial) for schemed ids, None for foreign ones."""
    m = _ID_SCHEME.match(synset_id)
    if m is None:
        return None
    return m.group(1), PartOfSpeech.parse(m.group(2)), int(m.group(3))


def alignment_suffix(synset_id: str) -> str:
    """The id with its lexicon tag removed; equal suffixes align across lexicons."""
    head, sep, tail = synset_id.partition(":")
    return tail if sep else synset_id


@dataclass(frozen=True)
class Synset:
    id: str
    pos: PartOfSpeech
    pivot_ref: str | None = None
    status: LexicalizationStatus = LexicalizationStatus.PENDING
    gloss: Gloss | None = None
    senses: tuple[Sense, ...] = ()
    phrasets: tuple[Phraset, ...] = ()
    approved: bool = False

    def __post_init__(self):
        object.__setattr__(self, "senses", tuple(self.senses))
        object.__setattr__(self, "phrasets", tuple(self.phrasets))

    def active_senses(self) -> tuple[Sense, ...]:
        return tuple(sorted((s for s in self.senses if s.active), key=lambda s: s.rank))

    def deleted_senses(self) -> tuple[Sense, ...]:
        return tuple(s for s in self.senses if not s.active)

    def lemmas(self) -> tuple[str, ...]:
        """Active written forms in rank order."""
        return tuple(s.form for s in self.active_senses())

    def phraset_texts(self) -> tuple[str, ...]:
        return tuple(p.text for p in self.phrasets)


def validate_synset(synset: Synset) -> tuple[str, ...]:
    """Check all structural invariants; return non-fatal warnings.

    Raises InvariantViolation (naming the invariant) on any hard violation.
    Diacritic-only near-duplicate forms are a warning, not an error: they are
    exactly what a human reviewer must adjudicate.
    """
    sid = synset.id
    if not sid or sid != sid.strip() or re.search(r"[\t\n\r]", sid):
        raise InvariantViolation(
            f"bad synset id {sid!r}", invariant="well-formed-id", field="synset.id"
        )
    parts = split_synset_id(sid)
    if parts is not None and parts[1] is not synset.pos:
        raise InvariantViolation(
            f"id {sid} encodes pos {parts[1].value} but synset is {synset.pos.value}",
            invariant="id-pos-agreement",
            field="synset.id",
        )
    if synset.pivot_ref is not None:
        pp = split_synset_id(synset.pivot_ref)
        if parts is not None and pp is not None and pp[1] is not synset.pos:
            raise InvariantViolation(
                f"synset {sid} is {synset.pos.value} but pivot {synset.pivot_ref} is not",
                invariant="pivot-pos-agreement",
                field="synset.pivot_ref",
            )

    active = synset.active_senses()
    ranks = [s.rank for s in active]
    if ranks != list(range(1, len(active) + 1)):
        raise InvariantViolation(
            f"active sense ranks of {sid} must be exactly 1..{len(active)}, got {ranks}",
            invariant="rank-contiguity",
            field="synset.senses",
        )

    warnings: list[str] = []
    seen: dict[str, str] = {}
    skeletons: dict[str, str] = {}
    for s in active:
        norm = normalize_form(s.form)
        if norm in seen:
            raise InvariantViolation(
                f"duplicate active form {norm!r} in {sid}",
                invariant="duplicate-form",
                field="synset.senses",
            )
        seen[norm] = s.form
        sk = skeleton_form(s.form)
        if sk in skeletons and skeletons[sk] != norm:
            warnings.append(
                f"{sid}: forms {skeletons[sk]!r} and {norm!r} differ only in diacritics"
            )
        skeletons.setdefault(sk, norm)

    if synset.status is LexicalizationStatus.GAP:
        if active:
            raise InvariantViolation(
                f"gap synset {sid} must not have active senses",
                invariant="gap-excludes-senses",
                field="synset.senses",
            )
        if not synset.phrasets:
            raise InvariantViolation(
                f"gap synset {sid} needs at least one phraset",
                invariant="gap-requires-phraset",
                field="synset.phrasets",
            )
    elif synset.status is LexicalizationStatus.LEXICALIZED:
        if not active:
            raise InvariantViolation(
                f"lexicalized synset {sid} needs at least one active sense",
                invariant="lexicalized-requires-sense",
                field="synset.senses",
            )
        if synset.approved:
            if synset.gloss is None:
                raise InvariantViolation(
                    f"approved synset {sid} needs a gloss",
                    invariant="approved-requires-gloss",
                    field="synset.gloss",
                )
            for s in active:
                if not s.examples:
                    raise InvariantViolation(
                        f"approved synset {sid}: sense {s.form!r} has no example",
                        invariant="approved-requires-examples",
                        field="synset.senses",
                    )
    else:  # pending
        if synset.approved:
            raise InvariantViolation(
                f"synset {sid} cannot be approved while pending",
                invariant="approved-requires-status",
                field="synset.status",
            )

    return tuple(warnings)


def add_sense(
    synset: Synset,
    form: str,
    *,
    provenance: Provenance = Provenance.ADDED,
    examples: Iterable[Example] = (),
) -> Synset:
    """Append an active sense at the next rank; returns the new synset value."""
    next_rank = len(synset.active_senses()) + 1
    sense = Sense(form=form, rank=next_rank, provenance=provenance, examples=tuple(examples))
    updated = replace(synset, senses=synset.senses + (sense,))
    validate_synset(updated)
    return updated


# ---------------------------------------------------------------------------
# lexicon container


class Lexicon:
    """Synsets of one language, with a reverse index from normalized forms.

    Single writer, many readers: all mutation goes through methods that hold
    the internal lock, and since synsets are immutable values, ``snapshot``
    is a cheap shallow copy that stays consistent forever.
    """

    def __init__(self, language: str, tag: str = "", synsets: Iterable[Synset] = ()):
        self.language = language
        self.tag = tag
        self._synsets: dict[str, Synset] = {}
        self._by_form: dict[str, set[str]] = {}
        self._by_pivot: dict[str, set[str]] = {}
        self._lock = threading.RLock()
        for s in synsets:
            self.add_synset(s)

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._synsets)

    def __contains__(self, synset_id: str) -> bool:
        return synset_id in self._synsets

    def __iter__(self) -> Iterator[Synset]:
        return iter(self.synsets())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return (
            self.language == other.language
            and self.tag == other.tag
            and self._synsets == other._synsets
        )

    def get(self, synset_id: str) -> Synset | None:
        return self._synsets.get(synset_id)

    def require(self, synset_id: str) -> Synset:
        syn = self._synsets.get(synset_id)
        if syn is None:
            raise UnknownSynsetError(f"no synset {synset_id!r}", field="synset_id")
        return syn

    def synsets(self) -> tuple[Synset, ...]:
        with self._lock:
            return tuple(self._synsets[k] for k in sorted(self._synsets))

    def lookup_by_lemma(
        self, form: str, pos: PartOfSpeech | None = None
    ) -> tuple[Synset, ...]:
        """All synsets with an active sense matching the normalized form.

        Result order is stable: ascending synset id.
        """
        norm = normalize_form(form)
        with self._lock:
            ids = self._by_form.get(norm, set())
            hits = [self._synsets[i] for i in sorted(ids)]
        if pos is not None:
            hits = [s for s in hits if s.pos is pos]
        return tuple(hits)

    def aligned_to(self, pivot_id: str) -> tuple[Synset, ...]:
        """Synsets whose pivot_ref is the given id, ascending by id."""
        with self._lock:
            ids = self._by_pivot.get(pivot_id, set())
            return tuple(self._synsets[i] for i in sorted(ids))

    # -- mutation -----------------------------------------------------------

    def add_synset(self, synset: Synset) -> str:
        with self._lock:
            if synset.id in self._synsets:
                raise DuplicateIdError(f"synset {synset.id} already exists", field="synset.id")
            validate_synset(synset)
            self._synsets[synset.id] = synset
            self._index(synset)
        return synset.id

    def replace_synset(self, synset: Synset) -> None:
        """Swap in a new value for an existing id (or insert a new one)."""
        with self._lock:
            validate_synset(synset)
            old = self._synsets.get(synset.id)
            if old is not None:
                self._unindex(old)
            self._synsets[synset.id] = synset
            self._index(synset)

    def delete_sense(
        self,
        synset_id: str,
        rank: int,
        reason: DeletionReason,
        *,
        new_status: LexicalizationStatus | None = None,
    ) -> Synset:
        """Soft-delete the active sense at ``rank`` and re-compact ranks.

        Remaining active senses are renumbered 1..n-1 preserving order; the
        deleted sense keeps its rank for the record. Deleting the last active
        sense of a lexicalized synset is refused unless ``new_status`` turns
        the synset into something that may have none (a gap with phrasets).
        """
        with self._lock:
            syn = self.require(synset_id)
            target = next((s for s in syn.senses if s.active and s.rank == rank), None)
            if target is None:
                if any(not s.active and s.rank == rank for s in syn.senses):
                    raise AlreadyDeletedError(
                        f"sense at rank {rank} of {synset_id} is already deleted",
                        field="rank",
                    )
                raise UnknownRankError(
                    f"{synset_id} has no active sense at rank {rank}", field="rank"
                )
            status = new_status if new_status is not None else syn.status
            if (
                status is LexicalizationStatus.LEXICALIZED
                and len(syn.active_senses()) == 1
            ):
                raise InvariantViolation(
                    f"cannot delete the only active sense of lexicalized {synset_id}",
                    invariant="lexicalized-requires-sense",
                    field="rank",
                )
            next_rank = 1
            senses: list[Sense] = []
            for s in syn.senses:
                if s is target:
                    senses.append(replace(s, deleted=reason))
                elif s.active:
                    senses.append(replace(s, rank=next_rank))
                    next_rank += 1
                else:
                    senses.append(s)
            updated = replace(syn, senses=tuple(senses), status=status)
            validate_synset(updated)
            self._unindex(syn)
            self._synsets[synset_id] = updated
            self._index(updated)
            return updated

    # -- index maintenance ----------------------------------------------------

    def _index(self, synset: Synset) -> None:
        for s in synset.senses:
            if s.active:
                self._by_form.setdefault(normalize_form(s.form), set()).add(synset.id)
        if synset.pivot_ref is not None:
            self._by_pivot.setdefault(synset.pivot_ref, set()).add(synset.id)

    def _unindex(self, synset: Synset) -> None:
        for s in synset.senses:
            if s.active:
                norm = normalize_form(s.form)
                ids = self._by_form.get(norm)
                if ids is not None:
                    ids.discard(synset.id)
                    if not ids:
                        del self._by_form[norm]
        if synset.pivot_ref is not None:
            ids = self._by_pivot.get(synset.pivot_ref)
            if ids is not None:
                ids.discard(synset.id)
                if not ids:
                    del self._by_pivot[synset.pivot_ref]

    def rebuild_index(self) -> tuple[dict[str, set[str]], dict[str, set[str]]]:
        """Recompute both indexes from scratch (consistency checks in tests)."""
        by_form: dict[str, set[str]] = {}
        by_pivot: dict[str, set[str]] = {}
        for syn in self._synsets.values():
            for s in syn.senses:
                if s.active:
                    by_form.setdefault(normalize_form(s.form), set()).add(syn.id)
            if syn.pivot_ref is not None:
                by_pivot.setdefault(syn.pivot_ref, set()).add(syn.id)
        return by_form, by_pivot

    def index_consistent(self) -> bool:
        with self._lock:
            by_form, by_pivot = self.rebuild_index()
            return by_form == self._by_form and by_pivot == self._by_pivot

    def snapshot(self) -> "Lexicon":
        """An independent copy sharing the immutable synset values."""
        with self._lock:
            copy = Lexicon(self.language, self.tag)
            copy._synsets = dict(self._synsets)
            copy._by_form = {k: set(v) for k, v in self._by_form.items()}
            copy._by_pivot = {k: set(v) for k, v in self._by_pivot.items()}
            return copy


# ---------------------------------------------------------------------------
# cross-lingual lookup


@dataclass(frozen=True)
class CrossLingualHit:
    """What the target language offers for one pivot synset.

    ``status`` is one of lexicalized / gap / unprocessed. A gap result carries
    the phrasets that express the meaning; it is an answer, not a miss.
    Unprocessed covers both unaligned pivot synsets and pending target ones.
    """

    pivot_id: str
    pivot_gloss: str | None
    target_id: str | None
    status: str
    lemmas: tuple[str, ...] = ()
    phrasets: tuple[str, ...] = ()
    gap: bool = False


def cross_lingual_lookup(
    target: Lexicon,
    pivot: Lexicon,
    form: str,
    pos: PartOfSpeech | None = None,
) -> tuple[CrossLingualHit, ...]:
    """Look a pivot-language form up and report target-language coverage."""
    hits: list[CrossLingualHit] = []
    for psyn in pivot.lookup_by_lemma(form, pos):
        gloss = psyn.gloss.text if psyn.gloss else None
        targets = list(target.aligned_to(psyn.id))
        if not targets:
            # fall back to id-suffix alignment for data ingested without refs
            suffix = alignment_suffix(psyn.id)
            fallback = target.get(f"{target.tag}:{suffix}") if target.tag else None
            if fallback is not None:
                targets = [fallback]
        if not targets:
            hits.append(
                CrossLingualHit(
                    pivot_id=psyn.id, pivot_gloss=gloss, target_id=None, status="unprocessed"
                )
            )
            continue
        for tsyn in targets:
            if tsyn.status is LexicalizationStatus.LEXICALIZED:
                hits.append(
                    CrossLingualHit(
                        pivot_id=psyn.id,
                        pivot_gloss=gloss,
                        target_id=tsyn.id,
                        status="lexicalized",
                        lemmas=tsyn.lemmas(),
                        phrasets=tsyn.phraset_texts(),
                    )
                )
            elif tsyn.status is LexicalizationStatus.GAP:
                hits.append(
                    CrossLingualHit(
                        pivot_id=psyn.id,
                        pivot_gloss=gloss,
                        target_id=tsyn.id,
                        status="gap",
                        phrasets=tsyn.phraset_texts(),
                        gap=True,
                    )
                )
            else:
                hits.append(
                    CrossLingualHit(
                        pivot_id=psyn.id,
                        pivot_gloss=gloss,
                        target_id=tsyn.id,
                        status="unprocessed",
                    )
                )
    return tuple(hits)
