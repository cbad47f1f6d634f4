"""Error taxonomy shared across the toolkit.

Every error carries a stable machine-readable ``code`` so the HTTP layer can
map exceptions to API errors one-to-one, and an optional ``field`` naming the
offending input (dotted path into the request or record).
"""

from __future__ import annotations


class GapnetError(Exception):
    """Base class for all toolkit errors."""

    code = "internal"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "field": self.field}


# ---------------------------------------------------------------------------
# lexicon errors


class DuplicateIdError(GapnetError):
    code = "duplicate-id"


class UnknownSynsetError(GapnetError):
    code = "unknown-synset"


class InvariantViolation(GapnetError):
    """A structural rule on a synset or contribution does not hold.

    ``invariant`` names the violated rule (e.g. ``gap-requires-phraset``) so
    callers and tests can tell violations apart without parsing messages.
    """

    code = "invariant-violation"

    def __init__(self, message: str, *, invariant: str, field: str | None = None):
        super().__init__(message, field=field)
        self.invariant = invariant

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["invariant"] = self.invariant
        return d


class UnknownRankError(GapnetError):
    code = "unknown-rank"


class AlreadyDeletedError(GapnetError):
    code = "already-deleted"


# ---------------------------------------------------------------------------
# ingest errors


class HeaderMismatchError(GapnetError):
    """Fatal: the sheet header does not match the documented schema."""

    code = "header-mismatch"


# ---------------------------------------------------------------------------
# workflow errors


class UnknownTaskError(GapnetError):
    code = "unknown-task"


class UnknownActorError(GapnetError):
    code = "unknown-actor"


class WrongRoleError(GapnetError):
    code = "wrong-role"


class IllegalStateError(GapnetError):
    """The operation is not legal in the task's current state."""

    code = "illegal-state"


class SelfReviewError(GapnetError):
    """Peer review of one's own submission (four-eyes rule)."""

    code = "self-review-forbidden"


class RejectWithoutCommentError(GapnetError):
    code = "reject-without-comment"


class StaleVersionError(GapnetError):
    """Optimistic concurrency check failed; re-read and retry."""

    code = "stale-version"


class LogSequenceError(GapnetError):
    """Audit log sequence numbers are not contiguous from 1."""

    code = "gap-in-sequence"


class IllegalTransitionError(GapnetError):
    """Replay encountered a state change the machine does not permit."""

    code = "illegal-transition-in-log"


# ---------------------------------------------------------------------------
# configuration errors


class ConfigError(GapnetError):
    code = "invalid-config"
