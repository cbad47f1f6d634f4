"""Cross-lingual wordnet construction with first-class lexical gaps.

The package covers the full pipeline: parsing translation sheets, a
reviewed translate/validate workflow over an append-only audit log, HTTP
access for tooling, and the reporting used to describe a finished dataset.
"""

from .canonical import (
    FORMAT,
    dump_lexicon,
    lexicon_from_dict,
    lexicon_to_dict,
    load_lexicon,
    synset_from_dict,
    synset_to_dict,
)
from .core import (
    POS_ORDER,
    CrossLingualHit,
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
    add_sense,
    alignment_suffix,
    cross_lingual_lookup,
    make_synset_id,
    normalize_form,
    skeleton_form,
    split_synset_id,
    validate_synset,
)
from .errors import (
    AlreadyDeletedError,
    ConfigError,
    DuplicateIdError,
    GapnetError,
    HeaderMismatchError,
    IllegalStateError,
    IllegalTransitionError,
    InvariantViolation,
    LogSequenceError,
    RejectWithoutCommentError,
    SelfReviewError,
    StaleVersionError,
    UnknownActorError,
    UnknownRankError,
    UnknownSynsetError,
    UnknownTaskError,
    WrongRoleError,
)
from .ingest import (
    NamedEntityFilter,
    ParseReport,
    RejectedRow,
    TaskRecord,
    apply_ne_filter,
    emit_lexicon_sheet,
    emit_result_files,
    emit_task_sheet,
    load_column_mapping,
    parse_lexicon_sheet,
    parse_result_files,
    parse_task_sheet,
    record_to_contribution,
    task_to_record,
)
from .metrics import (
    CategoryCount,
    ContributionStats,
    CorrectnessReport,
    Finding,
    InputStats,
    PolysemyReport,
    PosCounts,
    completeness_audit,
    compute_contribution_stats,
    compute_correctness,
    compute_input_stats,
    polysemy_report,
)
from .project import AuditLogStore, Project, ProjectConfig, approved_component_events
from .service import create_app
from .workflow import (
    CRITERIA,
    EPOCH_TIMESTAMP,
    Actor,
    AuditEvent,
    Checklist,
    MarkGap,
    MergeV1,
    ReviewDecision,
    Role,
    SenseDraft,
    Skip,
    StateKind,
    TaskState,
    TaskView,
    Translate,
    Verdict,
    WorkflowEngine,
    build_draft,
    contribution_from_dict,
    contribution_to_dict,
    decision_from_dict,
    decision_to_dict,
    decompose_changes,
    event_from_json_line,
    event_to_json_line,
    replay_audit_log,
)

__version__ = "0.1.0"
