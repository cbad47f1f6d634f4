"""Project wiring: configuration, durable audit log, storage layout.

A project directory is fully described by one JSON config file. Storage is
an append-only NDJSON audit log plus canonical lexicon documents; replaying
the log reproduces all workflow state, the snapshots are a convenience for
operators and exports, never the source of truth.
"""

from __future__ import annotations

import json
import os
import shutil
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .canonical import dump_lexicon, load_lexicon
from .core import Lexicon, PartOfSpeech
from .errors import ConfigError
from .ingest import (
    NamedEntityFilter,
    emit_result_files,
    emit_task_sheet,
    load_column_mapping,
    parse_lexicon_sheet,
)
from .metrics import _submission_fates
from .workflow import (
    COMPONENT_KINDS,
    EPOCH_TIMESTAMP,
    Actor,
    AuditEvent,
    GenerationReport,
    Role,
    WorkflowEngine,
    event_from_json_line,
    event_to_json_line,
    replay_audit_log,
)

__all__ = ["ProjectConfig", "AuditLogStore", "Project", "approved_component_events"]


@dataclass(frozen=True)
class ProjectConfig:
    pivot_lexicon: Path
    v1_lexicon: Path
    storage_dir: Path
    actors: tuple[Actor, ...]
    ne_filter: Path | None = None
    column_mappings: dict = field(default_factory=dict)
    port: int = 8000
    pivot_language: str = "en"
    pivot_tag: str = "pwn"
    target_language: str = "ar"
    target_tag: str = "awn"
    fixed_clock: str | None = None
    snapshot_every: int = 500
    return_to_author: bool = True

    @classmethod
    def from_file(cls, path: str | Path) -> "ProjectConfig":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file {path} does not exist", field="config")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}", field="config")
        base = path.parent

        def resolve(key: str, default=None) -> Path | None:
            value = doc.get(key, default)
            if value is None:
                return None
            return (base / value).resolve() if not os.path.isabs(value) else Path(value)

        for required in ("pivot_lexicon", "v1_lexicon", "storage_dir", "actors"):
            if required not in doc:
                raise ConfigError(f"config is missing {required!r}", field=required)
        try:
            actors = tuple(
                Actor(a["id"], Role(a["role"])) for a in doc["actors"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad actors entry: {exc}", field="actors")
        mappings = {
            key: (base / value).resolve()
            for key, value in (doc.get("column_mappings") or {}).items()
        }
        config = cls(
            pivot_lexicon=resolve("pivot_lexicon"),
            v1_lexicon=resolve("v1_lexicon"),
            storage_dir=resolve("storage_dir"),
            actors=actors,
            ne_filter=resolve("ne_filter"),
            column_mappings=mappings,
            port=int(doc.get("port", 8000)),
            pivot_language=doc.get("pivot_language", "en"),
            pivot_tag=doc.get("pivot_tag", "pwn"),
            target_language=doc.get("target_language", "ar"),
            target_tag=doc.get("target_tag", "awn"),
            fixed_clock=doc.get("fixed_clock"),
            snapshot_every=int(doc.get("snapshot_every", 500)),
            return_to_author=bool(doc.get("return_to_author", True)),
        )
        config.validate()
        return config

    def validate(self) -> None:
        for label, p in (
            ("pivot_lexicon", self.pivot_lexicon),
            ("v1_lexicon", self.v1_lexicon),
            ("ne_filter", self.ne_filter),
        ):
            if p is not None and not p.is_file():
                raise ConfigError(f"{label} path {p} does not exist", field=label)
        for key, p in self.column_mappings.items():
            if not p.is_file():
                raise ConfigError(f"column mapping {key} path {p} does not exist", field=key)
        translators = sum(1 for a in self.actors if a.role is Role.TRANSLATOR)
        experts = sum(1 for a in self.actors if a.role is Role.EXPERT)
        if translators < 2 or experts < 1:
            raise ConfigError(
                "roster needs at least two translators and one expert", field="actors"
            )
        if self.snapshot_every < 1:
            raise ConfigError("snapshot_every must be positive", field="snapshot_every")


class AuditLogStore:
    """Append-only NDJSON event log with write-ahead durability.

    ``append`` makes the line durable (flush + fsync) before returning unless
    a batch is open; a batch syncs once on close, which is what bulk task
    generation wants.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._fh = None
        self._batching = False

    def _handle(self):
        if self._fh is None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(self.path, "a", encoding="utf-8")
        return self._fh

    def append(self, event: AuditEvent) -> None:
        fh = self._handle()
        fh.write(event_to_json_line(event) + "\n")
        if not self._batching:
            fh.flush()
            os.fsync(fh.fileno())

    def begin_batch(self) -> None:
        self._batching = True

    def end_batch(self) -> None:
        if self._fh is not None:
            self._fh.flush()
            os.fsync(self._fh.fileno())
        self._batching = False

    def read(self) -> list[AuditEvent]:
        if not self.path.exists():
            return []
        events = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    events.append(event_from_json_line(line))
        return events

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def approved_component_events(events: Iterable[AuditEvent]) -> list[AuditEvent]:
    """Component events belonging to approved submissions or imports."""
    events = list(events)
    fates = _submission_fates(events)
    out = []
    for ev in events:
        if ev.kind not in COMPONENT_KINDS:
            continue
        submission = ev.payload.get("submission")
        if submission is None or fates.get(submission, False):
            out.append(ev)
    return out


class Project:
    """A configured deployment: lexicons, engine, durable log, exports."""

    def __init__(self, config: ProjectConfig):
        self.config = config
        self.pivot: Lexicon | None = None
        self.v1: Lexicon | None = None
        self.engine: WorkflowEngine | None = None
        self._store: AuditLogStore | None = None
        self._last_snapshot_seq = 0

    # -- paths ----------------------------------------------------------------

    @property
    def audit_log_path(self) -> Path:
        return self.config.storage_dir / "audit.ndjson"

    @property
    def lexicons_dir(self) -> Path:
        return self.config.storage_dir / "lexicons"

    @property
    def snapshots_dir(self) -> Path:
        return self.config.storage_dir / "snapshots"

    # -- lifecycle --------------------------------------------------------------

    def _mapping(self, key: str):
        path = self.config.column_mappings.get(key)
        return load_column_mapping(path) if path else None

    def _clock(self):
        if self.config.fixed_clock:
            stamp = self.config.fixed_clock
            return lambda: stamp
        return None

    def _parse_inputs(self):
        pivot, pivot_report = parse_lexicon_sheet(
            self.config.pivot_lexicon.read_bytes(),
            language=self.config.pivot_language,
            tag=self.config.pivot_tag,
            column_mapping=self._mapping("pivot_lexicon"),
            sheet="pivot",
        )
        v1, v1_report = parse_lexicon_sheet(
            self.config.v1_lexicon.read_bytes(),
            language=self.config.target_language,
            tag=self.config.target_tag,
            column_mapping=self._mapping("v1_lexicon"),
            sheet="v1",
            require_lemmas=False,
        )
        ne = (
            NamedEntityFilter.from_file(self.config.ne_filter)
            if self.config.ne_filter
            else NamedEntityFilter.empty()
        )
        return pivot, pivot_report, v1, v1_report, ne

    def ingest(self) -> dict:
        """Initialize project storage from the input files.

        Re-running on the same inputs rewrites byte-identical storage: task
        generation is ordered and stamped with a fixed epoch clock.
        """
        pivot, pivot_report, v1, v1_report, ne = self._parse_inputs()
        if self.config.storage_dir.exists():
            shutil.rmtree(self.config.storage_dir)
        self.lexicons_dir.mkdir(parents=True, exist_ok=True)
        self.snapshots_dir.mkdir(parents=True, exist_ok=True)
        (self.lexicons_dir / "pivot.json").write_bytes(dump_lexicon(pivot))
        (self.lexicons_dir / "v1.json").write_bytes(dump_lexicon(v1))

        self._store = AuditLogStore(self.audit_log_path)
        engine = WorkflowEngine(
            self.config.actors,
            language=self.config.target_language,
            tag=self.config.target_tag,
            clock=lambda: EPOCH_TIMESTAMP,
            sink=self._store.append,
            return_to_author=self.config.return_to_author,
        )
        self._store.begin_batch()
        report: GenerationReport = engine.generate_tasks(pivot, v1, ne)
        self._store.end_batch()
        clock = self._clock()
        if clock is not None:
            engine.set_clock(clock)
        else:
            from .workflow import utc_now_iso

            engine.set_clock(utc_now_iso)
        self.pivot, self.v1, self.engine = pivot, v1, engine
        self._last_snapshot_seq = 0
        return {
            "tasks": {pos.value: n for pos, n in report.created.items()},
            "tasks_total": report.total,
            "excluded": report.excluded,
            "unaligned": len(report.unaligned),
            "pivot_rows": {"accepted": pivot_report.accepted, "rejected": len(pivot_report.rejected)},
            "v1_rows": {"accepted": v1_report.accepted, "rejected": len(v1_report.rejected)},
            "warnings": len(pivot_report.warnings) + len(v1_report.warnings),
        }

    def load(self) -> None:
        """Open an initialized project: lexicon docs plus full log replay."""
        if not self.audit_log_path.exists():
            raise ConfigError(
                f"project storage {self.config.storage_dir} is not initialized; run ingest",
                field="storage_dir",
            )
        self.pivot = load_lexicon((self.lexicons_dir / "pivot.json").read_bytes())
        self.v1 = load_lexicon((self.lexicons_dir / "v1.json").read_bytes())
        self._store = AuditLogStore(self.audit_log_path)
        engine = replay_audit_log(self._store.read(), actors=self.config.actors)
        engine.set_sink(self._store.append)
        clock = self._clock()
        if clock is not None:
            engine.set_clock(clock)
        self.engine = engine
        self._last_snapshot_seq = len(engine.events())

    def after_mutation(self) -> None:
        """Periodic canonical snapshot of the target lexicon."""
        assert self.engine is not None
        seq = len(self.engine.events())
        if seq - self._last_snapshot_seq >= self.config.snapshot_every:
            self.snapshots_dir.mkdir(parents=True, exist_ok=True)
            path = self.snapshots_dir / f"target-{seq:08d}.json"
            path.write_bytes(dump_lexicon(self.engine.lexicon()))
            self._last_snapshot_seq = seq

    def close(self) -> None:
        if self._store is not None:
            self._store.close()

    # -- exports ----------------------------------------------------------------

    def export_canonical(self, out_dir: str | Path) -> list[Path]:
        assert self.engine is not None
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"lexicon-{self.engine.tag}.json"
        target.write_bytes(dump_lexicon(self.engine.lexicon()))
        return [target]

    def export_result_sheets(self, out_dir: str | Path) -> list[Path]:
        assert self.engine is not None
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        synsets = self.engine.lexicon().synsets()
        events = approved_component_events(self.engine.events())
        paths = []
        for pos in PartOfSpeech:
            final_bytes, delta_bytes = emit_result_files(synsets, events, pos)
            fp = out / f"final-{pos.value}.tsv"
            dp = out / f"delta-{pos.value}.tsv"
            fp.write_bytes(final_bytes)
            dp.write_bytes(delta_bytes)
            paths.extend([fp, dp])
        return paths

    def export_task_sheet(self, out_path: str | Path, pos: PartOfSpeech) -> Path:
        from .ingest import task_to_record

        assert self.engine is not None
        records = []
        row = 2
        for view in self.engine.tasks(pos=pos):
            records.append(task_to_record(view, row))
            row += 1
        out = Path(out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(emit_task_sheet(records))
        return out
