"""HTTP interface over a loaded project.

Thin by design: every endpoint is a straight translation between JSON and
the engine's typed API, so a scripted sequence of HTTP calls and the same
sequence of direct engine calls leave behind identical audit logs.
"""

from __future__ import annotations

from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .canonical import synset_to_dict
from .core import Lexicon, PartOfSpeech, cross_lingual_lookup
from .errors import GapnetError, UnknownSynsetError
from .metrics import (
    completeness_audit,
    compute_contribution_stats,
    compute_correctness,
)
from .project import Project
from .workflow import (
    StateKind,
    TaskView,
    contribution_from_dict,
    contribution_to_dict,
    decision_from_dict,
)

__all__ = ["create_app", "STATUS_BY_CODE"]

# GapnetError.code -> HTTP status
STATUS_BY_CODE = {
    "duplicate-id": 409,
    "unknown-synset": 404,
    "unknown-rank": 404,
    "unknown-task": 404,
    "unknown-actor": 403,
    "wrong-role": 403,
    "self-review-forbidden": 403,
    "illegal-state": 409,
    "already-deleted": 409,
    "stale-version": 409,
    "invariant-violation": 422,
    "reject-without-comment": 422,
    "header-mismatch": 422,
    "gap-in-sequence": 500,
    "illegal-transition-in-log": 500,
    "invalid-config": 500,
    "internal": 500,
}


class BadRequest(Exception):
    def __init__(self, message: str, field: str | None = None):
        self.message = message
        self.field = field
        super().__init__(message)


def _need(body: Mapping, key: str) -> Any:
    if not isinstance(body, Mapping) or key not in body:
        raise BadRequest(f"request body is missing {key!r}", field=key)
    return body[key]


def _version(body: Mapping) -> int:
    value = _need(body, "observedVersion")
    if not isinstance(value, int) or isinstance(value, bool):
        raise BadRequest("observedVersion must be an integer", field="observedVersion")
    return value


def _parse_pos(value: str | None) -> PartOfSpeech | None:
    if value is None:
        return None
    try:
        return PartOfSpeech.parse(value)
    except ValueError as exc:
        raise BadRequest(str(exc), field="pos")


def _parse_state(value: str | None) -> StateKind | None:
    if value is None:
        return None
    try:
        return StateKind(value)
    except ValueError:
        raise BadRequest(f"unknown task state {value!r}", field="state")


def task_summary(view: TaskView, actions: tuple[str, ...] | None = None) -> dict:
    doc = {
        "id": view.id,
        "pos": view.pos.value,
        "state": {
            "kind": view.state.kind.value,
            "actor": view.state.actor,
            "comment": view.state.comment,
        },
        "version": view.version,
        "submitter": view.submitter,
    }
    if actions is not None:
        doc["actions"] = list(actions)
    return doc


def task_detail(view: TaskView, actions: tuple[str, ...] | None = None) -> dict:
    doc = task_summary(view, actions)
    doc.update(
        {
            "pivot": synset_to_dict(view.pivot),
            "v1": synset_to_dict(view.v1),
            "draft": synset_to_dict(view.draft) if view.draft else None,
            "contribution": contribution_to_dict(view.contribution)
            if view.contribution
            else None,
            "submission": view.submission_seq,
        }
    )
    return doc


def _find_synset(synset_id: str, *lexicons: tuple[str, Lexicon]) -> dict:
    for label, lexicon in lexicons:
        synset = lexicon.get(synset_id)
        if synset is not None:
            return {"source": label, "synset": synset_to_dict(synset)}
    raise UnknownSynsetError(f"no synset {synset_id!r} in any loaded lexicon")


def create_app(project: Project) -> FastAPI:
    assert project.engine is not None, "project must be ingested or loaded first"
    engine = project.engine
    app = FastAPI(title="gapnet", docs_url=None, redoc_url=None)

    @app.exception_handler(GapnetError)
    async def _gapnet_error(_request: Request, exc: GapnetError):
        return JSONResponse(
            status_code=STATUS_BY_CODE.get(exc.code, 500),
            content={"error": exc.to_dict()},
        )

    @app.exception_handler(BadRequest)
    async def _bad_request(_request: Request, exc: BadRequest):
        return JSONResponse(
            status_code=400,
            content={
                "error": {"code": "bad-request", "message": exc.message, "field": exc.field}
            },
        )

    @app.exception_handler(RequestValidationError)
    async def _validation(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": {"code": "bad-request", "message": str(exc), "field": None}
            },
        )

    @app.get("/health")
    async def health():
        return {
            "status": "ok",
            "language": engine.language,
            "tag": engine.tag,
            "events": len(engine.events()),
            "tasks": len(engine.tasks()),
        }

    @app.get("/tasks")
    async def list_tasks(
        actor: str | None = None, state: str | None = None, pos: str | None = None
    ):
        views = engine.tasks(
            actor=actor, state=_parse_state(state), pos=_parse_pos(pos)
        )
        tasks = []
        for v in views:
            actions = engine.legal_actions(v.id, actor) if actor else None
            tasks.append(task_summary(v, actions))
        return {"tasks": tasks, "total": len(tasks)}

    @app.get("/tasks/{task_id}")
    async def get_task(task_id: str, actor: str | None = None):
        view = engine.task_view(task_id)
        actions = engine.legal_actions(task_id, actor) if actor else None
        doc = task_detail(view, actions)
        if view.state.kind is StateKind.SUBMITTED:
            doc["suggested_reviewer"] = engine.suggest_reviewer(task_id)
        return doc

    def _mutated(view: TaskView) -> dict:
        project.after_mutation()
        return {"task": task_detail(view)}

    @app.post("/tasks/{task_id}/contribution")
    async def post_contribution(task_id: str, body: dict):
        actor = _need(body, "actor")
        version = _version(body)
        try:
            contribution = contribution_from_dict(_need(body, "contribution"))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadRequest(f"bad contribution payload: {exc}", field="contribution")
        view = engine.submit(task_id, actor, contribution, version)
        return _mutated(view)

    @app.post("/tasks/{task_id}/peer-review")
    async def post_peer_review(task_id: str, body: dict):
        actor = _need(body, "actor")
        version = _version(body)
        try:
            decision = decision_from_dict(_need(body, "decision"))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadRequest(f"bad decision payload: {exc}", field="decision")
        view = engine.peer_review(task_id, actor, decision, version)
        return _mutated(view)

    @app.post("/tasks/{task_id}/expert-review")
    async def post_expert_review(task_id: str, body: dict):
        actor = _need(body, "actor")
        version = _version(body)
        try:
            decision = decision_from_dict(_need(body, "decision"))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadRequest(f"bad decision payload: {exc}", field="decision")
        view = engine.expert_review(task_id, actor, decision, version)
        return _mutated(view)

    @app.get("/synsets/{synset_id}")
    async def get_synset(synset_id: str):
        return _find_synset(
            synset_id,
            ("target", engine.lexicon()),
            ("v1", project.v1),
            ("pivot", project.pivot),
        )

    @app.get("/lookup")
    async def lookup(form: str, pos: str | None = None):
        pos_filter = _parse_pos(pos)
        target = engine.lexicon()
        direct = [
            synset_to_dict(s) for s in target.lookup_by_lemma(form, pos_filter)
        ]
        hits = cross_lingual_lookup(target, project.pivot, form, pos_filter)
        return {
            "form": form,
            "pos": pos_filter.value if pos_filter else None,
            "target": direct,
            "pivot": [
                {
                    "pivot_id": h.pivot_id,
                    "pivot_gloss": h.pivot_gloss,
                    "target_id": h.target_id,
                    "status": h.status,
                    "lemmas": list(h.lemmas),
                    "phrasets": list(h.phrasets),
                    "gap": h.gap,
                }
                for h in hits
            ],
        }

    @app.get("/metrics/contributions")
    async def metrics_contributions(scope: str = "approved"):
        if scope not in ("approved", "all"):
            raise BadRequest("scope must be 'approved' or 'all'", field="scope")
        stats = compute_contribution_stats(engine.events(), scope=scope)
        return stats.to_dict()

    @app.get("/metrics/correctness")
    async def metrics_correctness():
        return compute_correctness(engine.events()).to_dict()

    @app.get("/metrics/completeness")
    async def metrics_completeness():
        findings = completeness_audit(engine.lexicon())
        return {
            "findings": [
                {"kind": f.kind, "synset": f.synset_id, "detail": f.detail}
                for f in findings
            ],
            "total": len(findings),
        }

    return app
