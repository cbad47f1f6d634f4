"""Command line entry points.

Every verb works against one project config file:

    gapnet --config project.json ingest
    gapnet --config project.json stats --scope approved
    gapnet --config project.json audit
    gapnet --config project.json export result-sheets --out out/
    gapnet --config project.json tasks --state submitted
    gapnet --config project.json serve --port 8011
"""

from __future__ import annotations

import argparse
import sys

from .core import PartOfSpeech
from .errors import GapnetError
from .metrics import (
    compute_contribution_stats,
    compute_correctness,
    compute_input_stats,
    completeness_audit,
    render_contribution_stats,
    render_correctness,
    render_findings,
    render_input_stats,
)
from .project import Project, ProjectConfig
from .workflow import StateKind

__all__ = ["main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapnet",
        description="Collaborative wordnet construction with explicit lexical gaps.",
    )
    parser.add_argument("--config", required=True, help="project config JSON")
    parser.add_argument(
        "--format",
        choices=("table", "tsv"),
        default="table",
        help="output format for tabular reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("ingest", help="parse inputs, generate tasks, initialize storage")

    p_stats = sub.add_parser("stats", help="dataset and contribution statistics")
    p_stats.add_argument(
        "--scope",
        choices=("approved", "all"),
        default="approved",
        help="count only expert-approved contributions, or everything submitted",
    )

    sub.add_parser("audit", help="completeness findings for the target lexicon")

    p_export = sub.add_parser("export", help="write lexicon exports")
    p_export.add_argument("kind", choices=("canonical", "result-sheets"))
    p_export.add_argument("--out", required=True, help="output directory")

    p_tasks = sub.add_parser("tasks", help="list or export workflow tasks")
    p_tasks.add_argument("--actor", help="only tasks this actor can act on")
    p_tasks.add_argument("--state", help="filter by task state")
    p_tasks.add_argument("--pos", help="filter by part of speech")
    p_tasks.add_argument(
        "--export-sheet", metavar="PATH", help="write a translation sheet (requires --pos)"
    )

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None, help="override config port")

    return parser


def _cmd_ingest(project: Project) -> int:
    summary = project.ingest()
    print(f"pivot rows accepted: {summary['pivot_rows']['accepted']}"
          f" rejected: {summary['pivot_rows']['rejected']}")
    print(f"v1 rows accepted: {summary['v1_rows']['accepted']}"
          f" rejected: {summary['v1_rows']['rejected']}")
    if summary["warnings"]:
        print(f"warnings: {summary['warnings']}")
    for pos, count in summary["tasks"].items():
        print(f"tasks[{pos}]: {count}")
    print(f"tasks total: {summary['tasks_total']}"
          f" (excluded {summary['excluded']}, unaligned {summary['unaligned']})")
    print(f"storage: {project.config.storage_dir}")
    return 0


def _cmd_stats(project: Project, scope: str, fmt: str) -> int:
    project.load()
    engine = project.engine
    input_stats = compute_input_stats(view.v1 for view in engine.tasks())
    print(render_input_stats(input_stats, fmt))
    print()
    print(render_contribution_stats(
        compute_contribution_stats(engine.events(), scope=scope), fmt
    ))
    correctness = compute_correctness(engine.events())
    if correctness.overall.total:
        print()
        print(render_correctness(correctness, fmt))
    return 0


def _cmd_audit(project: Project, fmt: str) -> int:
    project.load()
    findings = completeness_audit(project.engine.lexicon())
    print(render_findings(findings, fmt))
    print(f"findings: {len(findings)}")
    return 0


def _cmd_export(project: Project, kind: str, out: str) -> int:
    project.load()
    if kind == "canonical":
        paths = project.export_canonical(out)
    else:
        paths = project.export_result_sheets(out)
    for path in paths:
        print(path)
    return 0


def _cmd_tasks(project: Project, args: argparse.Namespace, fmt: str) -> int:
    project.load()
    pos = PartOfSpeech.parse(args.pos) if args.pos else None
    if args.export_sheet:
        if pos is None:
            print("--export-sheet requires --pos", file=sys.stderr)
            return 2
        path = project.export_task_sheet(args.export_sheet, pos)
        print(path)
        return 0
    state = StateKind(args.state) if args.state else None
    views = project.engine.tasks(actor=args.actor, state=state, pos=pos)
    from .metrics import format_table, tsv_table

    header = ("Task", "POS", "State", "Version", "Submitter")
    rows = [
        (v.id, v.pos.value, v.state.kind.value, str(v.version), v.submitter or "")
        for v in views
    ]
    table = format_table(header, rows) if fmt == "table" else tsv_table(header, rows)
    print(table)
    print(f"tasks: {len(views)}")
    return 0


def _cmd_serve(project: Project, host: str, port: int | None) -> int:
    import uvicorn

    from .service import create_app

    project.load()
    app = create_app(project)
    uvicorn.run(app, host=host, port=port or project.config.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = ProjectConfig.from_file(args.config)
        project = Project(config)
        if args.command == "ingest":
            return _cmd_ingest(project)
        if args.command == "stats":
            return _cmd_stats(project, args.scope, args.format)
        if args.command == "audit":
            return _cmd_audit(project, args.format)
        if args.command == "export":
            return _cmd_export(project, args.kind, args.out)
        if args.command == "tasks":
            return _cmd_tasks(project, args, args.format)
        if args.command == "serve":
            return _cmd_serve(project, args.host, args.port)
        parser.error(f"unknown command {args.command!r}")
    except GapnetError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
