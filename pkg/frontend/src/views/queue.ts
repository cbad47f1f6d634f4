// Task queue: POS filter tabs plus one table row per task the server
// returned, in the server's order.

import type { WorkbenchApi } from "../api.js";
import { clear, el } from "../dom.js";
import type { Pos, TaskSummaryDoc } from "../types.js";
import { stateBadge } from "./panels.js";

const POS_TABS: (Pos | "")[] = ["", "noun", "verb", "adjective", "adverb"];

export interface QueueDeps {
  api: WorkbenchApi;
  actor: string;
  posFilter: Pos | "";
  onOpen: (taskId: string) => void;
  onFilter: (pos: Pos | "") => void;
}

function actionLabel(task: TaskSummaryDoc): string {
  const actions = task.actions ?? [];
  if (actions.includes("contribution") || actions.includes("claim")) return "open";
  if (actions.includes("peer-review")) return "review";
  if (actions.includes("expert-review")) return "validate";
  return "view";
}

function row(task: TaskSummaryDoc, deps: QueueDeps): HTMLTableRowElement {
  const tr = el("tr", { class: "task-row", "data-task": task.id });
  tr.append(el("td", { class: "task-id", text: task.id }));
  tr.append(el("td", { text: task.pos }));
  tr.append(el("td", {}, stateBadge(task.state.kind)));
  tr.append(el("td", { text: String(task.version) }));
  tr.append(el("td", { text: task.submitter ?? "" }));
  const label = actionLabel(task);
  tr.append(
    el(
      "td",
      {},
      el("button", {
        class: `task-action action-${label}`,
        text: label,
        onclick: () => deps.onOpen(task.id),
      })
    )
  );
  return tr;
}

export async function renderQueue(root: HTMLElement, deps: QueueDeps): Promise<void> {
  const listing = await deps.api.tasks({
    actor: deps.actor || undefined,
    pos: deps.posFilter || undefined,
  });
  clear(root);

  const tabs = el("nav", { class: "pos-tabs" });
  for (const pos of POS_TABS) {
    tabs.append(
      el("button", {
        class: pos === deps.posFilter ? "tab active" : "tab",
        text: pos === "" ? "all" : pos,
        onclick: () => deps.onFilter(pos),
      })
    );
  }
  root.append(tabs);
  root.append(el("p", { class: "queue-total", text: `${listing.total} tasks` }));

  const table = el("table", { class: "queue" });
  table.append(
    el(
      "thead",
      {},
      el(
        "tr",
        {},
        el("th", { text: "task" }),
        el("th", { text: "pos" }),
        el("th", { text: "state" }),
        el("th", { text: "version" }),
        el("th", { text: "submitter" }),
        el("th", { text: "" })
      )
    )
  );
  const body = el("tbody");
  for (const task of listing.tasks) body.append(row(task, deps));
  table.append(body);
  root.append(table);
}
