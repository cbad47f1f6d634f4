// Metrics dashboard: contribution counts by part of speech, reviewer
// correctness per checklist criterion, and completeness audit findings.
// Each table mirrors one /metrics payload row for row.

import type { WorkbenchApi } from "../api.js";
import { clear, el } from "../dom.js";
import type { Pos } from "../types.js";

const POS_COLUMNS: (Pos | "total")[] = ["noun", "verb", "adjective", "adverb", "total"];

export interface MetricsDeps {
  api: WorkbenchApi;
  scope: "approved" | "all";
  onScope: (scope: "approved" | "all") => void;
  onRefresh: () => void;
}

function percent(ratio: number | null): string {
  return ratio === null ? "-" : `${(ratio * 100).toFixed(2)}%`;
}

function label(key: string): string {
  return key.replace(/_/g, " ");
}

export async function renderMetrics(root: HTMLElement, deps: MetricsDeps): Promise<void> {
  const [contributions, correctness, completeness] = await Promise.all([
    deps.api.contributionStats(deps.scope),
    deps.api.correctness(),
    deps.api.completeness(),
  ]);
  clear(root);
  root.className = "metrics";

  const controls = el("div", { class: "metrics-controls" });
  for (const scope of ["approved", "all"] as const) {
    controls.append(
      el("button", {
        class: scope === deps.scope ? `scope-${scope} active` : `scope-${scope}`,
        text: scope === "approved" ? "approved only" : "all submissions",
        onclick: () => deps.onScope(scope),
      })
    );
  }
  controls.append(
    el("button", { class: "refresh-metrics", text: "refresh", onclick: deps.onRefresh })
  );
  root.append(controls);

  const stats = el("table", { class: "contribution-stats" });
  const statsHead = el("tr", {}, el("th", { text: "contribution" }));
  for (const col of POS_COLUMNS) statsHead.append(el("th", { text: col }));
  stats.append(el("thead", {}, statsHead));
  const statsBody = el("tbody");
  for (const [key, row] of Object.entries(contributions.rows)) {
    const tr = el("tr", { "data-row": key }, el("td", { text: label(key) }));
    for (const col of POS_COLUMNS) {
      tr.append(el("td", { "data-col": col, text: String(row[col]) }));
    }
    statsBody.append(tr);
  }
  stats.append(statsBody);
  root.append(el("h3", { text: `contributions (${contributions.scope})` }), stats);

  const corr = el("table", { class: "correctness" });
  corr.append(
    el(
      "thead",
      {},
      el(
        "tr",
        {},
        el("th", { text: "category" }),
        el("th", { text: "correct" }),
        el("th", { text: "total" }),
        el("th", { text: "rate" })
      )
    )
  );
  const corrBody = el("tbody");
  const corrRows: [string, { correct: number; total: number; ratio: number | null }][] = [
    ...Object.entries(correctness.categories),
    ["overall", correctness.overall],
  ];
  for (const [key, cell] of corrRows) {
    corrBody.append(
      el(
        "tr",
        { "data-row": key },
        el("td", { text: label(key) }),
        el("td", { "data-col": "correct", text: String(cell.correct) }),
        el("td", { "data-col": "total", text: String(cell.total) }),
        el("td", { "data-col": "rate", text: percent(cell.ratio) })
      )
    );
  }
  corr.append(corrBody);
  root.append(el("h3", { text: "expert agreement" }), corr);
  root.append(
    el("p", { class: "undecided", text: `${correctness.undecided} submissions awaiting a verdict` })
  );

  root.append(el("h3", { text: "completeness audit" }));
  if (completeness.total === 0) {
    root.append(el("p", { class: "no-findings", text: "no findings" }));
  } else {
    const table = el("table", { class: "completeness" });
    table.append(
      el(
        "thead",
        {},
        el(
          "tr",
          {},
          el("th", { text: "kind" }),
          el("th", { text: "synset" }),
          el("th", { text: "detail" })
        )
      )
    );
    const body = el("tbody");
    for (const finding of completeness.findings) {
      body.append(
        el(
          "tr",
          { class: "finding" },
          el("td", { text: finding.kind }),
          el("td", { text: finding.synset }),
          el("td", { text: finding.detail })
        )
      );
    }
    table.append(body);
    root.append(table);
    root.append(el("p", { class: "findings-total", text: `${completeness.total} findings` }));
  }
}
