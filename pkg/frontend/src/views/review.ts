// Review form shared by peer review and expert validation. Checked boxes
// mean the criterion holds; accept needs a clean checklist, reject needs at
// least one failed criterion and a comment. Only the expert form offers a
// counter-lemma field, for overturning a gap claim with evidence.

import { ApiError, isStaleVersion, type WorkbenchApi } from "../api.js";
import { arabic, clear, el } from "../dom.js";
import type { Criterion, TaskDetailDoc } from "../types.js";
import {
  CRITERIA,
  decisionProblems,
  freshChecklist,
  toDecision,
  type DecisionInput,
} from "../validate.js";

export interface ReviewDeps {
  api: WorkbenchApi;
  actor: string;
  kind: "peer-review" | "expert-review";
  onDecided: (task: TaskDetailDoc) => void;
  onReload: () => void;
}

const CRITERION_LABELS: Record<Criterion, string> = {
  gap: "gap status is right",
  gloss: "gloss is adequate",
  lemmas: "lemmas are correct and complete",
  examples: "examples fit the senses",
};

export function renderReview(root: HTMLElement, task: TaskDetailDoc, deps: ReviewDeps): void {
  const decision: DecisionInput = {
    verdict: "accept",
    checklist: freshChecklist(),
    comment: "",
    counterLemma: "",
  };
  let conflict: string | null = null;
  let serverError: string | null = null;

  const post = async (verdict: "accept" | "reject"): Promise<void> => {
    decision.verdict = verdict;
    serverError = null;
    const doc = toDecision(decision);
    try {
      const send = deps.kind === "peer-review" ? deps.api.peerReview : deps.api.expertReview;
      const updated = await send.call(deps.api, task.id, deps.actor, task.version, doc);
      deps.onDecided(updated);
    } catch (err) {
      if (err instanceof ApiError && isStaleVersion(err)) {
        conflict = err.message;
      } else {
        serverError = err instanceof Error ? err.message : String(err);
      }
      rerender();
    }
  };

  const refreshButtons = (): void => {
    const accept = root.querySelector<HTMLButtonElement>(".post-accept");
    const reject = root.querySelector<HTMLButtonElement>(".post-reject");
    if (accept) {
      accept.disabled = decisionProblems({ ...decision, verdict: "accept" }).length > 0;
    }
    if (reject) {
      reject.disabled = decisionProblems({ ...decision, verdict: "reject" }).length > 0;
    }
  };

  const rerender = (): void => {
    clear(root);
    root.className = `review review-${deps.kind}`;
    root.append(
      el("h4", { text: deps.kind === "peer-review" ? "peer review" : "expert validation" })
    );

    if (conflict !== null) {
      root.append(
        el(
          "div",
          { class: "conflict-dialog" },
          el("p", {
            text:
              "This task changed on the server while you were reviewing. " +
              "Reload to see the latest version before deciding.",
          }),
          el("p", { class: "conflict-detail", text: conflict }),
          el("button", { class: "reload-task", text: "reload task", onclick: deps.onReload })
        )
      );
    }
    if (serverError !== null) {
      root.append(el("div", { class: "server-error", text: serverError }));
    }

    const checklist = el("div", { class: "checklist" });
    for (const criterion of CRITERIA) {
      const box = el("input", {
        type: "checkbox",
        class: `criterion-${criterion}`,
        checked: decision.checklist[criterion],
        onchange: (e: Event) => {
          decision.checklist[criterion] = (e.target as HTMLInputElement).checked;
          refreshButtons();
        },
      });
      checklist.append(el("label", {}, box, CRITERION_LABELS[criterion]));
    }
    root.append(checklist);

    const comment = el("textarea", {
      class: "review-comment",
      rows: "2",
      placeholder: "comment (required to reject)",
      oninput: (e: Event) => {
        decision.comment = (e.target as HTMLTextAreaElement).value;
        refreshButtons();
      },
    }) as HTMLTextAreaElement;
    comment.value = decision.comment;
    root.append(comment);

    if (deps.kind === "expert-review") {
      const counter = arabic(
        el("input", {
          class: "counter-lemma",
          placeholder: "counter-lemma (optional)",
          value: decision.counterLemma,
          oninput: (e: Event) => {
            decision.counterLemma = (e.target as HTMLInputElement).value;
          },
        })
      );
      root.append(el("label", { class: "counter-lemma-label" }, "counter-lemma: ", counter));
    }

    root.append(
      el("div", { class: "verdict-buttons" },
        el("button", {
          class: "post-accept",
          text: "accept",
          onclick: () => {
            void post("accept");
          },
        }),
        el("button", {
          class: "post-reject",
          text: "reject",
          onclick: () => {
            void post("reject");
          },
        })
      )
    );
    refreshButtons();
  };

  rerender();
}
