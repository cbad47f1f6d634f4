// Contribution editor: translate, mark as gap, or skip. Local form state
// lives in a DraftInput; sense rank is the row order, so the move buttons
// are the rank editor. The server stays authoritative: on a stale version
// the form never merges, it offers an explicit reload instead.

import { ApiError, isStaleVersion, type WorkbenchApi } from "../api.js";
import { arabic, clear, el } from "../dom.js";
import type { ContributionDoc, SynsetDoc, TaskDetailDoc } from "../types.js";
import {
  draftProblems,
  emptyDraft,
  toContribution,
  type DraftInput,
  type SenseInput,
} from "../validate.js";

export interface EditorDeps {
  api: WorkbenchApi;
  actor: string;
  /** Language tag stamped on glosses, examples and phrasets. */
  language: string;
  onSubmitted: (task: TaskDetailDoc) => void;
  /** Reload the whole task view from the server, discarding local edits. */
  onReload: () => void;
}

function draftFromContribution(c: ContributionDoc): DraftInput {
  if (c.type === "skip") {
    return { ...emptyDraft(), mode: "skip", comment: c.comment };
  }
  if (c.type === "mark-gap") {
    return {
      ...emptyDraft(),
      mode: "gap",
      phrasets: c.phrasets.map((p) => p.text),
      comment: c.comment,
    };
  }
  if (c.type === "translate") {
    return {
      mode: "translate",
      gloss: c.gloss.text,
      senses: c.senses.map((s) => ({ form: s.form, examples: s.examples.map((e) => e.text) })),
      phrasets: c.phrasets.map((p) => p.text),
      comment: "",
    };
  }
  // merge-v1 cannot be re-edited field by field; fall back to the built draft
  return emptyDraft();
}

function draftFromSynset(synset: SynsetDoc): DraftInput {
  return {
    mode: "translate",
    gloss: synset.gloss?.text ?? "",
    senses: synset.senses
      .filter((s) => !s.deleted)
      .map((s) => ({ form: s.form, examples: s.examples.map((e) => e.text) })),
    phrasets: synset.phrasets.map((p) => p.text),
    comment: "",
  };
}

/** Initial form content: the prior submission when revising, else the
 * inherited synset as a starting point. */
export function prefill(task: TaskDetailDoc): DraftInput {
  if (task.contribution && task.contribution.type !== "merge-v1") {
    return draftFromContribution(task.contribution);
  }
  if (task.contribution && task.draft) return draftFromSynset(task.draft);
  return draftFromSynset(task.v1);
}

export function renderEditor(root: HTMLElement, task: TaskDetailDoc, deps: EditorDeps): void {
  const draft = prefill(task);
  let conflict: string | null = null;
  let serverError: string | null = null;

  const senseRow = (sense: SenseInput, index: number): HTMLElement => {
    const locked = draft.mode !== "translate";
    const row = el("div", { class: "sense-row" });
    row.append(el("span", { class: "rank", text: String(index + 1) }));
    row.append(
      arabic(
        el("input", {
          class: "sense-form",
          value: sense.form,
          disabled: locked,
          oninput: (e: Event) => {
            sense.form = (e.target as HTMLInputElement).value;
            refreshProblems();
          },
        })
      )
    );
    const examples = arabic(
      el("textarea", {
        class: "sense-examples",
        rows: "2",
        placeholder: "one example per line",
        disabled: locked,
        oninput: (e: Event) => {
          sense.examples = (e.target as HTMLTextAreaElement).value.split("\n");
          refreshProblems();
        },
      })
    ) as HTMLTextAreaElement;
    examples.value = sense.examples.join("\n");
    row.append(examples);
    row.append(
      el("button", {
        class: "move-up",
        text: "up",
        disabled: locked || index === 0,
        onclick: () => {
          const prev = draft.senses[index - 1];
          if (!prev) return;
          draft.senses[index - 1] = sense;
          draft.senses[index] = prev;
          rerender();
        },
      }),
      el("button", {
        class: "move-down",
        text: "down",
        disabled: locked || index === draft.senses.length - 1,
        onclick: () => {
          const next = draft.senses[index + 1];
          if (!next) return;
          draft.senses[index + 1] = sense;
          draft.senses[index] = next;
          rerender();
        },
      }),
      el("button", {
        class: "remove-sense",
        text: "remove",
        disabled: locked,
        onclick: () => {
          draft.senses.splice(index, 1);
          rerender();
        },
      })
    );
    return row;
  };

  const phrasetRow = (index: number): HTMLElement => {
    const row = el("div", { class: "phraset-row" });
    row.append(
      arabic(
        el("input", {
          class: "phraset-text",
          value: draft.phrasets[index] ?? "",
          oninput: (e: Event) => {
            draft.phrasets[index] = (e.target as HTMLInputElement).value;
            refreshProblems();
          },
        })
      )
    );
    row.append(
      el("button", {
        class: "remove-phraset",
        text: "remove",
        onclick: () => {
          draft.phrasets.splice(index, 1);
          rerender();
        },
      })
    );
    return row;
  };

  const refreshProblems = (): void => {
    const problems = draftProblems(draft);
    const list = root.querySelector(".problems");
    if (list) {
      clear(list as HTMLElement);
      for (const p of problems) list.append(el("li", { text: p }));
    }
    const submit = root.querySelector<HTMLButtonElement>(".submit-draft");
    if (submit) submit.disabled = problems.length > 0;
  };

  const submit = async (): Promise<void> => {
    serverError = null;
    const contribution = toContribution(draft, deps.language);
    try {
      const updated = await deps.api.submitContribution(
        task.id,
        deps.actor,
        task.version,
        contribution
      );
      deps.onSubmitted(updated);
    } catch (err) {
      if (err instanceof ApiError && isStaleVersion(err)) {
        conflict = err.message;
      } else {
        serverError = err instanceof Error ? err.message : String(err);
      }
      rerender();
    }
  };

  const rerender = (): void => {
    clear(root);
    root.className = "editor";

    if (task.state.kind === "changes-requested" && task.state.comment) {
      root.append(
        el(
          "div",
          { class: "rejection-banner" },
          el("strong", { text: "changes requested: " }),
          el("span", { text: task.state.comment })
        )
      );
    }
    if (conflict !== null) {
      root.append(
        el(
          "div",
          { class: "conflict-dialog" },
          el("p", {
            text:
              "This task changed on the server while you were editing. " +
              "Reload to see the latest version; reloading discards your unsubmitted edits.",
          }),
          el("p", { class: "conflict-detail", text: conflict }),
          el("button", { class: "reload-task", text: "reload task", onclick: deps.onReload })
        )
      );
    }
    if (serverError !== null) {
      root.append(el("div", { class: "server-error", text: serverError }));
    }

    const modes = el("div", { class: "mode-picker" });
    for (const [value, label] of [
      ["translate", "translate"],
      ["gap", "lexical gap"],
      ["skip", "skip"],
    ] as const) {
      const radio = el("input", {
        type: "radio",
        name: "mode",
        value,
        checked: draft.mode === value,
        onchange: () => {
          draft.mode = value;
          rerender();
        },
      });
      modes.append(el("label", { class: `mode-${value}` }, radio, label));
    }
    root.append(modes);

    if (draft.mode === "translate") {
      const gloss = arabic(
        el("textarea", {
          class: "gloss-input",
          rows: "2",
          placeholder: "gloss",
          oninput: (e: Event) => {
            draft.gloss = (e.target as HTMLTextAreaElement).value;
            refreshProblems();
          },
        })
      ) as HTMLTextAreaElement;
      gloss.value = draft.gloss;
      root.append(el("h4", { text: "gloss" }), gloss);
    }

    if (draft.mode !== "skip") {
      const senses = el("div", { class: "sense-editor" });
      draft.senses.forEach((sense, i) => senses.append(senseRow(sense, i)));
      senses.append(
        el("button", {
          class: "add-sense",
          text: "add sense",
          disabled: draft.mode !== "translate",
          onclick: () => {
            draft.senses.push({ form: "", examples: [] });
            rerender();
          },
        })
      );
      root.append(el("h4", { text: "senses" }), senses);

      const phrasets = el("div", { class: "phraset-editor" });
      draft.phrasets.forEach((_, i) => phrasets.append(phrasetRow(i)));
      phrasets.append(
        el("button", {
          class: "add-phraset",
          text: "add phraset",
          onclick: () => {
            draft.phrasets.push("");
            rerender();
          },
        })
      );
      root.append(el("h4", { text: "phrasets" }), phrasets);
    }

    if (draft.mode !== "translate") {
      const comment = el("input", {
        class: "comment-input",
        placeholder: draft.mode === "skip" ? "why this task is skipped" : "comment (optional)",
        value: draft.comment,
        oninput: (e: Event) => {
          draft.comment = (e.target as HTMLInputElement).value;
          refreshProblems();
        },
      });
      root.append(el("h4", { text: "comment" }), comment);
    }

    root.append(el("ul", { class: "problems" }));
    root.append(
      el("button", {
        class: "submit-draft",
        text: "submit",
        onclick: () => {
          void submit();
        },
      })
    );
    refreshProblems();
  };

  rerender();
}
