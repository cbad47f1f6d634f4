// Client-side mirrors of the server's submission invariants. The server is
// the authority; these rules exist so the submit button can be gated without
// a round trip, and they must never be looser than the server's.

import type {
  ChecklistDoc,
  ContributionDoc,
  Criterion,
  DecisionDoc,
  MarkGapDoc,
  SkipDoc,
  TranslateDoc,
} from "./types.js";

export const CRITERIA: readonly Criterion[] = ["gap", "gloss", "lemmas", "examples"];

/** Editable sense row as the editor holds it, before ranks are assigned. */
export interface SenseInput {
  form: string;
  examples: string[];
}

/** Everything the editor form holds. Ranks are implied by array order. */
export interface DraftInput {
  mode: "translate" | "gap" | "skip";
  gloss: string;
  senses: SenseInput[];
  phrasets: string[];
  comment: string;
}

export function emptyDraft(): DraftInput {
  return { mode: "translate", gloss: "", senses: [], phrasets: [], comment: "" };
}

function blank(text: string): boolean {
  return text.trim() === "";
}

// mirrors the phraset multi-word rule: internal whitespace after trimming
function multiWord(text: string): boolean {
  return /\s/.test(text.trim());
}

/**
 * All reasons the draft cannot be submitted yet, in display order.
 * Empty means the submit button may be enabled.
 */
export function draftProblems(draft: DraftInput): string[] {
  const problems: string[] = [];
  if (draft.mode === "skip") {
    if (blank(draft.comment)) problems.push("skipping requires a comment");
    return problems;
  }
  for (const p of draft.phrasets) {
    if (blank(p)) problems.push("a phraset cannot be blank");
    else if (!multiWord(p)) problems.push(`a phraset must be multi-word: "${p.trim()}"`);
  }
  if (draft.mode === "gap") {
    if (draft.phrasets.length === 0) problems.push("marking a gap requires at least one phraset");
    return problems;
  }
  if (blank(draft.gloss)) problems.push("a translation needs a gloss");
  if (draft.senses.length === 0) problems.push("a translation needs at least one sense");
  const seen = new Set<string>();
  draft.senses.forEach((sense, i) => {
    const label = `sense ${i + 1}`;
    const form = sense.form.trim();
    if (form === "") problems.push(`${label} needs a written form`);
    else if (seen.has(form)) problems.push(`${label} duplicates the form "${form}"`);
    else seen.add(form);
    if (!sense.examples.some((e) => !blank(e))) {
      problems.push(`${label} needs at least one example`);
    }
  });
  return problems;
}

/**
 * Build the wire contribution from a valid draft. Array order becomes sense
 * rank, so the editor's reorder buttons are the rank editor. Call only after
 * draftProblems() returned empty.
 */
export function toContribution(draft: DraftInput, language: string): ContributionDoc {
  const phrasets = draft.phrasets
    .map((p) => p.trim())
    .filter((p) => p !== "")
    .map((text) => ({ text, language }));
  if (draft.mode === "skip") {
    const skip: SkipDoc = { type: "skip", comment: draft.comment.trim() };
    return skip;
  }
  if (draft.mode === "gap") {
    const gap: MarkGapDoc = { type: "mark-gap", phrasets, comment: draft.comment.trim() };
    return gap;
  }
  const translate: TranslateDoc = {
    type: "translate",
    gloss: { text: draft.gloss.trim(), language },
    senses: draft.senses.map((sense) => ({
      form: sense.form.trim(),
      examples: sense.examples
        .map((e) => e.trim())
        .filter((e) => e !== "")
        .map((text) => ({ text, language })),
    })),
    phrasets,
  };
  return translate;
}

/** What the review form holds before it is posted. */
export interface DecisionInput {
  verdict: "accept" | "reject";
  checklist: ChecklistDoc;
  comment: string;
  counterLemma: string;
}

export function freshChecklist(): ChecklistDoc {
  return { gap: true, gloss: true, lemmas: true, examples: true };
}

export function failedCriteria(checklist: ChecklistDoc): Criterion[] {
  return CRITERIA.filter((c) => !checklist[c]);
}

/** All reasons the decision cannot be posted yet. Empty means postable. */
export function decisionProblems(decision: DecisionInput): string[] {
  const problems: string[] = [];
  const failed = failedCriteria(decision.checklist);
  if (decision.verdict === "reject") {
    if (failed.length === 0) problems.push("a rejection must fail at least one criterion");
    if (blank(decision.comment)) problems.push("a rejection must say why");
  } else if (failed.length > 0) {
    problems.push("an acceptance cannot carry failed criteria");
  }
  return problems;
}

export function toDecision(decision: DecisionInput): DecisionDoc {
  const counter = decision.counterLemma.trim();
  return {
    verdict: decision.verdict,
    checklist: { ...decision.checklist },
    comment: decision.comment.trim(),
    counter_lemma: counter === "" ? null : counter,
  };
}
