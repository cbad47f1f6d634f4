// Shared builders for view unit tests: representative documents and a stub
// API whose methods are overridden per test.

import type { WorkbenchApi } from "../src/api.js";
import type { SynsetDoc, TaskDetailDoc } from "../src/types.js";

export function synsetDoc(partial: Partial<SynsetDoc> = {}): SynsetDoc {
  return {
    id: "awn:n:00001",
    pos: "noun",
    pivot_ref: "pwn:n:00001",
    status: "pending",
    approved: false,
    gloss: null,
    senses: [],
    phrasets: [],
    ...partial,
  };
}

export function taskDoc(partial: Partial<TaskDetailDoc> = {}): TaskDetailDoc {
  return {
    id: "awn:n:00001",
    pos: "noun",
    state: { kind: "generated", actor: null, comment: null },
    version: 1,
    submitter: null,
    pivot: synsetDoc({
      id: "pwn:n:00001",
      pivot_ref: null,
      status: "lexicalized",
      gloss: { text: "a feline mammal", language: "en" },
      senses: [
        { form: "cat", rank: 1, provenance: "added", examples: [], deleted: null },
      ],
    }),
    v1: synsetDoc({
      gloss: { text: "حيوان أليف من الفصيلة السنورية", language: "ar" },
      senses: [
        {
          form: "قِطّ",
          rank: 1,
          provenance: "v1",
          examples: [{ text: "القط نائم", language: "ar" }],
          deleted: null,
        },
        {
          form: "هِرّ",
          rank: 2,
          provenance: "v1",
          examples: [{ text: "رأيت الهر", language: "ar" }],
          deleted: null,
        },
      ],
    }),
    draft: null,
    contribution: null,
    submission: null,
    ...partial,
  };
}

/** Stub API: only the methods a test overrides exist. */
export function fakeApi(overrides: Partial<Record<keyof WorkbenchApi, unknown>>): WorkbenchApi {
  return overrides as unknown as WorkbenchApi;
}
