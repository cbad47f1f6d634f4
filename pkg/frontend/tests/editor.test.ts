import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiError } from "../src/api.js";
import type { ContributionDoc } from "../src/types.js";
import { prefill, renderEditor, type EditorDeps } from "../src/views/editor.js";
import { fakeApi, taskDoc } from "./fixtures.js";

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  root = document.getElementById("root") as HTMLElement;
});

function deps(overrides: Partial<EditorDeps> = {}): EditorDeps {
  return {
    api: fakeApi({}),
    actor: "t1",
    language: "ar",
    onSubmitted: vi.fn(),
    onReload: vi.fn(),
    ...overrides,
  };
}

function input(selector: string): HTMLInputElement {
  const node = root.querySelector<HTMLInputElement>(selector);
  if (!node) throw new Error(`missing ${selector}`);
  return node;
}

function click(selector: string): void {
  const node = root.querySelector<HTMLButtonElement>(selector);
  if (!node) throw new Error(`missing ${selector}`);
  node.click();
}

function setValue(selector: string, value: string): void {
  const node = root.querySelector<HTMLInputElement | HTMLTextAreaElement>(selector);
  if (!node) throw new Error(`missing ${selector}`);
  node.value = value;
  node.dispatchEvent(new Event("input", { bubbles: true }));
}

function pickMode(mode: string): void {
  const radio = root.querySelector<HTMLInputElement>(`input[name=mode][value=${mode}]`);
  if (!radio) throw new Error(`missing mode ${mode}`);
  radio.checked = true;
  radio.dispatchEvent(new Event("change", { bubbles: true }));
}

function problems(): string[] {
  return [...root.querySelectorAll(".problems li")].map((li) => li.textContent ?? "");
}

describe("editor", () => {
  it("prefills a fresh task from the inherited synset", () => {
    renderEditor(root, taskDoc(), deps());
    const forms = [...root.querySelectorAll<HTMLInputElement>(".sense-form")];
    expect(forms.map((f) => f.value)).toEqual(["قِطّ", "هِرّ"]);
    const gloss = root.querySelector<HTMLTextAreaElement>(".gloss-input");
    expect(gloss?.value).toContain("حيوان");
    expect(input(".submit-draft").disabled).toBe(false);
  });

  it("marks Arabic fields right-to-left", () => {
    renderEditor(root, taskDoc(), deps());
    for (const selector of [".gloss-input", ".sense-form", ".sense-examples"]) {
      const field = root.querySelector(selector);
      expect(field?.getAttribute("dir")).toBe("rtl");
      expect(field?.getAttribute("lang")).toBe("ar");
    }
  });

  it("prefills a returned task from the prior submission and shows the reviewer comment", () => {
    const prior: ContributionDoc = {
      type: "translate",
      gloss: { text: "الوصف الأول", language: "ar" },
      senses: [{ form: "مُحَاوَلَة", examples: [{ text: "مثال واحد", language: "ar" }] }],
      phrasets: [],
    };
    const task = taskDoc({
      state: { kind: "changes-requested", actor: "t1", comment: "gloss too vague" },
      contribution: prior,
      submitter: "t1",
    });
    expect(prefill(task).gloss).toBe("الوصف الأول");
    renderEditor(root, task, deps());
    expect(root.querySelector(".rejection-banner")?.textContent).toContain("gloss too vague");
    expect(root.querySelector<HTMLTextAreaElement>(".gloss-input")?.value).toBe("الوصف الأول");
    expect([...root.querySelectorAll<HTMLInputElement>(".sense-form")]).toHaveLength(1);
  });

  it("gap mode locks the sense editor and demands a phraset", () => {
    renderEditor(root, taskDoc(), deps());
    pickMode("gap");
    expect(root.querySelector(".gloss-input")).toBeNull();
    for (const field of root.querySelectorAll<HTMLInputElement>(".sense-form")) {
      expect(field.disabled).toBe(true);
    }
    expect(input(".add-sense").disabled).toBe(true);
    expect(problems()).toContain("marking a gap requires at least one phraset");
    expect(input(".submit-draft").disabled).toBe(true);

    click(".add-phraset");
    setValue(".phraset-row:last-of-type .phraset-text", "كلمة واحدة");
    expect(problems()).toEqual([]);
    expect(input(".submit-draft").disabled).toBe(false);

    setValue(".phraset-row:last-of-type .phraset-text", "كلمة");
    expect(problems().some((p) => p.includes("multi-word"))).toBe(true);
    expect(input(".submit-draft").disabled).toBe(true);
  });

  it("reordering senses rewrites their ranks in the submission", async () => {
    const submitted: ContributionDoc[] = [];
    const api = fakeApi({
      submitContribution: async (
        _id: string,
        _actor: string,
        _version: number,
        contribution: ContributionDoc
      ) => {
        submitted.push(contribution);
        return taskDoc({ state: { kind: "submitted", actor: null, comment: null }, version: 2 });
      },
    });
    const d = deps({ api });
    renderEditor(root, taskDoc(), d);

    const rows = root.querySelectorAll(".sense-row");
    (rows[1]?.querySelector(".move-up") as HTMLButtonElement).click();
    const reordered = [...root.querySelectorAll<HTMLInputElement>(".sense-form")];
    expect(reordered.map((f) => f.value)).toEqual(["هِرّ", "قِطّ"]);

    click(".submit-draft");
    await vi.waitFor(() => expect(d.onSubmitted).toHaveBeenCalled());
    const doc = submitted[0];
    if (doc?.type !== "translate") throw new Error("expected translate");
    expect(doc.senses.map((s) => s.form)).toEqual(["هِرّ", "قِطّ"]);
  });

  it("skip mode requires a comment and submits it", async () => {
    const submitted: ContributionDoc[] = [];
    const api = fakeApi({
      submitContribution: async (
        _id: string,
        _actor: string,
        _version: number,
        contribution: ContributionDoc
      ) => {
        submitted.push(contribution);
        return taskDoc({ state: { kind: "skipped", actor: null, comment: null }, version: 2 });
      },
    });
    const d = deps({ api });
    renderEditor(root, taskDoc(), d);
    pickMode("skip");
    expect(root.querySelector(".sense-editor")).toBeNull();
    expect(input(".submit-draft").disabled).toBe(true);
    setValue(".comment-input", "named entity");
    click(".submit-draft");
    await vi.waitFor(() => expect(d.onSubmitted).toHaveBeenCalled());
    expect(submitted[0]).toEqual({ type: "skip", comment: "named entity" });
  });

  it("a stale version opens the conflict dialog instead of merging", async () => {
    const submitContribution = vi.fn(async () => {
      throw new ApiError(409, "stale-version", "expected version 4, saw 1", "observedVersion");
    });
    const d = deps({ api: fakeApi({ submitContribution }) });
    renderEditor(root, taskDoc(), d);

    setValue(".gloss-input", "وصف جديد");
    click(".submit-draft");
    await vi.waitFor(() => expect(root.querySelector(".conflict-dialog")).not.toBeNull());

    expect(submitContribution).toHaveBeenCalledTimes(1);
    expect(d.onSubmitted).not.toHaveBeenCalled();
    expect(root.querySelector(".conflict-detail")?.textContent).toContain("expected version 4");
    // the form still holds the local edit; nothing was merged or discarded
    expect(root.querySelector<HTMLTextAreaElement>(".gloss-input")?.value).toBe("وصف جديد");

    click(".reload-task");
    expect(d.onReload).toHaveBeenCalledTimes(1);
  });
});
