// Full-loop test against two live services built from the same fixture and
// the same fixed clock. One is driven through the rendered UI, the other by
// direct HTTP calls with the same content in the same order. A correct
// workbench adds nothing and loses nothing, so the two audit logs must come
// out byte for byte identical.

import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { WorkbenchApi } from "../src/api.js";
import { App } from "../src/app.js";
import type {
  CompletenessDoc,
  ContributionDoc,
  ContributionStatsDoc,
  CorrectnessDoc,
  DecisionDoc,
  TaskDetailDoc,
} from "../src/types.js";
import { startServer, type LiveServer } from "./server.js";

const UI_PORT = 8761;
const DIRECT_PORT = 8762;

const FIRST_GLOSS = "وصف أولي";
const REVISED_GLOSS = "حيوان أليف من فصيلة السنوريات";
const REJECT_COMMENT = "gloss too vague";
const GAP_PHRASET = "من يقيس الأشياء";
const EXPERT_COMMENT = "lexicalized after all";
const COUNTER_LEMMA = "قَاس";

const SENSES = [
  { form: "قِطّ", examples: [{ text: "القط نائم", language: "ar" }] },
  { form: "هِرّ", examples: [{ text: "رأيت الهر", language: "ar" }] },
];

let uiServer: LiveServer;
let directServer: LiveServer;

beforeAll(async () => {
  uiServer = await startServer("ui", UI_PORT);
  directServer = await startServer("direct", DIRECT_PORT);
}, 60_000);

afterAll(async () => {
  await uiServer?.stop();
  await directServer?.stop();
});

// -- driving the rendered page ------------------------------------------------

function query<T extends Element>(selector: string): T {
  const node = document.querySelector<T>(selector);
  if (!node) throw new Error(`missing ${selector}`);
  return node;
}

function setValue(selector: string, value: string): void {
  const node = query<HTMLInputElement | HTMLTextAreaElement>(selector);
  node.value = value;
  node.dispatchEvent(new Event("input", { bubbles: true }));
}

function click(selector: string): void {
  query<HTMLButtonElement>(selector).click();
}

function badge(): string {
  return query<HTMLElement>(".task-head .badge").textContent ?? "";
}

async function waitForBadge(label: string): Promise<void> {
  await vi.waitFor(() => expect(badge()).toBe(label), { timeout: 15_000, interval: 50 });
}

async function waitFor(selector: string): Promise<void> {
  await vi.waitFor(() => expect(document.querySelector(selector)).not.toBeNull(), {
    timeout: 15_000,
    interval: 50,
  });
}

async function openFromQueue(app: App, taskId: string): Promise<void> {
  app.navigate({ view: "queue" });
  await app.idle();
  await waitFor(`.task-row[data-task='${taskId}'] .task-action`);
  click(`.task-row[data-task='${taskId}'] .task-action`);
  await app.idle();
  await waitFor(".task-head");
}

async function signIn(app: App, actor: string): Promise<void> {
  setValue(".actor-input", actor);
  query<HTMLFormElement>(".sign-in").dispatchEvent(new Event("submit", { bubbles: true }));
  await app.idle();
}

async function driveThroughUi(baseUrl: string): Promise<void> {
  document.body.innerHTML = "<div id='app'></div>";
  const app = new App(
    document.getElementById("app") as HTMLElement,
    new WorkbenchApi(baseUrl),
    "t1"
  );
  await app.start();
  expect(query(".health").textContent).toContain("ar:awn");

  // t1 translates the cat synset
  await openFromQueue(app, "awn:n:00001");
  await waitFor(".gloss-input");
  setValue(".gloss-input", FIRST_GLOSS);
  click(".submit-draft");
  await waitForBadge("submitted");

  // t2 sends it back over the gloss
  await signIn(app, "t2");
  await waitFor(".post-reject");
  query<HTMLInputElement>(".criterion-gloss").click();
  setValue(".review-comment", REJECT_COMMENT);
  click(".post-reject");
  await waitForBadge("returned");

  // t1 revises; the reviewer's comment is on screen and the form holds the
  // prior submission
  await signIn(app, "t1");
  await waitFor(".gloss-input");
  expect(query(".rejection-banner").textContent).toContain(REJECT_COMMENT);
  expect(query<HTMLTextAreaElement>(".gloss-input").value).toBe(FIRST_GLOSS);
  setValue(".gloss-input", REVISED_GLOSS);
  click(".submit-draft");
  await waitForBadge("submitted");

  // t2 accepts, x1 approves
  await signIn(app, "t2");
  await waitFor(".post-accept");
  click(".post-accept");
  await waitForBadge("in expert review");
  await signIn(app, "x1");
  await waitFor(".review-expert-review .post-accept");
  click(".post-accept");
  await waitForBadge("approved");
  expect(document.querySelector(".action-pane .editor")).toBeNull();
  expect(document.querySelector(".action-pane .review")).toBeNull();

  // t2 marks the second synset as a lexical gap
  await signIn(app, "t2");
  await openFromQueue(app, "awn:n:00002");
  await waitFor(".gloss-input");
  query<HTMLInputElement>("input[name=mode][value=gap]").click();
  await waitFor(".add-phraset");
  click(".add-phraset");
  setValue(".phraset-row:last-of-type .phraset-text", GAP_PHRASET);
  click(".submit-draft");
  await waitForBadge("submitted");

  // t1 agrees it is a gap
  await signIn(app, "t1");
  await waitFor(".post-accept");
  click(".post-accept");
  await waitForBadge("in expert review");

  // the expert disagrees and names the missing lemma
  await signIn(app, "x1");
  await waitFor(".counter-lemma");
  query<HTMLInputElement>(".criterion-gap").click();
  setValue(".review-comment", EXPERT_COMMENT);
  setValue(".counter-lemma", COUNTER_LEMMA);
  click(".post-reject");
  await waitForBadge("rejected");
}

// -- the same session as bare HTTP calls --------------------------------------

async function getTask(baseUrl: string, taskId: string): Promise<TaskDetailDoc> {
  const res = await fetch(`${baseUrl}/tasks/${encodeURIComponent(taskId)}`);
  expect(res.ok).toBe(true);
  return (await res.json()) as TaskDetailDoc;
}

async function mutate(
  baseUrl: string,
  taskId: string,
  route: "contribution" | "peer-review" | "expert-review",
  actor: string,
  payload: ContributionDoc | DecisionDoc
): Promise<void> {
  const task = await getTask(baseUrl, taskId);
  const body: Record<string, unknown> = { actor, observedVersion: task.version };
  body[route === "contribution" ? "contribution" : "decision"] = payload;
  const res = await fetch(`${baseUrl}/tasks/${encodeURIComponent(taskId)}/${route}`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!res.ok) throw new Error(`${route} by ${actor} failed: ${await res.text()}`);
}

const ACCEPT: DecisionDoc = {
  verdict: "accept",
  checklist: { gap: true, gloss: true, lemmas: true, examples: true },
  comment: "",
  counter_lemma: null,
};

async function driveDirectly(baseUrl: string): Promise<void> {
  await mutate(baseUrl, "awn:n:00001", "contribution", "t1", {
    type: "translate",
    gloss: { text: FIRST_GLOSS, language: "ar" },
    senses: SENSES,
    phrasets: [],
  });
  await mutate(baseUrl, "awn:n:00001", "peer-review", "t2", {
    verdict: "reject",
    checklist: { gap: true, gloss: false, lemmas: true, examples: true },
    comment: REJECT_COMMENT,
    counter_lemma: null,
  });
  await mutate(baseUrl, "awn:n:00001", "contribution", "t1", {
    type: "translate",
    gloss: { text: REVISED_GLOSS, language: "ar" },
    senses: SENSES,
    phrasets: [],
  });
  await mutate(baseUrl, "awn:n:00001", "peer-review", "t2", ACCEPT);
  await mutate(baseUrl, "awn:n:00001", "expert-review", "x1", ACCEPT);

  await mutate(baseUrl, "awn:n:00002", "contribution", "t2", {
    type: "mark-gap",
    phrasets: [{ text: GAP_PHRASET, language: "ar" }],
    comment: "",
  });
  await mutate(baseUrl, "awn:n:00002", "peer-review", "t1", ACCEPT);
  await mutate(baseUrl, "awn:n:00002", "expert-review", "x1", {
    verdict: "reject",
    checklist: { gap: false, gloss: true, lemmas: true, examples: true },
    comment: EXPERT_COMMENT,
    counter_lemma: COUNTER_LEMMA,
  });
}

// -- the criterion -------------------------------------------------------------

describe("workbench against a live service", () => {
  it(
    "a UI session and the same direct-API session leave identical audit logs",
    async () => {
      await driveThroughUi(uiServer.baseUrl);
      await driveDirectly(directServer.baseUrl);

      const uiTask1 = await getTask(uiServer.baseUrl, "awn:n:00001");
      const uiTask2 = await getTask(uiServer.baseUrl, "awn:n:00002");
      expect(uiTask1.state.kind).toBe("approved");
      expect(uiTask2.state.kind).toBe("expert-rejected");
      const directTask1 = await getTask(directServer.baseUrl, "awn:n:00001");
      const directTask2 = await getTask(directServer.baseUrl, "awn:n:00002");
      expect(directTask1.state.kind).toBe("approved");
      expect(directTask2.state.kind).toBe("expert-rejected");

      const uiLog = await uiServer.auditLog();
      const directLog = await directServer.auditLog();
      const uiText = uiLog.toString("utf-8");
      expect(uiText).toContain("awn:n:00001");
      expect(uiText).toContain("awn:n:00002");
      expect(uiText).toContain(COUNTER_LEMMA);
      expect(uiLog.length).toBeGreaterThan(0);
      expect(uiLog.equals(directLog)).toBe(true);
    },
    120_000
  );

  it(
    "a concurrent edit surfaces as a conflict dialog, never a silent overwrite",
    async () => {
      document.body.innerHTML = "<div id='app'></div>";
      const app = new App(
        document.getElementById("app") as HTMLElement,
        new WorkbenchApi(uiServer.baseUrl),
        "t1"
      );
      await app.start();
      await openFromQueue(app, "awn:n:00003");
      await waitFor(".gloss-input");
      setValue(".gloss-input", "وصف من المحرر الأول");

      // a second client wins the race while the form is open
      await mutate(uiServer.baseUrl, "awn:n:00003", "contribution", "t2", {
        type: "translate",
        gloss: { text: "وصف من العميل الثاني", language: "ar" },
        senses: [{ form: "بِئْر", examples: [{ text: "البئر عميقة", language: "ar" }] }],
        phrasets: [],
      });

      click(".submit-draft");
      await waitFor(".conflict-dialog");

      // the second client's submission is untouched on the server
      const task = await getTask(uiServer.baseUrl, "awn:n:00003");
      expect(task.state.kind).toBe("submitted");
      expect(task.version).toBe(2);
      if (task.contribution?.type !== "translate") throw new Error("expected translate");
      expect(task.contribution.gloss.text).toBe("وصف من العميل الثاني");

      // reload shows the server's truth: t1 is now this task's peer reviewer
      click(".reload-task");
      await waitForBadge("submitted");
      await waitFor(".review-peer-review");
    },
    60_000
  );

  it(
    "the metrics screen equals the live metrics payloads cell for cell",
    async () => {
      document.body.innerHTML = "<div id='app'></div>";
      const app = new App(
        document.getElementById("app") as HTMLElement,
        new WorkbenchApi(uiServer.baseUrl),
        "x1"
      );
      await app.start();
      app.navigate({ view: "metrics" });
      await app.idle();
      await waitFor(".contribution-stats");

      const cell = (table: string, row: string, col: string): string => {
        const node = document.querySelector(`${table} [data-row='${row}'] [data-col='${col}']`);
        if (!node) throw new Error(`missing ${table} ${row} ${col}`);
        return node.textContent ?? "";
      };

      const stats = (await (
        await fetch(`${uiServer.baseUrl}/metrics/contributions?scope=approved`)
      ).json()) as ContributionStatsDoc;
      // the approved translation from the first scenario replaced the gloss,
      // so at least that row must be non-zero or the comparison is vacuous
      expect(Object.keys(stats.rows).length).toBeGreaterThan(0);
      expect(stats.rows["new_glosses"]?.total).toBeGreaterThan(0);
      for (const [key, row] of Object.entries(stats.rows)) {
        for (const col of ["noun", "verb", "adjective", "adverb", "total"] as const) {
          expect(cell(".contribution-stats", key, col)).toBe(String(row[col]));
        }
      }

      const correctness = (await (
        await fetch(`${uiServer.baseUrl}/metrics/correctness`)
      ).json()) as CorrectnessDoc;
      expect(correctness.overall.total).toBeGreaterThan(0);
      const rows: [string, { correct: number; total: number; ratio: number | null }][] = [
        ...Object.entries(correctness.categories),
        ["overall", correctness.overall],
      ];
      for (const [key, entry] of rows) {
        expect(cell(".correctness", key, "correct")).toBe(String(entry.correct));
        expect(cell(".correctness", key, "total")).toBe(String(entry.total));
        const rate = entry.ratio === null ? "-" : `${(entry.ratio * 100).toFixed(2)}%`;
        expect(cell(".correctness", key, "rate")).toBe(rate);
      }
      expect(document.querySelector(".undecided")?.textContent).toContain(
        String(correctness.undecided)
      );

      const completeness = (await (
        await fetch(`${uiServer.baseUrl}/metrics/completeness`)
      ).json()) as CompletenessDoc;
      if (completeness.total === 0) {
        expect(document.querySelector(".no-findings")).not.toBeNull();
      } else {
        expect(document.querySelectorAll(".completeness .finding")).toHaveLength(
          completeness.findings.length
        );
      }
    },
    60_000
  );
});
