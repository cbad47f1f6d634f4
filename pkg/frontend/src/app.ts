// Composition root: header with sign-in and navigation, an unreachable
// banner, and one main region the current view renders into. Renders are
// chained so a navigation during a fetch cannot interleave two views.

import { ApiError, isUnreachable, type WorkbenchApi } from "./api.js";
import { clear, el } from "./dom.js";
import { Store, type Route } from "./state.js";
import type { Pos, TaskDetailDoc } from "./types.js";
import { renderEditor } from "./views/editor.js";
import { renderMetrics } from "./views/metrics.js";
import { contributionCard, stateBadge, synsetCard } from "./views/panels.js";
import { renderQueue } from "./views/queue.js";
import { renderReview } from "./views/review.js";

export class App {
  readonly store: Store;
  private readonly api: WorkbenchApi;
  private readonly root: HTMLElement;
  private main: HTMLElement;
  private banner: HTMLElement;
  private health: HTMLElement;
  private language = "ar";
  private scope: "approved" | "all" = "approved";
  private rendering: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, api: WorkbenchApi, actor = "") {
    this.root = root;
    this.api = api;
    this.store = new Store({ actor });
    this.main = el("main", { class: "view-root" });
    this.banner = el("div", { class: "banner-area" });
    this.health = el("span", { class: "health", text: "..." });
    this.mountChrome();
  }

  /** Resolves when all scheduled renders have settled; for tests. */
  idle(): Promise<void> {
    return this.rendering;
  }

  signIn(actor: string): void {
    this.store.update({ actor });
    this.schedule();
  }

  navigate(route: Route): void {
    this.store.update({ route });
    this.schedule();
  }

  async start(): Promise<void> {
    await this.loadHealth();
    this.schedule();
    return this.idle();
  }

  private mountChrome(): void {
    clear(this.root);
    const actorInput = el("input", {
      class: "actor-input",
      placeholder: "actor id",
      value: this.store.get().actor,
    }) as HTMLInputElement;
    const signIn = el("form", {
      class: "sign-in",
      onsubmit: (e: Event) => {
        e.preventDefault();
        this.signIn(actorInput.value.trim());
      },
    });
    signIn.append(actorInput, el("button", { class: "sign-in-button", text: "sign in" }));

    const nav = el(
      "nav",
      { class: "top-nav" },
      el("button", {
        class: "nav-queue",
        text: "queue",
        onclick: () => this.navigate({ view: "queue" }),
      }),
      el("button", {
        class: "nav-metrics",
        text: "metrics",
        onclick: () => this.navigate({ view: "metrics" }),
      })
    );

    this.root.append(
      el(
        "header",
        { class: "app-header" },
        el("h1", { text: "translation workbench" }),
        this.health,
        signIn,
        nav
      ),
      this.banner,
      this.main
    );
  }

  private async loadHealth(): Promise<void> {
    try {
      const health = await this.api.health();
      this.language = health.language;
      this.health.textContent = `${health.language}:${health.tag} · ${health.tasks} tasks · ${health.events} events`;
      this.setUnreachable(false);
    } catch (err) {
      if (err instanceof ApiError && isUnreachable(err)) this.setUnreachable(true);
      else throw err;
    }
  }

  private setUnreachable(down: boolean): void {
    if (this.store.get().unreachable !== down) this.store.update({ unreachable: down });
    clear(this.banner);
    if (down) {
      this.banner.append(
        el(
          "div",
          { class: "unreachable-banner" },
          el("span", { text: "service unreachable" }),
          el("button", {
            class: "retry-button",
            text: "retry",
            onclick: () => {
              void this.loadHealth().then(() => this.schedule());
            },
          })
        )
      );
    }
  }

  private schedule(): void {
    this.rendering = this.rendering.then(() => this.renderNow());
  }

  private async renderNow(): Promise<void> {
    const state = this.store.get();
    try {
      if (state.route.view === "queue") {
        await this.renderQueueView(state.actor, state.posFilter);
      } else if (state.route.view === "task") {
        await this.renderTaskView(state.route.taskId, state.actor);
      } else {
        await this.renderMetricsView();
      }
      this.setUnreachable(false);
    } catch (err) {
      if (err instanceof ApiError && isUnreachable(err)) {
        this.setUnreachable(true);
        return;
      }
      clear(this.main);
      this.main.append(
        el("div", {
          class: "view-error",
          text: err instanceof Error ? err.message : String(err),
        })
      );
    }
  }

  private async renderQueueView(actor: string, posFilter: Pos | ""): Promise<void> {
    await renderQueue(this.main, {
      api: this.api,
      actor,
      posFilter,
      onOpen: (taskId) => this.navigate({ view: "task", taskId }),
      onFilter: (pos) => {
        this.store.update({ posFilter: pos });
        this.schedule();
      },
    });
  }

  private async renderTaskView(taskId: string, actor: string): Promise<void> {
    const task = await this.api.task(taskId, actor || undefined);
    clear(this.main);

    const head = el("div", { class: "task-head" });
    head.append(
      el("button", {
        class: "back-to-queue",
        text: "back",
        onclick: () => this.navigate({ view: "queue" }),
      }),
      el("h2", { class: "task-title", text: `${task.id} (${task.pos})` }),
      stateBadge(task.state.kind),
      el("span", { class: "task-version", text: `v${task.version}` })
    );
    if (task.submitter) {
      head.append(el("span", { class: "task-submitter", text: `submitted by ${task.submitter}` }));
    }
    if (task.suggested_reviewer) {
      head.append(
        el("span", {
          class: "suggested-reviewer",
          text: `suggested reviewer: ${task.suggested_reviewer}`,
        })
      );
    }
    this.main.append(head);
    if (task.state.comment) {
      this.main.append(
        el(
          "div",
          { class: "state-comment" },
          el("strong", { text: `${task.state.actor ?? "someone"} wrote: ` }),
          el("span", { text: task.state.comment })
        )
      );
    }

    const panels = el("div", { class: "task-panels" });
    panels.append(synsetCard("pivot", task.pivot));
    panels.append(synsetCard("inherited", task.v1));
    if (task.draft) panels.append(synsetCard("proposed", task.draft));
    if (task.contribution) panels.append(contributionCard(task.contribution));
    this.main.append(panels);

    const actions = task.actions ?? [];
    const pane = el("div", { class: "action-pane" });
    this.main.append(pane);
    const reload = (): void => this.navigate({ view: "task", taskId });
    const show = (updated: TaskDetailDoc): void => this.navigate({ view: "task", taskId: updated.id });
    if (actions.includes("contribution")) {
      renderEditor(pane, task, {
        api: this.api,
        actor,
        language: this.language,
        onSubmitted: show,
        onReload: reload,
      });
    } else if (actions.includes("peer-review") || actions.includes("expert-review")) {
      renderReview(pane, task, {
        api: this.api,
        actor,
        kind: actions.includes("expert-review") ? "expert-review" : "peer-review",
        onDecided: show,
        onReload: reload,
      });
    }
  }

  private async renderMetricsView(): Promise<void> {
    await renderMetrics(this.main, {
      api: this.api,
      scope: this.scope,
      onScope: (scope) => {
        this.scope = scope;
        this.schedule();
      },
      onRefresh: () => this.schedule(),
    });
  }
}
