// Minimal observable app state: one struct, one listener list, re-render on
// every change. Views read from it and navigate by calling update().

import type { Pos } from "./types.js";

export type Route =
  | { view: "queue" }
  | { view: "task"; taskId: string }
  | { view: "metrics" };

export interface AppState {
  actor: string;
  route: Route;
  posFilter: Pos | "";
  unreachable: boolean;
}

export type Listener = (state: AppState) => void;

export class Store {
  private state: AppState;
  private listeners: Listener[] = [];

  constructor(initial?: Partial<AppState>) {
    this.state = {
      actor: "",
      route: { view: "queue" },
      posFilter: "",
      unreachable: false,
      ...initial,
    };
  }

  get(): AppState {
    return this.state;
  }

  update(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
