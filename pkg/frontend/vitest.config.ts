import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // the e2e test spawns the backend and waits for it
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
