import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    testTimeout: 20000,
    hookTimeout: 30000,
    // The e2e suite talks to one spawned backend; keep files sequential.
    fileParallelism: false,
  },
});
