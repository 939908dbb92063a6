import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30_000,
    hookTimeout: 45_000,
    // drive.test.ts owns a server process; keep files sequential
    fileParallelism: false,
  },
});
