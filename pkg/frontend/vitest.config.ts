import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // match the e2e backend origin so fetches are same-origin
        url: "http://127.0.0.1:8791/",
      },
    },
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
