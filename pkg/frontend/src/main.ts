import { bootApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  bootApp(root);
}
