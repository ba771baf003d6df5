import { ApiClient } from "./api.js";
import { createApp } from "./app.js";

const base = new URLSearchParams(window.location.search).get("api") ?? "";
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}
const app = createApp(root, new ApiClient(base));
void app.loadSeed("quadric");
