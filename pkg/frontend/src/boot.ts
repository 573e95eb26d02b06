import { ApiClient } from "./api.js";
import { initApp } from "./main.js";

// Browser entry point. The service address can be overridden with ?api=...
const root = document.getElementById("app");
if (root) {
  const base =
    new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";
  void initApp(root, new ApiClient(base));
}
