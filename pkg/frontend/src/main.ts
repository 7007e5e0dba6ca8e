// Entry point: wires the controller to the page. The API base URL can be
// overridden with a <meta name="api-base" content="http://host:port"> tag;
// by default the UI talks to the origin that served it.

import { ApiClient } from "./api.js";
import { AppController } from "./controller.js";

function apiBase(): string {
  const meta = document.querySelector('meta[name="api-base"]');
  return meta?.getAttribute("content") ?? "";
}

const root = document.getElementById("app");
if (root) {
  new AppController(root, new ApiClient(apiBase())).start();
}
