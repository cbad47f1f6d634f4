// Browser entry point. The API origin defaults to the page's own host and
// can be overridden with ?api=http://host:port when the static files are
// served separately from the task service.

import { WorkbenchApi } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new App(root, new WorkbenchApi(base));
void app.start();
