import { RegistryClient } from "./api.js";
import { Composer } from "./ui.js";

// Same-origin by default (vtt serve --ui ...); override with ?service=URL
// during development against a separately bound service.
const params = new URLSearchParams(window.location.search);
const base = params.get("service") ?? "";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
void new Composer(new RegistryClient(base), root).start();
