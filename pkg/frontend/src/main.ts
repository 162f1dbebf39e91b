import "./style.css";
import { ApiClient } from "./api";
import { createDashboard } from "./dashboard";

// Same-origin by default; point VITE_API_URL at the analysis service when
// running the vite dev server (the service needs --cors-origin then).
const baseUrl = import.meta.env.VITE_API_URL ?? "";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
createDashboard(root, { client: new ApiClient(baseUrl) });
