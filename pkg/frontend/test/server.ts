import { spawn, type ChildProcess } from "node:child_process";
import { API_BASE, API_PORT } from "./config.js";

let server: ChildProcess | null = null;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${API_BASE}/api/v1/seeds/probe`);
      if (res.status === 404) return; // up and routing
    } catch {
      // not listening yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("api server did not come up in time");
}

export default async function setup(): Promise<() => void> {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "minorlab.api:app", "--port", String(API_PORT), "--log-level", "warning"],
    { stdio: "ignore" },
  );
  await waitForServer();
  return () => {
    if (server && server.pid) {
      server.kill("SIGTERM");
    }
  };
}
