// DOM shell for the console.  All logic that can run without a browser
// lives in docs/saaty/forms/render/workflow; this file only wires events.

import { ApiError, Client } from "./api.js";
import { SessionView, canLaunch, parseRankings, parseResult, parseSession, parseTrace } from "./docs.js";
import { IdentityForm, ThresholdForm, judgmentErrors, identityErrors, participantDoc, thresholdErrors } from "./forms.js";
import {
  renderMatrix,
  renderParticipants,
  renderRankings,
  renderResult,
  renderSaatyGrid,
  renderSessionSummary,
  renderTimeline,
  escapeHtml,
} from "./render.js";
import { SCALE, SaatyGrid, formatReciprocal } from "./saaty.js";
import { cloneSession, launch } from "./workflow.js";

const $ = <T extends HTMLElement>(selector: string): T => {
  const node = document.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
};

let client = new Client(defaultBase());
let currentSid: string | null = null;
let view: SessionView | null = null;
let grids = new Map<string, SaatyGrid>();

function defaultBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? localStorage.getItem("accord-api") ?? "http://127.0.0.1:8787";
}

function setStatus(text: string, isError = false): void {
  const box = $("#status");
  box.textContent = text;
  box.className = isError ? "error" : "ok";
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    const value = await work();
    setStatus("ready");
    return value;
  } catch (err) {
    if (err instanceof ApiError) {
      setStatus(`${err.code}: ${err.detail}`, true);
    } else {
      setStatus(String(err), true);
    }
    return undefined;
  }
}

async function loadSession(sid: string): Promise<void> {
  const doc = await client.session(sid);
  currentSid = sid;
  view = parseSession(doc);
  renderSession(doc);
}

function renderSession(doc: string): void {
  if (!view) return;
  $("#session-panel").hidden = false;
  $("#summary").innerHTML = renderSessionSummary(view);
  $("#matrix-view").innerHTML = renderMatrix(view);
  $("#participants-view").innerHTML = renderParticipants(view);

  const launchButton = $<HTMLButtonElement>("#launch");
  launchButton.disabled = !canLaunch(view);
  launchButton.title = canLaunch(view)
    ? "collect rankings, then negotiate"
    : "needs a draft session with at least one decider";

  $("#register-panel").hidden = view.status !== "draft";
  if (view.status === "draft") buildRegisterForm();

  const labels = view.actions.map((a) => a.label);
  $("#rankings-view").innerHTML = view.rankings ? renderRankings(view.rankings, labels) : "";
  $("#result-view").innerHTML = view.result ? renderResult(view.result) : "";
  $("#timeline-view").innerHTML = view.trace
    ? renderTimeline(view.trace, view.threshold, view.participants.length, labels)
    : "";

  const clonePanel = $("#clone-panel");
  clonePanel.hidden = view.status === "draft";
  if (!clonePanel.hidden) buildClonePanel(doc);
}

// -- registration -----------------------------------------------------------

function buildRegisterForm(): void {
  if (!view) return;
  const criteriaNames = view.criteria.map((c) => c.name);
  const actionLabels = view.actions.map((a) => a.label);

  const thresholdRows = criteriaNames
    .map(
      (name, j) =>
        `<tr><th>${escapeHtml(name)}</th>` +
        `<td><input data-th="w" data-j="${j}" size="6"></td>` +
        `<td><input data-th="q" data-j="${j}" size="6"></td>` +
        `<td><input data-th="p" data-j="${j}" size="6"></td></tr>`,
    )
    .join("");
  $("#threshold-grid").innerHTML =
    `<table class="grid"><thead><tr><th>criterion</th><th>weight</th>` +
    `<th>indifference q</th><th>preference p</th></tr></thead><tbody>${thresholdRows}</tbody></table>`;

  grids = new Map();
  grids.set("criteria", new SaatyGrid(criteriaNames.length));
  actionLabels.forEach((_, c) => grids.set(`action-${c + 1}`, new SaatyGrid(actionLabels.length)));
  redrawGrids();
}

function redrawGrids(): void {
  if (!view) return;
  const criteriaNames = view.criteria.map((c) => c.name);
  const actionLabels = view.actions.map((a) => a.label);
  let html = renderSaatyGrid(grids.get("criteria")!, "criteria", "criteria vs criteria", criteriaNames);
  criteriaNames.forEach((name, c) => {
    html += renderSaatyGrid(
      grids.get(`action-${c + 1}`)!,
      `action-${c + 1}`,
      `actions vs actions for ${name}`,
      actionLabels,
    );
  });
  $("#judgment-grids").innerHTML = html;
  attachGridListeners();
}

function attachGridListeners(): void {
  document.querySelectorAll<HTMLInputElement>("input.saaty-cell").forEach((input) => {
    input.setAttribute("list", "saaty-scale");
    input.addEventListener("input", () => {
      const gridName = input.dataset.grid!;
      const i = Number(input.dataset.i);
      const j = Number(input.dataset.j);
      const grid = grids.get(gridName)!;
      const problem = input.value.trim() === "" ? (grid.clear(i, j), null) : grid.set(i, j, input.value);
      input.classList.toggle("bad", problem !== null);
      input.title = problem ?? "";
      const mirror = document.querySelector<HTMLElement>(
        `td.mirror[data-grid="${gridName}"][data-i="${j}"][data-j="${i}"]`,
      );
      if (mirror) {
        mirror.textContent = problem === null && input.value.trim() !== ""
          ? formatReciprocal(Number(input.value))
          : "";
      }
    });
  });
}

function readIdentity(): IdentityForm {
  return {
    name: $<HTMLInputElement>("#reg-name").value,
    surname: $<HTMLInputElement>("#reg-surname").value,
    profile: $<HTMLInputElement>("#reg-profile").value,
    weight: $<HTMLInputElement>("#reg-weight").value,
  };
}

function readThresholds(): ThresholdForm {
  const read = (kind: string) =>
    Array.from(document.querySelectorAll<HTMLInputElement>(`input[data-th="${kind}"]`)).map(
      (input) => input.value.trim(),
    );
  return { weights: read("w"), indifference: read("q"), preference: read("p") };
}

async function registerDecider(): Promise<void> {
  if (!view || !currentSid) return;
  const identity = readIdentity();
  const problems = identityErrors(identity);
  const useJudgments = $<HTMLInputElement>("#use-judgments").checked;
  let doc = "";
  if (useJudgments) {
    const forms = {
      criteria: grids.get("criteria")!,
      actions: view.criteria.map((_, c) => grids.get(`action-${c + 1}`)!),
    };
    problems.push(...judgmentErrors(forms, view.criteria.length, view.actions.length));
    if (problems.length === 0) doc = participantDoc(identity, { judgments: forms });
  } else {
    const thresholds = readThresholds();
    problems.push(...thresholdErrors(thresholds));
    if (problems.length === 0) doc = participantDoc(identity, { thresholds });
  }
  const errorBox = $("#register-errors");
  errorBox.innerHTML = problems.map((p) => `<li>${escapeHtml(p)}</li>`).join("");
  if (problems.length > 0) return;
  await guard(async () => {
    await client.registerParticipant(currentSid!, doc);
    await loadSession(currentSid!);
  });
}

// -- clone (what-if) --------------------------------------------------------

function buildClonePanel(doc: string): void {
  if (!view) return;
  const rows = view.participants
    .map(
      (p) =>
        `<label>${escapeHtml(p.id)} (${escapeHtml(p.name)}) weight ` +
        `<input data-clone-weight="${escapeHtml(p.id)}" value="${escapeHtml(p.weight)}" size="6"></label>`,
    )
    .join(" ");
  $("#clone-weights").innerHTML = rows;
  $("#clone-panel").dataset.doc = doc;
}

async function cloneWithEdits(): Promise<void> {
  const doc = $("#clone-panel").dataset.doc;
  if (!doc) return;
  const weights: Record<string, string> = {};
  document.querySelectorAll<HTMLInputElement>("input[data-clone-weight]").forEach((input) => {
    weights[input.dataset.cloneWeight!] = input.value.trim();
  });
  const threshold = $<HTMLInputElement>("#clone-threshold").value.trim();
  await guard(async () => {
    const sid = await cloneSession(client, doc, {
      weights,
      threshold: threshold || undefined,
    });
    setStatus(`cloned into ${sid}`);
    await loadSession(sid);
  });
}

// -- wiring -----------------------------------------------------------------

function installScaleDatalist(): void {
  const datalist = document.createElement("datalist");
  datalist.id = "saaty-scale";
  datalist.innerHTML = SCALE.map(
    (step) => `<option value="${step.value}" label="${escapeHtml(step.label)}"></option>`,
  ).join("");
  document.body.appendChild(datalist);
}

function install(): void {
  installScaleDatalist();
  const apiInput = $<HTMLInputElement>("#api-base");
  apiInput.value = client.base;
  apiInput.addEventListener("change", () => {
    client = new Client(apiInput.value);
    localStorage.setItem("accord-api", client.base);
  });

  $("#create").addEventListener("click", () =>
    guard(async () => {
      const matrix = $<HTMLTextAreaElement>("#matrix-input").value;
      const threshold = $<HTMLInputElement>("#new-threshold").value;
      const method = $<HTMLSelectElement>("#new-method").value;
      const doc = `[config]\nthreshold: ${threshold}\nmethod: ${method}\n\n[matrix]\n${matrix}\n`;
      const sid = await client.createSession(doc);
      setStatus(`created ${sid}`);
      await loadSession(sid);
    }),
  );

  $("#load").addEventListener("click", () =>
    guard(() => loadSession($<HTMLInputElement>("#session-id").value.trim())),
  );

  $("#register").addEventListener("click", () => registerDecider());

  $("#use-judgments").addEventListener("change", () => {
    const judgments = $<HTMLInputElement>("#use-judgments").checked;
    $("#judgment-grids").hidden = !judgments;
    $("#threshold-grid").hidden = judgments;
  });

  $("#launch").addEventListener("click", () =>
    guard(async () => {
      await launch(client, currentSid!);
      await loadSession(currentSid!);
    }),
  );

  $("#clone").addEventListener("click", () => cloneWithEdits());
  setStatus("ready");
}

install();
