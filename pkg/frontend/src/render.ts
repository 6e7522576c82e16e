// Pure HTML renderers.  Every figure shown comes verbatim from a parsed
// service document; the only derived number is the accept quota, computed
// from the session's own threshold and participant count.

import {
  RankingsView,
  ResultView,
  SessionView,
  TraceEntry,
  TraceMessage,
  TraceRecord,
  acceptsNeeded,
} from "./docs.js";
import { SaatyGrid } from "./saaty.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderSessionSummary(view: SessionView): string {
  const dims = `${view.actions.length} actions x ${view.criteria.length} criteria`;
  return (
    `<div class="summary">` +
    `<span class="chip status-${escapeHtml(view.status)}">${escapeHtml(view.status)}</span>` +
    `<strong>${escapeHtml(view.id)}</strong> — ${dims}, threshold ${escapeHtml(view.threshold)}, ` +
    `method ${escapeHtml(view.method)}, ${view.participants.length} decider(s)` +
    `</div>`
  );
}

export function renderMatrix(view: SessionView): string {
  const head = view.criteria
    .map((c) => `<th>${escapeHtml(c.name)}<small>:${escapeHtml(c.direction)}</small></th>`)
    .join("");
  const rows = view.actions
    .map(
      (a) =>
        `<tr><th>${escapeHtml(a.label)}</th>` +
        a.values.map((v) => `<td>${escapeHtml(v)}</td>`).join("") +
        `</tr>`,
    )
    .join("");
  return `<table class="grid"><thead><tr><th>action</th>${head}</tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderParticipants(view: SessionView): string {
  if (view.participants.length === 0) {
    return `<p class="hint">no deciders registered yet</p>`;
  }
  const rows = view.participants
    .map((p) => {
      const kind = [p.hasThresholds ? "thresholds" : "", p.hasJudgments ? "judgments" : ""]
        .filter(Boolean)
        .join(" + ");
      return (
        `<tr><td>${escapeHtml(p.id)}</td><td>${escapeHtml(p.name)}</td>` +
        `<td>${escapeHtml(p.surname)}</td><td>${escapeHtml(p.profile)}</td>` +
        `<td>${escapeHtml(p.weight)}</td><td>${escapeHtml(kind || "none")}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="grid"><thead><tr><th>id</th><th>name</th><th>surname</th>` +
    `<th>profile</th><th>weight</th><th>parameters</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderRankings(rankings: RankingsView, actionLabels: string[]): string {
  const header =
    `<tr><th>action</th>` +
    rankings.perParticipant.map((p) => `<th>${escapeHtml(p.pid)}</th>`).join("") +
    `</tr>`;
  const rows = actionLabels
    .map((label, a) => {
      const cells = rankings.perParticipant
        .map((p) => `<td>${p.ranks[a]}</td>`)
        .join("");
      return `<tr><th>${escapeHtml(label)}</th>${cells}</tr>`;
    })
    .join("");
  return (
    `<p>rankings computed with <strong>${escapeHtml(rankings.method)}</strong> (rank 1 = best)</p>` +
    `<table class="grid rankings"><thead>${header}</thead><tbody>${rows}</tbody></table>`
  );
}

function responseChip(pid: string, response: string): string {
  return `<span class="chip resp-${escapeHtml(response)}">${escapeHtml(pid)}: ${escapeHtml(response)}</span>`;
}

export function renderTimeline(
  trace: TraceEntry[],
  threshold: string,
  participantCount: number,
  actionLabels: string[],
): string {
  const needed = acceptsNeeded(threshold, participantCount);
  const records = trace.filter((e): e is TraceRecord => e.entry === "record");
  const opening = trace.filter((e) => e.entry === "message" && e.round === 0);
  const confirms = trace.filter(
    (e): e is TraceMessage => e.entry === "message" && e.kind === "confirm",
  );

  const openingBlock =
    `<details class="round round-0"><summary>opening: ${opening.length / 2} ranking(s) collected</summary>` +
    `<pre>${escapeHtml(opening.map((e) => e.raw).join("\n"))}</pre></details>`;

  const roundBlocks = records
    .map((record) => {
      const label = actionLabels[record.action] ?? String(record.action);
      const chips = record.responses.map((r) => responseChip(r.pid, r.response)).join(" ");
      const messages = trace.filter(
        (e) => e.entry === "message" && e.round === record.round && e.round > 0,
      );
      return (
        `<details class="round" data-round="${record.round}">` +
        `<summary>round ${record.round}: propose <strong>${escapeHtml(label)}</strong>` +
        ` — accepts ${record.accepts}/${needed} needed — ` +
        `<span class="outcome-${escapeHtml(record.outcome)}">${escapeHtml(record.outcome)}</span></summary>` +
        `<div class="responses">${chips}</div>` +
        `<pre>${escapeHtml(messages.map((e) => e.raw).join("\n"))}</pre>` +
        `</details>`
      );
    })
    .join("");

  const confirmBlock =
    confirms.length > 0
      ? `<div class="confirm">confirmed: <strong>${escapeHtml(
          actionLabels[confirms[0].action ?? -1] ?? String(confirms[0].action),
        )}</strong> sent to ${confirms.length} decider(s)</div>`
      : "";

  return `<div class="timeline">${openingBlock}${roundBlocks}${confirmBlock}</div>`;
}

export function renderResult(result: ResultView): string {
  return (
    `<div class="result ${result.kind === "agreed" ? "agreed" : "fallback"}">` +
    `decision: <strong class="confirmed-action">${escapeHtml(result.actionLabel)}</strong> ` +
    `(index ${result.actionIndex}) after <span class="round-count">${result.rounds}</span> round(s)` +
    ` — ${escapeHtml(result.kind)}</div>`
  );
}

// editable upper triangle, read-only reciprocal mirror
export function renderSaatyGrid(grid: SaatyGrid, name: string, title: string, labels: string[]): string {
  let rows = "";
  for (let i = 0; i < grid.order; i++) {
    let cells = `<th>${escapeHtml(labels[i] ?? String(i + 1))}</th>`;
    for (let j = 0; j < grid.order; j++) {
      if (i === j) {
        cells += `<td class="diag">1</td>`;
      } else if (i < j) {
        cells +=
          `<td><input class="saaty-cell" data-grid="${escapeHtml(name)}" data-i="${i}" data-j="${j}"` +
          ` value="${escapeHtml(grid.display(i, j))}" size="5"></td>`;
      } else {
        cells += `<td class="mirror" data-grid="${escapeHtml(name)}" data-i="${i}" data-j="${j}">${escapeHtml(
          grid.display(i, j),
        )}</td>`;
      }
    }
    rows += `<tr>${cells}</tr>`;
  }
  const head =
    `<tr><th></th>` +
    labels
      .slice(0, grid.order)
      .map((l) => `<th>${escapeHtml(l)}</th>`)
      .join("") +
    `</tr>`;
  return (
    `<fieldset class="saaty" data-grid-box="${escapeHtml(name)}"><legend>${escapeHtml(title)}</legend>` +
    `<table class="grid">${head}${rows}</table></fieldset>`
  );
}
