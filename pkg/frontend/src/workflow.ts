// Multi-step API flows used by the console buttons.

import { Client } from "./api.js";
import { SessionView, parseSession } from "./docs.js";

export interface LaunchOutput {
  rankingsDoc: string;
  resultDoc: string;
  traceDoc: string;
}

// the launch button: collect rankings, then negotiate, then fetch the story
export async function launch(client: Client, sid: string): Promise<LaunchOutput> {
  const rankingsDoc = await client.rank(sid);
  const resultDoc = await client.negotiate(sid);
  const traceDoc = await client.trace(sid);
  return { rankingsDoc, resultDoc, traceDoc };
}

export interface CloneEdits {
  // participant id -> replacement weight (verbatim token)
  weights?: Record<string, string>;
  threshold?: string;
  method?: string;
}

// What-if loop: rebuild a fresh draft from an existing session's own
// document, optionally overriding weights or config, and return the new id.
// Participant parameter lines are reused verbatim so nothing is recomputed.
export async function cloneSession(
  client: Client,
  sessionDoc: string,
  edits: CloneEdits = {},
): Promise<string> {
  const view: SessionView = parseSession(sessionDoc);
  const configLines = view.configLines.map((line) => {
    if (edits.threshold && line.startsWith("threshold:")) return `threshold: ${edits.threshold}`;
    if (edits.method && line.startsWith("method:")) return `method: ${edits.method}`;
    return line;
  });
  const createDoc =
    ["[config]", ...configLines, "", "[matrix]", ...view.matrixLines].join("\n") + "\n";
  const sid = await client.createSession(createDoc);
  for (const participant of view.participants) {
    const lines = participant.rawLines
      .filter((line) => !line.startsWith("id:"))
      .map((line) => {
        const replacement = edits.weights?.[participant.id];
        if (replacement !== undefined && line.startsWith("weight:")) {
          return `weight: ${replacement}`;
        }
        return line;
      });
    await client.registerParticipant(sid, lines.join("\n") + "\n");
  }
  return sid;
}
