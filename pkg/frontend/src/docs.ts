// Parsing for the service's plain-text documents.  The console never
// recomputes rankings, flows or protocol state: everything it shows comes
// out of these parsers verbatim (numbers stay strings unless the UI needs
// them for counting).

export interface Section {
  name: string;
  lines: string[];
}

export function contentLines(text: string): string[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0 && !line.startsWith("#"));
}

export function splitSections(text: string): { preamble: string[]; sections: Section[] } {
  const preamble: string[] = [];
  const sections: Section[] = [];
  let current = preamble;
  for (const line of contentLines(text)) {
    if (line.startsWith("[") && line.endsWith("]")) {
      sections.push({ name: line.slice(1, -1), lines: [] });
      current = sections[sections.length - 1].lines;
    } else {
      current.push(line);
    }
  }
  return { preamble, sections };
}

export function parseKV(lines: string[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const line of lines) {
    const split = line.indexOf(":");
    if (split < 0) {
      throw new Error(`expected "key: value", got "${line}"`);
    }
    out[line.slice(0, split).trim()] = line.slice(split + 1).trim();
  }
  return out;
}

// -- trace ------------------------------------------------------------------

export interface TraceMessage {
  entry: "message";
  kind: string;
  round: number;
  from: string;
  to: string;
  action?: number;
  ranking?: number[];
  raw: string;
}

export interface TraceRecord {
  entry: "record";
  round: number;
  action: number;
  responses: { pid: string; response: string }[];
  accepts: number;
  outcome: string;
  raw: string;
}

export type TraceEntry = TraceMessage | TraceRecord;

export function parseTraceLine(line: string): TraceEntry {
  const tokens = line.split(" ");
  const kind = tokens[0];
  const fields: Record<string, string> = {};
  for (const token of tokens.slice(1)) {
    const split = token.indexOf("=");
    fields[token.slice(0, split)] = token.slice(split + 1);
  }
  if (kind === "record") {
    return {
      entry: "record",
      round: Number(fields["round"]),
      action: Number(fields["action"]),
      responses: fields["responses"].split(",").map((item) => {
        const [pid, response] = item.split(":");
        return { pid, response };
      }),
      accepts: Number(fields["accepts"]),
      outcome: fields["outcome"],
      raw: line,
    };
  }
  return {
    entry: "message",
    kind,
    round: Number(fields["round"]),
    from: fields["from"],
    to: fields["to"],
    action: "action" in fields ? Number(fields["action"]) : undefined,
    ranking: "ranking" in fields ? fields["ranking"].split(",").map(Number) : undefined,
    raw: line,
  };
}

export function parseTrace(text: string): TraceEntry[] {
  return contentLines(text).map(parseTraceLine);
}

// -- result / rankings ------------------------------------------------------

export interface ResultView {
  kind: string;
  actionIndex: number;
  actionLabel: string;
  rounds: number;
}

export function parseResult(text: string): ResultView {
  const kv = parseKV(contentLines(text));
  return {
    kind: kv["kind"],
    actionIndex: Number(kv["action-index"]),
    actionLabel: kv["action-label"],
    rounds: Number(kv["rounds"]),
  };
}

export interface RankingsView {
  method: string;
  perParticipant: { pid: string; ranks: number[] }[];
}

export function parseRankings(text: string): RankingsView {
  const lines = contentLines(text);
  const head = parseKV([lines[0]]);
  return {
    method: head["method"],
    perParticipant: lines.slice(1).map((line) => {
      const split = line.indexOf(":");
      return {
        pid: line.slice(0, split).trim(),
        ranks: line.slice(split + 1).trim().split(/\s+/).map(Number),
      };
    }),
  };
}

// -- session ----------------------------------------------------------------

export interface ParticipantView {
  id: string;
  name: string;
  surname: string;
  profile: string;
  weight: string;
  hasThresholds: boolean;
  hasJudgments: boolean;
  rawLines: string[];
}

export interface SessionView {
  id: string;
  status: string;
  threshold: string;
  method: string;
  maxRounds?: string;
  criteria: { name: string; direction: string }[];
  actions: { label: string; values: string[] }[];
  participants: ParticipantView[];
  rankings?: RankingsView;
  result?: ResultView;
  trace?: TraceEntry[];
  configLines: string[];
  matrixLines: string[];
}

export function parseSession(text: string): SessionView {
  const { preamble, sections } = splitSections(text);
  const head = parseKV(preamble);
  const view: SessionView = {
    id: head["id"],
    status: head["status"],
    threshold: "",
    method: "",
    criteria: [],
    actions: [],
    participants: [],
    configLines: [],
    matrixLines: [],
  };
  for (const section of sections) {
    if (section.name === "config") {
      view.configLines = section.lines;
      const kv = parseKV(section.lines);
      view.threshold = kv["threshold"];
      view.method = kv["method"];
      view.maxRounds = kv["max-rounds"];
    } else if (section.name === "matrix") {
      view.matrixLines = section.lines;
      view.criteria = section.lines[0].split(/\s+/).map((token) => {
        const split = token.lastIndexOf(":");
        return { name: token.slice(0, split), direction: token.slice(split + 1) };
      });
      view.actions = section.lines.slice(1).map((line) => {
        const tokens = line.split(/\s+/);
        return { label: tokens[0], values: tokens.slice(1) };
      });
    } else if (section.name === "participant") {
      const kv = parseKV(section.lines);
      view.participants.push({
        id: kv["id"],
        name: kv["name"],
        surname: kv["surname"],
        profile: kv["profile"],
        weight: kv["weight"],
        hasThresholds: "promethee-weights" in kv,
        hasJudgments: "saaty-criteria" in kv,
        rawLines: section.lines,
      });
    } else if (section.name === "rankings") {
      view.rankings = parseRankings(section.lines.join("\n"));
    } else if (section.name === "result") {
      view.result = parseResult(section.lines.join("\n"));
    } else if (section.name === "trace") {
      view.trace = section.lines.map(parseTraceLine);
    }
  }
  return view;
}

// The accept threshold a round must reach; derived from numbers the API
// already returned (session threshold and participant count).
export function acceptsNeeded(threshold: string, participantCount: number): number {
  return Math.ceil(Number(threshold) * participantCount);
}

export function canLaunch(view: SessionView): boolean {
  return view.status === "draft" && view.participants.length >= 1;
}
