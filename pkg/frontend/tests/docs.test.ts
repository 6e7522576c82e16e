import { describe, expect, it } from "vitest";

import {
  acceptsNeeded,
  canLaunch,
  parseRankings,
  parseResult,
  parseSession,
  parseTrace,
} from "../src/docs.js";

const SESSION_DOC = `schema: accord-session/1
id: s1
status: draft

[config]
threshold: 0.5
method: promethee

[matrix]
NUISANCES:max BRUIT:min
729 1.0 0.99
732 1.0 0.98

[participant]
id: p1
name: decideur1
surname: -
profile: -
weight: 1.0
promethee-weights: 7.51 13.63
promethee-indifference: 0.3 0.3
promethee-preference: 0.6 0.6
`;

const TRACE_DOC = `request round=0 from=initiator to=p1
inform round=0 from=p1 to=initiator ranking=2,1
propose round=1 from=initiator to=all action=1
accept round=1 from=p1 to=initiator action=1
record round=1 action=1 responses=p1:accept accepts=1 outcome=success
confirm round=1 from=initiator to=p1 action=1
`;

describe("document parsing", () => {
  it("parses a session document", () => {
    const view = parseSession(SESSION_DOC);
    expect(view.id).toBe("s1");
    expect(view.status).toBe("draft");
    expect(view.threshold).toBe("0.5");
    expect(view.criteria).toEqual([
      { name: "NUISANCES", direction: "max" },
      { name: "BRUIT", direction: "min" },
    ]);
    expect(view.actions.map((a) => a.label)).toEqual(["729", "732"]);
    expect(view.actions[1].values).toEqual(["1.0", "0.98"]);
    expect(view.participants).toHaveLength(1);
    expect(view.participants[0].hasThresholds).toBe(true);
    expect(view.participants[0].hasJudgments).toBe(false);
  });

  it("parses trace lines into messages and records", () => {
    const entries = parseTrace(TRACE_DOC);
    expect(entries).toHaveLength(6);
    expect(entries[1]).toMatchObject({ entry: "message", kind: "inform", ranking: [2, 1] });
    expect(entries[4]).toMatchObject({
      entry: "record",
      round: 1,
      action: 1,
      accepts: 1,
      outcome: "success",
      responses: [{ pid: "p1", response: "accept" }],
    });
    expect(entries[5]).toMatchObject({ entry: "message", kind: "confirm", action: 1 });
  });

  it("parses result and rankings documents", () => {
    const result = parseResult("kind: agreed\naction-index: 10\naction-label: 1045\nrounds: 1\n");
    expect(result).toEqual({ kind: "agreed", actionIndex: 10, actionLabel: "1045", rounds: 1 });

    const rankings = parseRankings("method: promethee\np1: 2 1\np2: 1 2\n");
    expect(rankings.method).toBe("promethee");
    expect(rankings.perParticipant).toEqual([
      { pid: "p1", ranks: [2, 1] },
      { pid: "p2", ranks: [1, 2] },
    ]);
  });

  it("computes the accept quota from served numbers only", () => {
    expect(acceptsNeeded("0.5", 4)).toBe(2);
    expect(acceptsNeeded("0.75", 4)).toBe(3);
    expect(acceptsNeeded("1.0", 4)).toBe(4);
  });

  it("enables launch only for a draft with at least one decider", () => {
    const view = parseSession(SESSION_DOC);
    expect(canLaunch(view)).toBe(true);
    expect(canLaunch({ ...view, participants: [] })).toBe(false);
    expect(canLaunch({ ...view, status: "completed" })).toBe(false);
  });
});
