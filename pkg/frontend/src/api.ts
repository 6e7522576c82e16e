// Plain-text HTTP client for the session service.

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

function parseErrorBody(status: number, body: string): ApiError {
  let code = "unknown";
  let detail = body.trim();
  for (const line of body.split("\n")) {
    if (line.startsWith("error:")) code = line.slice(6).trim();
    if (line.startsWith("detail:")) detail = line.slice(7).trim();
  }
  return new ApiError(status, code, detail);
}

function parseIdReply(body: string): string {
  for (const line of body.split("\n")) {
    if (line.startsWith("id:")) return line.slice(3).trim();
  }
  throw new Error(`no id in reply: ${body}`);
}

export class Client {
  constructor(public base: string) {
    this.base = base.replace(/\/+$/, "");
  }

  private async request(method: string, path: string, body?: string): Promise<string> {
    const reply = await fetch(this.base + path, {
      method,
      body,
      headers: body !== undefined ? { "Content-Type": "text/plain; charset=utf-8" } : undefined,
    });
    const text = await reply.text();
    if (!reply.ok) {
      throw parseErrorBody(reply.status, text);
    }
    return text;
  }

  async createSession(configAndMatrixDoc: string): Promise<string> {
    return parseIdReply(await this.request("POST", "/sessions", configAndMatrixDoc));
  }

  async registerParticipant(sid: string, participantDoc: string): Promise<string> {
    return parseIdReply(
      await this.request("POST", `/sessions/${sid}/participants`, participantDoc),
    );
  }

  async importLegacy(sid: string, legacyText: string, weight: string): Promise<string> {
    const query = `?weight=${encodeURIComponent(weight)}`;
    return parseIdReply(
      await this.request(
        "POST",
        `/sessions/${sid}/participants/import-legacy${query}`,
        legacyText,
      ),
    );
  }

  rank(sid: string): Promise<string> {
    return this.request("POST", `/sessions/${sid}/rank`, "");
  }

  negotiate(sid: string): Promise<string> {
    return this.request("POST", `/sessions/${sid}/negotiate`, "");
  }

  session(sid: string): Promise<string> {
    return this.request("GET", `/sessions/${sid}`);
  }

  rankings(sid: string): Promise<string> {
    return this.request("GET", `/sessions/${sid}/rankings`);
  }

  trace(sid: string): Promise<string> {
    return this.request("GET", `/sessions/${sid}/trace`);
  }

  result(sid: string): Promise<string> {
    return this.request("GET", `/sessions/${sid}/result`);
  }
}
