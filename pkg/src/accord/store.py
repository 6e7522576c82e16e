"""Session records, their text serialization, and the file-backed store.

A session is one self-contained document: config, performance matrix,
registered participants, and, once produced, the per-participant rankings,
the negotiation result and the full message trace.  Documents are written
atomically (temp file + rename) into a data directory, one file per
session, and reload to an identical record.

Sessions move strictly forward: draft (registering) -> ranked -> completed.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

from .ahp import SaatyJudgments, pairwise_from_upper
from .errors import (
    NoParticipants,
    ParamDimensionMismatch,
    SessionNotFound,
    ValidationFailed,
    WrongPhase,
)
from .legacy import Identity, LegacyParams, ThresholdFile, parse_legacy_decider
from .matrix import PerformanceMatrix
from .promethee import PrometheeParams
from .protocol import (
    MethodPolicy,
    NegotiationConfig,
    NegotiationOutcome,
    OutcomeKind,
    ParticipantSpec,
    collect_rankings,
    parse_entry_line,
    run_negotiation,
    select_method,
    serialize_trace,
    trace_lines,
)
from .ranking import RankingVector
from .textdoc import (
    content_lines,
    fmt_num,
    matrix_lines,
    parse_floats,
    parse_kv,
    parse_matrix_lines,
    split_sections,
)

SCHEMA = "accord-session/1"


class SessionStatus(str, Enum):
    DRAFT = "draft"
    RANKED = "ranked"
    COMPLETED = "completed"


@dataclass
class Participant:
    id: str
    identity: Identity
    weight: float
    promethee: Optional[PrometheeParams] = None
    saaty: Optional[SaatyJudgments] = None

    def spec(self) -> ParticipantSpec:
        return ParticipantSpec(self.id, self.weight, self.promethee, self.saaty)


@dataclass
class SessionRecord:
    id: str
    matrix: PerformanceMatrix
    config: NegotiationConfig
    participants: list[Participant] = field(default_factory=list)
    status: SessionStatus = SessionStatus.DRAFT
    method: Optional[MethodPolicy] = None
    rankings: Optional[dict[str, RankingVector]] = None
    result: Optional[NegotiationOutcome] = None


# ---------------------------------------------------------------------------
# serialization


def participant_lines(p: Participant, include_id: bool = True) -> list[str]:
    lines = []
    if include_id:
        lines.append(f"id: {p.id}")
    lines.append(f"name: {p.identity.name}")
    lines.append(f"surname: {p.identity.surname}")
    lines.append(f"profile: {p.identity.profile}")
    lines.append(f"weight: {fmt_num(p.weight)}")
    if p.promethee is not None:
        lines.append("promethee-weights: " + " ".join(fmt_num(x) for x in p.promethee.weights))
        lines.append(
            "promethee-indifference: " + " ".join(fmt_num(x) for x in p.promethee.indifference)
        )
        lines.append(
            "promethee-preference: " + " ".join(fmt_num(x) for x in p.promethee.preference)
        )
    if p.saaty is not None:
        lines.append(
            "saaty-criteria: " + " ".join(fmt_num(x) for x in p.saaty.criteria.upper_triangle())
        )
        for k, m in enumerate(p.saaty.actions, start=1):
            lines.append(f"saaty-action-{k}: " + " ".join(fmt_num(x) for x in m.upper_triangle()))
    return lines


def parse_participant_lines(lines, pid: Optional[str] = None) -> Participant:
    """Build a participant from document lines; ``pid`` overrides any id line."""
    kv = parse_kv(lines, "participant")
    identity = Identity(kv.get("name", ""), kv.get("surname", ""), kv.get("profile", ""))
    if "weight" not in kv:
        raise ValidationFailed("participant: missing 'weight' line")
    weight = parse_floats(kv["weight"], "participant weight")[0]
    promethee = None
    if "promethee-weights" in kv:
        for needed in ("promethee-indifference", "promethee-preference"):
            if needed not in kv:
                raise ValidationFailed(f"participant: missing '{needed}' line")
        promethee = PrometheeParams(
            tuple(parse_floats(kv["promethee-weights"], "promethee-weights")),
            tuple(parse_floats(kv["promethee-indifference"], "promethee-indifference")),
            tuple(parse_floats(kv["promethee-preference"], "promethee-preference")),
        )
    saaty = None
    if "saaty-criteria" in kv:
        criteria = pairwise_from_upper(parse_floats(kv["saaty-criteria"], "saaty-criteria"))
        actions = []
        for k in range(1, criteria.order + 1):
            key = f"saaty-action-{k}"
            if key not in kv:
                raise ValidationFailed(f"participant: missing '{key}' line")
            actions.append(pairwise_from_upper(parse_floats(kv[key], key)))
        saaty = SaatyJudgments(criteria, tuple(actions))
    resolved = pid if pid is not None else kv.get("id")
    if not resolved:
        raise ValidationFailed("participant: missing 'id' line")
    return Participant(resolved, identity, weight, promethee, saaty)


def config_lines(config: NegotiationConfig) -> list[str]:
    lines = [f"threshold: {fmt_num(config.threshold)}", f"method: {config.method.value}"]
    if config.max_rounds is not None:
        lines.append(f"max-rounds: {config.max_rounds}")
    return lines


def parse_config_lines(lines) -> NegotiationConfig:
    kv = parse_kv(lines, "config")
    if "threshold" not in kv:
        raise ValidationFailed("config: missing 'threshold' line")
    threshold = parse_floats(kv["threshold"], "threshold")[0]
    method = MethodPolicy(kv.get("method", MethodPolicy.AUTO.value))
    max_rounds = int(kv["max-rounds"]) if "max-rounds" in kv else None
    return NegotiationConfig(threshold, method, max_rounds)


def outcome_lines(matrix: PerformanceMatrix, outcome: NegotiationOutcome) -> list[str]:
    return [
        f"kind: {outcome.kind.value}",
        f"action-index: {outcome.action}",
        f"action-label: {matrix.label_of(outcome.action)}",
        f"rounds: {outcome.rounds}",
    ]


def result_lines(record: SessionRecord) -> list[str]:
    return outcome_lines(record.matrix, record.result)


def rankings_lines(record: SessionRecord) -> list[str]:
    lines = [f"method: {record.method.value}"]
    for p in record.participants:
        ranks = " ".join(str(r) for r in record.rankings[p.id].ranks)
        lines.append(f"{p.id}: {ranks}")
    return lines


def session_to_text(record: SessionRecord) -> str:
    lines = [f"schema: {SCHEMA}", f"id: {record.id}", f"status: {record.status.value}"]
    lines += ["", "[config]"] + config_lines(record.config)
    lines += ["", "[matrix]"] + matrix_lines(record.matrix)
    for p in record.participants:
        lines += ["", "[participant]"] + participant_lines(p)
    if record.rankings is not None:
        lines += ["", "[rankings]"] + rankings_lines(record)
    if record.result is not None:
        lines += ["", "[result]"] + result_lines(record)
        lines += ["", "[trace]"] + trace_lines(record.result.trace)
    return "\n".join(lines) + "\n"


def session_from_text(text: str) -> SessionRecord:
    preamble, sections = split_sections(text)
    head = parse_kv(preamble, "session header")
    if head.get("schema") != SCHEMA:
        raise ValidationFailed(f"unsupported schema {head.get('schema')!r}")
    named = {}
    participants = []
    for name, lines in sections:
        if name == "participant":
            participants.append(lines)
        elif name in named:
            raise ValidationFailed(f"duplicate [{name}] section")
        else:
            named[name] = lines
    if "config" not in named or "matrix" not in named:
        raise ValidationFailed("session document needs [config] and [matrix]")
    record = SessionRecord(
        id=head.get("id", ""),
        matrix=parse_matrix_lines(named["matrix"]),
        config=parse_config_lines(named["config"]),
        participants=[parse_participant_lines(lines) for lines in participants],
        status=SessionStatus(head.get("status", "draft")),
    )
    if "rankings" in named:
        kv = parse_kv(named["rankings"], "rankings")
        if "method" not in kv:
            raise ValidationFailed("[rankings] needs a 'method' line")
        record.method = MethodPolicy(kv.pop("method"))
        record.rankings = {
            pid: RankingVector(tuple(int(tok) for tok in ranks.split()))
            for pid, ranks in kv.items()
        }
    if "result" in named:
        kv = parse_kv(named["result"], "result")
        trace = tuple(parse_entry_line(line) for line in named.get("trace", []))
        record.result = NegotiationOutcome(
            OutcomeKind(kv["kind"]), int(kv["action-index"]), int(kv["rounds"]), trace
        )
    return record


def parse_session_request(text: str) -> tuple[PerformanceMatrix, NegotiationConfig]:
    """Parse a creation request: a document holding [config] and [matrix]."""
    _, sections = split_sections(text)
    named = dict(sections)
    if "config" not in named or "matrix" not in named:
        raise ValidationFailed("session request needs [config] and [matrix] sections")
    return parse_matrix_lines(named["matrix"]), parse_config_lines(named["config"])


# ---------------------------------------------------------------------------
# the store


class SessionStore:
    """File-backed session registry; one writer at a time per session."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, SessionRecord] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._registry_lock = threading.RLock()

    # -- plumbing

    def _path(self, sid: str) -> Path:
        return self.data_dir / f"{sid}.session"

    def _lock_for(self, sid: str) -> threading.RLock:
        with self._registry_lock:
            return self._locks.setdefault(sid, threading.RLock())

    def _next_id(self) -> str:
        taken = [
            int(p.stem[1:])
            for p in self.data_dir.glob("s*.session")
            if p.stem[1:].isdigit()
        ]
        return f"s{max(taken, default=0) + 1}"

    def _save(self, record: SessionRecord):
        text = session_to_text(record)
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp, self._path(record.id))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self._cache[record.id] = record

    def _load(self, sid: str) -> SessionRecord:
        if sid in self._cache:
            return self._cache[sid]
        path = self._path(sid)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise SessionNotFound(f"no session {sid!r}") from None
        record = session_from_text(text)
        self._cache[sid] = record
        return record

    def session_ids(self) -> list[str]:
        with self._registry_lock:
            found = {p.stem for p in self.data_dir.glob("s*.session")}
            found.update(self._cache)
        return sorted(found, key=lambda s: (len(s), s))

    # -- operations

    def create_session(self, matrix: PerformanceMatrix, config: NegotiationConfig) -> str:
        with self._registry_lock:
            sid = self._next_id()
            record = SessionRecord(sid, matrix, config)
            with self._lock_for(sid):
                self._save(record)
        return sid

    def register_participant(
        self,
        sid: str,
        identity: Identity,
        weight: float,
        promethee: Optional[PrometheeParams] = None,
        saaty: Optional[SaatyJudgments] = None,
    ) -> str:
        with self._lock_for(sid):
            record = self._load(sid)
            if record.status is not SessionStatus.DRAFT:
                raise WrongPhase(f"session {sid} is {record.status.value}; registration is closed")
            _check_param_dims(record.matrix, promethee, saaty)
            pid = f"p{len(record.participants) + 1}"
            record.participants.append(Participant(pid, identity, weight, promethee, saaty))
            self._save(record)
            return pid

    def register_participant_doc(self, sid: str, text: str) -> str:
        with self._lock_for(sid):
            record = self._load(sid)
            parsed = parse_participant_lines(content_lines(text), pid="pending")
            return self.register_participant(
                sid, parsed.identity, parsed.weight, parsed.promethee, parsed.saaty
            )

    def import_legacy(self, sid: str, text: str, weight: float = 1.0) -> str:
        identity, params = parse_legacy_decider(text)
        promethee, saaty = legacy_to_params(params)
        return self.register_participant(sid, identity, weight, promethee, saaty)

    def rank_all(self, sid: str) -> dict[str, RankingVector]:
        with self._lock_for(sid):
            record = self._load(sid)
            if record.status is not SessionStatus.DRAFT:
                raise WrongPhase(f"session {sid} is {record.status.value}; already ranked")
            if not record.participants:
                raise NoParticipants(f"session {sid} has no registered participants")
            states = collect_rankings(
                record.matrix, [p.spec() for p in record.participants], record.config
            )
            record.method = select_method(record.config.method, record.matrix.n_criteria)
            record.rankings = {s.id: s.ranking for s in states}
            record.status = SessionStatus.RANKED
            self._save(record)
            return dict(record.rankings)

    def negotiate(self, sid: str) -> NegotiationOutcome:
        with self._lock_for(sid):
            record = self._load(sid)
            if record.status is SessionStatus.DRAFT:
                raise WrongPhase(f"session {sid} must be ranked before negotiating")
            if record.status is SessionStatus.COMPLETED:
                raise WrongPhase(f"session {sid} is already completed")
            states = collect_rankings(
                record.matrix, [p.spec() for p in record.participants], record.config
            )
            record.result = run_negotiation(record.matrix, states, record.config)
            record.status = SessionStatus.COMPLETED
            self._save(record)
            return record.result

    # -- read side

    def get_session(self, sid: str) -> SessionRecord:
        with self._lock_for(sid):
            return self._load(sid)

    def session_doc(self, sid: str) -> str:
        return session_to_text(self.get_session(sid))

    def rankings_doc(self, sid: str) -> str:
        record = self.get_session(sid)
        if record.rankings is None:
            raise WrongPhase(f"session {sid} has no rankings yet")
        return "\n".join(rankings_lines(record)) + "\n"

    def result_doc(self, sid: str) -> str:
        record = self.get_session(sid)
        if record.result is None:
            raise WrongPhase(f"session {sid} has no result yet")
        return "\n".join(result_lines(record)) + "\n"

    def trace_doc(self, sid: str) -> str:
        record = self.get_session(sid)
        if record.result is None:
            raise WrongPhase(f"session {sid} has no trace yet")
        return serialize_trace(record.result.trace)


def _check_param_dims(matrix, promethee, saaty):
    if promethee is not None and promethee.n_criteria != matrix.n_criteria:
        raise ParamDimensionMismatch(
            f"parameters cover {promethee.n_criteria} criteria, session has {matrix.n_criteria}"
        )
    if saaty is not None:
        if saaty.n_criteria != matrix.n_criteria or saaty.n_actions != matrix.n_actions:
            raise ParamDimensionMismatch(
                f"judgments are {saaty.n_criteria} criteria x {saaty.n_actions} actions, "
                f"session is {matrix.n_criteria} x {matrix.n_actions}"
            )


def legacy_to_params(params: LegacyParams):
    """Convert a parsed legacy payload to validated method parameters."""
    if isinstance(params, ThresholdFile):
        return PrometheeParams(params.weights, params.indifference, params.preference), None
    judgments = SaatyJudgments(
        pairwise_from_upper(params.criteria_upper),
        tuple(pairwise_from_upper(u) for u in params.action_uppers),
    )
    return None, judgments
