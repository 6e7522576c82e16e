"""Mediated monotone-concession negotiation over ranked actions.

One initiator drives deterministic participant state machines through five
stages: collect a ranking from every participant (request/inform), propose
the action with the lowest weighted rank score, gather accept/conceed/refuse
responses cut at the thirds of each ranking, evaluate accepts against the
threshold, and confirm the decision.

A concession is permanent: the action joins the participant's acceptance
set.  If a first pass over all actions fails, a second pass re-proposes them
in the same score order so accumulated concessions can tip the count; if
that fails too, the round with the most accepts decides (ties to the lower
score, then the lower index).  Everything is replayable from the message
trace, which serializes to a stable line format suitable for byte-level
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

from .ahp import SaatyJudgments, ahp_rank
from .errors import (
    IncompleteResponses,
    MethodMismatch,
    MissingParams,
    NoParticipants,
    ParamDimensionMismatch,
    PhaseExhausted,
    UnknownAction,
    ValidationFailed,
)
from .matrix import PerformanceMatrix
from .promethee import PrometheeParams, flows, net_flow_ranking
from .ranking import RankingVector

INITIATOR = "initiator"
BROADCAST = "all"


class MethodPolicy(str, Enum):
    """Ranking-method policy: auto picks by criterion count, the others force."""

    AUTO = "auto"
    AHP = "ahp"
    PROMETHEE = "promethee"


AUTO_CRITERIA_LIMIT = 10


def select_method(policy: MethodPolicy, n_criteria: int) -> MethodPolicy:
    """Resolve auto: AHP below 10 criteria, PROMETHEE II at 10 or more."""
    if policy is not MethodPolicy.AUTO:
        return policy
    if n_criteria < AUTO_CRITERIA_LIMIT:
        return MethodPolicy.AHP
    return MethodPolicy.PROMETHEE


class MessageKind(str, Enum):
    REQUEST = "request"
    INFORM = "inform"
    PROPOSE = "propose"
    ACCEPT = "accept"
    CONCEED = "conceed"
    REFUSE = "refuse"
    CONFIRM = "confirm"


class Response(str, Enum):
    ACCEPT = "accept"
    CONCEED = "conceed"
    REFUSE = "refuse"


class OutcomeKind(str, Enum):
    AGREED = "agreed"
    FALLBACK_AGREED = "fallback-agreed"


def _check_agent_id(agent_id: str):
    if not agent_id or any(c.isspace() for c in agent_id) or "," in agent_id or ":" in agent_id:
        raise ValidationFailed(f"agent id {agent_id!r} must be a plain token")
    if agent_id in (INITIATOR, BROADCAST):
        raise ValidationFailed(f"agent id {agent_id!r} is reserved")


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    sender: str
    receiver: str
    round: int
    action: Optional[int] = None
    ranking: Optional[RankingVector] = None


@dataclass(frozen=True)
class RoundRecord:
    round: int
    action: int
    responses: tuple[tuple[str, Response], ...]
    accept_count: int
    success: bool


TraceEntry = Union[Message, RoundRecord]


@dataclass(frozen=True)
class NegotiationConfig:
    threshold: float
    method: MethodPolicy = MethodPolicy.AUTO
    max_rounds: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.threshold <= 1.0:
            raise ValidationFailed(f"threshold must be in (0, 1], got {self.threshold}")

    def rounds_limit(self, n_actions: int) -> int:
        limit = 2 * n_actions if self.max_rounds is None else self.max_rounds
        if limit < n_actions:
            raise ValidationFailed(
                f"max rounds {limit} below the action count {n_actions}"
            )
        return limit


@dataclass(frozen=True)
class ParticipantSpec:
    """Registration-side view of a participant: weight plus method parameters."""

    id: str
    weight: float
    promethee: Optional[PrometheeParams] = None
    saaty: Optional[SaatyJudgments] = None

    def __post_init__(self):
        _check_agent_id(self.id)
        if not self.weight > 0.0:
            raise ValidationFailed(f"participant {self.id}: weight must be positive")


@dataclass
class ParticipantState:
    """Negotiation-side view: a ranking and the monotone concession set."""

    id: str
    weight: float
    ranking: RankingVector
    conceded: set[int] = field(default_factory=set)

    def __post_init__(self):
        _check_agent_id(self.id)
        if not self.weight > 0.0:
            raise ValidationFailed(f"participant {self.id}: weight must be positive")


def collect_rankings(
    matrix: PerformanceMatrix,
    specs: Sequence[ParticipantSpec],
    config: NegotiationConfig,
) -> list[ParticipantState]:
    """Rank every participant's actions with the policy-selected method."""
    method = select_method(config.method, matrix.n_criteria)
    states = []
    for spec in specs:
        if method is MethodPolicy.AHP:
            judgments = spec.saaty
            if judgments is None:
                _missing(spec.id, "AHP judgments", config)
            if judgments.n_criteria != matrix.n_criteria or judgments.n_actions != matrix.n_actions:
                raise ParamDimensionMismatch(
                    f"participant {spec.id}: judgments are {judgments.n_criteria} criteria x "
                    f"{judgments.n_actions} actions, session is {matrix.n_criteria} x {matrix.n_actions}"
                )
            ranking = ahp_rank(judgments)
        else:
            params = spec.promethee
            if params is None:
                _missing(spec.id, "PROMETHEE parameters", config)
            if params.n_criteria != matrix.n_criteria:
                raise ParamDimensionMismatch(
                    f"participant {spec.id}: parameters cover {params.n_criteria} criteria, "
                    f"session has {matrix.n_criteria}"
                )
            ranking = net_flow_ranking(flows(matrix, params))
        states.append(ParticipantState(spec.id, spec.weight, ranking))
    return states


def _missing(pid: str, what: str, config: NegotiationConfig):
    if config.method is MethodPolicy.AUTO:
        raise MissingParams(f"participant {pid} has no {what}")
    raise MethodMismatch(f"participant {pid} has no {what} for the forced method")


def score(action: int, participants: Sequence[ParticipantState]) -> float:
    """Weighted sum of the ranks given to ``action``; lower is better."""
    return sum(p.weight * p.ranking.rank_of(action) for p in participants)


def thirds(n_actions: int) -> tuple[int, int]:
    """Rank boundaries (accept, conceed) at ceil(n/3) and ceil(2n/3)."""
    return (n_actions + 2) // 3, (2 * n_actions + 2) // 3


def respond(participant: ParticipantState, proposal: int) -> Response:
    """Cut the participant's ranking into thirds; concessions stick.

    Top third (or anything previously conceded) accepts; middle third
    concedes and permanently joins the acceptance set; bottom third refuses.
    """
    n = len(participant.ranking)
    if not 0 <= proposal < n:
        raise UnknownAction(f"action {proposal} outside the ranked set of {participant.id}")
    if proposal in participant.conceded:
        return Response.ACCEPT
    rank = participant.ranking.rank_of(proposal)
    accept_upto, conceed_upto = thirds(n)
    if rank <= accept_upto:
        return Response.ACCEPT
    if rank <= conceed_upto:
        participant.conceded.add(proposal)
        return Response.CONCEED
    return Response.REFUSE


def accepts_needed(threshold: float, n_participants: int) -> int:
    return math.ceil(threshold * n_participants)


def evaluate_round(
    round_no: int,
    action: int,
    responses: Sequence[tuple[str, Response]],
    config: NegotiationConfig,
    participant_ids: Sequence[str],
) -> RoundRecord:
    """Count accepts only (a concession does not count in its own round)."""
    if [pid for pid, _ in responses] != list(participant_ids):
        raise IncompleteResponses("need exactly one response per participant, in order")
    accept_count = sum(1 for _, resp in responses if resp is Response.ACCEPT)
    needed = accepts_needed(config.threshold, len(participant_ids))
    return RoundRecord(round_no, action, tuple(responses), accept_count, accept_count >= needed)


def generate_proposal(scores: Sequence[float], already_proposed: set[int]) -> int:
    """Lowest-score action not yet proposed in this phase, ties to the lower index."""
    candidates = [a for a in range(len(scores)) if a not in already_proposed]
    if not candidates:
        raise PhaseExhausted("every action has been proposed in this phase")
    return min(candidates, key=lambda a: (scores[a], a))


@dataclass(frozen=True)
class NegotiationOutcome:
    kind: OutcomeKind
    action: int
    rounds: int
    trace: tuple[TraceEntry, ...]


def run_negotiation(
    matrix: PerformanceMatrix,
    participants: Sequence[ParticipantState],
    config: NegotiationConfig,
) -> NegotiationOutcome:
    """Run the full protocol; pure in its inputs (participant states are copied)."""
    if not participants:
        raise NoParticipants("a negotiation needs at least one participant")
    n = matrix.n_actions
    ids = [p.id for p in participants]
    if len(set(ids)) != len(ids):
        raise ValidationFailed("participant ids must be unique")
    for p in participants:
        if len(p.ranking) != n:
            raise ValidationFailed(
                f"participant {p.id} ranks {len(p.ranking)} actions, session has {n}"
            )
    limit = config.rounds_limit(n)
    states = [replace(p, conceded=set(p.conceded)) for p in participants]

    trace: list[TraceEntry] = []
    for p in states:
        trace.append(Message(MessageKind.REQUEST, INITIATOR, p.id, 0))
        trace.append(Message(MessageKind.INFORM, p.id, INITIATOR, 0, ranking=p.ranking))

    scores = [score(a, states) for a in range(n)]
    records: list[RoundRecord] = []
    proposed_this_phase: set[int] = set()
    second_phase = False
    round_no = 0
    agreed: Optional[int] = None
    while round_no < limit:
        try:
            action = generate_proposal(scores, proposed_this_phase)
        except PhaseExhausted:
            if second_phase:
                break
            second_phase = True
            proposed_this_phase = set()
            continue
        proposed_this_phase.add(action)
        round_no += 1
        trace.append(Message(MessageKind.PROPOSE, INITIATOR, BROADCAST, round_no, action=action))
        responses = []
        for p in states:
            resp = respond(p, action)
            responses.append((p.id, resp))
            trace.append(Message(MessageKind(resp.value), p.id, INITIATOR, round_no, action=action))
        record = evaluate_round(round_no, action, responses, config, ids)
        trace.append(record)
        records.append(record)
        if record.success:
            agreed = action
            break

    if agreed is not None:
        kind = OutcomeKind.AGREED
    else:
        kind = OutcomeKind.FALLBACK_AGREED
        best = min(records, key=lambda r: (-r.accept_count, scores[r.action], r.action))
        agreed = best.action
    for p in states:
        trace.append(Message(MessageKind.CONFIRM, INITIATOR, p.id, round_no, action=agreed))
    return NegotiationOutcome(kind, agreed, round_no, tuple(trace))


# ---------------------------------------------------------------------------
# trace serialization: one line per entry, stable field order


def entry_line(entry: TraceEntry) -> str:
    if isinstance(entry, RoundRecord):
        joined = ",".join(f"{pid}:{resp.value}" for pid, resp in entry.responses)
        outcome = "success" if entry.success else "continue"
        return (
            f"record round={entry.round} action={entry.action} responses={joined} "
            f"accepts={entry.accept_count} outcome={outcome}"
        )
    base = f"{entry.kind.value} round={entry.round} from={entry.sender} to={entry.receiver}"
    if entry.kind is MessageKind.INFORM:
        joined = ",".join(str(r) for r in entry.ranking.ranks)
        return f"{base} ranking={joined}"
    if entry.kind is MessageKind.REQUEST:
        return base
    return f"{base} action={entry.action}"


def trace_lines(trace: Sequence[TraceEntry]) -> list[str]:
    return [entry_line(entry) for entry in trace]


def serialize_trace(trace: Sequence[TraceEntry]) -> str:
    return "\n".join(trace_lines(trace)) + "\n"


def parse_entry_line(line: str) -> TraceEntry:
    """Inverse of :func:`entry_line`; used when reloading persisted sessions."""
    tokens = line.split()
    if not tokens:
        raise ValidationFailed("empty trace line")
    kind, fields = tokens[0], dict(tok.split("=", 1) for tok in tokens[1:])
    if kind == "record":
        responses = tuple(
            (pid, Response(resp))
            for pid, resp in (item.split(":") for item in fields["responses"].split(","))
        )
        return RoundRecord(
            int(fields["round"]),
            int(fields["action"]),
            responses,
            int(fields["accepts"]),
            fields["outcome"] == "success",
        )
    ranking = None
    if "ranking" in fields:
        ranking = RankingVector(tuple(int(r) for r in fields["ranking"].split(",")))
    action = int(fields["action"]) if "action" in fields else None
    return Message(
        MessageKind(kind), fields["from"], fields["to"], int(fields["round"]), action, ranking
    )
