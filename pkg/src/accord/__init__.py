"""Group decision engine.

Rank actions for each decision maker with AHP (pairwise judgments) or
PROMETHEE II (outranking flows), then drive a mediated monotone-concession
negotiation until the group accepts an action.  The same pipeline is
available as a library, an HTTP session service (``accord serve``) and a
CLI (``accord rank | negotiate | demo | import-legacy``).
"""

from .ahp import (
    PairwiseMatrix,
    PriorityVector,
    SaatyJudgments,
    ahp_priorities,
    ahp_rank,
    ahp_scores,
    canonicalize_pairwise,
    consistency_ratio,
    eigenvector_priorities,
    pairwise_from_upper,
)
from .errors import DecisionError
from .legacy import Identity, format_legacy_decider, parse_legacy_decider
from .matrix import ActionRef, CriterionSpec, Direction, PerformanceMatrix, build_matrix
from .promethee import FlowTable, PrometheeParams, flows, net_flow_ranking, preference, preference_index
from .protocol import (
    Message,
    MessageKind,
    MethodPolicy,
    NegotiationConfig,
    NegotiationOutcome,
    OutcomeKind,
    ParticipantSpec,
    ParticipantState,
    Response,
    RoundRecord,
    collect_rankings,
    evaluate_round,
    generate_proposal,
    respond,
    run_negotiation,
    score,
    select_method,
    serialize_trace,
    thirds,
)
from .ranking import RankingVector
from .store import SessionStore

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
