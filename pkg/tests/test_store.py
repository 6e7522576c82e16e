import pytest

from accord import casestudy
from accord.errors import (
    NoParticipants,
    ParamDimensionMismatch,
    SessionNotFound,
    ThresholdOrderViolation,
    WrongPhase,
)
from accord.legacy import Identity
from accord.promethee import PrometheeParams
from accord.protocol import MethodPolicy, NegotiationConfig, OutcomeKind
from accord.store import (
    SessionStatus,
    SessionStore,
    session_from_text,
    session_to_text,
)


@pytest.fixture()
def store(store_dir):
    return SessionStore(store_dir)


def promethee_config():
    return NegotiationConfig(0.5, MethodPolicy.PROMETHEE)


def fill_case_study(store, matrix):
    sid = store.create_session(matrix, promethee_config())
    for k in range(4):
        store.register_participant(
            sid, casestudy.identity(k), 1.0, promethee=casestudy.promethee_params(k)
        )
    return sid


def test_create_assigns_sequential_ids(store, case_matrix):
    assert store.create_session(case_matrix, promethee_config()) == "s1"
    assert store.create_session(case_matrix, promethee_config()) == "s2"
    record = store.get_session("s1")
    assert record.status is SessionStatus.DRAFT
    assert record.matrix.n_actions == 18 and record.matrix.n_criteria == 7


def test_ids_continue_after_reload(store, store_dir, case_matrix):
    store.create_session(case_matrix, promethee_config())
    store.create_session(case_matrix, promethee_config())
    fresh = SessionStore(store_dir)
    assert fresh.create_session(case_matrix, promethee_config()) == "s3"


def test_unknown_session(store):
    with pytest.raises(SessionNotFound):
        store.get_session("s404")


def test_register_case_study_decider(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    pid = store.register_participant(
        sid, casestudy.identity(0), 1.0, promethee=casestudy.promethee_params(0)
    )
    assert pid == "p1"
    record = store.get_session(sid)
    assert record.participants[0].promethee.weights == (
        7.51, 13.63, 13.63, 13.63, 17.2, 17.2, 17.2
    )


def test_register_rejects_swapped_thresholds(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    with pytest.raises(ThresholdOrderViolation):
        store.register_participant(
            sid,
            Identity("x", "-", "-"),
            1.0,
            promethee=PrometheeParams((1.0,) * 7, (0.6,) * 7, (0.3,) * 7),
        )


def test_register_rejects_wrong_dimensions(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    with pytest.raises(ParamDimensionMismatch):
        store.register_participant(
            sid,
            Identity("x", "-", "-"),
            1.0,
            promethee=PrometheeParams((1.0,) * 5, (0.1,) * 5, (0.2,) * 5),
        )
    with pytest.raises(ParamDimensionMismatch):
        store.register_participant(
            sid, Identity("x", "-", "-"), 1.0, saaty=casestudy.saaty_judgments(0)
        )


def test_state_machine_moves_only_forward(store, case_matrix):
    sid = fill_case_study(store, case_matrix)
    with pytest.raises(WrongPhase):
        store.negotiate(sid)  # still draft
    store.rank_all(sid)
    with pytest.raises(WrongPhase):
        store.rank_all(sid)
    with pytest.raises(WrongPhase):
        store.register_participant(
            sid, casestudy.identity(0), 1.0, promethee=casestudy.promethee_params(0)
        )
    outcome = store.negotiate(sid)
    assert outcome.kind is OutcomeKind.AGREED
    with pytest.raises(WrongPhase):
        store.negotiate(sid)
    assert store.get_session(sid).status is SessionStatus.COMPLETED


def test_rank_requires_a_participant(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    with pytest.raises(NoParticipants):
        store.rank_all(sid)


def test_rankings_doc_and_method_line(store, case_matrix):
    sid = fill_case_study(store, case_matrix)
    with pytest.raises(WrongPhase):
        store.rankings_doc(sid)
    store.rank_all(sid)
    doc = store.rankings_doc(sid)
    lines = doc.splitlines()
    assert lines[0] == "method: promethee"
    assert lines[1].startswith("p1: 18 15 11 5")
    assert len(lines) == 5


def test_result_and_trace_docs(store, case_matrix):
    sid = fill_case_study(store, case_matrix)
    store.rank_all(sid)
    with pytest.raises(WrongPhase):
        store.result_doc(sid)
    store.negotiate(sid)
    assert store.result_doc(sid) == (
        "kind: agreed\naction-index: 10\naction-label: 1045\nrounds: 1\n"
    )
    trace = store.trace_doc(sid)
    assert trace.startswith("request round=0 from=initiator to=p1\n")
    assert trace.count("\n") == 18


def test_import_legacy_registers(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    pid = store.import_legacy(sid, casestudy.legacy_threshold_text(0), weight=2.0)
    record = store.get_session(sid)
    assert pid == "p1"
    assert record.participants[0].identity == casestudy.identity(0)
    assert record.participants[0].weight == 2.0
    assert record.participants[0].promethee == casestudy.promethee_params(0)


def test_text_round_trip_at_every_stage(store, store_dir, case_matrix, ahp_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    store.register_participant(
        sid, casestudy.identity(0), 1.5, promethee=casestudy.promethee_params(0)
    )
    draft = store.get_session(sid)
    assert session_from_text(session_to_text(draft)) == draft

    # a participant carrying judgments as well
    sid2 = store.create_session(ahp_matrix, NegotiationConfig(0.75, MethodPolicy.AHP, 8))
    for k in range(4):
        store.register_participant(
            sid2,
            casestudy.identity(k),
            1.0,
            promethee=None,
            saaty=casestudy.saaty_judgments(k),
        )
    store.rank_all(sid2)
    ranked = store.get_session(sid2)
    assert session_from_text(session_to_text(ranked)) == ranked

    store.negotiate(sid2)
    completed = store.get_session(sid2)
    assert session_from_text(session_to_text(completed)) == completed


def test_fresh_store_reloads_identical_records(store, store_dir, case_matrix):
    sid = fill_case_study(store, case_matrix)
    store.rank_all(sid)
    store.negotiate(sid)
    original = store.get_session(sid)

    fresh = SessionStore(store_dir)
    reloaded = fresh.get_session(sid)
    assert reloaded == original
    assert fresh.trace_doc(sid) == store.trace_doc(sid)
    assert fresh.result_doc(sid) == store.result_doc(sid)


def test_concurrent_session_creation_yields_unique_ids(store, case_matrix):
    import threading

    ids = []
    lock = threading.Lock()

    def create():
        sid = store.create_session(case_matrix, promethee_config())
        with lock:
            ids.append(sid)

    threads = [threading.Thread(target=create) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(ids)) == 8


def test_register_participant_doc(store, case_matrix):
    sid = store.create_session(case_matrix, promethee_config())
    body = (
        "name: decideur2\nsurname: -\nprofile: -\nweight: 1.0\n"
        "promethee-weights: 4.51 7.08 17.31 18.63 18.93 17.52 15.27\n"
        "promethee-indifference: 0.35 0.35 0.3 5 4 0.5 0.35\n"
        "promethee-preference: 0.7 0.7 0.6 110 8 1 0.7\n"
    )
    pid = store.register_participant_doc(sid, body)
    record = store.get_session(sid)
    assert pid == "p1"
    assert record.participants[0].promethee == casestudy.promethee_params(1)
