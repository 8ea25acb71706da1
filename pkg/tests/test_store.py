from __future__ import annotations

import json

import pytest

from preceptor.store import (
    SessionClosedError,
    SessionStore,
    StoreError,
    UnknownSessionError,
)

TS = "2026-03-02T09:00:00+00:00"


def make_session(store: SessionStore, scenario: str = "chest_pain") -> str:
    return store.create_session(scenario, TS).session_id


class TestAppend:
    def test_first_entry_gets_seq_one(self, store):
        sid = make_session(store)
        assert store.append(sid, "student_event", TS, {"n": 1}) == 1

    def test_sequence_contiguous_over_many_appends(self, store):
        sid = make_session(store)
        seqs = [store.append(sid, "scores", TS, {"n": i}) for i in range(1000)]
        assert seqs == list(range(1, 1001))
        entries = store.read_log(sid)
        assert [e.seq for e in entries] == list(range(1, 1001))

    def test_append_after_close_errors(self, store):
        sid = make_session(store)
        store.append(sid, "student_event", TS, {})
        store.close_session(sid, TS)
        with pytest.raises(SessionClosedError):
            store.append(sid, "student_event", TS, {})

    def test_unknown_kind_rejected(self, store):
        sid = make_session(store)
        with pytest.raises(StoreError):
            store.append(sid, "mystery", TS, {})

    def test_unknown_session_rejected(self, store):
        with pytest.raises(UnknownSessionError):
            store.append("nope", "scores", TS, {})


class TestRead:
    def test_read_preserves_write_order(self, store):
        sid = make_session(store)
        for i in range(7):
            store.append(sid, "scores", TS, {"i": i})
        entries = store.read_log(sid)
        assert [e.payload["i"] for e in entries] == list(range(7))

    def test_unknown_session_read_errors(self, store):
        with pytest.raises(UnknownSessionError):
            store.read_log("missing")

    def test_entries_survive_reopen(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        for i in range(5):
            store.append(sid, "scores", TS, {"i": i})

        reopened = SessionStore(root)
        assert [e.payload["i"] for e in reopened.read_log(sid)] == list(range(5))
        assert reopened.get_record(sid).status == "open"

    def test_closed_status_survives_reopen(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        store.append(sid, "scores", TS, {})
        store.close_session(sid, TS)
        assert SessionStore(root).get_record(sid).status == "closed"


class TestTornWrites:
    def test_truncation_at_every_byte_boundary(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        for i in range(4):
            store.append(sid, "scores", TS, {"i": i, "pad": "x" * 10})
        path = root / "sessions" / f"{sid}.jsonl"
        original = path.read_bytes()

        line_ends = [i + 1 for i, b in enumerate(original) if b == ord("\n")]
        for cut in range(len(original) + 1):
            path.write_bytes(original[:cut])
            scan = SessionStore(root).scan(sid)
            complete = sum(1 for end in line_ends if end <= cut)
            assert len(scan.entries) == complete, cut
            assert scan.truncated == (cut not in (0, *line_ends)), cut
            assert [e.payload["i"] for e in scan.entries] == list(range(complete))
        path.write_bytes(original)

    def test_append_after_torn_write_repairs_the_tail(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        store.append(sid, "scores", TS, {"i": 0})
        store.append(sid, "scores", TS, {"i": 1})
        path = root / "sessions" / f"{sid}.jsonl"
        data = path.read_bytes()
        path.write_bytes(data[:-5])  # tear the second record

        recovered = SessionStore(root)
        assert recovered.append(sid, "scores", TS, {"i": "new"}) == 2
        entries = recovered.read_log(sid)
        assert [e.payload["i"] for e in entries] == [0, "new"]
        scan = recovered.scan(sid)
        assert not scan.truncated

    def test_garbage_line_reports_truncation(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        store.append(sid, "scores", TS, {"i": 0})
        path = root / "sessions" / f"{sid}.jsonl"
        with open(path, "ab") as fh:
            fh.write(b"{\"seq\": not json}\n")
        scan = SessionStore(root).scan(sid)
        assert scan.truncated
        assert len(scan.entries) == 1


class TestIndex:
    def test_distinct_ids(self, store):
        assert make_session(store) != make_session(store)

    def test_list_records(self, store):
        first = make_session(store)
        second = make_session(store, scenario="sore_throat")
        records = store.list_records()
        assert {r.session_id for r in records} == {first, second}

    def test_close_is_idempotent_error(self, store):
        sid = make_session(store)
        store.close_session(sid, TS)
        with pytest.raises(SessionClosedError):
            store.close_session(sid, TS)

    def test_sequence_gap_detected(self, tmp_path):
        root = tmp_path / "data"
        store = SessionStore(root)
        sid = make_session(store)
        store.append(sid, "scores", TS, {})
        path = root / "sessions" / f"{sid}.jsonl"
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"seq": 5, "kind": "scores", "ts": TS, "payload": {}}) + "\n")
        with pytest.raises(StoreError):
            SessionStore(root).read_log(sid)
