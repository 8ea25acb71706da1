"""Append-only, replayable session persistence.

One line-delimited JSON file per session under ``{root}/sessions``, plus an
append-only ``index.jsonl`` of session records (last line per id wins).
Every appended entry is flushed and fsynced before the call returns, so a
crash can lose at most a partial trailing line, which readers detect and
drop without disturbing earlier records.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import asdict, dataclass
from pathlib import Path

ENTRY_KINDS = ("student_event", "agent_reply", "scores", "decision", "report")


class StoreError(Exception):
    pass


class UnknownSessionError(StoreError):
    pass


class SessionClosedError(StoreError):
    pass


@dataclass(frozen=True)
class LogEntry:
    seq: int
    kind: str
    ts: str
    payload: dict

    def as_dict(self) -> dict:
        return {"seq": self.seq, "kind": self.kind, "ts": self.ts, "payload": self.payload}


@dataclass(frozen=True)
class SessionRecord:
    session_id: str
    scenario_id: str
    created_ts: str
    closed_ts: str | None = None
    status: str = "open"


@dataclass(frozen=True)
class LogScan:
    """Result of reading one session file, with torn-write accounting."""

    entries: tuple[LogEntry, ...]
    truncated: bool
    valid_bytes: int


def new_session_id() -> str:
    return uuid.uuid4().hex


class SessionStore:
    """Single writer per session file, many readers, serialized index updates."""

    def __init__(self, root: str | Path):
        self._root = Path(root)
        self._sessions_dir = self._root / "sessions"
        self._sessions_dir.mkdir(parents=True, exist_ok=True)
        self._index_path = self._root / "index.jsonl"
        self._index_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        self._next_seq: dict[str, int] = {}
        self._records: dict[str, SessionRecord] = {}
        self._load_index()

    # -- index ---------------------------------------------------------------

    def _load_index(self) -> None:
        if not self._index_path.exists():
            return
        for line in self._index_path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError:
                continue  # torn trailing index line
            record = SessionRecord(
                session_id=doc["session_id"],
                scenario_id=doc["scenario_id"],
                created_ts=doc["created_ts"],
                closed_ts=doc.get("closed_ts"),
                status=doc.get("status", "open"),
            )
            self._records[record.session_id] = record

    def _write_index_line(self, record: SessionRecord) -> None:
        with self._index_lock:
            with open(self._index_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(asdict(record), ensure_ascii=False) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._records[record.session_id] = record

    # -- sessions ------------------------------------------------------------

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._index_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _path_for(self, session_id: str) -> Path:
        return self._sessions_dir / f"{session_id}.jsonl"

    def create_session(
        self, scenario_id: str, created_ts: str, session_id: str | None = None
    ) -> SessionRecord:
        session_id = session_id or new_session_id()
        if session_id in self._records:
            raise StoreError(f"session {session_id} already exists")
        record = SessionRecord(session_id, scenario_id, created_ts)
        self._path_for(session_id).touch()
        self._next_seq[session_id] = 1
        self._write_index_line(record)
        return record

    def get_record(self, session_id: str) -> SessionRecord:
        record = self._records.get(session_id)
        if record is None:
            raise UnknownSessionError(f"unknown session {session_id!r}")
        return record

    def list_records(self) -> list[SessionRecord]:
        return sorted(self._records.values(), key=lambda r: (r.created_ts, r.session_id))

    def close_session(self, session_id: str, closed_ts: str) -> SessionRecord:
        record = self.get_record(session_id)
        if record.status == "closed":
            raise SessionClosedError(f"session {session_id} already closed")
        closed = SessionRecord(
            record.session_id, record.scenario_id, record.created_ts, closed_ts, "closed"
        )
        self._write_index_line(closed)
        return closed

    # -- log entries ----------------------------------------------------------

    def append(self, session_id: str, kind: str, ts: str, payload: dict) -> int:
        """Durably append one entry; returns its contiguous sequence number."""
        if kind not in ENTRY_KINDS:
            raise StoreError(f"unknown entry kind {kind!r}")
        record = self.get_record(session_id)
        if record.status == "closed":
            raise SessionClosedError(f"session {session_id} is closed")
        with self._lock_for(session_id):
            seq = self._next_seq.get(session_id)
            if seq is None:
                # Recovery after restart: drop any torn tail so the new line
                # starts at a record boundary.
                scanned = self.scan(session_id)
                if scanned.truncated:
                    with open(self._path_for(session_id), "r+b") as fh:
                        fh.truncate(scanned.valid_bytes)
                seq = len(scanned.entries) + 1
            entry = LogEntry(seq=seq, kind=kind, ts=ts, payload=payload)
            line = json.dumps(entry.as_dict(), ensure_ascii=False) + "\n"
            with open(self._path_for(session_id), "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            self._next_seq[session_id] = seq + 1
            return seq

    def scan(self, session_id: str) -> LogScan:
        """Entries up to the last complete record; torn tails are dropped.

        A line only counts once its newline terminator is on disk; append()
        fsyncs the full line before acknowledging, so every acknowledged
        entry survives and a torn tail was never acknowledged.
        """
        path = self._path_for(session_id)
        if session_id not in self._records and not path.exists():
            raise UnknownSessionError(f"unknown session {session_id!r}")
        entries: list[LogEntry] = []
        truncated = False
        valid_bytes = 0
        data = path.read_bytes() if path.exists() else b""
        offset = 0
        while offset < len(data):
            newline = data.find(b"\n", offset)
            if newline < 0:
                truncated = True
                break
            try:
                doc = json.loads(data[offset:newline].decode("utf-8"))
                entry = LogEntry(
                    seq=int(doc["seq"]),
                    kind=str(doc["kind"]),
                    ts=str(doc["ts"]),
                    payload=doc["payload"],
                )
            except (ValueError, KeyError, TypeError, UnicodeDecodeError):
                truncated = True
                break
            entries.append(entry)
            offset = newline + 1
            valid_bytes = offset
        for i, entry in enumerate(entries, start=1):
            if entry.seq != i:
                raise StoreError(
                    f"session {session_id}: sequence gap at entry {i} (found {entry.seq})"
                )
        return LogScan(tuple(entries), truncated, valid_bytes)

    def read_log(self, session_id: str) -> list[LogEntry]:
        """Entries in exact write order; raises for unknown sessions."""
        return list(self.scan(session_id).entries)
