"""Bookmarking, commenting, and export of curated trees.

Curation files are self-contained: each record embeds the full tree
snapshot and its metrics, so a saved file can be loaded and used for
prediction long after the originating Rashomon-set file is gone.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .enumeration import RashomonSet
from .errors import DimensionError, EmptyStoreError, UnknownTreeId, UnsupportedVersion
from .trees import DecisionTree, metrics_to_dict, node_from_dict, node_to_dict, predict

log = logging.getLogger(__name__)

FORMAT_VERSION = "1"
STORE_FILENAME = "favorites.json"


@dataclass(frozen=True)
class CurationRecord:
    tree_id: int
    comment: str
    created_at: str  # RFC 3339, UTC
    tree_snapshot: dict
    metrics_snapshot: dict

    def to_document(self) -> dict:
        return {
            "tree_id": self.tree_id,
            "comment": self.comment,
            "created_at": self.created_at,
            "tree": self.tree_snapshot,
            "metrics": self.metrics_snapshot,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "CurationRecord":
        return cls(
            tree_id=int(doc["tree_id"]),
            comment=doc["comment"],
            created_at=doc["created_at"],
            tree_snapshot=doc["tree"],
            metrics_snapshot=doc["metrics"],
        )


@dataclass(frozen=True)
class CurationFile:
    dataset_hash: str
    config: dict
    num_features: int
    records: tuple[CurationRecord, ...]
    format_version: str = FORMAT_VERSION

    def record(self, tree_id: int) -> CurationRecord | None:
        for rec in self.records:
            if rec.tree_id == tree_id:
                return rec
        return None

    def to_document(self) -> dict:
        return {
            "format_version": self.format_version,
            "dataset_hash": self.dataset_hash,
            "config": self.config,
            "num_features": self.num_features,
            "records": [rec.to_document() for rec in self.records],
        }


def _file_from_document(doc: dict) -> CurationFile:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"unsupported curation file version {version!r}")
    return CurationFile(
        dataset_hash=doc["dataset_hash"],
        config=doc["config"],
        num_features=int(doc["num_features"]),
        records=tuple(CurationRecord.from_document(r) for r in doc["records"]),
    )


def _now_rfc3339() -> str:
    return datetime.now(timezone.utc).isoformat()


class CurationStore:
    """Session-scoped favorites; the one mutable piece of state.

    Mutations are serialized by a lock and rewritten to a single file in
    the session directory, so bookmarks survive restarts.
    """

    def __init__(self, rset: RashomonSet, session_dir: str | Path | None = None):
        self._rset = rset
        self._records: dict[int, CurationRecord] = {}
        self._lock = threading.Lock()
        self._path: Path | None = None
        if session_dir is not None:
            session = Path(session_dir)
            session.mkdir(parents=True, exist_ok=True)
            self._path = session / STORE_FILENAME
            if self._path.exists():
                self._load_existing()

    def _load_existing(self):
        assert self._path is not None
        saved = _file_from_document(json.loads(self._path.read_text(encoding="utf-8")))
        if saved.dataset_hash != self._rset.dataset_hash:
            log.warning(
                "favorites file %s was written for dataset %s, current set is %s; loading anyway",
                self._path,
                saved.dataset_hash[:12],
                self._rset.dataset_hash[:12],
            )
        for rec in saved.records:
            self._records[rec.tree_id] = rec

    def _persist_locked(self):
        if self._path is None:
            return
        doc = self._snapshot_file_locked().to_document()
        self._path.write_text(
            json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    def _snapshot_file_locked(self) -> CurationFile:
        cfg = self._rset.config
        return CurationFile(
            dataset_hash=self._rset.dataset_hash,
            config={"lambda": cfg.lam, "epsilon": cfg.epsilon, "depth_cap": cfg.depth_cap},
            num_features=len(self._rset.conditions),
            records=tuple(
                sorted(self._records.values(), key=lambda r: (r.created_at, r.tree_id))
            ),
        )

    @property
    def rashomon_set(self) -> RashomonSet:
        return self._rset

    def __len__(self) -> int:
        return len(self._records)


def bookmark(store: CurationStore, tree_id: int, comment: str = "") -> CurationRecord:
    """Add or update a favorite; re-bookmarking only replaces the comment."""
    member = store.rashomon_set.member(tree_id)
    if member is None:
        raise UnknownTreeId(f"tree {tree_id} is not in the loaded set")
    with store._lock:
        existing = store._records.get(tree_id)
        record = CurationRecord(
            tree_id=tree_id,
            comment=comment,
            created_at=existing.created_at if existing else _now_rfc3339(),
            tree_snapshot=node_to_dict(member.tree.root),
            metrics_snapshot=metrics_to_dict(member.metrics),
        )
        store._records[tree_id] = record
        store._persist_locked()
    return record


def unbookmark(store: CurationStore, tree_id: int):
    with store._lock:
        if tree_id not in store._records:
            raise UnknownTreeId(f"tree {tree_id} is not bookmarked")
        del store._records[tree_id]
        store._persist_locked()


def list_bookmarks(store: CurationStore) -> list[CurationRecord]:
    """Records in creation order."""
    with store._lock:
        return sorted(store._records.values(), key=lambda r: (r.created_at, r.tree_id))


def curation_file(store: CurationStore) -> CurationFile:
    with store._lock:
        return store._snapshot_file_locked()


def curation_bytes(cfile: CurationFile) -> bytes:
    blob = json.dumps(cfile.to_document(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (blob + "\n").encode("utf-8")


def export_curation(store: CurationStore, path: str | Path) -> CurationFile:
    """Write all favorites to a self-contained, versioned file."""
    if len(store) == 0:
        raise EmptyStoreError("no bookmarked trees to export")
    cfile = curation_file(store)
    Path(path).write_bytes(curation_bytes(cfile))
    return cfile


def import_curation(path: str | Path) -> CurationFile:
    return _file_from_document(json.loads(Path(path).read_text(encoding="utf-8")))


def load_and_predict(cfile: CurationFile, tree_id: int, samples: Sequence[Sequence[int]]) -> list[int]:
    """Deploy a saved tree: predictions match the original tree exactly."""
    record = cfile.record(tree_id)
    if record is None:
        raise UnknownTreeId(f"tree {tree_id} is not in the curation file")
    tree = DecisionTree(id=tree_id, root=node_from_dict(record.tree_snapshot))
    return [predict(tree, sample, n_features=cfile.num_features) for sample in samples]
