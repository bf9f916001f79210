"""On-disk corpus directories.

Layout::

    <dir>/corpus.json     all records, format_version header
    <dir>/index.json      sidecar token-index summary, rebuilt on load
    <dir>/sets/<name>.json  saved record sets (name, query, sorted ids)
    <dir>/.lock           advisory writer lock

The corpus JSON is the source of truth; the sidecar exists for human
inspection and cheap consistency checks, the real indexes are rebuilt
deterministically on load. Many readers may share a directory, only one
writer may hold the lock.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path

from .corpus import Corpus, RecordSet
from .records import CitingRecord

FORMAT_VERSION = 1

_SET_NAME_RE = re.compile(r"^#?[A-Za-z0-9_-]+$")


class StoreError(RuntimeError):
    pass


class VersionError(StoreError):
    """The file on disk does not carry the expected format_version."""


class LockError(StoreError):
    """Another writer holds the corpus directory."""


def _set_path(directory: Path, name: str) -> Path:
    if not _SET_NAME_RE.match(name):
        raise StoreError(f"invalid set name {name!r}")
    return directory / "sets" / f"{name.lstrip('#')}.json"


class CorpusLock:
    """Advisory single-writer lock on a corpus directory."""

    def __init__(self, directory: str | Path):
        self.path = Path(directory) / ".lock"
        self._fd: int | None = None

    def acquire(self) -> "CorpusLock":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        try:
            self._fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise LockError(f"corpus directory is locked by another writer: {self.path}")
        os.write(self._fd, str(os.getpid()).encode())
        return self

    def release(self) -> None:
        if self._fd is not None:
            os.close(self._fd)
            self._fd = None
        try:
            self.path.unlink()
        except FileNotFoundError:
            pass

    def __enter__(self) -> "CorpusLock":
        return self.acquire()

    def __exit__(self, *exc) -> None:
        self.release()


def save_corpus(corpus: Corpus, directory: str | Path) -> None:
    directory = Path(directory)
    with CorpusLock(directory):
        payload = {
            "format_version": FORMAT_VERSION,
            "records": [rec.to_json() for rec in corpus.records],
        }
        (directory / "corpus.json").write_text(json.dumps(payload, indent=1, sort_keys=True), encoding="utf-8")
        # sidecar: per-domain token counts, purely informational
        index = {
            "format_version": FORMAT_VERSION,
            "record_count": len(corpus),
            "vocabulary": {domain: len(corpus._vocab[domain]) for domain in ("TITLE", "TOPIC")},
        }
        (directory / "index.json").write_text(json.dumps(index, indent=1, sort_keys=True), encoding="utf-8")
        (directory / "sets").mkdir(exist_ok=True)


def load_corpus(directory: str | Path) -> Corpus:
    path = Path(directory) / "corpus.json"
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise StoreError(f"no corpus at {path}")
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise VersionError(f"{path} is not a corpus file (unreadable JSON: {exc})")
    if not isinstance(payload, dict) or payload.get("format_version") != FORMAT_VERSION:
        found = payload.get("format_version") if isinstance(payload, dict) else None
        raise VersionError(f"{path}: expected format_version {FORMAT_VERSION}, found {found!r}")
    return Corpus(CitingRecord.from_json(item) for item in payload["records"])


def save_set(record_set: RecordSet, directory: str | Path) -> Path:
    directory = Path(directory)
    path = _set_path(directory, record_set.name)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"format_version": FORMAT_VERSION, **record_set.to_json()}
    path.write_text(json.dumps(doc, indent=1, sort_keys=True), encoding="utf-8")
    return path


def load_set(directory: str | Path, name: str) -> RecordSet:
    path = _set_path(Path(directory), name)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise StoreError(f"no saved set {name!r} in {directory}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise VersionError(f"{path}: expected format_version {FORMAT_VERSION}, found {doc.get('format_version')!r}")
    return RecordSet.from_json(doc)


def list_sets(directory: str | Path) -> list[str]:
    sets_dir = Path(directory) / "sets"
    if not sets_dir.is_dir():
        return []
    return sorted(p.stem for p in sets_dir.glob("*.json"))
