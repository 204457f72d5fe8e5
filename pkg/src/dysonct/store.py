"""JSON persistence of certified closed forms.

The store file is a versioned, human-inspectable archive: one entry per
(n, b) with the canonical serialized rational function, how the entry was
obtained (guessed / permuted / reduced / base), and the full certificate
tree.  Saving is deterministic (sorted entries, sorted keys), so re-saving a
loaded store reproduces the file byte for byte; writes go through a lock
file so concurrent commands cannot interleave.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .conjecture import ClosedForm

SCHEMA_VERSION = 1
DEFAULT_STORE = "dyson-store.json"
STORE_ENV = "DYSON_STORE"


class StoreIOError(Exception):
    """Raised for lock or file-system failures around the store."""


@dataclass
class StoreEntry:
    n: int
    b: Tuple[int, ...]
    form: ClosedForm
    provenance: dict
    certificate: dict

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b": list(self.b),
            "R": self.form.R.to_json(),
            "provenance": self.provenance,
            "certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, data: dict) -> "StoreEntry":
        form = ClosedForm.from_json({"n": data["n"], "b": data["b"], "R": data["R"]})
        return cls(
            n=data["n"],
            b=tuple(data["b"]),
            form=form,
            provenance=data["provenance"],
            certificate=data["certificate"],
        )


class ResultStore:
    """Mapping from (n, b) to certified entries, persisted as JSON."""

    def __init__(self):
        self.entries: Dict[Tuple[int, Tuple[int, ...]], StoreEntry] = {}

    def __contains__(self, key: Tuple[int, Tuple[int, ...]]) -> bool:
        n, b = key
        return (n, tuple(b)) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, n: int, b) -> Optional[StoreEntry]:
        return self.entries.get((n, tuple(b)))

    def add(self, entry: StoreEntry) -> None:
        self.entries[(entry.n, entry.b)] = entry

    def __iter__(self) -> Iterator[StoreEntry]:
        return iter(self.sorted_entries())

    def sorted_entries(self) -> list[StoreEntry]:
        return [
            self.entries[key]
            for key in sorted(
                self.entries, key=lambda k: (k[0], sum(abs(x) for x in k[1]), k[1])
            )
        ]

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "entries": [e.to_json() for e in self.sorted_entries()],
        }

    def save(self, path: str) -> None:
        payload = json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        with _locked(path):
            try:
                with open(path, "w") as fh:
                    fh.write(payload)
            except OSError as exc:
                raise StoreIOError(f"cannot write store {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str) -> "ResultStore":
        store = cls()
        try:
            with open(path) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            return store
        except (OSError, json.JSONDecodeError) as exc:
            raise StoreIOError(f"cannot read store {path}: {exc}") from exc
        if data.get("version") != SCHEMA_VERSION:
            raise StoreIOError(
                f"store {path} has unsupported version {data.get('version')!r}"
            )
        for raw in data.get("entries", []):
            store.add(StoreEntry.from_json(raw))
        return store


def store_path(explicit: Optional[str] = None) -> str:
    """The CLI's store location: flag, then DYSON_STORE, then ./dyson-store.json."""
    if explicit:
        return explicit
    return os.environ.get(STORE_ENV, DEFAULT_STORE)


class _locked:
    """Exclusive lock around store writes via an O_EXCL lock file."""

    def __init__(self, path: str, timeout: float = 5.0):
        self.lock_path = path + ".lock"
        self.timeout = timeout
        self.fd: Optional[int] = None

    def __enter__(self):
        deadline = time.monotonic() + self.timeout
        while True:
            try:
                self.fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                return self
            except FileExistsError:
                if time.monotonic() > deadline:
                    raise StoreIOError(
                        f"store is locked (stale {self.lock_path}?)"
                    ) from None
                time.sleep(0.05)
            except OSError as exc:
                raise StoreIOError(f"cannot create lock {self.lock_path}: {exc}") from exc

    def __exit__(self, *exc_info):
        if self.fd is not None:
            os.close(self.fd)
            os.unlink(self.lock_path)
        return False
