"""JSON-lines records, exact-rational encoding and the result cache."""

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from .. import __version__
from ..cyclo import INF, CycNum
from ..polygon import NewtonPolygon, SlopeMultiset, slopes


def rat(x):
    """Exact rational as "num/den" (integers stay integers)."""
    if x is INF:
        return "inf"
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def polygon_json(np_):
    return {
        "vertices": [[rat(x), rat(y)] for x, y in np_.vertices],
        "slopes": slopes_json(slopes(np_)),
        "degenerate": bool(np_.degenerate),
    }


def slopes_json(ms):
    return [[rat(s), rat(m)] for s, m in ms.items]


def cyc_json(a):
    return [rat(c) for c in a.coords]


def encode(obj):
    """Recursively convert library values into JSON-ready data."""
    if isinstance(obj, NewtonPolygon):
        return polygon_json(obj)
    if isinstance(obj, SlopeMultiset):
        return slopes_json(obj)
    if isinstance(obj, CycNum):
        return cyc_json(obj)
    if isinstance(obj, Fraction) or obj is INF:
        return rat(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return str(obj)


def canonical(obj):
    return json.dumps(encode(obj), sort_keys=True, separators=(",", ":"))


def cache_key(kind, params):
    blob = canonical({"kind": kind, "params": params, "version": __version__})
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class ExperimentRecord:
    kind: str
    params: dict
    result: dict
    ok: bool = True
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def payload(self):
        """Everything except the timestamp (the part that must be reproducible)."""
        return {"kind": self.kind, "params": encode(self.params), "result": encode(self.result),
                "ok": self.ok, "version": self.version}

    def to_json(self):
        body = self.payload()
        body["timestamp"] = self.timestamp
        return json.dumps(body, sort_keys=True)


def default_cache_dir():
    return Path(os.environ.get("ASNP_CACHE_DIR", Path.home() / ".cache" / "asnp"))


class ResultCache:
    """Append-only JSON-lines store keyed by a hash of (kind, params).

    Writes go through one lock so concurrent producers never interleave lines.
    """

    def __init__(self, directory=None):
        self.path = Path(directory or default_cache_dir()) / "records.jsonl"
        self._lock = threading.Lock()
        self._index = None

    def _load(self):
        if self._index is None:
            self._index = {}
            if self.path.exists():
                with self.path.open() as fh:
                    for line in fh:
                        line = line.strip()
                        if line:
                            row = json.loads(line)
                            self._index[row["key"]] = row["payload"]
        return self._index

    def get(self, kind, params):
        return self._load().get(cache_key(kind, params))

    def put(self, record):
        key = cache_key(record.kind, record.params)
        payload = record.payload()
        with self._lock:
            self._load()[key] = payload
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps({"key": key, "payload": payload}, sort_keys=True) + "\n")
