"""Verification certificates and their serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

STATUSES = ("PASS", "ZERO", "INCONCLUSIVE", "FAIL", "EXPERIMENT")

TIMING_FIELDS = ("elapsed_ms",)


@dataclass
class Certificate:
    item: str
    anchor: str  # the identity being checked, written out
    status: str
    elapsed_ms: float = 0.0
    degree: int | None = None
    word_space: int | None = None
    span_size: int | None = None
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status}")

    @property
    def ok(self) -> bool:
        return self.status in ("PASS", "ZERO")

    @property
    def asserted(self) -> bool:
        return self.status != "EXPERIMENT"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["payload"] = {k: _jsonable(v) for k, v in sorted(self.payload.items())}
        d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if hasattr(v, "numerator") and hasattr(v, "denominator") and not isinstance(v, (int, bool)):
        return str(Fraction(int(v.numerator), int(v.denominator)))
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def exit_code(certs) -> int:
    return 0 if all(c.ok for c in certs if c.asserted) else 1


def dump(certs, fmt: str) -> str:
    certs = sorted(certs, key=lambda c: c.item)
    if fmt == "json":
        return json.dumps([c.to_dict() for c in certs], indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["item", "status", "degree", "word_space", "span_size", "elapsed_ms", "anchor", "payload"]
        w = csv.writer(buf)
        w.writerow(cols)
        for c in certs:
            d = c.to_dict()
            d["payload"] = json.dumps(d["payload"], sort_keys=True)
            w.writerow([d[k] for k in cols])
        return buf.getvalue()
    lines = []
    for c in certs:
        extra = ""
        if c.degree is not None:
            extra += f" D={c.degree}"
        if c.payload:
            extra += " " + " ".join(f"{k}={_jsonable(v)}" for k, v in sorted(c.payload.items()))
        lines.append(f"{c.status:12s} {c.item}  [{c.elapsed_ms:.0f} ms]{extra}")
    return "\n".join(lines)
