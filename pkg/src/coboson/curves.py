"""Ordered sample sets and their CSV/JSON serialization.

A CurveSet is the unit of CLI output: named series of (abscissa, value)
rows plus run metadata.  CSV output carries only the fixed-schema data
rows, formatted at 12 significant digits in a fixed order, so identical
requests produce byte-identical files; metadata (command echo, versions,
tolerances, timestamp, notes) travels in the JSON format instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

CSV_HEADER = "series,x,kind,N,estimator,abscissa,value,raw_value,flags"

FLAG_CLAMPED = "clamped"
FLAG_VALIDITY = "validity-warning"
FLAG_CUTOFF = "cutoff-flag"
_KNOWN_FLAGS = (FLAG_CLAMPED, FLAG_VALIDITY, FLAG_CUTOFF)


def _fmt(value):
    return f"{value:.12g}"


@dataclass(frozen=True)
class CurveRow:
    series: str
    x: float
    kind: str
    n: int
    estimator: str
    abscissa: float
    value: float
    raw_value: float
    flags: tuple = ()

    def __post_init__(self):
        for flag in self.flags:
            if flag not in _KNOWN_FLAGS:
                raise ValueError(f"unknown flag {flag!r}")

    def to_csv(self):
        return ",".join([
            self.series, _fmt(self.x), self.kind, str(self.n), self.estimator,
            _fmt(self.abscissa), _fmt(self.value), _fmt(self.raw_value),
            "|".join(self.flags),
        ])


@dataclass
class CurveSet:
    metadata: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    def add(self, **kwargs):
        self.rows.append(CurveRow(**kwargs))

    def sort(self):
        self.rows.sort(key=lambda r: (r.series, r.abscissa))

    def to_csv(self):
        lines = [CSV_HEADER]
        lines.extend(row.to_csv() for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self):
        payload = {
            "metadata": self.metadata,
            "rows": [
                {
                    "series": r.series, "x": r.x, "kind": r.kind, "N": r.n,
                    "estimator": r.estimator, "abscissa": r.abscissa,
                    "value": r.value, "raw_value": r.raw_value,
                    "flags": list(r.flags),
                }
                for r in self.rows
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, path, fmt="csv"):
        text = self.to_csv() if fmt == "csv" else self.to_json()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
