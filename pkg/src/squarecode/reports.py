"""DistinguisherReport records and their JSON-lines / CSV serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

SCHEMA = 1


@dataclass
class DistinguisherReport:
    family: str
    q: int
    m: int
    n: int
    r: int
    predicted_dim: int
    random_expected_dim: int
    e_used: int
    saturated: bool
    verdict: str
    seed: int | None = None
    measured_dim: int | None = None
    deficiency_D: int | None = None
    dual_dim: int | None = None

    @property
    def distinguishable(self) -> bool:
        return self.verdict == "distinguishable"

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "DistinguisherReport":
        return cls(**json.loads(line))


FIELDS = [f.name for f in fields(DistinguisherReport)]
CSV_HEADER = ["schema"] + FIELDS
_INT_FIELDS = {"q", "m", "n", "r", "predicted_dim", "random_expected_dim", "e_used", "seed", "measured_dim", "deficiency_D", "dual_dim"}


def csv_header_line() -> str:
    return ",".join(CSV_HEADER) + "\n"


def to_csv_row(rep: DistinguisherReport) -> str:
    buf = io.StringIO()
    d = asdict(rep)
    vals = [SCHEMA] + ["" if d[k] is None else (str(d[k]).lower() if isinstance(d[k], bool) else d[k]) for k in FIELDS]
    csv.writer(buf, lineterminator="\n").writerow(vals)
    return buf.getvalue()


def read_csv(text: str) -> list[DistinguisherReport]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        if int(row.pop("schema")) != SCHEMA:
            raise ValueError("unsupported report schema")
        kw = {}
        for k, v in row.items():
            if k == "saturated":
                kw[k] = v == "true"
            elif k in _INT_FIELDS:
                kw[k] = None if v == "" else int(v)
            else:
                kw[k] = v
        out.append(DistinguisherReport(**kw))
    return out


def read_jsonl(text: str) -> list[DistinguisherReport]:
    return [DistinguisherReport.from_json(ln) for ln in text.splitlines() if ln.strip()]
