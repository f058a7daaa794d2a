"""Census rows and the CSV / JSON / text encodings used by the CLI.

Integers are written to JSON as decimal strings so large counts survive
consumers that parse numbers as doubles.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Union

from .counting import CoverCountReport
from .oracle import VerifyResult

CSV_HEADER = ["g", "m", "n", "T", "N_cyclic", "C_total", "verified"]

# True / False after a full check, "kernel-verified" when enumeration was over
# budget but formula and kernel agreed, "skipped" when nothing was checked.
Verified = Union[bool, str]


@dataclass(frozen=True)
class CensusRow:
    g: int
    m: int
    n: int
    T: int
    N_cyclic: int
    C_total: int
    verified: Verified = "skipped"

    @classmethod
    def from_report(cls, report: CoverCountReport, verified: Verified = "skipped") -> CensusRow:
        return cls(report.g, report.m, report.n, report.T, report.N_cyclic, report.C_total, verified)


def verified_status(result: VerifyResult) -> Verified:
    if not result.match:
        return False
    return True if result.enumeration is not None else "kernel-verified"


def _verified_text(v: Verified) -> str:
    return ("true" if v else "false") if isinstance(v, bool) else v


def _verified_parse(s: str) -> Verified:
    return {"true": True, "false": False}.get(s, s)


def rows_to_csv(rows: Iterable[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.g, r.m, r.n, r.T, r.N_cyclic, r.C_total, _verified_text(r.verified)])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[CensusRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [CensusRow(*(int(x) for x in rec[:6]), _verified_parse(rec[6])) for rec in reader if rec]


def row_to_dict(r: CensusRow) -> dict:
    out = {k: str(getattr(r, k)) for k in CSV_HEADER[:6]}
    out["verified"] = r.verified
    return out


def rows_to_json(rows: Iterable[CensusRow]) -> str:
    return json.dumps({"rows": [row_to_dict(r) for r in rows]}, indent=2) + "\n"


def rows_from_json(text: str) -> list[CensusRow]:
    data = json.loads(text)
    return [CensusRow(*(int(d[k]) for k in CSV_HEADER[:6]), d["verified"]) for d in data["rows"]]


def count_report_dict(report: CoverCountReport, result: VerifyResult | None = None) -> dict:
    if result is None:
        verification = {"method": "none", "match": None, "oracle_value": None}
    else:
        verification = {
            "method": result.method,
            "match": result.match,
            "oracle_value": str(result.kernel.direction_count if result.enumeration is None
                                else result.enumeration.direction_count),
        }
    return {
        "params": {"g": str(report.g), "m": str(report.m), "n": str(report.n)},
        "counts": {"T": str(report.T), "N_cyclic": str(report.N_cyclic), "C_total": str(report.C_total)},
        "per_prime": [{"p": str(b.p), "e": str(b.e), "lf_count": str(b.lf_count),
                       "pev_count": str(b.pev_count)} for b in report.per_prime],
        "verification": verification,
    }


def count_report_text(report: CoverCountReport) -> str:
    lines = [
        f"g={report.g} m={report.m} n={report.n}",
        f"T={report.T}",
        f"N={report.N_cyclic}",
        f"C={report.C_total}",
        "per prime: p e lf_count pev_count",
    ]
    lines += [f"  {b.p} {b.e} {b.lf_count} {b.pev_count}" for b in report.per_prime]
    return "\n".join(lines) + "\n"
