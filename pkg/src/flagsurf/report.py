"""Reports: JSON-serializable summaries of describe / analyze / census runs.

Rationals are written as ``"a/b"`` strings (``"3"`` when integral) and
integer invariants as JSON integers; nothing is ever a float.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import jsonschema

from .ci_analyzer import CIProblem, GeneratorOutcome, Verdict
from .descendants import DescendantRecord, builtin_descendant_table
from .flagvariety import FlagVariety, fiber_flag, normal_degree, poincare_polynomial
from .moricone import classify, ruling_contraction

__all__ = [
    "REPORT_SCHEMA",
    "Report",
    "analyze_report",
    "census_csv",
    "census_row",
    "describe_report",
    "rat",
    "render_table",
    "validate_report",
]

_RAT = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_OPT_RAT = {"anyOf": [_RAT, {"type": "null"}]}
_OPT_INT = {"type": ["integer", "null"]}
_RECORD = {
    "anyOf": [
        {"type": "null"},
        {
            "type": "object",
            "required": ["m", "f", "s", "q"],
            "properties": {"m": {"type": "integer"}, "f": {"type": "integer"}, "s": _OPT_INT, "q": _OPT_RAT},
            "additionalProperties": False,
        },
    ]
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "kind", "input_digest", "subject", "classes", "overall", "timing_ns", "rows"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "array", "items": {"type": "string"}},
        "kind": {"enum": ["describe", "analyze", "census"]},
        "input_digest": {"type": ["string", "null"]},
        "subject": {"type": "object"},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["generator", "kind", "m", "pseudo_index"],
                "properties": {
                    "generator": {"type": "integer"},
                    "kind": {"enum": ["ruling", "two-free", "exceptional"]},
                    "m": {"type": "integer"},
                    "pseudo_index": {"type": "integer"},
                    "f": _OPT_INT,
                    "s": _OPT_INT,
                    "q": _OPT_RAT,
                    "status": {"enum": ["ruling", "two-free-satisfied", "fails", "unknown"]},
                    "case": {"enum": ["i", "ii", None]},
                    "m_rel": {"type": "integer"},
                    "f_rel": {"type": "integer"},
                    "q_rel": _RAT,
                    "s_rel": _OPT_RAT,
                    "margin": {"type": "integer"},
                    "induced": _RECORD,
                },
            },
        },
        "overall": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["verdict", "exit_code", "reason"],
                    "properties": {
                        "verdict": {"enum": ["covered", "not-determined-by-criterion", "invalid-setup"]},
                        "exit_code": {"enum": [0, 2, 3, 4]},
                        "reason": {"type": "string"},
                    },
                },
            ]
        },
        "timing_ns": {"type": "integer", "minimum": 0},
        "rows": {"type": "array", "items": {"type": "object"}},
    },
}


def rat(x) -> str | None:
    return None if x is None else str(Fraction(x))


def _record(rec: DescendantRecord | None) -> dict | None:
    if rec is None:
        return None
    return {"m": rec.m, "f": rec.f, "s": rec.s, "q": rat(rec.q)}


@dataclass
class Report:
    command: list[str]
    kind: str
    subject: dict
    classes: list[dict] = field(default_factory=list)
    overall: dict | None = None
    input_digest: str | None = None
    timing_ns: int = 0
    rows: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Report":
        validate_report(data)
        return cls(**json.loads(json.dumps(dict(data))))

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @property
    def exit_code(self) -> int:
        return 0 if self.overall is None else self.overall["exit_code"]


def validate_report(data: Mapping[str, Any]) -> None:
    jsonschema.validate(data, REPORT_SCHEMA)


def _flag_subject(flag: FlagVariety) -> dict:
    target, kernel = ruling_contraction(flag)
    return {
        "flag": flag.spec,
        "cartan_type": str(flag.cartan_type),
        "levi_subset": sorted(flag.levi_subset),
        "delta_p": list(flag.delta_p),
        "dimension": flag.dimension,
        "picard_rank": flag.picard_rank,
        "poincare_polynomial": list(poincare_polynomial(flag)),
        "ruling_contraction": {"target": str(target), "kernel": sorted(kernel)},
    }


def describe_report(flag: FlagVariety, records: Mapping[int, DescendantRecord] | None = None,
                    command: Sequence[str] = ()) -> Report:
    kinds = classify(flag)
    records = dict(builtin_descendant_table(flag)) if records is None else dict(records)
    classes = []
    for i in flag.delta_p:
        m = normal_degree(flag, i)
        rec = records.get(i)
        classes.append({
            "generator": i,
            "kind": kinds[i].value,
            "m": m,
            "pseudo_index": m + 2,
            "fiber_flag": fiber_flag(flag, i).spec,
            "f": None if rec is None else rec.f,
            "s": None if rec is None else rec.s,
            "q": None if rec is None else rat(rec.q),
        })
    return Report(list(command), "describe", _flag_subject(flag), classes)


def _outcome_dict(o: GeneratorOutcome) -> dict:
    amb = o.ambient
    return {
        "generator": o.generator,
        "kind": o.kind.value,
        "m": o.m_ambient,
        "pseudo_index": o.m_ambient + 2,
        "f": None if amb is None else amb.f,
        "s": None if amb is None else amb.s,
        "q": None if amb is None else rat(amb.q),
        "status": o.status.value,
        "case": o.in_case,
        "reason": o.reason,
        "m_rel": o.relative.m_rel,
        "f_rel": o.relative.f_rel,
        "q_rel": rat(o.relative.q_rel),
        "s_rel": rat(o.relative.s_rel),
        "margin": o.m_ambient - o.relative.m_rel,
        "induced": _record(o.induced),
    }


def _overall(v: Verdict) -> dict:
    return {
        "verdict": v.overall.value,
        "exit_code": v.exit_code,
        "reason": v.reason,
        "relevant": sorted(v.relevant),
    }


def analyze_report(p: CIProblem, v: Verdict, digest: str | None = None, command: Sequence[str] = ()) -> Report:
    subject = _flag_subject(p.ambient)
    target, _ = ruling_contraction(p.ambient)
    subject.update({
        "hypersurfaces": [[int(c) if Fraction(c).denominator == 1 else rat(c) for c in h.coefficients]
                          for h in p.hypersurfaces],
        "codimension": p.codimension,
        "dimension_X": p.ambient.dimension - p.codimension,
        "dimension_X_prime": target.dimension - p.codimension,
        "mode": v.mode.value,
        "weights": None if v.weights is None else [rat(w) for w in v.weights],
        "weights_note": "at the all-ones Kaehler form" if v.weights_defaulted else None,
    })
    return Report(list(command), "analyze", subject, [_outcome_dict(o) for o in v.outcomes],
                  _overall(v), digest)


def census_row(degrees: Sequence[Sequence[int]], v: Verdict) -> dict:
    return {
        "hypersurfaces": [list(d) for d in degrees],
        "codimension": len(degrees),
        "verdict": v.overall.value,
        "exit_code": v.exit_code,
        "reason": v.reason,
        "classes": [
            {
                "generator": o.generator,
                "status": o.status.value,
                "m_rel": o.relative.m_rel,
                "s_rel": rat(o.relative.s_rel),
                "induced": _record(o.induced),
            }
            for o in v.outcomes
        ],
    }


def _fmt_degrees(degrees: Iterable[Sequence[int]]) -> str:
    return ";".join("(" + ",".join(str(c) for c in d) + ")" for d in degrees)


def census_csv(rows: Iterable[dict], generators: Sequence[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["hypersurfaces", "codimension", "verdict", "exit_code"]
    for i in generators:
        header += [f"status_{i}", f"m_rel_{i}", f"s_rel_{i}", f"m_X_{i}", f"f_X_{i}", f"s_X_{i}", f"q_X_{i}"]
    w.writerow(header)
    for row in rows:
        line = [_fmt_degrees(row["hypersurfaces"]), row["codimension"], row["verdict"], row["exit_code"]]
        by_gen = {c["generator"]: c for c in row["classes"]}
        for i in generators:
            c = by_gen.get(i)
            if c is None:
                line += [""] * 7
                continue
            ind = c["induced"] or {}
            line += [c["status"], c["m_rel"], c["s_rel"] or "", ind.get("m", ""), ind.get("f", ""),
                     "" if ind.get("s") is None else ind["s"], ind.get("q") or ""]
        w.writerow(line)
    return buf.getvalue()


def _cell(x) -> str:
    return "-" if x is None else str(x)


def _columns(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(headers)] + [[_cell(x) for x in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    return "\n".join(lines)


def render_table(report: Report) -> str:
    """Human-readable rendering of a describe or analyze report."""
    s = report.subject
    out = [
        f"{s['flag']}  (type {s['cartan_type']}, Levi {{{','.join(map(str, s['levi_subset']))}}})",
        f"dimension {s['dimension']}, Picard rank {s['picard_rank']}",
        "Betti numbers " + " ".join(str(b) for b in s["poincare_polynomial"]),
        f"ruling contraction -> {s['ruling_contraction']['target']}"
        f" (contracting {s['ruling_contraction']['kernel'] or 'nothing'})",
    ]
    if report.kind == "describe":
        rows = [[c["generator"], c["kind"], c["m"], c["pseudo_index"], c["f"], c["s"], c["q"], c["fiber_flag"]]
                for c in report.classes]
        out += ["", _columns(["beta", "kind", "m", "index", "f", "s", "q", "fiber"], rows)]
    elif report.kind == "analyze":
        out.append(f"hypersurfaces {_fmt_degrees(s['hypersurfaces']) or 'none'}, mode {s['mode']}"
                   + (f", weights {','.join(s['weights'])}" if s["weights"] else "")
                   + (f" ({s['weights_note']})" if s["weights_note"] else ""))
        rows = []
        for c in report.classes:
            ind = c["induced"] or {}
            rows.append([c["generator"], c["kind"], c["m"], c["f"], c["s"], c["m_rel"], c["f_rel"], c["q_rel"],
                         c["s_rel"], ind.get("m"), ind.get("f"), ind.get("s"), ind.get("q"), c["status"]])
        out += ["", _columns(["beta", "kind", "m(Y)", "f(Y)", "s(Y)", "m_rel", "f_rel", "q_rel", "s_rel",
                              "m(X)", "f(X)", "s(X)", "q(X)", "status"], rows)]
        out += [f"  beta_{c['generator']}: {c['reason']}" for c in report.classes]
    if report.overall is not None:
        out += ["", f"verdict: {report.overall['verdict']} ({report.overall['reason']})"]
    return "\n".join(out)
