"""JSON form of codes and reports.

Lengths are {"num", "den"} pairs, never floats.  Indices are 0-based.
"""

from __future__ import annotations

import json

from .errors import UsageError
from .gf import FieldSpec
from .linalg import Matrix
from .model import DecentralizedCode, ProblemInstance, Schedule, length_from_json, length_to_json
from .verify import VerificationReport, validate


def code_to_json(code: DecentralizedCode, report: VerificationReport | None = None) -> dict:
    out = {
        "instance": code.instance.to_json(),
        "field": code.field.to_json(),
        "beta": code.beta,
        "scheme": code.scheme,
        "generator": [list(r) for r in code.generator.to_rows()],
        "schedule": [{"row": r, "user": u} for r, u in code.schedule.rows],
        "knowledge_mode": code.knowledge_mode,
        "length": length_to_json(code.length),
    }
    if report is not None:
        out["report"] = report.to_json()
    return out


def code_from_json(d: dict) -> DecentralizedCode:
    try:
        instance = ProblemInstance.from_json(d["instance"])
        field = FieldSpec.from_json(d["field"])
        beta = int(d["beta"])
        rows = d["generator"]
        sched = sorted(d["schedule"], key=lambda e: e["row"])
        if [e["row"] for e in sched] != list(range(len(sched))):
            raise UsageError("schedule rows must be 0..rows-1, each exactly once")
        schedule = Schedule(tuple(e["user"] for e in sched), d.get("knowledge_mode", "static"))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed code JSON: {exc!r}") from None
    G = Matrix.from_rows(rows, field, instance.m * beta)
    code = DecentralizedCode(instance, beta, G, schedule, field, d.get("scheme", ""))
    if "length" in d and length_from_json(d["length"]) != code.length:
        raise UsageError("stored length disagrees with generator rows / beta")
    return code


def dumps(obj: dict) -> str:
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_code(code: DecentralizedCode, path, with_report: bool = True) -> str:
    text = dumps(code_to_json(code, validate(code) if with_report else None))
    if path in (None, "-"):
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


def read_code(path) -> tuple[DecentralizedCode, VerificationReport | None]:
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    embedded = VerificationReport.from_json(d["report"]) if "report" in d else None
    return code_from_json(d), embedded
