"""Ground-truth validation of decentralized codes.

A code is valid when every row is computable by its transmitter and every
user, after subtracting its side information, can linearly recover at least
t messages it did not know.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import column_submatrix, solve_for_unit_rows
from .model import SEQUENTIAL, DecentralizedCode, User, length_from_json, length_to_json


@dataclass(frozen=True)
class UserResult:
    user: int
    decodable: frozenset[int]
    satisfied: bool
    desired: tuple[int, ...]


@dataclass(frozen=True)
class ScheduleViolation:
    row: int
    user: int
    missing: tuple[int, ...]  # messages used by the row but unknown to the sender


@dataclass(frozen=True)
class VerificationReport:
    per_user: tuple[UserResult, ...]
    schedule_ok: bool
    violations: tuple[ScheduleViolation, ...]
    length: Fraction
    valid: bool
    knowledge_mode: str = "static"
    unsatisfied: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "schedule_ok": self.schedule_ok,
            "knowledge_mode": self.knowledge_mode,
            "length": length_to_json(self.length),
            "violations": [
                {"row": v.row, "user": v.user, "missing": list(v.missing)} for v in self.violations
            ],
            "per_user": [
                {
                    "user": r.user,
                    "decodable": sorted(r.decodable),
                    "satisfied": r.satisfied,
                    "desired": list(r.desired),
                }
                for r in self.per_user
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> VerificationReport:
        per_user = tuple(
            UserResult(int(r["user"]), frozenset(r["decodable"]), bool(r["satisfied"]), tuple(r["desired"]))
            for r in d["per_user"]
        )
        return cls(
            per_user=per_user,
            schedule_ok=bool(d["schedule_ok"]),
            violations=tuple(
                ScheduleViolation(int(v["row"]), int(v["user"]), tuple(v["missing"]))
                for v in d["violations"]
            ),
            length=length_from_json(d["length"]),
            valid=bool(d["valid"]),
            knowledge_mode=d.get("knowledge_mode", "static"),
            unsatisfied=tuple(r.user for r in per_user if not r.satisfied),
        )


def decodable_messages(code: DecentralizedCode, user: User, upto: int | None = None) -> set[int]:
    """Messages outside the user's side information it can recover.

    Only rows ``< upto`` are used when ``upto`` is given.  Message d is
    recoverable when the unit vector of each of its beta sub-message columns
    lies in the row space of the generator restricted to unknown columns.
    """
    G = code.generator
    if upto is not None and upto < G.rows:
        G = G.row_submatrix(range(upto))
    unknown = [j for j in range(code.instance.m) if j not in user.side_info]
    if G.rows == 0 or not unknown:
        return set()
    cols = code.message_columns(unknown)
    recovered = solve_for_unit_rows(column_submatrix(G, cols))
    b = code.beta
    return {
        j for idx, j in enumerate(unknown) if all(idx * b + k in recovered for k in range(b))
    }


def knowledge_before(code: DecentralizedCode, user: User, row: int) -> set[int]:
    """What ``user`` knows when ``row`` is sent, under the code's knowledge mode."""
    known = set(user.side_info)
    if code.knowledge_mode == SEQUENTIAL:
        known |= decodable_messages(code, user, upto=row)
    return known


def check_schedule(code: DecentralizedCode) -> list[ScheduleViolation]:
    users = code.instance.users
    out = []
    for r, u in code.schedule.rows:
        need = code.row_messages(r)
        missing = need - knowledge_before(code, users[u], r)
        if missing:
            out.append(ScheduleViolation(r, u, tuple(sorted(missing))))
    return out


def validate(code: DecentralizedCode) -> VerificationReport:
    t = code.instance.t
    violations = check_schedule(code)
    per_user = []
    for user in code.instance.users:
        dec = decodable_messages(code, user)
        ok = len(dec) >= t
        desired = tuple(sorted(dec)[:t]) if ok else ()
        per_user.append(UserResult(user.id, frozenset(dec), ok, desired))
    unsatisfied = tuple(r.user for r in per_user if not r.satisfied)
    return VerificationReport(
        per_user=tuple(per_user),
        schedule_ok=not violations,
        violations=tuple(violations),
        length=code.length,
        valid=not violations and not unsatisfied,
        knowledge_mode=code.knowledge_mode,
        unsatisfied=unsatisfied,
    )
