"""Problem instances, users, schedules and decentralized codes.

Messages and users are 0-based.  Users of a complete-S instance are listed
by (side-information size, sorted subset); a user's id is its position in
that list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import UsageError
from .gf import FieldSpec
from .linalg import Matrix

CONSECUTIVE = "consecutive"
COMPLEMENT = "complement_consecutive"
OTHER = "other"

STATIC = "static"
SEQUENTIAL = "sequential"
KNOWLEDGE_MODES = (STATIC, SEQUENTIAL)

# Exact code lengths are Fractions; this alias names the role.
RationalLength = Fraction


def length_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def length_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def _check_sizes(m: int, t: int, S) -> tuple[int, ...]:
    if m < 1:
        raise UsageError(f"need at least one message, got m={m}")
    if t < 1:
        raise UsageError(f"pliability t must be >= 1, got {t}")
    if t > m:
        raise UsageError(f"t={t} exceeds m={m}")
    S = tuple(sorted(set(int(s) for s in S)))
    if not S:
        raise UsageError("S must be nonempty")
    if S == (0,):
        raise UsageError("S={0} is unsolvable: no user knows any message")
    bad = [s for s in S if not 0 <= s <= m - t]
    if bad:
        raise UsageError(f"side-information sizes {bad} outside [0, m-t] = [0, {m - t}]")
    return S


def classify(m: int, t: int, S) -> tuple[str, int | None, int | None]:
    """Return ``(kind, smin, smax)``.

    For a consecutive S the pair bounds S itself; for complement-consecutive
    it bounds the interval removed from [0, m-t]; for other S both are None.
    """
    S = _check_sizes(m, t, S)
    lo, hi = S[0], S[-1]
    if S == tuple(range(lo, hi + 1)):
        return CONSECUTIVE, lo, hi
    top = m - t
    if lo == 0 and hi == top:
        missing = [s for s in range(top + 1) if s not in S]
        a, b = missing[0], missing[-1]
        if missing == list(range(a, b + 1)) and 0 < a <= b < top:
            return COMPLEMENT, a, b
    return OTHER, None, None


@dataclass(frozen=True)
class ProblemInstance:
    m: int
    t: int
    S: tuple[int, ...]
    kind: str = field(init=False)
    smin: int | None = field(init=False)
    smax: int | None = field(init=False)

    def __post_init__(self):
        S = _check_sizes(self.m, self.t, self.S)
        object.__setattr__(self, "S", S)
        kind, lo, hi = classify(self.m, self.t, S)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "smin", lo)
        object.__setattr__(self, "smax", hi)
        union = set()
        users = enumerate_users(self)
        for u in users:
            union |= u.side_info
        for u in users:
            if not union > u.side_info:
                raise UsageError(f"user {u.id} can learn nothing from other users")

    @classmethod
    def consecutive(cls, m: int, t: int, smin: int, smax: int) -> ProblemInstance:
        if not 0 <= smin <= smax:
            raise UsageError(f"need 0 <= smin <= smax, got smin={smin}, smax={smax}")
        return cls(m, t, tuple(range(smin, smax + 1)))

    @classmethod
    def complement(cls, m: int, t: int, smin: int, smax: int) -> ProblemInstance:
        if not 0 < smin <= smax < m - t:
            raise UsageError(
                f"complement-consecutive needs 0 < smin <= smax < m-t, got smin={smin}, smax={smax}"
            )
        return cls(m, t, tuple(s for s in range(m - t + 1) if not smin <= s <= smax))

    @property
    def n_users(self) -> int:
        return sum(comb(self.m, s) for s in self.S)

    @property
    def users(self) -> tuple[User, ...]:
        return enumerate_users(self)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "t": self.t,
            "S": list(self.S),
            "kind": self.kind,
            "smin": self.smin,
            "smax": self.smax,
        }

    @classmethod
    def from_json(cls, d: dict) -> ProblemInstance:
        inst = cls(int(d["m"]), int(d["t"]), tuple(d["S"]))
        if "kind" in d and d["kind"] != inst.kind:
            raise UsageError(f"instance kind {d['kind']!r} disagrees with S (is {inst.kind!r})")
        return inst

    def __str__(self):
        return f"m={self.m} t={self.t} S={{{','.join(map(str, self.S))}}}"


@dataclass(frozen=True)
class User:
    id: int
    side_info: frozenset[int]

    @property
    def mask(self) -> int:
        return sum(1 << j for j in self.side_info)

    def __str__(self):
        return f"u{self.id}{{{','.join(map(str, sorted(self.side_info)))}}}"


@lru_cache(maxsize=256)
def _users(m: int, S: tuple[int, ...]) -> tuple[User, ...]:
    out = []
    for s in S:
        for A in combinations(range(m), s):
            out.append(User(len(out), frozenset(A)))
    return tuple(out)


def enumerate_users(instance: ProblemInstance) -> tuple[User, ...]:
    """One user per side-information set, ordered by (size, subset)."""
    return _users(instance.m, instance.S)


@dataclass(frozen=True)
class Schedule:
    """Transmitting user of every codeword row, plus the knowledge model."""

    transmitters: tuple[int, ...]
    knowledge_mode: str = STATIC

    def __post_init__(self):
        object.__setattr__(self, "transmitters", tuple(int(u) for u in self.transmitters))
        if self.knowledge_mode not in KNOWLEDGE_MODES:
            raise UsageError(f"unknown knowledge mode {self.knowledge_mode!r}")

    @property
    def rows(self) -> list[tuple[int, int]]:
        return list(enumerate(self.transmitters))

    def rows_per_user(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for u in self.transmitters:
            out[u] = out.get(u, 0) + 1
        return out


@dataclass(frozen=True)
class DecentralizedCode:
    """A vector-linear code: row r is sent by ``schedule.transmitters[r]``.

    Column ``j * beta + k`` of the generator carries sub-message k of
    message j.
    """

    instance: ProblemInstance
    beta: int
    generator: Matrix
    schedule: Schedule
    field: FieldSpec
    scheme: str = ""

    def __post_init__(self):
        if self.beta < 1:
            raise UsageError(f"split factor beta must be >= 1, got {self.beta}")
        if self.generator.cols != self.instance.m * self.beta:
            raise UsageError(
                f"generator has {self.generator.cols} columns, expected m*beta = "
                f"{self.instance.m * self.beta}"
            )
        if self.generator.field != self.field:
            raise UsageError("generator field differs from code field")
        if len(self.schedule.transmitters) != self.generator.rows:
            raise UsageError(
                f"schedule covers {len(self.schedule.transmitters)} rows, generator has "
                f"{self.generator.rows}"
            )
        n = self.instance.n_users
        for r, u in self.schedule.rows:
            if not 0 <= u < n:
                raise UsageError(f"row {r} assigned to unknown user {u}")

    @property
    def length(self) -> Fraction:
        return Fraction(self.generator.rows, self.beta)

    @property
    def knowledge_mode(self) -> str:
        return self.schedule.knowledge_mode

    def message_columns(self, messages) -> list[int]:
        b = self.beta
        return [j * b + k for j in sorted(messages) for k in range(b)]

    def row_messages(self, r: int) -> set[int]:
        """Messages with a nonzero coefficient in row ``r``."""
        return {j // self.beta for j in self.generator.support(r)}
