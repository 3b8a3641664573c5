"""Constructions of decentralized codes that meet the closed-form optima.

Regimes for consecutive S = [smin, smax]:

* ``smax + t <= m - smin``: send smax + t messages uncoded.
* ``t < m - smin < smax + t``: sparse MDS code whose rows each touch only
  smax messages, so a single user can compute every row.
* ``smin = smax = m - t``: split every message into beta pieces and let
  every user send a few random combinations of what it knows.

Complement-consecutive S is handled by a two-step sequential scheme or by
concatenating the uncoded and sparse MDS schemes.
"""

from __future__ import annotations

import logging
import os
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd

from .errors import ConstructionError, UsageError
from .gf import FieldSpec
from .linalg import Matrix, column_submatrix, find_singular_square_submatrix
from .model import (
    COMPLEMENT,
    CONSECUTIVE,
    SEQUENTIAL,
    STATIC,
    DecentralizedCode,
    ProblemInstance,
    Schedule,
)
from .theorems import complement_size

log = logging.getLogger(__name__)

DEFAULT_RETRY_BUDGET = 1000


def retry_budget() -> int:
    env = os.environ.get("PICOD_RETRY_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"PICOD_RETRY_BUDGET must be an integer, got {env!r}") from None
        if value < 1:
            raise UsageError("PICOD_RETRY_BUDGET must be positive")
        return value
    return DEFAULT_RETRY_BUDGET


def mds_field_bound(m: int, t: int, smin: int, smax: int) -> int:
    """Field size sufficient for the sparse MDS generator."""
    return m - smin + smax + t - 1


def default_field(instance: ProblemInstance) -> FieldSpec:
    """Smallest binary field of size >= 4 meeting the sufficiency bound.

    Complement-consecutive instances use the bound of their upper user group
    [smax+1, m-t], which also covers the dense t x m block of the two-step
    scheme.
    """
    m, t = instance.m, instance.t
    if instance.kind == CONSECUTIVE:
        bound = mds_field_bound(m, t, instance.smin, instance.smax)
    elif instance.kind == COMPLEMENT:
        bound = mds_field_bound(m, t, instance.smax + 1, m - t)
    else:
        raise UsageError(f"no construction for kind {instance.kind!r}")
    return FieldSpec.of_size_at_least(max(4, bound))


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- zero patterns -----------------------------------------------------------


@dataclass(frozen=True)
class ZeroPattern:
    rows: int
    cols: int
    mask: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, mask) -> ZeroPattern:
        mask = tuple(tuple(int(bool(x)) for x in r) for r in mask)
        cols = len(mask[0]) if mask else 0
        if any(len(r) != cols for r in mask):
            raise UsageError("ragged zero pattern")
        return cls(len(mask), cols, mask)

    def zeros(self, i: int) -> frozenset[int]:
        return frozenset(j for j, z in enumerate(self.mask[i]) if not z)

    def ones(self, i: int) -> frozenset[int]:
        return frozenset(j for j, z in enumerate(self.mask[i]) if z)


def build_zero_pattern(m: int, t: int, smin: int, smax: int) -> ZeroPattern:
    """Cyclic pattern: entry (i, j) is free iff (i + j) mod (smax+t) < smax."""
    if not t < m - smin < smax + t:
        raise UsageError(
            f"sparse MDS regime needs t < m-smin < smax+t, got t={t}, m-smin={m - smin}, "
            f"smax+t={smax + t}"
        )
    width = smax + t
    mask = [[int((i + j) % width <= smax - 1) for j in range(width)] for i in range(m - smin)]
    return ZeroPattern.from_rows(mask)


def check_mds_condition(Z: ZeroPattern, ell: int) -> tuple[bool, tuple[int, ...] | None]:
    """|P| + |common zeros of rows P| <= ell for every nonempty row set P.

    Returns ``(True, None)`` or ``(False, P)`` for the first violating P in
    (size, lexicographic) order.
    """
    zeros = [Z.zeros(i) for i in range(Z.rows)]
    for k in range(1, Z.rows + 1):
        for P in combinations(range(Z.rows), k):
            common = frozenset.intersection(*(zeros[i] for i in P))
            if k + len(common) > ell:
                return False, P
    return True, None


def _poly_mul_linear(field: FieldSpec, p: list[int], root: int) -> list[int]:
    """p(x) * (x - root); coefficients lowest degree first."""
    out = [0] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] ^= c
        out[i] ^= field.mul(c, root)
    return out


def _poly_eval(field: FieldSpec, p: list[int], x: int) -> int:
    r = 0
    for c in reversed(p):
        r = field.mul(r, x) ^ c
    return r


def sample_sparse_mds(Z: ZeroPattern, ell: int, field: FieldSpec, seed=0, budget: int | None = None) -> Matrix:
    """Random matrix with zero pattern Z whose ell x ell column minors are all nonzero.

    Row i evaluates ``prod_{j in Z_i} (x - a_j) * g_i(x)`` at distinct random
    points a_0..a_{cols-1}, with g_i random of degree ell - 1 - |Z_i|.  Every
    ell x ell column minor then factors as det(coefficients) * Vandermonde,
    so candidates succeed far more often than with independent entries.  Each
    candidate is still checked directly: exact support, then every minor.
    """
    if Z.rows != ell or Z.cols < ell:
        raise UsageError(f"need a pattern with ell={ell} rows and at least ell columns")
    ok, P = check_mds_condition(Z, ell)
    if not ok:
        raise UsageError(f"zero pattern violates the MDS condition on rows {P}")
    need = Z.rows + Z.cols - 1
    if field.size < need:
        raise UsageError(f"{field} too small: pattern needs a field of size >= {need}")
    rng = _rng(seed)
    budget = budget or retry_budget()
    zeros = [sorted(Z.zeros(i)) for i in range(Z.rows)]
    for attempt in range(1, budget + 1):
        points = rng.sample(range(field.size), Z.cols)
        rows = []
        for i in range(Z.rows):
            p = [rng.randrange(field.size) for _ in range(ell - len(zeros[i]))]
            for j in zeros[i]:
                p = _poly_mul_linear(field, p, points[j])
            row = [_poly_eval(field, p, a) for a in points]
            if any(bool(x) != bool(z) for x, z in zip(row, Z.mask[i])):
                break
            rows.append(row)
        else:
            M = Matrix.from_rows(rows, field, Z.cols)
            if find_singular_square_submatrix(M, ell) is None:
                log.debug("sparse MDS found after %d attempts", attempt)
                return M
    raise ConstructionError(
        f"no sparse MDS matrix over {field} after {budget} attempts", attempts=budget
    )


# -- helpers -----------------------------------------------------------------


def _first_user_with(instance: ProblemInstance, messages, size: int | None = None) -> int:
    messages = set(messages)
    for u in instance.users:
        if (size is None or len(u.side_info) == size) and messages <= u.side_info:
            return u.id
    raise ConstructionError(f"no user knows messages {sorted(messages)}")


def _unit_rows(m: int, messages) -> list[list[int]]:
    return [[int(j == k) for j in range(m)] for k in messages]


def _uncoded(instance: ProblemInstance, messages, field: FieldSpec, scheme: str) -> DecentralizedCode:
    messages = list(messages)
    G = Matrix.from_rows(_unit_rows(instance.m, messages), field, instance.m)
    tx = tuple(_first_user_with(instance, {k}) for k in messages)
    return DecentralizedCode(instance, 1, G, Schedule(tx, STATIC), field, scheme)


def _require_consecutive(instance: ProblemInstance):
    if instance.kind != CONSECUTIVE:
        raise UsageError(f"instance {instance} is not consecutive")


# -- schemes -----------------------------------------------------------------


def scheme_uncoded(instance: ProblemInstance, field: FieldSpec | None = None) -> DecentralizedCode:
    """Send messages 0..smax+t-1 one at a time."""
    _require_consecutive(instance)
    m, t, smin, smax = instance.m, instance.t, instance.smin, instance.smax
    if smax + t > m - smin:
        raise UsageError(f"uncoded scheme needs smax+t <= m-smin for {instance}")
    field = field or default_field(instance)
    return _uncoded(instance, range(smax + t), field, "uncoded")


def sparse_mds_rows(instance: ProblemInstance, field: FieldSpec, rng, budget=None):
    """Rows [C | 0] and their transmitters for a consecutive instance."""
    m, t, smin, smax = instance.m, instance.t, instance.smin, instance.smax
    Z = build_zero_pattern(m, t, smin, smax)
    ell = m - smin
    C = sample_sparse_mds(Z, ell, field, rng, budget)
    pad = [0] * (m - smax - t)
    rows = [list(C.row(i)) + pad for i in range(ell)]
    tx = [_first_user_with(instance, Z.ones(i), size=smax) for i in range(ell)]
    return rows, tx


def scheme_sparse_mds(instance: ProblemInstance, field: FieldSpec | None = None, seed=0, budget=None) -> DecentralizedCode:
    """m - smin transmissions, each a combination of exactly smax messages."""
    _require_consecutive(instance)
    field = field or default_field(instance)
    rows, tx = sparse_mds_rows(instance, field, _rng(seed), budget)
    G = Matrix.from_rows(rows, field, instance.m)
    return DecentralizedCode(instance, 1, G, Schedule(tx, STATIC), field, "sparse_mds")


def split_parameters(m: int, t: int) -> tuple[int, int, int]:
    """``(n, beta, slots_per_user)`` with the smallest beta making slots integral."""
    s = m - t
    n = comb(m, s)
    if n < 2:
        raise UsageError(f"n = C({m},{s}) = {n}: need at least two users")
    beta = (n - 1) // gcd(n - 1, m - s)
    per_user = (m - s) * beta // (n - 1)
    return n, beta, per_user


def scheme_split_vector(instance: ProblemInstance, field: FieldSpec | None = None, seed=0, budget=None) -> DecentralizedCode:
    """Every user sends the same number of sub-slots of random combinations."""
    _require_consecutive(instance)
    m, t = instance.m, instance.t
    if not instance.smin == instance.smax == m - t:
        raise UsageError(f"split scheme needs smin = smax = m-t for {instance}")
    field = field or default_field(instance)
    n, beta, per_user = split_parameters(m, t)
    users = instance.users
    cols = m * beta
    supports = [set(j * beta + k for j in u.side_info for k in range(beta)) for u in users]
    unknown = [
        [j * beta + k for j in range(m) if j not in u.side_info for k in range(beta)] for u in users
    ]
    need = t * beta
    rng = _rng(seed)
    budget = budget or retry_budget()
    q = field.size
    for attempt in range(1, budget + 1):
        rows = []
        for i in range(n):
            for _ in range(per_user):
                rows.append([rng.randrange(1, q) if j in supports[i] else 0 for j in range(cols)])
        G = Matrix.from_rows(rows, field, cols)
        if all(
            column_submatrix(
                G.row_submatrix(r for r in range(n * per_user) if r // per_user != i), unknown[i]
            ).rank() == need
            for i in range(n)
        ):
            log.debug("split vector code found after %d attempts", attempt)
            tx = tuple(r // per_user for r in range(n * per_user))
            return DecentralizedCode(instance, beta, G, Schedule(tx, STATIC), field, "split_vector")
    raise ConstructionError(
        f"no split vector code over {field} after {budget} attempts", attempts=budget
    )


def scheme_complement(instance: ProblemInstance, field: FieldSpec | None = None, seed=0, budget=None) -> DecentralizedCode:
    """Serve users below and above the removed size interval.

    Lower users (sizes < smin) are served by smin-1+t uncoded messages.  If
    the upper users all have size m-t and the uncoded step already satisfies
    one of them, that user knows everything and sends t MDS combinations of
    all messages (sequential knowledge).  Otherwise the upper group gets its
    own sparse MDS code.  Sending all m messages is used when no longer.
    """
    if instance.kind != COMPLEMENT:
        raise UsageError(f"instance {instance} is not complement-consecutive")
    m, t, smin, smax = instance.m, instance.t, instance.smin, instance.smax
    field = field or default_field(instance)
    target = complement_size(m, t, smin, smax) + 2 * t - 2
    if m <= target:
        return _uncoded(instance, range(m), field, "uncoded_all")
    step1 = smin - 1 + t
    if step1 < smax + 1 == m - t:
        code = _uncoded(instance, range(step1), field, "two_step")
        low = set(range(step1))
        sender = next(
            u.id for u in instance.users
            if len(u.side_info) == m - t and set(range(m)) - u.side_info <= low
        )
        dense = ZeroPattern.from_rows([[1] * m] * t)
        block = sample_sparse_mds(dense, t, field, seed, budget)
        G = code.generator.vstack(block)
        sched = Schedule(code.schedule.transmitters + (sender,) * t, SEQUENTIAL)
        return DecentralizedCode(instance, 1, G, sched, field, "two_step")
    # concatenated: uncoded for the lower group, sparse MDS for the upper one
    upper = ProblemInstance.consecutive(m, t, smax + 1, m - t)
    low_code = _uncoded(instance, range(step1), field, "concatenated")
    rows, tx = sparse_mds_rows(upper, field, _rng(seed), budget)
    # map upper-group user ids back into the full population
    by_set = {u.side_info: u.id for u in instance.users}
    tx = [by_set[upper.users[u].side_info] for u in tx]
    G = low_code.generator.vstack(Matrix.from_rows(rows, field, m))
    sched = Schedule(low_code.schedule.transmitters + tuple(tx), STATIC)
    return DecentralizedCode(instance, 1, G, sched, field, "concatenated")


def synthesize(instance: ProblemInstance, field: FieldSpec | None = None, seed=0, budget=None) -> DecentralizedCode:
    """Pick the scheme matching the instance's regime."""
    m, t = instance.m, instance.t
    if instance.kind == CONSECUTIVE:
        smin, smax = instance.smin, instance.smax
        if smin == smax == m - t:
            return scheme_split_vector(instance, field, seed, budget)
        if smax + t <= m - smin:
            return scheme_uncoded(instance, field)
        return scheme_sparse_mds(instance, field, seed, budget)
    if instance.kind == COMPLEMENT:
        return scheme_complement(instance, field, seed, budget)
    raise UsageError(f"no construction in scope for S={set(instance.S)} (kind 'other')")

