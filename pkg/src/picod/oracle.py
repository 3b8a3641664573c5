"""Exhaustive search over small decentralized linear codes.

Whether a linear code is valid depends only on its row space: every user
subtracts its side information and asks whether unit vectors lie in what is
left.  The search therefore walks row spaces level by level (one new
transmitted vector per level) instead of raw generator matrices, which is
the same verdict over a far smaller space.  Message relabelings map a
complete-S population onto itself, so row spaces are additionally reduced
to a canonical representative under all m! relabelings unless pruning is
disabled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import ceil

from . import kernels
from .errors import SearchCeilingExceeded, UsageError
from .gf import GF2, FieldSpec
from .linalg import Matrix, rref_entries
from .model import (
    KNOWLEDGE_MODES,
    SEQUENTIAL,
    STATIC,
    DecentralizedCode,
    ProblemInstance,
    Schedule,
)
from .verify import decodable_messages, validate

DEFAULT_CEILING = 10**8


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _transmittable_count(instance: ProblemInstance, beta: int, q: int) -> int:
    """Nonzero vectors, up to scaling, whose support some user knows."""
    m = instance.m
    masks = [u.mask for u in instance.users]
    total = 0
    for B in range(1, 1 << m):
        if any(B & ~a == 0 for a in masks):
            k = bin(B).count("1")
            total += ((q**beta - 1) ** k)
    return total // (q - 1)


@dataclass(frozen=True)
class SearchSpace:
    instance: ProblemInstance
    field: FieldSpec = GF2
    beta: int = 1
    total_subslots: int = 1
    knowledge_mode: str = STATIC

    def __post_init__(self):
        if self.beta < 1:
            raise UsageError("beta must be >= 1")
        if self.total_subslots < 0:
            raise UsageError("total_subslots must be >= 0")
        if self.knowledge_mode not in KNOWLEDGE_MODES:
            raise UsageError(f"unknown knowledge mode {self.knowledge_mode!r}")

    @property
    def columns(self) -> int:
        return self.instance.m * self.beta

    def size(self) -> int:
        """Upper bound on candidate evaluations for the full search.

        Every row space of dimension d < total_subslots is expanded by every
        candidate vector; every row space up to total_subslots is tested.
        """
        n, q = self.columns, self.field.size
        if self.knowledge_mode == SEQUENTIAL:
            cands = (q**n - 1) // (q - 1)
        else:
            cands = _transmittable_count(self.instance, self.beta, q)
        top = min(self.total_subslots, n)
        total = 0
        for d in range(top + 1):
            g = gaussian_binomial(n, d, q)
            total += g * (1 + (cands if d < self.total_subslots else 0))
        return total


@dataclass
class SearchResult:
    found: bool
    witness: DecentralizedCode | None
    level: int | None
    states_per_level: list[int]
    evaluations: int
    size: int
    saturated: bool
    backend: str

    @property
    def length(self) -> Fraction | None:
        return self.witness.length if self.witness else None


# -- generic GF(2^b) search ----------------------------------------------------


def _generic_search(space: SearchSpace, prune: bool):
    inst, f, beta = space.instance, space.field, space.beta
    m, t, q = inst.m, inst.t, f.size
    n = m * beta
    users = [u.side_info for u in inst.users]
    sequential = space.knowledge_mode == SEQUENTIAL

    def canon_rows(vectors):
        flat, piv = rref_entries([x for v in vectors for x in v], len(vectors), n, f)
        return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(len(piv)))

    perms = list(permutations(range(m))) if prune else [tuple(range(m))]

    def permute(v, perm):
        out = [0] * n
        for j in range(m):
            for k in range(beta):
                out[perm[j] * beta + k] = v[j * beta + k]
        return tuple(out)

    def canonical(rows):
        return min(canon_rows([permute(v, p) for v in rows]) for p in perms)

    # projective representatives: first nonzero coordinate is 1
    vectors = [v for v in product(range(q), repeat=n) if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1]

    def supp(v):
        return {i // beta for i, x in enumerate(v) if x}

    vsupp = [supp(v) for v in vectors]

    def decoded(rows):
        out = []
        for A in users:
            unknown = [j for j in range(m) if j not in A]
            cols = [j * beta + k for j in unknown for k in range(beta)]
            if not rows or not cols:
                out.append(set())
                continue
            flat, piv = rref_entries([v[c] for v in rows for c in cols], len(rows), len(cols), f)
            w = len(cols)
            units = {
                c for r, c in enumerate(piv) if sum(1 for x in flat[r * w:(r + 1) * w] if x) == 1
            }
            out.append({j for i, j in enumerate(unknown) if all(i * beta + k in units for k in range(beta))})
        return out

    static_vectors = [v for v, s in zip(vectors, vsupp) if any(s <= A for A in users)]
    frontier = [()]
    states, evaluations, level = [], 0, 0
    while True:
        states.append(len(frontier))
        nxt = set()
        for rows in frontier:
            dec = decoded(rows)
            evaluations += 1
            if all(len(d) >= t for d in dec):
                return level, list(rows), states, evaluations, False
            if level == space.total_subslots:
                continue
            if sequential:
                know = [A | d for A, d in zip(users, dec)]
                cands = [v for v, s in zip(vectors, vsupp) if any(s <= K for K in know)]
            else:
                cands = static_vectors
            seen = set()
            for v in cands:
                evaluations += 1
                child = canon_rows(list(rows) + [v])
                if len(child) == len(rows) or child in seen:
                    continue
                seen.add(child)
                nxt.add(canonical(child))
        if level == space.total_subslots:
            return -1, None, states, evaluations, False
        if not nxt:
            return -1, None, states, evaluations, True
        frontier = sorted(nxt)
        level += 1


# -- witnesses -----------------------------------------------------------------


def _span_vectors(basis: list[list[int]], field: FieldSpec) -> list[tuple[int, ...]]:
    n = len(basis[0])
    out = set()
    for coeffs in product(range(field.size), repeat=len(basis)):
        v = [0] * n
        for c, row in zip(coeffs, basis):
            if c:
                for i, x in enumerate(row):
                    v[i] ^= field.mul(c, x)
        if any(v):
            out.add(tuple(v))
    return sorted(out)


def build_witness(space: SearchSpace, basis: list[list[int]]) -> DecentralizedCode:
    """Order a basis of a valid row space into a schedulable code.

    Rows are added greedily: the smallest vector of the space that some user
    can compute from its current knowledge and that enlarges the span.  If
    the space is reachable at all, the greedy order never gets stuck because
    knowledge only grows with the span.
    """
    inst, f, beta = space.instance, space.field, space.beta
    n = space.columns
    users = inst.users
    pool = _span_vectors(basis, f) if basis else []
    rows: list[tuple[int, ...]] = []
    tx: list[int] = []
    target = len(basis)
    while len(rows) < target:
        partial = DecentralizedCode(
            inst, beta, Matrix.from_rows(rows, f, n), Schedule(tuple(tx), space.knowledge_mode), f
        )
        if space.knowledge_mode == SEQUENTIAL:
            know = [u.side_info | decodable_messages(partial, u) for u in users]
        else:
            know = [u.side_info for u in users]
        base_rank = len(rows)
        for v in pool:
            supp = {i // beta for i, x in enumerate(v) if x}
            sender = next((u.id for u, K in zip(users, know) if supp <= K), None)
            if sender is None:
                continue
            if Matrix.from_rows(rows + [v], f, n).rank() > base_rank:
                rows.append(v)
                tx.append(sender)
                break
        else:
            raise AssertionError("row space is not reachable by any transmission order")
    return DecentralizedCode(
        inst, beta, Matrix.from_rows(rows, f, n), Schedule(tuple(tx), space.knowledge_mode), f, "oracle"
    )


def _bits_to_row(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def exists_valid_code(space: SearchSpace, ceiling: int = DEFAULT_CEILING, prune: bool = True) -> SearchResult:
    """Is there a valid linear code with at most ``total_subslots`` rows?

    Returns the first valid code met (fewest rows, then smallest canonical
    row space), or an exhaustion certificate: ``found=False`` with the
    number of row spaces visited per level.
    """
    size = space.size()
    if size > ceiling:
        raise SearchCeilingExceeded(size, ceiling)
    inst = space.instance
    if space.field.b == 1:
        level, basis, states, evals, saturated = kernels.gf2_subspace_search(
            inst.m, space.beta, inst.t, [u.mask for u in inst.users],
            space.knowledge_mode == SEQUENTIAL, space.total_subslots, prune,
        )
        backend = kernels.BACKEND if space.columns <= kernels.COMPILED_SEARCH_COLS else "python"
        if basis is not None:
            basis = [_bits_to_row(v, space.columns) for v in basis]
    else:
        level, basis, states, evals, saturated = _generic_search(space, prune)
        backend = "python-generic"
        if basis is not None:
            basis = [list(v) for v in basis]
    witness = None
    if level >= 0:
        witness = build_witness(space, basis)
        report = validate(witness)
        if not report.valid:  # pragma: no cover - would be a search bug
            raise AssertionError(f"oracle witness failed validation: {report}")
    return SearchResult(
        found=level >= 0,
        witness=witness,
        level=level if level >= 0 else None,
        states_per_level=list(states),
        evaluations=evals,
        size=size,
        saturated=saturated,
        backend=backend,
    )


@dataclass
class BetaOutcome:
    beta: int
    searched_up_to: int
    min_subslots: int | None
    complete: bool
    saturated: bool = False


@dataclass
class CertifiedMinimum:
    value: Fraction | None
    certified: bool
    witness: DecentralizedCode | None
    per_beta: list[BetaOutcome] = field(default_factory=list)

    @property
    def upper_bound_only(self) -> bool:
        return not self.certified


def certified_minimum(
    instance: ProblemInstance,
    field: FieldSpec = GF2,
    beta_max: int = 2,
    mode: str = STATIC,
    ceiling: int = DEFAULT_CEILING,
    prune: bool = True,
) -> CertifiedMinimum:
    """Smallest normalized length of a valid linear code with beta <= beta_max.

    For each beta the row-space levels are scanned upward, stopping at the
    first valid level or, once a code is known, at the last level that would
    still beat it.  If some beta cannot be searched far enough under the
    ceiling, the result is an upper bound only.
    """
    if beta_max < 1:
        raise UsageError("beta_max must be >= 1")
    best: Fraction | None = None
    witness = None
    certified = True
    outcomes = []
    for beta in range(1, beta_max + 1):
        n = instance.m * beta
        top = n if best is None else min(n, ceil(best * beta) - 1)
        if top < 1:
            outcomes.append(BetaOutcome(beta, 0, None, True))
            continue
        reach = top
        while reach >= 1 and SearchSpace(instance, field, beta, reach, mode).size() > ceiling:
            reach -= 1
        if reach < top:
            certified = False
        if reach < 1:
            outcomes.append(BetaOutcome(beta, 0, None, False))
            continue
        res = exists_valid_code(SearchSpace(instance, field, beta, reach, mode), ceiling, prune)
        if res.found:
            outcomes.append(BetaOutcome(beta, reach, res.level, True))
            best = Fraction(res.level, beta)
            witness = res.witness
        else:
            outcomes.append(BetaOutcome(beta, reach, None, reach == top or res.saturated, res.saturated))
    return CertifiedMinimum(best, certified, witness, outcomes)


# -- brute-force decoding ------------------------------------------------------


def brute_force_decodable(rows: list[list[int]], side_info, m: int) -> set[int]:
    """Messages fixed by (received symbols, side information), GF(2), beta = 1.

    Enumerates all 2^m message vectors, groups them by what the user
    observes, and keeps the messages that are constant inside every group.
    """
    side_info = set(side_info)
    groups: dict[tuple, list[int]] = {}
    for w in range(1 << m):
        bits = [(w >> j) & 1 for j in range(m)]
        received = tuple(sum(r[j] & bits[j] for j in range(m)) & 1 for r in rows)
        known = tuple(bits[j] for j in sorted(side_info))
        groups.setdefault((received, known), []).append(w)
    out = set()
    for j in range(m):
        if j in side_info:
            continue
        if all(len({(w >> j) & 1 for w in ws}) == 1 for ws in groups.values()):
            out.add(j)
    return out
