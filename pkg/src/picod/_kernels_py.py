"""Pure-Python kernels; same API as the compiled ``_kernels`` extension.

Two hot loops live here:

* ``gf_rref`` -- Gauss-Jordan elimination over GF(2^b) driven by log/antilog
  tables.
* ``gf2_subspace_search`` -- breadth-first search over GF(2) row spaces of a
  decentralized linear code, used by the exhaustive oracle.
"""

from itertools import permutations

NAME = "python"


def make_tables(exp, log, order):
    return exp, log, order


def gf_rref(entries, rows, cols, tables):
    """Reduced row echelon form over the field described by ``tables``.

    Returns ``(flat_entries, pivot_columns)``.  Pivots are the first nonzero
    entry scanning columns left to right; pivot entries are scaled to 1.
    """
    exp, log, order = tables
    a = [list(entries[i * cols:(i + 1) * cols]) for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r
        while p < rows and a[p][c] == 0:
            p += 1
        if p == rows:
            continue
        a[r], a[p] = a[p], a[r]
        row = a[r]
        lp = log[row[c]]
        if lp:
            s = order - lp
            row = [exp[log[x] + s] if x else 0 for x in row]
            a[r] = row
        for i in range(rows):
            if i != r and a[i][c]:
                lf = log[a[i][c]]
                a[i] = [y ^ exp[log[x] + lf] if x else y for x, y in zip(row, a[i])]
        pivots.append(c)
        r += 1
    flat = [x for row in a for x in row]
    return flat, pivots


# GF(2) row-space search.  Vectors are ints; bit ``j * beta + k`` is
# sub-message k of message j.  A subspace is held as its fully reduced
# echelon basis sorted in decreasing order, and keyed by packing that basis
# into n-bit chunks (first row most significant).


def _insert(rows, r):
    """Add reduced nonzero ``r`` to the fully reduced basis ``rows``."""
    hb = 1 << (r.bit_length() - 1)
    out = [x ^ r if x & hb else x for x in rows]
    out.append(r)
    out.sort(reverse=True)
    return out


def _reduce(v, rows):
    for x in rows:
        if v & (1 << (x.bit_length() - 1)):
            v ^= x
    return v


def _rref(vectors):
    rows = []
    for v in vectors:
        v = _reduce(v, rows)
        if v:
            rows = _insert(rows, v)
    return rows


def _pack(rows, n):
    key = 0
    for r in rows:
        key = (key << n) | r
    return key


def _unpack(key, n):
    mask = (1 << n) - 1
    rows = []
    while key:
        rows.append(key & mask)
        key >>= n
    rows.reverse()
    return rows


def _block_perm_tables(m, beta, n):
    """One lookup table per message permutation, mapping vector -> vector."""
    bm = (1 << beta) - 1
    tables = []
    for perm in permutations(range(m)):
        tab = [0] * (1 << n)
        for v in range(1 << n):
            w = 0
            for j in range(m):
                w |= ((v >> (j * beta)) & bm) << (perm[j] * beta)
            tab[v] = w
        tables.append(tab)
    return tables


def _canonical(rows, n, tables):
    if not tables:
        return _pack(rows, n)
    return min(_pack(_rref([tab[r] for r in rows]), n) for tab in tables)


def gf2_subspace_search(m, beta, t, side_info, sequential, max_level, prune):
    """Level-by-level search for the smallest valid row space.

    ``side_info`` holds one message bit mask per user.  A vector may be
    added to the current row space when its message support lies inside some
    user's knowledge: the side information alone (static), or side
    information plus everything decodable from the current row space
    (sequential).  A row space is valid when every user decodes at least
    ``t`` messages outside its side information.

    Returns ``(level, basis, states_per_level, evaluations, saturated)``;
    ``level`` is -1 when no valid row space of dimension <= max_level exists
    and ``saturated`` reports that the reachable spaces stopped growing.
    """
    n = m * beta
    full = (1 << n) - 1
    bm = (1 << beta) - 1
    blocks = [bm << (j * beta) for j in range(m)]
    bsupp = [0] * (1 << n)
    for v in range(1, 1 << n):
        s = 0
        for j in range(m):
            if v & blocks[j]:
                s |= 1 << j
        bsupp[v] = s
    colmask = []
    for a in side_info:
        c = 0
        for j in range(m):
            if a >> j & 1:
                c |= blocks[j]
        colmask.append(c)
    units = [[1 << (j * beta + k) for k in range(beta)] for j in range(m)]
    tables = _block_perm_tables(m, beta, n) if prune else []

    def decoded(rows):
        out = []
        for a, cm in zip(side_info, colmask):
            proj = _rref([r & ~cm & full for r in rows])
            d = 0
            for j in range(m):
                if not a >> j & 1 and all(_reduce(e, proj) == 0 for e in units[j]):
                    d |= 1 << j
            out.append(d)
        return out

    def allowed_blocks(knowledge):
        ok = bytearray(1 << m)
        for k in knowledge:
            # every subset of k is transmittable
            sub = k
            while True:
                ok[sub] = 1
                if sub == 0:
                    break
                sub = (sub - 1) & k
        return ok

    static_ok = allowed_blocks(side_info)
    static_vectors = [v for v in range(1, 1 << n) if static_ok[bsupp[v]]]

    frontier = [0]
    states = []
    evaluations = 0
    level = 0
    while True:
        states.append(len(frontier))
        nxt = set()
        for key in frontier:
            rows = _unpack(key, n)
            dec = decoded(rows)
            evaluations += 1
            if all(bin(d).count("1") >= t for d in dec):
                return level, rows, states, evaluations, False
            if level == max_level:
                continue
            if sequential:
                ok = allowed_blocks([a | d for a, d in zip(side_info, dec)])
                cands = [v for v in range(1, 1 << n) if ok[bsupp[v]]]
            else:
                cands = static_vectors
            seen = set()
            for v in cands:
                evaluations += 1
                r = _reduce(v, rows)
                if r and r not in seen:
                    seen.add(r)
                    nxt.add(_canonical(_insert(rows, r), n, tables))
        if level == max_level:
            return -1, None, states, evaluations, False
        if not nxt:
            return -1, None, states, evaluations, True
        frontier = sorted(nxt)
        level += 1
