# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels.  Mirrors ``_kernels_py`` function for function."""

from itertools import permutations

from libc.stdint cimport uint32_t, uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort

NAME = "cython"

# Row-space search packs a basis into one uint64, so n * dim <= 64.
MAX_SEARCH_COLS = 8


cdef extern from *:
    int __builtin_clz(unsigned int) nogil
    int __builtin_popcount(unsigned int) nogil


cdef class Tables:
    cdef vector[int] exp
    cdef vector[int] log
    cdef int order

    def __init__(self, exp, log, int order):
        self.exp = exp
        self.log = log
        self.order = order


def make_tables(exp, log, int order):
    return Tables(exp, log, order)


def gf_rref(entries, int rows, int cols, Tables tab):
    cdef vector[int] a = entries
    cdef vector[int] pivots
    cdef int* ex = tab.exp.data()
    cdef int* lg = tab.log.data()
    cdef int order = tab.order
    cdef int r = 0, c, p, i, j, s, lf, x, tmp
    cdef int* row
    cdef int* other
    for c in range(cols):
        if r == rows:
            break
        p = r
        while p < rows and a[p * cols + c] == 0:
            p += 1
        if p == rows:
            continue
        if p != r:
            for j in range(cols):
                tmp = a[r * cols + j]
                a[r * cols + j] = a[p * cols + j]
                a[p * cols + j] = tmp
        row = a.data() + r * cols
        if lg[row[c]]:
            s = order - lg[row[c]]
            for j in range(cols):
                x = row[j]
                if x:
                    row[j] = ex[lg[x] + s]
        for i in range(rows):
            if i == r:
                continue
            other = a.data() + i * cols
            if other[c]:
                lf = lg[other[c]]
                for j in range(cols):
                    x = row[j]
                    if x:
                        other[j] ^= ex[lg[x] + lf]
        pivots.push_back(c)
        r += 1
    return list(a), list(pivots)


cdef inline uint32_t hibit(uint32_t x) nogil:
    return (<uint32_t>1) << (31 - __builtin_clz(x))


cdef inline uint32_t reduce_vec(uint32_t v, uint32_t* rows, int d) nogil:
    cdef int i
    for i in range(d):
        if v & hibit(rows[i]):
            v ^= rows[i]
    return v


cdef inline int insert_vec(uint32_t* rows, int d, uint32_t r) nogil:
    # r is reduced against rows; keep the basis fully reduced, sorted desc
    cdef uint32_t hb = hibit(r)
    cdef int i
    for i in range(d):
        if rows[i] & hb:
            rows[i] ^= r
    i = d
    while i > 0 and rows[i - 1] < r:
        rows[i] = rows[i - 1]
        i -= 1
    rows[i] = r
    return d + 1


cdef inline int rref_vecs(uint32_t* src, int k, uint32_t* out) nogil:
    cdef int d = 0, i
    cdef uint32_t v
    for i in range(k):
        v = reduce_vec(src[i], out, d)
        if v:
            d = insert_vec(out, d, v)
    return d


cdef inline uint64_t pack(uint32_t* rows, int d, int n) nogil:
    cdef uint64_t key = 0
    cdef int i
    for i in range(d):
        key = (key << n) | rows[i]
    return key


cdef inline int unpack(uint64_t key, int n, uint32_t* rows) nogil:
    cdef uint64_t mask = ((<uint64_t>1) << n) - 1
    cdef uint32_t tmp[32]
    cdef int d = 0, i
    while key:
        tmp[d] = <uint32_t>(key & mask)
        key >>= n
        d += 1
    for i in range(d):
        rows[i] = tmp[d - 1 - i]
    return d


def gf2_subspace_search(int m, int beta, int t, side_info, bint sequential,
                        int max_level, bint prune):
    cdef int n = m * beta
    if n > MAX_SEARCH_COLS:
        raise ValueError(f"compiled search supports at most {MAX_SEARCH_COLS} columns")
    cdef int nu = len(side_info)
    cdef int nv = 1 << n
    cdef uint32_t full = nv - 1
    cdef uint32_t bm = (1 << beta) - 1
    cdef vector[uint32_t] side = side_info
    cdef vector[uint32_t] colmask = vector[uint32_t](nu, 0)
    cdef vector[uint32_t] bsupp = vector[uint32_t](nv, 0)
    cdef vector[uint32_t] ptab
    cdef int nperm = 0
    cdef int i, j, k, u, p, d, d2, level
    cdef uint32_t v, w, r, sub, kn
    cdef long long evaluations = 0

    for v in range(1, nv):
        for j in range(m):
            if v & (bm << (j * beta)):
                bsupp[v] |= 1u << j
    for u in range(nu):
        for j in range(m):
            if (side[u] >> j) & 1:
                colmask[u] |= bm << (j * beta)
    if prune:
        for perm in permutations(range(m)):
            for v in range(nv):
                w = 0
                for j in range(m):
                    w |= ((v >> (j * beta)) & bm) << (<int>perm[j] * beta)
                ptab.push_back(w)
            nperm += 1

    cdef vector[char] static_ok = vector[char](1 << m, 0)
    for u in range(nu):
        kn = side[u]
        sub = kn
        while True:
            static_ok[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & kn
    cdef vector[uint32_t] static_vectors
    for v in range(1, nv):
        if static_ok[bsupp[v]]:
            static_vectors.push_back(v)

    cdef vector[uint64_t] frontier
    frontier.push_back(0)
    cdef unordered_set[uint64_t] nxt
    cdef vector[char] seen = vector[char](nv, 0)
    cdef vector[uint32_t] seen_list
    cdef vector[uint32_t] dec = vector[uint32_t](nu, 0)
    cdef vector[char] ok = vector[char](1 << m, 0)
    cdef vector[uint32_t] cands
    cdef uint32_t rows[32]
    cdef uint32_t tmp[32]
    cdef uint32_t proj[32]
    cdef uint32_t out[32]
    cdef uint64_t key, best, ck
    cdef size_t si
    cdef bint valid, all_units
    states = []
    level = 0
    while True:
        states.append(frontier.size())
        nxt.clear()
        for si in range(frontier.size()):
            d = unpack(frontier[si], n, rows)
            # decodable messages per user
            valid = True
            for u in range(nu):
                for i in range(d):
                    tmp[i] = rows[i] & ~colmask[u] & full
                d2 = rref_vecs(tmp, d, proj)
                dec[u] = 0
                for j in range(m):
                    if (side[u] >> j) & 1:
                        continue
                    all_units = True
                    for k in range(beta):
                        if reduce_vec((<uint32_t>1) << (j * beta + k), proj, d2):
                            all_units = False
                            break
                    if all_units:
                        dec[u] |= 1u << j
                if __builtin_popcount(dec[u]) < t:
                    valid = False
            evaluations += 1
            if valid:
                return level, [rows[i] for i in range(d)], states, evaluations, False
            if level == max_level:
                continue
            cands.clear()
            if sequential:
                for i in range(1 << m):
                    ok[i] = 0
                for u in range(nu):
                    kn = side[u] | dec[u]
                    sub = kn
                    while True:
                        ok[sub] = 1
                        if sub == 0:
                            break
                        sub = (sub - 1) & kn
                for v in range(1, nv):
                    if ok[bsupp[v]]:
                        cands.push_back(v)
            else:
                cands = static_vectors
            for i in range(<int>cands.size()):
                evaluations += 1
                r = reduce_vec(cands[i], rows, d)
                if r == 0 or seen[r]:
                    continue
                seen[r] = 1
                seen_list.push_back(r)
                for k in range(d):
                    tmp[k] = rows[k]
                d2 = insert_vec(tmp, d, r)
                if nperm == 0:
                    ck = pack(tmp, d2, n)
                else:
                    best = 0
                    for p in range(nperm):
                        for k in range(d2):
                            proj[k] = ptab[p * nv + tmp[k]]
                        rref_vecs(proj, d2, out)
                        key = pack(out, d2, n)
                        if p == 0 or key < best:
                            best = key
                    ck = best
                nxt.insert(ck)
            for i in range(<int>seen_list.size()):
                seen[seen_list[i]] = 0
            seen_list.clear()
        if level == max_level:
            return -1, None, states, evaluations, False
        if nxt.empty():
            return -1, None, states, evaluations, True
        frontier.assign(nxt.begin(), nxt.end())
        sort(frontier.begin(), frontier.end())
        level += 1
