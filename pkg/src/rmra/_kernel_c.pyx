# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled candidate scanner.

Same contract as rmra._kernel_py.scan, but built on fixed-width C buffers:
uint8 lag counts sized to the aperture plus a 256-bit membership mask. The
scan loop runs without the GIL so thread pools get real parallelism.
"""

from libc.string cimport memset

cdef int MAX_N = 36
cdef int MAX_L = 255


cdef inline bint _check(const int* p, int n, int l,
                        unsigned long long* mask,
                        unsigned char* w) noexcept nogil:
    cdef int i, j, d, t
    memset(w, 0, (l + 1) * sizeof(unsigned char))
    mask[0] = 0
    mask[1] = 0
    mask[2] = 0
    mask[3] = 0
    for i in range(n):
        mask[p[i] >> 6] |= (<unsigned long long>1) << (p[i] & 63)
    for i in range(n - 1):
        for j in range(i + 1, n):
            w[p[j] - p[i]] += 1  # w(m) <= n-1 <= 35, far below uint8 range
    if w[l] != 1:
        return 0
    # high lags are the scarce ones; scanning downward fails fastest
    for d in range(l - 1, 0, -1):
        if w[d] < 2:
            return 0
    # a weight-2 lag is breakable iff its two pairs chain through one sensor
    for i in range(n - 1):
        for j in range(i + 1, n):
            d = p[j] - p[i]
            if w[d] == 2:
                t = p[j] + d
                if t <= l and (mask[t >> 6] >> (t & 63)) & 1:
                    return 0
    return 1


cdef long long _scan_loop(int n, int l, int k, int base, int m, int* c,
                          long long count, bint filtered, bint mirror_prune,
                          int* out) noexcept nogil:
    # Returns the 0-based offset of the first valid candidate, or
    # -(examined+1) when the range holds none.
    cdef int p[36]
    cdef unsigned char w[256]
    cdef unsigned long long mask[4]
    cdef long long t = 0
    cdef int i, q, off
    cdef bint ok
    p[0] = 0
    p[n - 1] = l
    if filtered:
        p[1] = 1
        p[n - 2] = l - 1
        off = 2
    else:
        off = 1
    while True:
        for i in range(k):
            p[off + i] = base + c[i]
        ok = 1
        if mirror_prune:
            for i in range(n):
                q = l - p[n - 1 - i]
                if q < p[i]:
                    ok = 0
                    break
                if q > p[i]:
                    break
        if ok:
            ok = _check(p, n, l, mask, w)
        if ok:
            for i in range(n):
                out[i] = p[i]
            return t
        t += 1
        if t >= count:
            return -t - 1
        i = k - 1
        while i >= 0 and c[i] == m - k + i:
            i -= 1
        if i < 0:
            return -t - 1
        c[i] += 1
        for q in range(i + 1, k):
            c[q] = c[q - 1] + 1


def scan(int n, int l, first, long long count, bint filtered=False,
         bint mirror_prune=False):
    """Scan up to ``count`` consecutive candidates in lexicographic order.

    Same semantics as the pure-Python fallback: returns ``(examined,
    found_offset, positions)`` with ``found_offset`` -1 when nothing valid
    lies in the range.
    """
    if not 4 <= n <= MAX_N:
        raise ValueError(f"sensor count {n} outside supported range 4..{MAX_N}")
    if not n <= l <= MAX_L:
        raise ValueError(f"aperture {l} outside supported range {n}..{MAX_L}")
    cdef int k, base, m
    if filtered:
        k = n - 4
        base = 2
        m = l - 3
    else:
        k = n - 2
        base = 1
        m = l - 1
    if len(first) != k:
        raise ValueError(f"expected a {k}-element interior combination")
    cdef int c[36]
    cdef int i, v
    cdef int prev = -1
    for i in range(k):
        v = first[i]
        if not prev < v < m:
            raise ValueError("interior combination not strictly increasing in range")
        c[i] = v
        prev = v
    if count <= 0:
        return 0, -1, None
    cdef int out[36]
    cdef long long res
    with nogil:
        res = _scan_loop(n, l, k, base, m, c, count, filtered, mirror_prune, out)
    if res >= 0:
        return res + 1, res, [out[i] for i in range(n)]
    return -(res + 1), -1, None
