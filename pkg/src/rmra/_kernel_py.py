"""Pure-Python candidate scanner.

Fallback for :mod:`rmra.kernel` when the compiled extension is unavailable.
Uses big-integer bit tricks: with the position set encoded as a bitmask P,
``P >> s`` marks every lag reachable from sensor s, so folding those shifted
masks through once/twice/thrice accumulators classifies every lag's weight
as >=1, >=2 or >=3 in O(N) word operations per candidate.

A lag of weight exactly two is breakable by a single failure only when its
two generating pairs share a sensor, i.e. when the three positions form an
arithmetic chain a, a+m, a+2m — detected as ``P & (P >> m) & (P >> 2m)``.
Lags of weight three or more survive any single failure because one sensor
can sit in at most two pairs of the same lag.
"""

from __future__ import annotations

from typing import Sequence

MAX_N = 36
MAX_L = 255


def _setup(n: int, l: int, filtered: bool) -> tuple[int, int, int]:
    """(k, base, m): interior choose k from {base, ..., base+m-1}."""
    if not 4 <= n <= MAX_N:
        raise ValueError(f"sensor count {n} outside supported range 4..{MAX_N}")
    if not n <= l <= MAX_L:
        raise ValueError(f"aperture {l} outside supported range {n}..{MAX_L}")
    if filtered:
        return n - 4, 2, l - 3
    return n - 2, 1, l - 1


def scan(
    n: int,
    l: int,
    first: Sequence[int],
    count: int,
    filtered: bool = False,
    mirror_prune: bool = False,
) -> tuple[int, int, list[int] | None]:
    """Scan up to ``count`` consecutive candidates in lexicographic order.

    ``first`` is the 0-based interior combination (n-2 values over the grid
    points strictly between the endpoints; n-4 values when ``filtered`` fixes
    grid points 1 and l-1 as well). Returns ``(examined, found_offset,
    positions)`` where ``found_offset`` is -1 if no candidate in the range is
    valid; a mirror-pruned candidate counts as examined but never as found.
    """
    k, base, m = _setup(n, l, filtered)
    c = list(first)
    if len(c) != k:
        raise ValueError(f"expected a {k}-element interior combination")
    prev = -1
    for v in c:
        if not prev < v < m:
            raise ValueError("interior combination not strictly increasing in range")
        prev = v
    if count <= 0:
        return 0, -1, None

    head = (0, 1) if filtered else (0,)
    tail = (l - 1, l) if filtered else (l,)
    full = (1 << l) - 2  # lags 1..l-1
    examined = 0
    while True:
        p = head + tuple(v + base for v in c) + tail
        examined += 1
        if _valid(p, n, l, full, mirror_prune):
            return examined, examined - 1, list(p)
        if examined >= count:
            return examined, -1, None
        i = k - 1
        while i >= 0 and c[i] == m - k + i:
            i -= 1
        if i < 0:  # enumeration exhausted before count ran out
            return examined, -1, None
        c[i] += 1
        for j in range(i + 1, k):
            c[j] = c[j - 1] + 1


def _valid(p: tuple[int, ...], n: int, l: int, full: int, mirror_prune: bool) -> bool:
    if mirror_prune:
        mirrored = tuple(l - p[n - 1 - i] for i in range(n))
        if mirrored < p:
            return False
    pm = 0
    for s in p:
        pm |= 1 << s
    once = twice = thrice = 0
    for s in p:
        x = pm >> s
        thrice |= twice & x
        twice |= once & x
        once |= x
    if twice & full != full:  # some lag in 1..l-1 has weight < 2
        return False
    if (twice >> l) & 1:  # aperture lag must have weight exactly 1
        return False
    weak = twice & ~thrice & full  # lags of weight exactly 2
    while weak:
        low = weak & -weak
        lag = low.bit_length() - 1
        if pm & (pm >> lag) & (pm >> (2 * lag)):
            return False
        weak ^= low
    return True
