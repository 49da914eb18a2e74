"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled ``_kernels`` module; used when the extension
is not built or when ``PARTLOGIC_PURE_PYTHON`` is set.
"""

from __future__ import annotations

from itertools import product

import numpy as np

ARBITRARY, INJECTIVE, SURJECTIVE = 0, 1, 2


def rgs_array(n: int) -> np.ndarray:
    """All restricted growth strings of length ``n`` in lexicographic order.

    Row ``r`` assigns atom ``i`` to block ``rgs[r, i]``; blocks are numbered by
    first appearance, so each row is the canonical code of one set partition.
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    buf = bytearray()
    a = [0] * n
    # bound[i] = 1 + max(a[:i]): the largest label atom i may take
    bound = [1] * n
    bound[0] = 0
    while True:
        buf.extend(a)
        i = n - 1
        while i > 0 and a[i] == bound[i]:
            i -= 1
        if i == 0:
            break
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
            bound[j] = max(bound[j - 1], a[j - 1] + 1)
    return np.frombuffer(bytes(buf), dtype=np.uint8).reshape(-1, n).copy()


def refinement_matrix(rgs: np.ndarray) -> np.ndarray:
    """``R[i, j]`` is True iff every block of partition ``j`` lies in a block of ``i``."""
    rows = [tuple(int(x) for x in r) for r in rgs]
    m = len(rows)
    n = rgs.shape[1] if rgs.ndim == 2 else 0
    out = np.zeros((m, m), dtype=bool)
    for i, coarse in enumerate(rows):
        for j, fine in enumerate(rows):
            image: dict[int, int] = {}
            ok = True
            for x in range(n):
                seen = image.setdefault(fine[x], coarse[x])
                if seen != coarse[x]:
                    ok = False
                    break
            out[i, j] = ok
    return out


def count_orbit_representatives(
    k: int, n: int, map_kind: int, balls_indist: bool, boxes_indist: bool
) -> int:
    """Count orbits of maps ``[k] -> [n]`` by testing every map for canonicity.

    Ball permutations act on the domain, box permutations on the codomain.
    Each orbit holds exactly one canonical map: non-decreasing for ball orbits,
    a restricted growth string for box orbits, and both (with non-increasing
    run lengths) when both groups act.
    """
    count = 0
    for f in product(range(n), repeat=k):
        if map_kind == INJECTIVE and len(set(f)) != k:
            continue
        if map_kind == SURJECTIVE and len(set(f)) != n:
            continue
        if balls_indist and any(f[i] > f[i + 1] for i in range(k - 1)):
            continue
        if boxes_indist:
            top = -1
            rgs = True
            for v in f:
                if v > top + 1:
                    rgs = False
                    break
                top = max(top, v)
            if not rgs:
                continue
        if balls_indist and boxes_indist:
            runs = [f.count(v) for v in range(max(f) + 1)] if k else []
            if any(runs[i] < runs[i + 1] for i in range(len(runs) - 1)):
                continue
        count += 1
    return count
