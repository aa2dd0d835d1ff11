"""Pure-Python state-sum kernel (fallback for the compiled ``_ckernel``).

Phrases are passed in integer form: ``comps`` is a list of lists of letter
indices ``0..n-1``, ``proj`` a list of ``+1``/``-1`` projections and ``mark``
a list of ``+1``/``-1`` markers.  Projections over ``alpha_1`` are safe under
the cyclic rotations used to bring a letter to the head of its component:
``nu_1`` is the identity.
"""

from __future__ import annotations

from collections import Counter

__all__ = ["delete_letter", "reduce_loops", "state_counts"]


def _twist(x: list, proj: list) -> None:
    for a, c in Counter(x).items():
        if c == 1:
            proj[a] = -proj[a]


def delete_letter(comps: list, proj: list, a, mark_a: int) -> None:
    """Apply one deformation step for letter ``a`` in place.

    Works on any list-of-lists structure where ``a`` occurs exactly twice;
    other entries may occur once (used for the placeholder words of the
    order-independence table).
    """
    occ = [(ci, j) for ci, comp in enumerate(comps) for j, b in enumerate(comp) if b == a]
    (c1, i1), (c2, i2) = occ
    keep = mark_a == proj[a]
    if c1 == c2:
        w = comps[c1]
        x = w[i1 + 1:i2]
        y = w[i2 + 1:] + w[:i1]
        if keep:
            comps[c1:c1 + 1] = [x, y]
        else:
            _twist(x, proj)
            comps[c1] = x[::-1] + y
    else:
        w1, w2 = comps[c1], comps[c2]
        x = w1[i1 + 1:] + w1[:i1]
        y = w2[i2 + 1:] + w2[:i2]
        if not keep:
            _twist(x, proj)
            x = x[::-1]
        comps[c1] = x + y
        del comps[c2]


def reduce_loops(comps, proj, mark, order=None) -> int:
    """Number of empty words left after deleting every letter.

    ``order`` fixes the deletion sequence; by default the leftmost letter of
    the current concatenation is deleted next.
    """
    comps = [list(c) for c in comps]
    proj = list(proj)
    if order is None:
        while True:
            head = next((c[0] for c in comps if c), None)
            if head is None:
                break
            delete_letter(comps, proj, head, mark[head])
    else:
        for a in order:
            delete_letter(comps, proj, a, mark[a])
    return len(comps)


def state_counts(comps, proj, n: int, start: int = 0, stop: int | None = None) -> list[list[int]]:
    """``counts[k][l]`` = number of states with ``k`` plus-markers and ``l`` loops.

    States are indexed by binary counting: bit ``i`` of the index set means
    ``mark(i) = -1``.  Only indices in ``[start, stop)`` are visited.
    """
    if stop is None:
        stop = 1 << n
    width = n + len(comps) + 1
    counts = [[0] * width for _ in range(n + 1)]
    for s in range(start, stop):
        mark = [-1 if (s >> i) & 1 else 1 for i in range(n)]
        loops = reduce_loops(comps, proj, mark)
        counts[n - bin(s).count("1")][loops] += 1
    return counts
