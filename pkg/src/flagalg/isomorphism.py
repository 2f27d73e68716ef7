"""Small-scale poset isomorphism: invariant certificates plus backtracking.

The certificate is a color-refinement fingerprint (stable, no salted
hashing) used to prefilter; equality of structure is then confirmed by an
exhaustive search seeded with the refined colors.  Intended for the sizes
that show up in interval memoization and in tests, not as a general graph
isomorphism package.
"""

from __future__ import annotations

from .poset import Poset


def _cover_adjacency(p: Poset):
    up = [[] for _ in range(p.n)]
    down = [[] for _ in range(p.n)]
    for a, b in p.covers:
        up[a].append(b)
        down[b].append(a)
    return up, down


def refine_colors(p: Poset) -> list[int]:
    """Stable color refinement over the cover digraph, seeded by rank."""
    up, down = _cover_adjacency(p)
    colors = [(p.rank[x], len(up[x]), len(down[x])) for x in range(p.n)]
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    colors = [palette[c] for c in colors]
    for _ in range(p.n):
        sigs = [
            (
                colors[x],
                tuple(sorted(colors[y] for y in up[x])),
                tuple(sorted(colors[y] for y in down[x])),
            )
            for x in range(p.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def certificate(p: Poset) -> tuple:
    """Isomorphism-invariant fingerprint; equal for isomorphic posets."""
    colors = refine_colors(p)
    counts = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    cover_profile = {}
    for a, b in p.covers:
        key = (colors[a], colors[b])
        cover_profile[key] = cover_profile.get(key, 0) + 1
    return (
        p.n,
        tuple(sorted(counts.items())),
        tuple(sorted(cover_profile.items())),
    )


def are_isomorphic(p: Poset, q: Poset) -> bool:
    if p.n != q.n or len(p.covers) != len(q.covers):
        return False
    if certificate(p) != certificate(q):
        return False
    return _search(p, q)


def _search(p: Poset, q: Poset) -> bool:
    # Map level by level, ascending rank.  Once every element of lower rank
    # is mapped, a candidate image for x must have down-cover set exactly
    # equal to the image of x's down-covers; a bijection matching all
    # down-covers is a cover isomorphism, hence (order = closure of covers)
    # a poset isomorphism.
    cp, cq = refine_colors(p), refine_colors(q)
    if sorted(cp) != sorted(cq):
        return False
    up_p, down_p = _cover_adjacency(p)
    up_q, down_q = _cover_adjacency(q)
    del up_p, up_q
    levels = max(p.top_rank, q.top_rank) + 1
    p_by_rank = [[] for _ in range(levels)]
    q_by_rank = [[] for _ in range(levels)]
    for x in range(p.n):
        p_by_rank[p.rank[x]].append(x)
    for y in range(q.n):
        q_by_rank[q.rank[y]].append(y)
    if [len(l) for l in p_by_rank] != [len(l) for l in q_by_rank]:
        return False

    order = [x for level in p_by_rank for x in level]
    mapping = [-1] * p.n
    used = [False] * q.n
    q_down_sets = [frozenset(down_q[y]) for y in range(q.n)]
    iters = [None] * p.n
    chosen = [-1] * p.n

    pos = 0
    while 0 <= pos < p.n:
        x = order[pos]
        if iters[pos] is None:
            want = frozenset(mapping[z] for z in down_p[x])
            iters[pos] = iter(
                [
                    y
                    for y in q_by_rank[p.rank[x]]
                    if not used[y] and cq[y] == cp[x] and q_down_sets[y] == want
                ]
            )
        if chosen[pos] != -1:
            used[chosen[pos]] = False
            mapping[x] = -1
            chosen[pos] = -1
        y = next(iters[pos], None)
        if y is None:
            iters[pos] = None
            pos -= 1
            continue
        mapping[x] = y
        used[y] = True
        chosen[pos] = y
        pos += 1
    return pos == p.n
