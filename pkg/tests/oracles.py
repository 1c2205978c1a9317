"""Brute-force reference implementations used as test oracles.

Nothing here imports the library's algorithms; graphs are plain
``(vertices, edges)`` pairs and everything is computed from the definitions
by enumerating subsets or permutations.  F is evaluated with mpmath at high
precision, independently of the library's interval and exponential routes.
"""

from itertools import combinations, permutations, product

import mpmath

mpmath.mp.dps = 60


def edges_within(edges, S):
    S = set(S)
    return sum(1 for u, v in edges if u in S and v in S)


def delta(edges, S):
    return 2 * len(set(S)) - edges_within(edges, S)


def subsets(vs, min_size=0):
    vs = sorted(vs)
    for r in range(min_size, len(vs) + 1):
        for c in combinations(vs, r):
            yield frozenset(c)


def k_sparse(vs, edges, k):
    """True, or the first violator by (size, sorted labels)."""
    for S in subsets(vs, 1):
        if edges_within(edges, S) > k * len(S):
            return S
    return True


def brute_orientable(vs, edges, k):
    edges = list(edges)
    for bits in product((0, 1), repeat=len(edges)):
        out = dict.fromkeys(vs, 0)
        for (u, v), b in zip(edges, bits):
            out[u if b == 0 else v] += 1
        if all(d <= k for d in out.values()):
            return True
    return False


def count_orientations(vs, edges, k):
    edges = list(edges)
    n = 0
    for bits in product((0, 1), repeat=len(edges)):
        out = dict.fromkeys(vs, 0)
        for (u, v), b in zip(edges, bits):
            out[u if b == 0 else v] += 1
        n += all(d <= k for d in out.values())
    return n


def is_closed(vs, edges, A):
    A = frozenset(A)
    dA = delta(edges, A)
    rest = sorted(set(vs) - A)
    for r in range(1, len(rest) + 1):
        for extra in combinations(rest, r):
            if delta(edges, A | set(extra)) <= dA:
                return False
    return True


def closure(vs, edges, A):
    """Intersection of every d-closed superset (the definition)."""
    out = frozenset(vs)
    A = frozenset(A)
    rest = sorted(set(vs) - A)
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            C = A | set(extra)
            if is_closed(vs, edges, C):
                out &= C
    return out


def F_ref(x):
    """The reference control function at high precision."""
    x = mpmath.mpf(x)
    if x <= 1:
        return 2 * x
    if x <= 2:
        return 2 + (x - 1)
    return mpmath.log(8 * x + 1) / 4 + 3 - mpmath.log(17) / 4


def in_CF(vs, edges):
    for S in subsets(vs, 1):
        d = delta(edges, S)
        f = F_ref(len(S))
        # ties only occur at the rational knots, where F is an exact integer
        if d < f and not mpmath.almosteq(d, f, rel_eps=mpmath.mpf(10) ** -40):
            return False
    return True


def in_Cgt0(vs, edges):
    return all(delta(edges, S) > 0 for S in subsets(vs, 1))


def automorphism_count(vs, edges):
    vs = sorted(vs)
    E = {frozenset(e) for e in edges}
    n = 0
    for p in permutations(vs):
        m = dict(zip(vs, p))
        if {frozenset((m[u], m[v])) for u, v in E} == E:
            n += 1
    return n


def canon(n, edges):
    """Lexicographically least sorted edge list over all relabellings of 0..n-1."""
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield [p for p, b in zip(pairs, bits) if b]


def iso_classes(n):
    seen = set()
    for edges in all_graphs(n):
        c = canon(n, edges)
        if c not in seen:
            seen.add(c)
            yield list(c)


def label_pairs(vs, edges, head):
    """Pairs (a, b) satisfying the label formula at head, by brute force."""
    adj = {v: set() for v in vs}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    found = set()
    for a, b in permutations(vs, 2):
        if head in (a, b) or b not in adj[a]:
            continue
        others = [v for v in vs if v not in (head, a, b)]
        for l1, l2, l3, l4 in permutations(others, 4):
            if (
                l1 in adj[head]
                and l2 in adj[l1]
                and l3 in adj[l2]
                and l4 in adj[l3]
                and l1 in adj[l4]
                and a in adj[l2]
                and a in adj[l4]
                and b in adj[l3]
            ):
                found.add((a, b))
                break
    return found


def subset_edge_counts(n, edges):
    """e(S) for every subset mask S of range(n), by dynamic programming."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    counts = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        v = low.bit_length() - 1
        rest = S ^ low
        counts[S] = counts[rest] + bin(adj[v] & rest).count("1")
    return counts


def sparse_by_masks(n, edges, k, counts=None):
    counts = subset_edge_counts(n, edges) if counts is None else counts
    return all(counts[S] <= k * bin(S).count("1") for S in range(1, 1 << n))
