"""d-closedness, d-closure, submodularity, free amalgamation, and membership
in the classes C_{>0} and C_F.

Two search strategies are used throughout.  Small inputs are searched
exhaustively in a fixed order (increasing size, then lexicographic on sorted
labels), which makes witnesses minimal and reproducible.  Larger inputs go
through exact polynomial-time routes built on the minimum-predimension
superset flow (:mod:`hrushovski._flow`); their witnesses are valid but not
necessarily of minimum size.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations

from ._flow import min_delta_superset
from .control import ControlFunction, inverse_bound, reference_F, required_delta
from .errors import GraphError, PreconditionError, SearchBudgetExceeded, UnknownVertexError
from .graph import Graph, iter_bits

__all__ = [
    "SetCheck",
    "ClosednessResult",
    "ClosureCertificate",
    "AmalgamSpec",
    "Amalgam",
    "is_d_closed",
    "d_closure",
    "closure_bound",
    "submodularity_defect",
    "free_amalgam",
    "in_C_gt0",
    "in_C_F",
    "search_budget",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 16
BUDGET_ENV = "HRUSHOVSKI_SEARCH_BUDGET"
DEFAULT_BUDGET = 2_000_000


def search_budget() -> int:
    """Node budget for backtracking searches; overridable through the
    ``HRUSHOVSKI_SEARCH_BUDGET`` environment variable."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


def _sorted(s: Iterable[str]) -> list[str]:
    return sorted(s)


def _subsets_by_size(indices: list[int], sizes: Iterable[int]) -> Iterator[int]:
    for size in sizes:
        for combo in combinations(indices, size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask


@dataclass(frozen=True)
class SetCheck:
    """Outcome of a class-membership test.  Truthy iff the check passed."""

    ok: bool
    witness: frozenset[str] | None = None
    delta: int | None = None
    required: int | None = None
    method: str = "exhaustive"

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "witness": None if self.witness is None else _sorted(self.witness),
            "delta": self.delta,
            "required": self.required,
            "method": self.method,
        }


@dataclass(frozen=True)
class ClosednessResult:
    """Outcome of :func:`is_d_closed`; truthy iff closed.

    On failure ``witness`` is a strict superset ``C`` with
    ``delta(C) <= delta(A)`` and ``delta_change = delta(C) - delta(A)``.
    """

    closed: bool
    witness: frozenset[str] | None = None
    delta_change: int | None = None
    method: str = "exhaustive"

    def __bool__(self) -> bool:
        return self.closed

    def to_dict(self) -> dict:
        return {
            "closed": self.closed,
            "witness": None if self.witness is None else _sorted(self.witness),
            "delta_change": self.delta_change,
            "method": self.method,
        }


# -- d-closedness -------------------------------------------------------------


def _check_subset(G: Graph, A: Iterable[str]) -> int:
    return G.mask_of(A)


def is_d_closed(ambient: Graph, A: Iterable[str], method: str = "auto") -> ClosednessResult:
    """Whether every strict superset ``C`` of ``A`` in ``ambient`` has
    ``delta(C) > delta(A)``.

    The inequality is evaluated literally even when ``ambient`` is outside
    C_{>0}.  Exhaustive search reports the smallest violating superset
    (lexicographically first among those); the flow route reports the
    d-closure of ``A`` instead.
    """
    a_mask = _check_subset(ambient, A)
    rest = [i for i in range(len(ambient.order)) if not a_mask >> i & 1]
    if method == "auto":
        method = "exhaustive" if len(rest) <= EXHAUSTIVE_LIMIT else "flow"
    d_a = ambient.delta_mask(a_mask)
    if method == "exhaustive":
        for extra in _subsets_by_size(rest, range(1, len(rest) + 1)):
            d = ambient.delta_mask(a_mask | extra)
            if d <= d_a:
                return ClosednessResult(False, ambient.set_of(a_mask | extra), d - d_a, "exhaustive")
        return ClosednessResult(True, method="exhaustive")
    if method == "flow":
        d_min, closure = min_delta_superset(ambient, a_mask)
        if closure == a_mask:
            return ClosednessResult(True, method="flow")
        return ClosednessResult(False, ambient.set_of(closure), d_min - d_a, "flow")
    raise ValueError(f"unknown method {method!r}")


# -- d-closure ------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureCertificate:
    """A d-closure together with the data needed to re-check it.

    ``steps`` lists the closure vertices outside the seed, in label order,
    each with the predimension of the seed plus every vertex up to it.
    """

    ambient: Graph
    seed: frozenset[str]
    closure: frozenset[str]
    checked_bound: int
    method: str
    seed_delta: int
    closure_delta: int
    steps: tuple[tuple[str, int], ...] = ()
    nodes_visited: int = 0

    def to_dict(self) -> dict:
        return {
            "seed": _sorted(self.seed),
            "closure": _sorted(self.closure),
            "bound": self.checked_bound,
            "method": self.method,
            "seed_delta": self.seed_delta,
            "closure_delta": self.closure_delta,
            "steps": [{"add": v, "delta": d} for v, d in self.steps],
        }


def closure_bound(F: ControlFunction, seed_size: int) -> int:
    """Size bound on d-closures of ``seed_size``-sets inside members of C_F:
    the least ``m`` with ``F(m) >= 2 * seed_size``."""
    return inverse_bound(F, 2 * seed_size)


def _closure_branch_and_bound(G: Graph, a_mask: int, bound: int, budget: int) -> tuple[int, int]:
    """Union of all delta-minimisers among ``A <= X``, ``|X| <= bound``."""
    n = len(G.order)
    adj = G.adjacency
    cand = [i for i in range(n) if not a_mask >> i & 1]
    best = G.delta_mask(a_mask)
    union = a_mask
    visited = 0
    cap = bound - a_mask.bit_count()

    def lower_bound(x_mask: int, pool: list[int], d: int) -> float:
        pool_mask = 0
        for v in pool:
            pool_mask |= 1 << v
        gains = []
        for v in pool:
            g = 2 - (adj[v] & x_mask).bit_count() - (adj[v] & pool_mask).bit_count() / 2
            if g < 0:
                gains.append(g)
        gains.sort()
        return d + sum(gains[: max(cap - (x_mask.bit_count() - a_mask.bit_count()), 0)])

    def walk(start: int, x_mask: int, d: int, added: int) -> None:
        nonlocal best, union, visited
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(f"d-closure search exceeded {budget} nodes")
        if d < best:
            best, union = d, x_mask
        elif d == best:
            union |= x_mask
        if added == cap:
            return
        pool = cand[start:]
        if not pool or lower_bound(x_mask, pool, d) > best:
            return
        for pos in range(start, len(cand)):
            v = cand[pos]
            walk(pos + 1, x_mask | 1 << v, d + 2 - (adj[v] & x_mask).bit_count(), added + 1)

    walk(0, a_mask, best, 0)
    return union, visited


def d_closure(
    ambient: Graph,
    A: Iterable[str],
    bound: int | None = None,
    method: str = "auto",
    check: bool = True,
) -> ClosureCertificate:
    """The intersection of all d-closed supersets of ``A`` in ``ambient``.

    The closure is also the union of all supersets of ``A`` with least
    predimension, which is what both strategies compute.  ``bound`` caps the
    size of supersets examined by the branch-and-bound search; it must be a
    genuine upper bound on the closure size, such as :func:`closure_bound`
    for ambients in C_F.
    """
    a_mask = _check_subset(ambient, A)
    if check:
        gt0 = in_C_gt0(ambient)
        if not gt0:
            raise PreconditionError("ambient graph is not in C_{>0}", gt0)
    n_rest = len(ambient) - a_mask.bit_count()
    if method == "auto":
        method = "exhaustive" if n_rest <= 2 * EXHAUSTIVE_LIMIT and (bound is not None or n_rest <= EXHAUSTIVE_LIMIT + 4) else "flow"
    limit = len(ambient) if bound is None else min(bound, len(ambient))
    limit = max(limit, a_mask.bit_count())
    visited = 0
    if method == "exhaustive":
        closure, visited = _closure_branch_and_bound(ambient, a_mask, limit, search_budget())
    elif method == "flow":
        _, closure = min_delta_superset(ambient, a_mask)
    else:
        raise ValueError(f"unknown method {method!r}")
    seed = ambient.set_of(a_mask)
    extra = _sorted(ambient.set_of(closure & ~a_mask))
    steps = []
    mask = a_mask
    for v in extra:
        mask |= 1 << ambient.index[v]
        steps.append((v, ambient.delta_mask(mask)))
    return ClosureCertificate(
        ambient=ambient,
        seed=seed,
        closure=ambient.set_of(closure),
        checked_bound=limit,
        method=method,
        seed_delta=ambient.delta_mask(a_mask),
        closure_delta=ambient.delta_mask(closure),
        steps=tuple(steps),
        nodes_visited=visited,
    )


# -- submodularity ------------------------------------------------------------------


def submodularity_defect(ambient: Graph, B: Iterable[str], C: Iterable[str]) -> int:
    """delta(B) + delta(C) - delta(B & C) - delta(B | C).

    Equals the number of edges between ``B - C`` and ``C - B``, so it is zero
    exactly when B and C are freely amalgamated over their intersection.
    """
    b = _check_subset(ambient, B)
    c = _check_subset(ambient, C)
    d = ambient.delta_mask
    return d(b) + d(c) - d(b & c) - d(b | c)


# -- free amalgamation ------------------------------------------------------------------


@dataclass(frozen=True)
class AmalgamSpec:
    """Two graphs ``left``, ``right`` with embeddings of ``base`` into each."""

    base: Graph
    left: Graph
    right: Graph
    left_embedding: Mapping[str, str]
    right_embedding: Mapping[str, str]

    def validate(self) -> None:
        for name, emb, target in (
            ("left", self.left_embedding, self.left),
            ("right", self.right_embedding, self.right),
        ):
            if set(emb) != set(self.base.vertices):
                raise GraphError(f"{name} embedding must be defined exactly on the base vertices")
            image = list(emb.values())
            if len(set(image)) != len(image):
                raise GraphError(f"{name} embedding is not injective")
            missing = set(image) - target.vertices
            if missing:
                raise UnknownVertexError(missing)
            for u, v in combinations(self.base.order, 2):
                if self.base.has_edge(u, v) != target.has_edge(emb[u], emb[v]):
                    raise GraphError(f"{name} embedding is not induced at {u}, {v}")

    @classmethod
    def over_common(cls, left: Graph, right: Graph, shared: Iterable[str] | None = None) -> AmalgamSpec:
        """Amalgamate over identically named vertices (default: all shared)."""
        shared = set(left.vertices & right.vertices) if shared is None else set(shared)
        base = left.induced(shared)
        ident = {v: v for v in shared}
        return cls(base, left, right, ident, dict(ident))


@dataclass(frozen=True)
class Amalgam:
    graph: Graph
    left_map: dict[str, str]
    right_map: dict[str, str]


def _fresh(name: str, used: set[str]) -> str:
    out = name
    while out in used:
        out += "'"
    return out


def free_amalgam(spec: AmalgamSpec) -> Amalgam:
    """Disjoint union of ``left`` and ``right`` over the base, no new edges.

    Left vertices keep their names.  Right vertices outside the base image
    keep theirs unless taken, in which case primes are appended.
    """
    spec.validate()
    left_map = {v: v for v in spec.left.vertices}
    glue = {spec.right_embedding[a]: spec.left_embedding[a] for a in spec.base.vertices}
    used = set(spec.left.vertices)
    right_map = {}
    for v in spec.right.order:
        if v in glue:
            right_map[v] = glue[v]
        else:
            right_map[v] = _fresh(v, used)
            used.add(right_map[v])
    edges = list(spec.left.edges) + [(right_map[u], right_map[v]) for u, v in spec.right.edges]
    return Amalgam(Graph(used, edges), left_map, right_map)


# -- class membership ------------------------------------------------------------------


def _two_core(G: Graph, mask: int) -> int:
    adj = G.adjacency
    changed = True
    while changed:
        changed = False
        for i in iter_bits(mask):
            if (adj[i] & mask).bit_count() <= 1:
                mask &= ~(1 << i)
                changed = True
    return mask


def _connected_subsets(G: Graph, within: int, size: int, budget: int) -> Iterator[int]:
    """Connected vertex sets of exactly ``size`` inside ``within``, each once."""
    adj = G.adjacency
    count = 0

    def extend(sub: int, ext: int, root: int):
        nonlocal count
        count += 1
        if count > budget:
            raise SearchBudgetExceeded(f"connected-subset enumeration exceeded {budget} nodes")
        if sub.bit_count() == size:
            yield sub
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            excl = 0
            for i in iter_bits(sub):
                excl |= adj[i]
            new_ext = ext | (adj[w] & within & ~excl & ~sub & ~((1 << (root + 1)) - 1))
            yield from extend(sub | low, new_ext & ~low, root)

    for v in iter_bits(within):
        ext = adj[v] & within & ~((1 << (v + 1)) - 1)
        yield from extend(1 << v, ext, v)


def _first_violation_exhaustive(G: Graph, within: int, required: Callable[[int], int], budget: int):
    idx = list(iter_bits(within))
    visited = 0
    for size in range(1, len(idx) + 1):
        r = required(size)
        for combo in combinations(idx, size):
            visited += 1
            if visited > budget:
                raise SearchBudgetExceeded(f"subset search exceeded {budget} subsets")
            mask = 0
            for i in combo:
                mask |= 1 << i
            d = G.delta_mask(mask)
            if d < r:
                return mask, d, r
    return None


def _membership(G: Graph, required: Callable[[int], int], method: str) -> SetCheck:
    n = len(G.order)
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "structured"
    budget = search_budget()
    if method == "exhaustive":
        hit = _first_violation_exhaustive(G, G.full_mask, required, budget)
        if hit is None:
            return SetCheck(True, method="exhaustive")
        mask, d, r = hit
        return SetCheck(False, G.set_of(mask), d, r, "exhaustive")
    if method != "structured":
        raise ValueError(f"unknown method {method!r}")

    # sizes 1 and 2 directly, lexicographically
    r1 = required(1) if n >= 1 else None
    if n >= 1 and 2 < r1:
        v = G.order[0]
        return SetCheck(False, frozenset([v]), 2, r1, "structured")
    if n >= 2:
        r2 = required(2)
        for i, j in combinations(range(n), 2):
            d = 4 - (G.adjacency[i] >> j & 1)
            if d < r2:
                return SetCheck(False, G.set_of(1 << i | 1 << j), d, r2, "structured")
    if n < 3:
        return SetCheck(True, method="structured")

    # minimal violators of size >= 3 are connected and sit in the 2-core,
    # provided the integer thresholds grow by at most one per vertex and are
    # subadditive
    thresholds = [0] + [required(s) for s in range(1, n + 1)]
    steps_ok = all(thresholds[s] - thresholds[s - 1] <= 1 for s in range(3, n + 1))
    subadd = all(
        thresholds[a] + thresholds[b] >= thresholds[a + b]
        for a in range(1, n + 1)
        for b in range(a, n + 1 - a)
    )
    if not (steps_ok and subadd):
        hit = _first_violation_exhaustive(G, G.full_mask, required, budget)
        if hit is None:
            return SetCheck(True, method="exhaustive")
        mask, d, r = hit
        return SetCheck(False, G.set_of(mask), d, r, "exhaustive")

    core = _two_core(G, G.full_mask)
    k = core.bit_count()
    band_starts = [s for s in range(3, k + 1) if s == 3 or thresholds[s] != thresholds[s - 1]]
    for s in band_starts:
        r = thresholds[s]
        for seed in _connected_subsets(G, core, s, budget):
            d, mask = min_delta_superset(G, seed, core)
            if d < r:
                return _shrink_witness(G, mask, required)
    return SetCheck(True, method="structured")


def _shrink_witness(G: Graph, mask: int, required: Callable[[int], int]) -> SetCheck:
    """Replace a violating set by the first violating subset of it (minimal
    when the set is small enough to search exhaustively)."""
    if mask.bit_count() <= EXHAUSTIVE_LIMIT:
        hit = _first_violation_exhaustive(G, mask, required, search_budget())
        if hit is not None:
            m, d, r = hit
            return SetCheck(False, G.set_of(m), d, r, "structured")
    d = G.delta_mask(mask)
    return SetCheck(False, G.set_of(mask), d, required(mask.bit_count()), "structured")


def in_C_gt0(G: Graph, method: str = "auto") -> SetCheck:
    """Every nonempty vertex subset has positive predimension."""
    return _membership(G, lambda s: 1, method)


def in_C_F(G: Graph, F: ControlFunction | None = None, method: str = "auto") -> SetCheck:
    """Every vertex subset ``A`` has ``delta(A) >= F(|A|)``, decided exactly.

    The integer threshold for each size comes from the exact comparator, so
    there is no rounding anywhere in the decision.  (C_F lies inside C_{>0}
    because ``F > 0`` on positive integers.)
    """
    F = reference_F() if F is None else F
    return _membership(G, lambda s: max(required_delta(F, s), 1), method)
