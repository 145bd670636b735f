"""Social network over players and the clique coalitions it allows."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from considerate.errors import CliqueCapExceeded, StructuralError

DEFAULT_CLIQUE_CAP = 20_000


@dataclass(frozen=True)
class SocialGraph:
    """Undirected simple graph on players ``0..n-1``.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        norm = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise StructuralError(f"self-loop on player {i}")
            for v in (i, j):
                if not 0 <= v < self.n:
                    raise StructuralError(f"edge endpoint {v} out of range [0, {self.n})")
            norm.add((min(i, j), max(i, j)))
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int) -> SocialGraph:
        return cls(n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SocialGraph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_cliques(cls, n: int, groups: Iterable[Iterable[int]]) -> SocialGraph:
        edges = set()
        for g in groups:
            edges.update(combinations(sorted(set(g)), 2))
        return cls(n, frozenset(edges))

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def is_clique(self, players: Iterable[int]) -> bool:
        members = list(players)
        return all(b in self.adj[a] for a, b in combinations(members, 2))

    def partition_classes(self) -> list[tuple[int, ...]] | None:
        """Connected components if every component is a clique, else ``None``."""
        seen = [False] * self.n
        classes = []
        for v in range(self.n):
            if seen[v]:
                continue
            comp = sorted(self.adj[v] | {v})
            for u in comp:
                seen[u] = True
                if self.adj[u] | {u} != set(comp):
                    return None
            classes.append(tuple(comp))
        return classes


def neighborhood(graph: SocialGraph, coalition: Iterable[int]) -> frozenset[int]:
    """All players adjacent to some coalition member.

    Members adjacent to other members are included; nothing is subtracted.
    """
    out: set[int] = set()
    for i in coalition:
        out |= graph.adj[i]
    return frozenset(out)


def same_resource_neighbors(graph: SocialGraph, state: Sequence[int], player: int, resource: int) -> int:
    return sum(1 for j in graph.adj[player] if state[j] == resource)


def own_resource_neighbors(graph: SocialGraph, state: Sequence[int], player: int) -> int:
    return same_resource_neighbors(graph, state, player, state[player])


def maximal_cliques(graph: SocialGraph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting; every vertex lies in some result."""
    adj = graph.adj
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    expand([], set(range(graph.n)), set())
    return sorted(out)


def enumerate_cliques(
    graph: SocialGraph, max_size: int | None = None, cap: int = DEFAULT_CLIQUE_CAP
) -> list[tuple[int, ...]]:
    """Every clique of size ``1..max_size``, ordered by size then lexicographically.

    Non-maximal cliques are included. Raises ``CliqueCapExceeded`` once more
    than ``cap`` distinct cliques have been produced.
    """
    if max_size is None:
        max_size = graph.n
    if max_size < 1:
        raise StructuralError(f"max_size must be >= 1, got {max_size}")
    found: set[tuple[int, ...]] = set()
    for mc in maximal_cliques(graph):
        for k in range(1, min(len(mc), max_size) + 1):
            for sub in combinations(mc, k):
                if sub not in found:
                    found.add(sub)
                    if len(found) > cap:
                        raise CliqueCapExceeded(cap, len(found))
    return sorted(found, key=lambda c: (len(c), c))
