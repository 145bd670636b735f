"""Seeded random instances and social graphs."""

from __future__ import annotations

import random

from considerate.errors import StructuralError
from considerate.game import GameInstance
from considerate.social import SocialGraph

DEFAULT_SEED = 20100101


def parse_graph_spec(spec: str) -> tuple[str, float | int | None]:
    """``empty``, ``gnp:<p>`` or ``cliques:<k>``."""
    kind, _, arg = spec.partition(":")
    if kind == "empty" and not arg:
        return "empty", None
    if kind == "gnp":
        try:
            p = float(arg)
        except ValueError:
            raise StructuralError(f"bad gnp probability in {spec!r}") from None
        if not 0.0 <= p <= 1.0:
            raise StructuralError(f"gnp probability must lie in [0, 1], got {p}")
        return "gnp", p
    if kind == "cliques":
        try:
            k = int(arg)
        except ValueError:
            raise StructuralError(f"bad clique size in {spec!r}") from None
        if k < 1:
            raise StructuralError(f"clique size must be >= 1, got {k}")
        return "cliques", k
    raise StructuralError(f"unknown graph spec {spec!r}; use empty, gnp:<p> or cliques:<k>")


def random_graph(n: int, spec: str, rng: random.Random) -> SocialGraph:
    kind, arg = parse_graph_spec(spec)
    if kind == "empty":
        return SocialGraph.empty(n)
    if kind == "gnp":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < arg]
        return SocialGraph.from_edges(n, edges)
    return SocialGraph.from_cliques(n, [range(s, min(s + arg, n)) for s in range(0, n, arg)])


def gen_random(
    n: int,
    m: int,
    delay_max: int,
    graph_spec: str = "empty",
    seed: int = DEFAULT_SEED,
) -> tuple[GameInstance, SocialGraph]:
    """Random strictly increasing tables drawn from ``[0, delay_max]`` plus a graph.

    Everything is a function of the arguments; ``seed`` must fit in 64 bits.
    """
    if n < 1 or m < 1:
        raise StructuralError(f"need n >= 1 and m >= 1, got n={n} m={m}")
    if delay_max < n:
        raise StructuralError(f"delay_max={delay_max} leaves no room for {n} strictly increasing values")
    if not 0 <= seed < 2**64:
        raise StructuralError(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = random.Random(seed)
    tables = tuple(tuple(sorted(rng.sample(range(delay_max + 1), n))) for _ in range(m))
    return GameInstance(n, m, tables), random_graph(n, graph_spec, rng)
