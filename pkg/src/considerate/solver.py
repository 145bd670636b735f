"""Constructive computation of a state that is both a Nash and a considerate equilibrium.

Starting from a greedy Nash equilibrium, single players are moved from high
to low resources whenever that lowers the potential

    phi(s) = M * sum_i |same-resource neighbors of i| + sum_r d_r(load_r),

with ``M`` larger than every possible delay sum. Every intermediate state stays
a Nash equilibrium, and when no such move is left the state admits no weak
considerate improving move by any clique.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

from considerate.errors import ContractViolation, SolverBudgetError
from considerate.game import GameInstance, State, load_profile
from considerate.social import SocialGraph, own_resource_neighbors, same_resource_neighbors


@dataclass(frozen=True)
class ResourceClassification:
    d_max: int
    high: frozenset[int]
    low: frozenset[int]
    other: frozenset[int]


@dataclass(frozen=True)
class SolverConfig:
    big_m: int
    max_iterations: int = 1_000_000

    @classmethod
    def for_instance(cls, instance: GameInstance, max_iterations: int = 1_000_000) -> SolverConfig:
        return cls(1 + sum(row[-1] for row in instance.delays), max_iterations)

    def check(self, instance: GameInstance) -> None:
        bound = sum(row[-1] for row in instance.delays)
        if self.big_m <= bound:
            raise ContractViolation("big-M", f"M={self.big_m} must exceed sum of d_r(n) = {bound}")


@dataclass(frozen=True)
class WitnessMove:
    player: int
    source: int
    target: int
    kind: Literal["step2", "step3"]


@dataclass(frozen=True)
class SolveStep:
    move: WitnessMove
    state: State
    phi: int


@dataclass
class SolveResult:
    initial: State
    state: State
    phi_start: int
    phi_end: int
    steps: list[SolveStep] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)

    def states(self) -> list[State]:
        return [self.initial] + [s.state for s in self.steps]


def greedy_nash(instance: GameInstance, order: Sequence[int] | None = None) -> State:
    """Insert players one at a time on a resource with the cheapest next slot.

    Ties go to the lowest resource index. ``order`` is the insertion order
    (default ``0..n-1``).
    """
    if order is None:
        order = range(instance.n)
    loads = [0] * instance.m
    state = [0] * instance.n
    d = instance.delays
    for i in order:
        r = min(range(instance.m), key=lambda r: (d[r][loads[r]], r))
        state[i] = r
        loads[r] += 1
    return tuple(state)


def is_nash(instance: GameInstance, state: Sequence[int], loads: Sequence[int] | None = None) -> bool:
    if loads is None:
        loads = load_profile(instance, state)
    d = instance.delays
    # cheapest slot a newcomer could take on each resource
    entry = [d[r][loads[r]] if loads[r] < instance.n else None for r in range(instance.m)]
    for r in range(instance.m):
        if loads[r] == 0:
            continue
        cost = d[r][loads[r] - 1]
        for r2 in range(instance.m):
            if r2 != r and entry[r2] is not None and entry[r2] < cost:
                return False
    return True


def classify_resources(instance: GameInstance, state: Sequence[int]) -> ResourceClassification:
    """Split resources into high, low and other at a Nash equilibrium.

    An unused resource whose first slot costs exactly ``d_max`` counts as low.
    """
    loads = load_profile(instance, state)
    if not is_nash(instance, state, loads):
        raise ContractViolation("nash-precondition", "resource classification needs a Nash equilibrium")
    d = instance.delays
    d_max = max(d[r][loads[r] - 1] for r in range(instance.m) if loads[r])
    high, low, other = set(), set(), set()
    for r in range(instance.m):
        current = d[r][loads[r] - 1] if loads[r] else None
        if current == d_max:
            high.add(r)
        elif loads[r] < instance.n and d[r][loads[r]] == d_max:
            low.add(r)
        else:
            other.add(r)
    return ResourceClassification(d_max, frozenset(high), frozenset(low), frozenset(other))


def find_witness_move(instance: GameInstance, graph: SocialGraph, state: Sequence[int]) -> WitnessMove | None:
    """Lowest-index step-2 move, else lowest-index step-3 move, else ``None``."""
    cls = classify_resources(instance, state)
    if not cls.high or not cls.low:
        return None
    loads = load_profile(instance, state)
    low = sorted(cls.low)
    movers = [i for i in range(instance.n) if state[i] in cls.high]
    for i in movers:
        r = state[i]
        here = same_resource_neighbors(graph, state, i, r)
        for r2 in low:
            if here > same_resource_neighbors(graph, state, i, r2):
                return WitnessMove(i, r, r2, "step2")
    for i in movers:
        r = state[i]
        here = same_resource_neighbors(graph, state, i, r)
        for r2 in low:
            if here == same_resource_neighbors(graph, state, i, r2) and instance.delay(
                r, loads[r] - 1
            ) < instance.delay(r2, loads[r2]):
                return WitnessMove(i, r, r2, "step3")
    return None


def potential_phi(instance: GameInstance, graph: SocialGraph, state: Sequence[int], config: SolverConfig) -> int:
    config.check(instance)
    loads = load_profile(instance, state)
    pairs = sum(own_resource_neighbors(graph, state, i) for i in range(instance.n))
    return config.big_m * pairs + sum(instance.delay(r, x) for r, x in enumerate(loads))


def solve_ce(
    instance: GameInstance,
    graph: SocialGraph,
    config: SolverConfig | None = None,
    *,
    seed: int | None = None,
) -> SolveResult:
    """Run the witness-move process from a greedy Nash equilibrium.

    With ``seed`` the greedy insertion order is a seeded shuffle of the
    players; otherwise it is ``0..n-1``. Every step strictly lowers the
    potential, which bounds the number of iterations.
    """
    if config is None:
        config = SolverConfig.for_instance(instance)
    config.check(instance)
    order = list(range(instance.n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    state = greedy_nash(instance, order)
    phi = potential_phi(instance, graph, state, config)
    result = SolveResult(initial=state, state=state, phi_start=phi, phi_end=phi)
    for _ in range(config.max_iterations):
        move = find_witness_move(instance, graph, state)
        if move is None:
            return result
        nxt = list(state)
        nxt[move.player] = move.target
        state = tuple(nxt)
        new_phi = potential_phi(instance, graph, state, config)
        if new_phi >= phi:
            raise ContractViolation("phi-decrease", f"{move} changed phi {phi} -> {new_phi}")
        phi = new_phi
        result.steps.append(SolveStep(move, state, phi))
        result.state = state
        result.phi_end = phi
    raise SolverBudgetError(f"no fixpoint after {config.max_iterations} iterations")
