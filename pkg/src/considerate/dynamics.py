"""Sequences of weak considerate improving clique moves.

A run repeatedly asks a scheduler for a deviation, validates it, applies it
and stops on convergence (confirmed by the exhaustive oracle), on the first
revisit of a player-labeled state, on an invalid scripted move, or when the
step budget runs out.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal, Protocol

from considerate.errors import BudgetExceeded, ContractViolation
from considerate.formats import format_deviation, format_state
from considerate.game import GameInstance, State, load_profile, validate_state
from considerate.moves import Deviation, apply_deviation, classify_move, move_violations
from considerate.oracle import Budget, find_weak_considerate_clique_move
from considerate.social import SocialGraph, enumerate_cliques

OutcomeKind = Literal["converged_CE", "cycle", "budget_exhausted", "invalid_move"]


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    first_repeat_index: int | None = None
    period: int | None = None
    index: int | None = None
    detail: str = ""

    def describe(self) -> str:
        if self.kind == "cycle":
            return f"cycle first_repeat_index={self.first_repeat_index} period={self.period}"
        if self.kind == "invalid_move":
            return f"invalid_move index={self.index} {self.detail}".rstrip()
        if self.kind == "budget_exhausted":
            return f"budget_exhausted {self.detail}".rstrip()
        return self.kind


@dataclass
class Trace:
    initial: State
    steps: list[tuple[Deviation, State]] = field(default_factory=list)
    outcome: Outcome | None = None

    @property
    def states(self) -> list[State]:
        return [self.initial] + [s for _, s in self.steps]

    def lines(self) -> list[str]:
        out = [
            f"step {k} {format_deviation(dev)} -> {format_state(s)}"
            for k, (dev, s) in enumerate(self.steps, start=1)
        ]
        out.append(f"outcome {self.outcome.describe() if self.outcome else 'none'}")
        return out


class Scheduler(Protocol):
    def propose(self, instance: GameInstance, graph: SocialGraph, state: State) -> Deviation | None:
        """Next deviation to try, or ``None`` when the scheduler has nothing left."""


class ScriptedScheduler:
    """Replays a fixed list of deviations, optionally looping forever."""

    def __init__(self, schedule: Sequence[Deviation], loop: bool = False):
        self.schedule = list(schedule)
        self.loop = loop
        self.position = 0

    def propose(self, instance, graph, state):
        if self.position >= len(self.schedule):
            if not self.loop or not self.schedule:
                return None
            self.position = 0
        dev = self.schedule[self.position]
        self.position += 1
        return dev


class RandomCliqueScheduler:
    """Uniform clique, then a uniform non-identity replacement vector.

    After ``retries`` rejected proposals in a row the scheduler gives up and
    the run falls back to the exhaustive oracle.
    """

    def __init__(self, seed: int, retries: int = 200, budget: Budget | None = None):
        self.rng = random.Random(seed)
        self.retries = retries
        self.budget = budget or Budget()
        self._cliques: list[tuple[int, ...]] | None = None

    def propose(self, instance, graph, state):
        if self._cliques is None:
            self._cliques = enumerate_cliques(graph, cap=self.budget.max_cliques)
        for _ in range(self.retries):
            clique = self._cliques[self.rng.randrange(len(self._cliques))]
            vec = [self.rng.randrange(instance.m) for _ in clique]
            if all(state[p] == r for p, r in zip(clique, vec)):
                continue
            dev = Deviation.from_vector(clique, vec)
            if classify_move(instance, graph, state, dev).weak_considerate_improving:
                return dev
        return None


class ExhaustiveScheduler:
    """Always proposes the oracle's first move."""

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()

    def propose(self, instance, graph, state):
        return find_weak_considerate_clique_move(instance, graph, state, self.budget)


def run_dynamics(
    instance: GameInstance,
    graph: SocialGraph,
    initial: Sequence[int],
    scheduler: Scheduler,
    max_steps: int,
    budget: Budget | None = None,
    strict_schedule: bool | None = None,
) -> Trace:
    """Apply scheduler moves until convergence, a cycle, an invalid move or ``max_steps``.

    Moves that fail validation abort the run with ``invalid_move`` when the
    scheduler is scripted (the default for ``ScriptedScheduler``); other
    schedulers only ever propose validated moves.
    """
    if max_steps < 1:
        raise ContractViolation("max_steps", f"must be >= 1, got {max_steps}")
    budget = budget or Budget()
    if strict_schedule is None:
        strict_schedule = isinstance(scheduler, ScriptedScheduler)
    state = validate_state(instance, initial)
    trace = Trace(initial=state)
    seen = {state: 0}
    for step in range(max_steps):
        try:
            dev = scheduler.propose(instance, graph, state)
        except BudgetExceeded as exc:
            trace.outcome = Outcome("budget_exhausted", detail=f"scheduler: {exc}")
            return trace
        if dev is None and isinstance(scheduler, ExhaustiveScheduler):
            trace.outcome = Outcome("converged_CE")
            return trace
        if dev is None:
            try:
                dev = find_weak_considerate_clique_move(instance, graph, state, budget)
            except BudgetExceeded as exc:
                trace.outcome = Outcome("budget_exhausted", detail=f"convergence check: {exc}")
                return trace
            if dev is None:
                trace.outcome = Outcome("converged_CE")
                return trace
            if isinstance(scheduler, ScriptedScheduler):
                trace.outcome = Outcome("budget_exhausted", detail="schedule exhausted before convergence")
                return trace
        if strict_schedule:
            if not graph.is_clique(dev.coalition):
                trace.outcome = Outcome("invalid_move", index=step, detail=f"coalition {dev.coalition} is not a clique")
                return trace
            if not classify_move(instance, graph, state, dev).weak_considerate_improving:
                why = "; ".join(move_violations(instance, graph, state, dev))
                trace.outcome = Outcome("invalid_move", index=step, detail=why)
                return trace
        state = apply_deviation(instance, state, dev)
        trace.steps.append((dev, state))
        k = len(trace.steps)
        if state in seen:
            trace.outcome = Outcome("cycle", first_repeat_index=seen[state], period=k - seen[state])
            return trace
        seen[state] = k
    trace.outcome = Outcome("budget_exhausted", detail=f"max_steps={max_steps}")
    return trace


def partition_move_check(
    instance: GameInstance, graph: SocialGraph, state: Sequence[int], dev: Deviation
) -> int:
    """Change in the summed cost of the deviating partition class (after minus before).

    The move must be weak considerate improving and stay inside one class.
    """
    classes = graph.partition_classes()
    if classes is None:
        raise ContractViolation("partition-graph", "graph is not a disjoint union of cliques")
    owner = {p: cls for cls in classes for p in cls}
    home = {owner[p] for p in dev.coalition}
    if len(home) != 1:
        raise ContractViolation("partition-coalition", f"coalition {dev.coalition} spans several classes")
    # plain weak improving is not enough: a member can strictly gain while the
    # class neighbors it joins lose the same amount
    if not classify_move(instance, graph, state, dev).weak_considerate_improving:
        raise ContractViolation("weak-considerate", f"{format_deviation(dev)} is not weak considerate improving")
    (members,) = home
    after = apply_deviation(instance, state, dev)
    before_loads = load_profile(instance, state)
    after_loads = load_profile(instance, after)

    def class_cost(s: Sequence[int], loads: Sequence[int]) -> int:
        return sum(instance.delay(s[p], loads[s[p]]) for p in members)

    return class_cost(after, after_loads) - class_cost(state, before_loads)
