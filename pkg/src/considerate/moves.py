"""Coalition deviations and their classification into improving-move kinds."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from considerate.errors import StructuralError
from considerate.game import GameInstance, State, load_profile
from considerate.social import SocialGraph, neighborhood


@dataclass(frozen=True)
class Deviation:
    """A coalition together with the resource each member switches to.

    ``targets`` holds ``(player, resource)`` pairs sorted by player. Members
    that keep their strategy are listed with their current resource.
    """

    targets: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(p), int(r)) for p, r in self.targets))
        if not pairs:
            raise StructuralError("deviation needs a non-empty coalition")
        players = [p for p, _ in pairs]
        if len(set(players)) != len(players):
            raise StructuralError(f"duplicate coalition member in {players}")
        object.__setattr__(self, "targets", pairs)

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> Deviation:
        return cls(tuple(mapping.items()))

    @classmethod
    def from_vector(cls, coalition: Sequence[int], vector: Sequence[int]) -> Deviation:
        return cls(tuple(zip(coalition, vector)))

    @property
    def coalition(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.targets)

    @property
    def replacement(self) -> dict[int, int]:
        return dict(self.targets)


@dataclass(frozen=True)
class MoveClass:
    improving: bool
    weak_improving: bool
    considerate_improving: bool
    weak_considerate_improving: bool


NO_MOVE = MoveClass(False, False, False, False)


def apply_deviation(instance: GameInstance, state: Sequence[int], dev: Deviation) -> State:
    out = list(state)
    for p, r in dev.targets:
        if not 0 <= p < len(out):
            raise StructuralError(f"coalition member {p} out of range [0, {len(out)})")
        if not 0 <= r < instance.m:
            raise StructuralError(f"player {p}: target resource {r} out of range [0, {instance.m})")
        out[p] = r
    return tuple(out)


def cost_changes(
    instance: GameInstance, graph: SocialGraph, state: Sequence[int], dev: Deviation
) -> tuple[dict[int, tuple[int, int]], frozenset[int]]:
    """Before/after costs of every player in ``C`` and its neighborhood.

    Returns the cost map and the neighborhood set.
    """
    after_state = apply_deviation(instance, state, dev)
    before = load_profile(instance, state)
    after = load_profile(instance, after_state)
    nbrs = neighborhood(graph, dev.coalition)
    d = instance.delays
    changes = {}
    for j in set(dev.coalition) | nbrs:
        r0, r1 = state[j], after_state[j]
        changes[j] = (d[r0][before[r0] - 1], d[r1][after[r1] - 1])
    return changes, nbrs


def classify_move(instance: GameInstance, graph: SocialGraph, state: Sequence[int], dev: Deviation) -> MoveClass:
    if all(state[p] == r for p, r in dev.targets):
        return NO_MOVE
    changes, nbrs = cost_changes(instance, graph, state, dev)
    members = dev.coalition
    all_strict = all(changes[i][1] < changes[i][0] for i in members)
    any_strict = any(changes[i][1] < changes[i][0] for i in members)
    members_ok = all(changes[i][1] <= changes[i][0] for i in members)
    nbrs_ok = all(changes[j][1] <= changes[j][0] for j in nbrs)
    return MoveClass(
        improving=all_strict,
        weak_improving=members_ok and any_strict,
        considerate_improving=all_strict and nbrs_ok,
        weak_considerate_improving=members_ok and nbrs_ok and any_strict,
    )


def move_violations(instance: GameInstance, graph: SocialGraph, state: Sequence[int], dev: Deviation) -> list[str]:
    """Human-readable reasons why ``dev`` is not weak considerate improving."""
    changes, nbrs = cost_changes(instance, graph, state, dev)
    problems = []
    for j in sorted(changes):
        before, after = changes[j]
        if after > before:
            role = "member" if j in dev.replacement else "neighbor"
            problems.append(f"{role} {j} cost {before} -> {after}")
    if not any(changes[i][1] < changes[i][0] for i in dev.coalition):
        problems.append("no coalition member strictly improves")
    return problems
