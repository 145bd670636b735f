"""Resource selection game instances, states, loads and costs.

Players and resources are 0-indexed. A state is a plain tuple mapping each
player to a resource. Costs are compared directly (lower is better); utilities
never appear.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from considerate.errors import StructuralError

State = tuple[int, ...]


@dataclass(frozen=True)
class GameInstance:
    """Symmetric resource selection game with integer delay tables.

    Attributes:
        n: Number of players.
        m: Number of resources.
        delays: ``delays[r][x - 1]`` is the delay of resource ``r`` at load
            ``x`` for ``x = 1..n``. Each table must be strictly increasing
            and non-negative.
    """

    n: int
    m: int
    delays: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise StructuralError(f"player count must be positive, got {self.n}")
        if self.m < 1:
            raise StructuralError(f"resource count must be positive, got {self.m}")
        delays = tuple(tuple(int(v) for v in row) for row in self.delays)
        if len(delays) != self.m:
            raise StructuralError(f"expected {self.m} delay tables, got {len(delays)}")
        for r, row in enumerate(delays):
            if len(row) != self.n:
                raise StructuralError(
                    f"resource {r}: delay table has {len(row)} entries, expected {self.n}"
                )
            if row and row[0] < 0:
                raise StructuralError(f"resource {r}: negative delay {row[0]}")
            for x in range(1, len(row)):
                if row[x] <= row[x - 1]:
                    raise StructuralError(
                        f"resource {r}: delay table not strictly increasing at load {x + 1} "
                        f"({row[x - 1]} -> {row[x]})"
                    )
        object.__setattr__(self, "delays", delays)

    @classmethod
    def identical(cls, n: int, m: int, table: Sequence[int] | None = None) -> GameInstance:
        """All resources share one table; defaults to d(x) = x."""
        row = tuple(table) if table is not None else tuple(range(1, n + 1))
        return cls(n, m, (row,) * m)

    def delay(self, r: int, load: int) -> int:
        """Delay of ``r`` at ``load``. An empty resource contributes 0."""
        if load == 0:
            return 0
        return self.delays[r][load - 1]


def validate_state(instance: GameInstance, state: Iterable[int]) -> State:
    s = tuple(int(x) for x in state)
    if len(s) != instance.n:
        raise StructuralError(f"state has {len(s)} entries, expected {instance.n}")
    for i, r in enumerate(s):
        if not 0 <= r < instance.m:
            raise StructuralError(f"player {i}: resource {r} out of range [0, {instance.m})")
    return s


def load_profile(instance: GameInstance, state: Sequence[int]) -> tuple[int, ...]:
    loads = [0] * instance.m
    for i, r in enumerate(state):
        if not 0 <= r < instance.m:
            raise StructuralError(f"player {i}: resource {r} out of range [0, {instance.m})")
        loads[r] += 1
    if len(state) != instance.n:
        raise StructuralError(f"state has {len(state)} entries, expected {instance.n}")
    return tuple(loads)


def player_cost(instance: GameInstance, state: Sequence[int], player: int) -> int:
    if not 0 <= player < instance.n:
        raise StructuralError(f"player {player} out of range [0, {instance.n})")
    loads = load_profile(instance, state)
    r = state[player]
    return instance.delays[r][loads[r] - 1]


def player_costs(instance: GameInstance, state: Sequence[int], loads: Sequence[int] | None = None) -> list[int]:
    if loads is None:
        loads = load_profile(instance, state)
    d = instance.delays
    return [d[r][loads[r] - 1] for r in state]


def total_cost(instance: GameInstance, state: Sequence[int]) -> int:
    loads = load_profile(instance, state)
    return sum(load * instance.delay(r, load) for r, load in enumerate(loads))


def max_cost(instance: GameInstance, state: Sequence[int]) -> int:
    return max(player_costs(instance, state))
