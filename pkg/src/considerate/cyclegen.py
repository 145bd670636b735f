"""A ring of 19 five-resource blocks whose clique dynamics cycles forever.

Each block holds eight named players (B, C, D, E, F, G, P, Q) and six
isolated dummies. Inside a block the named players walk through the phases

    alpha -> beta -> gamma -> gamma1 -> gamma2 -> delta
          -> epsilon -> zeta -> zeta1 -> zeta2 -> alpha

where the gamma and zeta steps are three-move circular swaps (D/P/B and
D/Q/C) performed by 8-player cliques spanning neighbouring blocks. A clique
move pays for its swaps with one strictly improving player in a distant
block. One round of four moves shifts the global phase pattern by one block,
so 19 rounds return the exact starting state.

Block and role labels are 1-based in names (``D^3``) and 0-based in ids.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from considerate.dynamics import ScriptedScheduler, Trace, run_dynamics
from considerate.game import GameInstance, State
from considerate.moves import Deviation, classify_move, move_violations
from considerate.social import SocialGraph

BLOCKS = 19
ROLES = ("B", "C", "D", "E", "F", "G", "P", "Q")
DUMMIES = 6
PLAYERS_PER_BLOCK = len(ROLES) + DUMMIES
RESOURCES_PER_BLOCK = 5

# resource (0-based r_1..r_5) of each named role per phase
PHASES: dict[str, dict[str, int]] = {
    "alpha": dict(C=0, E=0, B=1, D=1, G=1, F=2, P=3, Q=4),
    "beta": dict(C=0, E=0, B=1, G=1, D=2, F=2, P=3, Q=4),
    "gamma": dict(E=0, C=1, B=1, G=1, D=2, F=2, P=3, Q=4),
    "gamma1": dict(E=0, C=1, B=1, G=1, P=2, F=2, D=3, Q=4),
    "gamma2": dict(E=0, C=1, P=1, G=1, B=2, F=2, D=3, Q=4),
    "delta": dict(E=0, C=1, D=1, G=1, B=2, F=2, P=3, Q=4),
    "epsilon": dict(D=0, E=0, C=1, G=1, B=2, F=2, P=3, Q=4),
    "zeta": dict(D=0, E=0, B=1, C=1, G=1, F=2, P=3, Q=4),
    "zeta1": dict(Q=0, E=0, B=1, C=1, G=1, F=2, P=3, D=4),
    "zeta2": dict(C=0, E=0, B=1, Q=1, G=1, F=2, P=3, D=4),
}
# dummy k sits on DUMMY_SLOTS[k]: one on r_1, one on r_3, two on r_4, two on r_5
DUMMY_SLOTS = (0, 2, 3, 3, 4, 4)

START_PHASES = (
    "zeta2", "zeta1", "zeta", "zeta", "zeta", "zeta", "zeta", "zeta", "zeta",
    "epsilon", "delta", "gamma2", "gamma1", "gamma", "gamma", "gamma", "gamma", "beta", "alpha",
)


def wrap(j: int) -> int:
    """1-based block label for any integer index, cycling through 1..19."""
    return (j - 1) % BLOCKS + 1


def pid(role: str, block: int) -> int:
    """Player id of ``role`` in 1-based ``block`` (wrapped)."""
    return (wrap(block) - 1) * PLAYERS_PER_BLOCK + ROLES.index(role)


def rid(block: int, j: int) -> int:
    """Resource id of r_j (1-based j) in 1-based ``block``."""
    return (wrap(block) - 1) * RESOURCES_PER_BLOCK + (j - 1)


def p_clique(i: int) -> tuple[int, ...]:
    members = [("D", i), ("P", i), ("P", i + 1), ("B", i + 1), ("D", i + 2), ("P", i + 2), ("C", i + 6), ("E", i + 6)]
    return tuple(pid(r, b) for r, b in members)


def q_clique(i: int) -> tuple[int, ...]:
    members = [("D", i), ("Q", i), ("Q", i + 1), ("C", i + 1), ("D", i + 2), ("Q", i + 2), ("B", i + 9), ("F", i + 9)]
    return tuple(pid(r, b) for r, b in members)


def player_names() -> list[str]:
    names = []
    for b in range(1, BLOCKS + 1):
        names += [f"{role}^{b}" for role in ROLES]
        names += [f"x{k + 1}^{b}" for k in range(DUMMIES)]
    return names


def state_from_phases(phases: Sequence[str]) -> State:
    s = [0] * (BLOCKS * PLAYERS_PER_BLOCK)
    for b, phase in enumerate(phases, start=1):
        for role, j in PHASES[phase].items():
            s[pid(role, b)] = rid(b, j + 1)
        for k, j in enumerate(DUMMY_SLOTS):
            s[(b - 1) * PLAYERS_PER_BLOCK + len(ROLES) + k] = rid(b, j + 1)
    return tuple(s)


def build_graph() -> SocialGraph:
    edges = set()
    for i in range(1, BLOCKS + 1):
        for a, b in (("B", "F"), ("C", "E"), ("D", "G")):
            edges.add((pid(a, i), pid(b, i)))
    cliques = [p_clique(i) for i in range(1, BLOCKS + 1)] + [q_clique(i) for i in range(1, BLOCKS + 1)]
    graph = SocialGraph.from_cliques(BLOCKS * PLAYERS_PER_BLOCK, cliques)
    return SocialGraph.from_edges(graph.n, graph.edges | edges)


@dataclass
class CycleConstruction:
    instance: GameInstance
    graph: SocialGraph
    state: State
    schedule: list[Deviation]
    names: list[str]
    phase_history: list[tuple[str, ...]] = field(default_factory=list)


def _advance(phases: list[str], coalition: Sequence[int], changes: dict[int, str]) -> Deviation:
    """Move the listed blocks to new phases; members read targets from the new placement."""
    for b, phase in changes.items():
        phases[wrap(b) - 1] = phase
    target = state_from_phases(phases)
    return Deviation.from_vector(sorted(coalition), [target[p] for p in sorted(coalition)])


def _round(phases: list[str], t: int) -> Iterator[Deviation]:
    """The four moves that shift the phase pattern by one block.

    ``phases`` is updated in place as each move is produced.
    """
    j = 1 + t
    yield _advance(phases, q_clique(j), {j: "alpha", j + 1: "zeta2", j + 2: "zeta1", j + 9: "zeta"})
    j = 12 + t
    yield _advance(phases, p_clique(j), {j: "delta", j + 1: "gamma2", j + 2: "gamma1", j + 6: "gamma"})
    b = 11 + t
    yield _advance(phases, (pid("D", b), pid("G", b)), {b: "epsilon"})
    b = 19 + t
    yield _advance(phases, (pid("D", b), pid("G", b)), {b: "beta"})


def build_cycle_instance(table: Sequence[int] | None = None) -> CycleConstruction:
    """Instance, graph, starting state and a 76-move schedule returning to it.

    ``table`` overrides the shared delay table (default ``d(x) = x``); any
    strictly increasing table works since only loads 2 and 3 are compared.
    """
    n = BLOCKS * PLAYERS_PER_BLOCK
    instance = GameInstance.identical(n, BLOCKS * RESOURCES_PER_BLOCK, table)
    phases = list(START_PHASES)
    start = state_from_phases(phases)
    history = [tuple(phases)]
    schedule: list[Deviation] = []
    for t in range(BLOCKS):
        for dev in _round(phases, t):
            schedule.append(dev)
            history.append(tuple(phases))
    assert tuple(phases) == START_PHASES
    return CycleConstruction(instance, build_graph(), start, schedule, player_names(), history)


@dataclass(frozen=True)
class CycleCertificate:
    moves_validated: int
    cycle_found: bool
    first_repeat_index: int | None
    period: int | None
    trace: Trace


class CycleCertificationError(Exception):
    def __init__(self, index: int, reasons: list[str]):
        self.index = index
        self.reasons = reasons
        super().__init__(f"scheduled move {index} rejected: " + "; ".join(reasons))


def replay_and_certify(max_steps: int | None = None, construction: CycleConstruction | None = None) -> CycleCertificate:
    """Replay the looping schedule and certify a repeated player-labeled state.

    Defaults to two schedule lengths of steps. Raises
    ``CycleCertificationError`` naming the failing move, players and cost
    changes if any scheduled move is not weak considerate improving.
    """
    c = construction or build_cycle_instance()
    if max_steps is None:
        max_steps = 2 * len(c.schedule)
    trace = run_dynamics(c.instance, c.graph, c.state, ScriptedScheduler(c.schedule, loop=True), max_steps)
    out = trace.outcome
    if out.kind == "invalid_move":
        prev = trace.states[-1]
        dev = c.schedule[out.index % len(c.schedule)]
        reasons = move_violations(c.instance, c.graph, prev, dev)
        named = [f"{r} ({', '.join(c.names[p] for p in dev.coalition)})" for r in reasons]
        raise CycleCertificationError(out.index, named)
    for k, (dev, _) in enumerate(trace.steps):
        if not classify_move(c.instance, c.graph, trace.states[k], dev).weak_considerate_improving:
            raise CycleCertificationError(k, move_violations(c.instance, c.graph, trace.states[k], dev))
    cycle = out.kind == "cycle"
    return CycleCertificate(
        moves_validated=len(trace.steps),
        cycle_found=cycle,
        first_repeat_index=out.first_repeat_index if cycle else None,
        period=out.period if cycle else None,
        trace=trace,
    )
