"""Line-oriented text formats for instances, graphs, states and deviations.

Instance file::

    players <n>
    resources <m>
    delay <r> <d_r(1)> ... <d_r(n)>
    edge <i> <j>

State file: ``state <s_0> ... <s_{n-1}>``. Deviation line:
``move <k> <p_1>:<r_1> ... <p_k>:<r_k>``. ``#`` starts a comment.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from considerate.errors import FormatError, StructuralError
from considerate.game import GameInstance, State, validate_state
from considerate.moves import Deviation
from considerate.social import SocialGraph

PLAYERS = "players <n>"
RESOURCES = "resources <m>"
DELAY = "delay <r> <d_r(1)> ... <d_r(n)>"
EDGE = "edge <i> <j>"
STATE = "state <s_0> ... <s_{n-1}>"
MOVE = "move <k> <p_1>:<r_1> ... <p_k>:<r_k>"


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _ints(no: int, tokens: Sequence[str], grammar: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(no, f"non-integer token in {' '.join(tokens)!r}", grammar) from None


def parse_instance(text: str) -> tuple[GameInstance, SocialGraph]:
    n = m = None
    delays: dict[int, tuple[int, list[int]]] = {}
    edges: list[tuple[int, int, int]] = []
    for no, tok in _lines(text):
        key, args = tok[0], tok[1:]
        if key == "players":
            if len(args) != 1:
                raise FormatError(no, "bad players line", PLAYERS)
            (n,) = _ints(no, args, PLAYERS)
        elif key == "resources":
            if len(args) != 1:
                raise FormatError(no, "bad resources line", RESOURCES)
            (m,) = _ints(no, args, RESOURCES)
        elif key == "delay":
            vals = _ints(no, args, DELAY)
            if len(vals) < 2:
                raise FormatError(no, "delay line needs a resource and a table", DELAY)
            if vals[0] in delays:
                raise FormatError(no, f"duplicate delay table for resource {vals[0]}", DELAY)
            delays[vals[0]] = (no, vals[1:])
        elif key == "edge":
            if len(args) != 2:
                raise FormatError(no, "edge needs two endpoints", EDGE)
            i, j = _ints(no, args, EDGE)
            edges.append((no, i, j))
        else:
            raise FormatError(no, f"unknown directive {key!r}", "players|resources|delay|edge")
    if n is None or m is None:
        raise FormatError(0, "missing players or resources directive", PLAYERS)
    tables = []
    for r in range(m):
        if r not in delays:
            raise FormatError(0, f"missing delay table for resource {r}", DELAY)
        no, row = delays[r]
        if len(row) != n:
            raise FormatError(no, f"resource {r}: {len(row)} delay values, expected {n}", DELAY)
        try:
            GameInstance(n, 1, (tuple(row),))
        except StructuralError as exc:
            raise FormatError(no, f"resource {r}: {str(exc).split(': ', 1)[1]}", DELAY) from None
        tables.append(row)
    extra = sorted(set(delays) - set(range(m)))
    if extra:
        raise FormatError(delays[extra[0]][0], f"resource {extra[0]} out of range [0, {m})", DELAY)
    try:
        instance = GameInstance(n, m, tuple(tuple(t) for t in tables))
    except StructuralError as exc:
        raise FormatError(0, str(exc), DELAY) from None
    for no, i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise FormatError(no, f"invalid edge {i} {j}", EDGE)
    graph = SocialGraph.from_edges(n, [(i, j) for _, i, j in edges])
    return instance, graph


def format_instance(instance: GameInstance, graph: SocialGraph | None = None) -> str:
    out = [f"players {instance.n}", f"resources {instance.m}"]
    for r, row in enumerate(instance.delays):
        out.append(f"delay {r} " + " ".join(map(str, row)))
    if graph is not None:
        for i, j in sorted(graph.edges):
            out.append(f"edge {i} {j}")
    return "\n".join(out) + "\n"


def parse_state(text: str, instance: GameInstance | None = None) -> State:
    found = None
    for no, tok in _lines(text):
        if tok[0] != "state" or found is not None:
            raise FormatError(no, "expected a single state line", STATE)
        found = tuple(_ints(no, tok[1:], STATE))
        if instance is not None:
            try:
                found = validate_state(instance, found)
            except StructuralError as exc:
                raise FormatError(no, str(exc), STATE) from None
    if found is None:
        raise FormatError(0, "no state line", STATE)
    return found


def format_state(state: Sequence[int]) -> str:
    return "state " + " ".join(map(str, state))


def parse_deviation(line: str, no: int = 1) -> Deviation:
    tok = line.split("#", 1)[0].split()
    if len(tok) < 3 or tok[0] != "move":
        raise FormatError(no, f"bad move line {line.strip()!r}", MOVE)
    (k,) = _ints(no, tok[1:2], MOVE)
    pairs = []
    for item in tok[2:]:
        p, sep, r = item.partition(":")
        if not sep:
            raise FormatError(no, f"bad coalition entry {item!r}", MOVE)
        pairs.append(tuple(_ints(no, [p, r], MOVE)))
    if len(pairs) != k:
        raise FormatError(no, f"move declares {k} members but lists {len(pairs)}", MOVE)
    try:
        return Deviation(tuple(pairs))
    except StructuralError as exc:
        raise FormatError(no, str(exc), MOVE) from None


def format_deviation(dev: Deviation) -> str:
    return f"move {len(dev.targets)} " + " ".join(f"{p}:{r}" for p, r in dev.targets)


def parse_schedule(text: str) -> list[Deviation]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        if raw.split("#", 1)[0].strip():
            out.append(parse_deviation(raw, no))
    return out


def format_schedule(schedule: Iterable[Deviation]) -> str:
    return "".join(format_deviation(d) + "\n" for d in schedule)
