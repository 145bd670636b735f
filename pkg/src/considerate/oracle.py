"""Exhaustive equilibrium checks for small instances.

A coalition deviation is decided by the new load vector alone: a member sent
to resource ``r`` pays ``d_r(base_r + a_r)`` where ``a_r`` members land on
``r``. The search therefore enumerates count vectors ``a`` and tests whether
members can be matched to the resulting slots. Members and slots form a
threshold bipartite graph, so sorted pairing decides the matching. This covers
every replacement vector in ``R^|C|`` exactly; ``brute_force_moves`` walks the
vectors one by one and is kept as the independent cross-check.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product

from considerate.errors import BudgetExceeded, ContractViolation
from considerate.game import GameInstance, load_profile, player_costs
from considerate.moves import Deviation, apply_deviation, classify_move
from considerate.social import SocialGraph, enumerate_cliques, neighborhood, own_resource_neighbors
from considerate.solver import classify_resources, is_nash

NOTIONS = ("NE", "CNE", "SE", "SSE", "SCE", "CE", "partition")
FULL_ONLY = ("SE", "SSE")


@dataclass(frozen=True)
class Budget:
    max_cliques: int = 20_000
    max_deviations: int = 10**7


@dataclass(frozen=True)
class Verdict:
    """``holds`` is ``None`` when the question was not settled."""

    holds: bool | None
    witness: Deviation | None = None
    reason: str = ""


@dataclass
class EquilibriumReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, notion: str) -> bool | None:
        return self.verdicts[notion].holds

    def lattice_violations(self) -> list[str]:
        """Implications between notions that fail on this report (unknowns skipped)."""
        implications = [
            ("SSE", "SE"), ("SE", "NE"), ("SSE", "CE"), ("CE", "SCE"),
            ("SCE", "CNE"), ("SE", "SCE"), ("CE", "CNE"), ("NE", "CNE"),
        ]
        bad = []
        for a, b in implications:
            va = self.verdicts.get(a)
            vb = self.verdicts.get(b)
            if va and vb and va.holds is True and vb.holds is False:
                bad.append(f"{a} => {b}")
        return bad


class _Search:
    """Per-state precomputation shared by all coalition searches."""

    def __init__(self, instance: GameInstance, graph: SocialGraph, state: Sequence[int]):
        self.instance = instance
        self.graph = graph
        self.state = tuple(state)
        self.loads = load_profile(instance, state)
        self.costs = player_costs(instance, state, self.loads)
        self.deviations = 0

    def capped_resources(self, coalition: Sequence[int]) -> frozenset[int]:
        # a non-member neighbor is harmed exactly when its resource gains load
        members = set(coalition)
        return frozenset(self.state[j] for j in neighborhood(self.graph, coalition) if j not in members)

    def feasible(
        self,
        members: Sequence[int],
        fixed: dict[int, int],
        strict: bool,
        capped: frozenset[int],
    ) -> bool:
        m = self.instance.m
        d = self.instance.delays
        k = len(members)
        on = [0] * m
        for i in members:
            on[self.state[i]] += 1
        base = [self.loads[r] - on[r] for r in range(m)]
        fixed_on = [0] * m
        for r in fixed.values():
            fixed_on[r] += 1
        free_costs = sorted(self.costs[i] for i in members if i not in fixed)
        top = max(self.costs[i] for i in members)
        hi = []
        for r in range(m):
            limit = on[r] if r in capped else k
            a = fixed_on[r]
            if a > limit:
                return False
            while a < limit and (d[r][base[r] + a] < top if strict else d[r][base[r] + a] <= top):
                a += 1
            hi.append(a)
        lo = fixed_on
        suffix = [0] * (m + 1)
        for r in range(m - 1, -1, -1):
            suffix[r] = suffix[r + 1] + hi[r]
        fixed_items = list(fixed.items())
        counts = [0] * m

        def check() -> bool:
            value = [d[r][base[r] + counts[r] - 1] if counts[r] else 0 for r in range(m)]
            any_strict = False
            for i, r in fixed_items:
                v = value[r]
                c = self.costs[i]
                if v > c or (strict and v == c):
                    return False
                if v < c:
                    any_strict = True
            slots = sorted(v for r in range(m) for v in [value[r]] * (counts[r] - fixed_on[r]))
            for v, c in zip(slots, free_costs):
                if v > c or (strict and v == c):
                    return False
                if v < c:
                    any_strict = True
            return any_strict

        def rec(r: int, left: int) -> bool:
            if r == m - 1:
                if lo[r] <= left <= hi[r]:
                    counts[r] = left
                    return check()
                return False
            for a in range(lo[r], min(hi[r], left) + 1):
                if left - a > suffix[r + 1]:
                    continue
                counts[r] = a
                if rec(r + 1, left - a):
                    return True
            return False

        if sum(lo) > k or suffix[0] < k:
            return False
        return rec(0, k)

    def coalition_move(self, coalition: Sequence[int], strict: bool, considerate: bool) -> Deviation | None:
        """Lexicographically first replacement vector of the requested kind, if any."""
        m = self.instance.m
        size = m ** len(coalition)
        self.deviations += size
        members = sorted(coalition)
        capped = self.capped_resources(members) if considerate else frozenset()
        if not self.feasible(members, {}, strict, capped):
            return None
        fixed: dict[int, int] = {}
        for i in members:
            for r in range(m):
                fixed[i] = r
                if self.feasible(members, fixed, strict, capped):
                    break
            else:  # pragma: no cover - feasibility is monotone in the prefix
                raise ContractViolation("witness-extraction", f"no completion for {fixed}")
        return Deviation.from_vector(members, [fixed[i] for i in members])


def _search_family(
    search: _Search,
    coalitions: Iterable[Sequence[int]],
    strict: bool,
    considerate: bool,
    budget: Budget,
) -> Deviation | None:
    for c in coalitions:
        dev = search.coalition_move(c, strict, considerate)
        if search.deviations > budget.max_deviations:
            raise BudgetExceeded("deviation", budget.max_deviations, search.deviations)
        if dev is not None:
            return dev
    return None


def _all_subsets(n: int, budget: Budget) -> Iterator[tuple[int, ...]]:
    if n >= 63 or 2**n - 1 > budget.max_cliques:
        raise BudgetExceeded("coalition", budget.max_cliques, 2**n - 1 if n < 63 else 2**63)
    for k in range(1, n + 1):
        yield from combinations(range(n), k)


def find_weak_considerate_clique_move(
    instance: GameInstance,
    graph: SocialGraph,
    state: Sequence[int],
    budget: Budget | None = None,
) -> Deviation | None:
    """First weak considerate improving move of any clique, or ``None`` if none exists.

    Cliques are scanned by size then lexicographically, vectors
    lexicographically. Raises ``BudgetExceeded`` rather than answer after a
    truncated search.
    """
    budget = budget or Budget()
    cliques = enumerate_cliques(graph, cap=budget.max_cliques)
    return _search_family(_Search(instance, graph, state), cliques, False, True, budget)


def classify_state(
    instance: GameInstance,
    graph: SocialGraph,
    state: Sequence[int],
    budget: Budget | None = None,
    notions: Iterable[str] | None = None,
) -> EquilibriumReport:
    """Decide each requested equilibrium notion exhaustively.

    SE and SSE range over all non-empty player subsets, SCE and CE over
    cliques, NE and CNE over singletons. ``partition`` is only decided when the
    graph is a disjoint union of cliques. Budget overruns leave the notion
    undecided instead of failing the whole report.
    """
    budget = budget or Budget()
    wanted = list(NOTIONS if notions is None else notions)
    search = _Search(instance, graph, state)
    singletons = [(i,) for i in range(instance.n)]
    report = EquilibriumReport()
    cliques: list[tuple[int, ...]] | None = None
    for notion in NOTIONS:
        if notion not in wanted:
            continue
        search.deviations = 0
        try:
            if notion == "NE":
                dev = _search_family(search, singletons, True, False, budget)
            elif notion == "CNE":
                dev = _search_family(search, singletons, True, True, budget)
            elif notion in ("SE", "SSE"):
                dev = _search_family(search, _all_subsets(instance.n, budget), notion == "SE", False, budget)
            elif notion in ("SCE", "CE"):
                if cliques is None:
                    cliques = enumerate_cliques(graph, cap=budget.max_cliques)
                dev = _search_family(search, cliques, notion == "SCE", True, budget)
            else:
                classes = graph.partition_classes()
                if classes is None:
                    report.verdicts[notion] = Verdict(None, reason="graph is not a disjoint union of cliques")
                    continue
                dev = _search_family(search, classes, False, False, budget)
        except BudgetExceeded as exc:
            report.verdicts[notion] = Verdict(None, reason=str(exc))
            continue
        report.verdicts[notion] = Verdict(dev is None, dev)
    return report


def brute_force_moves(
    instance: GameInstance,
    graph: SocialGraph,
    state: Sequence[int],
    coalition: Sequence[int],
) -> Iterator[Deviation]:
    """Every weak considerate improving vector of one coalition, in lexicographic order.

    Walks all of ``R^|C|`` through ``classify_move``; use only on tiny inputs.
    """
    members = sorted(coalition)
    for vec in product(range(instance.m), repeat=len(members)):
        dev = Deviation.from_vector(members, vec)
        if classify_move(instance, graph, state, dev).weak_considerate_improving:
            yield dev


@dataclass(frozen=True)
class DeviationAnalysis:
    d_max: int
    high: frozenset[int]
    low: frozenset[int]
    r_h: frozenset[int]
    r_l: frozenset[int]
    n_h: frozenset[int]
    n_l: frozenset[int]
    max_h: int | None
    min_l: int | None
    q: int | None
    k: int | None
    checks: tuple[str, ...]

    @property
    def case(self) -> int | None:
        if self.max_h is None or self.min_l is None:
            return None
        return 1 if self.max_h > self.min_l else 2


def analyze_deviation(
    instance: GameInstance, graph: SocialGraph, state: Sequence[int], dev: Deviation
) -> DeviationAnalysis:
    """Compute the high/low bookkeeping of a clique move from a Nash equilibrium.

    Each structural relation the existence argument derives is asserted;
    a failure raises ``ContractViolation`` naming the relation. ``checks``
    lists the relations that were actually evaluated.
    """
    if not graph.is_clique(dev.coalition):
        raise ContractViolation("clique", f"coalition {dev.coalition} is not a clique")
    if not is_nash(instance, state):
        raise ContractViolation("nash-precondition", "state is not a Nash equilibrium")
    if not classify_move(instance, graph, state, dev).weak_considerate_improving:
        raise ContractViolation("weak-considerate", "deviation is not weak considerate improving")

    cls = classify_resources(instance, state)
    d_max, high, low = cls.d_max, cls.high, cls.low
    after = apply_deviation(instance, state, dev)
    loads = load_profile(instance, state)
    loads_after = load_profile(instance, after)
    high_after = {r for r in range(instance.m) if loads_after[r] and instance.delay(r, loads_after[r]) == d_max}
    r_h = frozenset(high - high_after)
    r_l = frozenset(low & high_after)
    members = dev.coalition
    n_h = frozenset(i for i in members if state[i] in r_h)
    n_l = frozenset(i for i in members if state[i] in r_l)
    on_r = {r: sum(1 for i in members if state[i] == r) for r in range(instance.m)}
    max_h = max((own_resource_neighbors(graph, state, i) for i in n_h), default=None)
    min_l = None
    if n_h and r_l:
        min_l = min(sum(1 for j in graph.adj[i] if state[j] == r) for i in n_h for r in r_l)

    checks: list[str] = []

    def require(name: str, ok: bool, detail: str = "") -> None:
        if name not in checks:
            checks.append(name)
        if not ok:
            raise ContractViolation(name, detail)

    require("R_h subset H", r_h <= high)
    require("R_l subset L", r_l <= low)
    require(
        "N_l leaves R_l",
        all(after[i] not in r_l for i in n_l),
        f"N_l={sorted(n_l)}",
    )
    inflow = sum(1 for i in members if state[i] in high and after[i] in r_l)
    require("inflow H->R_l = |N_l| + |R_l|", inflow == len(n_l) + len(r_l), f"{inflow} != {len(n_l)} + {len(r_l)}")
    require(
        "H\\R_h loads unchanged",
        all(loads[r] == loads_after[r] for r in high - r_h),
    )
    leaving = sum(1 for i in members if state[i] in r_h and after[i] not in r_h)
    require("outflow R_h >= |N_l| + |R_l|", leaving >= len(n_l) + len(r_l), f"{leaving} < {len(n_l) + len(r_l)}")
    require("|N_h| >= |N_l| + |R_l|", len(n_h) >= len(n_l) + len(r_l), f"|N_h|={len(n_h)} |N_l|={len(n_l)} |R_l|={len(r_l)}")
    if max_h is not None:
        require("|N_h| <= (max_h+1)|R_h|", len(n_h) <= (max_h + 1) * len(r_h), f"|N_h|={len(n_h)} max_h={max_h} |R_h|={len(r_h)}")
    require("|R_h| <= |R_l|", len(r_h) <= len(r_l), f"|R_h|={len(r_h)} |R_l|={len(r_l)}")

    q = k = None
    if min_l is not None:
        for i in n_h:
            for r in r_l:
                require(
                    "R_l neighbors are members",
                    sum(1 for j in graph.adj[i] if state[j] == r) == on_r[r],
                    f"player {i} resource {r}",
                )
        require("|N_l| >= min_l |R_l|", len(n_l) >= min_l * len(r_l), f"|N_l|={len(n_l)} min_l={min_l} |R_l|={len(r_l)}")
        require("(max_h+1)|R_h| >= (min_l+1)|R_l|", (max_h + 1) * len(r_h) >= (min_l + 1) * len(r_l))
        if max_h <= min_l:
            require("case2 |R_h|=|R_l|", len(r_h) == len(r_l))
            require("case2 max_h=min_l", max_h == min_l)
            q, k = len(r_h), max_h
            require("case2 |N_h|=|N_l|+q", len(n_h) == len(n_l) + q)
            require(
                "case2 R_l occupancy",
                all(on_r[r] * q == len(n_l) for r in r_l),
                str({r: on_r[r] for r in r_l}),
            )
            require(
                "case2 R_h occupancy",
                all(on_r[r] * q == len(n_h) for r in r_h),
                str({r: on_r[r] for r in r_h}),
            )
            require(
                "case2 equal neighbor counts",
                all(
                    own_resource_neighbors(graph, state, i) == k
                    and all(sum(1 for j in graph.adj[i] if state[j] == r) == k for r in r_l)
                    for i in n_h
                ),
            )

    return DeviationAnalysis(d_max, high, low, r_h, r_l, n_h, n_l, max_h, min_l, q, k, tuple(checks))
