import random

import pytest
from hypothesis import given, settings, strategies as st

from considerate.cyclegen import build_graph, pid, rid, state_from_phases
from considerate.errors import StructuralError
from considerate.game import GameInstance, load_profile
from considerate.moves import Deviation, apply_deviation, classify_move, move_violations
from considerate.social import SocialGraph, enumerate_cliques, neighborhood

from conftest import tie_heavy_instance


class TestApplyDeviation:
    def test_single_move(self, trio):
        assert apply_deviation(trio, (0, 0, 1), Deviation.of({0: 1})) == (1, 0, 1)

    def test_identity(self, trio):
        assert apply_deviation(trio, (0, 0, 1), Deviation.of({0: 0, 2: 1})) == (0, 0, 1)

    def test_swap_keeps_loads(self, trio):
        s = (0, 0, 1)
        after = apply_deviation(trio, s, Deviation.of({1: 1, 2: 0}))
        assert after == (0, 1, 0)
        assert load_profile(trio, after) == load_profile(trio, s)

    def test_input_untouched(self, trio):
        s = [0, 0, 1]
        apply_deviation(trio, s, Deviation.of({0: 1}))
        assert s == [0, 0, 1]

    def test_target_out_of_range(self, trio):
        with pytest.raises(StructuralError):
            apply_deviation(trio, (0, 0, 1), Deviation.of({0: 5}))

    def test_deviation_validation(self):
        with pytest.raises(StructuralError):
            Deviation(())
        with pytest.raises(StructuralError):
            Deviation(((0, 1), (0, 0)))


class TestClassifyMove:
    def test_no_strict_improvement(self, trio):
        mc = classify_move(trio, SocialGraph.empty(3), (0, 0, 1), Deviation.of({0: 1}))
        assert mc == classify_move(trio, SocialGraph.empty(3), (0, 0, 0), Deviation.of({0: 0}))
        assert not any(vars(mc).values())

    def test_trio_weak_move(self, trio):
        # player 0 stays, player 1 moves to r1: costs (2, 2) -> (1, 2)
        mc = classify_move(trio, SocialGraph.empty(3), (0, 0, 1), Deviation.of({0: 0, 1: 1}))
        assert mc.weak_improving and not mc.improving
        assert mc.weak_considerate_improving and not mc.considerate_improving

    def test_trio_weak_move_blocked_by_neighbor(self, trio, k3):
        mc = classify_move(trio, k3, (0, 0, 1), Deviation.of({0: 0, 1: 1}))
        assert mc.weak_improving and not mc.weak_considerate_improving
        assert "neighbor 2 cost 1 -> 2" in move_violations(trio, k3, (0, 0, 1), Deviation.of({0: 0, 1: 1}))

    def test_identity_is_no_move(self, trio):
        mc = classify_move(trio, SocialGraph.empty(3), (0, 0, 1), Deviation.of({0: 0, 1: 0}))
        assert mc == classify_move(trio, SocialGraph.empty(3), (0, 0, 1), Deviation.of({2: 1}))
        assert not mc.weak_improving

    def test_cycle_block_alpha_to_beta(self):
        graph = build_graph()
        instance = GameInstance.identical(266, 95)
        state = state_from_phases(["alpha"] * 19)
        b = 7
        dev = Deviation.of({pid("D", b): rid(b, 3), pid("G", b): rid(b, 2)})
        mc = classify_move(instance, graph, state, dev)
        assert mc.weak_considerate_improving and not mc.improving


def _random_case(seed):
    instance, graph, rng = tie_heavy_instance(seed, max_n=6, max_m=3)
    state = tuple(rng.randrange(instance.m) for _ in range(instance.n))
    clique = rng.choice(enumerate_cliques(graph))
    dev = Deviation.from_vector(clique, [rng.randrange(instance.m) for _ in clique])
    return instance, graph, state, dev, rng


@settings(max_examples=300)
@given(st.integers(0, 10**6))
def test_flag_lattice(seed):
    instance, graph, state, dev, _ = _random_case(seed)
    mc = classify_move(instance, graph, state, dev)
    assert not mc.improving or mc.weak_improving
    assert not mc.considerate_improving or mc.weak_considerate_improving
    assert not mc.considerate_improving or mc.improving
    assert not mc.weak_considerate_improving or mc.weak_improving


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_empty_graph_singletons_are_plain_improvements(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 6), rng.randint(1, 4)
    instance = GameInstance.identical(n, m, [x * x + x for x in range(1, n + 1)])
    state = tuple(rng.randrange(m) for _ in range(n))
    i, r = rng.randrange(n), rng.randrange(m)
    mc = classify_move(instance, SocialGraph.empty(n), state, Deviation.of({i: r}))
    after = apply_deviation(instance, state, Deviation.of({i: r}))
    strictly_better = instance.delay(r, load_profile(instance, after)[r]) < instance.delay(
        state[i], load_profile(instance, state)[state[i]]
    )
    assert mc.weak_considerate_improving == strictly_better == mc.improving


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_adding_a_staying_neighbor_keeps_weak_improvement(seed):
    # a neighbor that joins without moving was already protected, so the
    # extended coalition still weakly improves
    instance, graph, state, dev, rng = _random_case(seed)
    if not classify_move(instance, graph, state, dev).weak_considerate_improving:
        return
    extra = sorted(neighborhood(graph, dev.coalition) - set(dev.coalition))
    if not extra:
        return
    j = rng.choice(extra)
    bigger = Deviation(dev.targets + ((j, state[j]),))
    assert classify_move(instance, graph, state, bigger).weak_improving
