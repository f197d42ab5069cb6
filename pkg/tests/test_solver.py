import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from circlepaint._errors import (
    DuplicatePillarGap,
    GapOutsideArch,
    NoUncolouredIntervalInArch,
    OmegaTooSmall,
)
from circlepaint.core import FIG2, IntervalSystem, overlap_graph
from circlepaint.dominance import omega
from circlepaint.oracle import random_system, verify_colouring
from circlepaint.pillar import PillarState, build_colouring, verify_assignment
from circlepaint.solver import (
    _median_first,
    _sweep,
    arch_degree_bound,
    bound,
    colour,
    dnc_extend,
    sweep_bound,
    sweep_pillars,
)


class TestBounds:
    @pytest.mark.parametrize("w, expected", [(2, 24), (3, 44), (4, 64), (8, 154)])
    def test_colour_bound(self, w, expected):
        assert bound(w) == expected

    def test_formula(self):
        for w in range(2, 200):
            lg = math.log2(w)
            assert bound(w) == math.ceil(2 * w * lg + 2 * w * math.log2(lg) + 10 * w)
            assert arch_degree_bound(w) == math.ceil(w * lg + w * math.log2(lg) + 6 * w)
            assert sweep_bound(w) < arch_degree_bound(w)

    def test_small_omega(self):
        with pytest.raises(OmegaTooSmall):
            bound(1)
        with pytest.raises(OmegaTooSmall):
            arch_degree_bound(0)


@pytest.mark.parametrize("n", range(0, 40))
def test_median_first_depth(n):
    qs = list(range(100, 100 + n))
    order = _median_first(qs)
    assert sorted(order) == qs
    if n:
        assert order[0] == qs[math.ceil(n / 2) - 1]
    # every element is inserted after its neighbours at smaller depth: depth <= ceil(log2(n+1))
    inserted = []
    depth = {}
    for q in order:
        lower = max((p for p in inserted if p < q), default=None)
        upper = min((p for p in inserted if p > q), default=None)
        depth[q] = 1 + max(depth.get(lower, 0), depth.get(upper, 0))
        inserted.append(q)
    assert max(depth.values(), default=0) <= math.ceil(math.log2(n + 1))


class TestColourFig2:
    def test_proper_and_bounded(self, fig2):
        result = colour(fig2)
        assert verify_colouring(overlap_graph(fig2), result.colors)
        assert result.stats.omega == 3
        assert result.stats.bound == 44
        assert result.stats.colors_used <= 44
        assert result.stats.assertions_checked > 0
        assert result.stats.colors_used >= 3
        assert result.to_json()["stats"]["omega"] == 3

    def test_deterministic(self, fig2):
        assert colour(fig2).colors == colour(fig2).colors


class TestDegenerate:
    def test_empty(self):
        result = colour(IntervalSystem([]))
        assert result.colors == {} and result.stats.colors_used == 0

    def test_nested(self):
        sys_ = IntervalSystem.from_ranks({"a": (1, 6), "b": (2, 5), "c": (3, 4)})
        result = colour(sys_)
        assert set(result.colors.values()) == {1}
        assert result.stats.omega == 1

    def test_single(self):
        assert colour(IntervalSystem.from_ranks({"x": (1, 2)})).colors == {"x": 1}


class TestSweep:
    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 200), st.integers(0, 2**32), st.integers(0, 2**32))
    def test_blocks_have_degree_two_omega(self, m, seed, gap_seed):
        system = random_system(m, seed)
        w = omega(system)[0]
        if w < 2:
            return
        rng = random.Random(gap_seed)
        pool = list(range(1, system.size))
        rng.shuffle(pool)
        state = build_colouring(system, pool[: rng.randint(0, system.size // 2)])
        led = state._live()
        for K in state.arches():
            try:
                Q = sweep_pillars(state, K, w)
            except NoUncolouredIntervalInArch:
                continue
            cuts = _sweep(led, K.lo, K.hi, 2 * w)
            bounds = [K.lo, *cuts, K.hi]
            for k, (a, b) in enumerate(zip(bounds, bounds[1:])):
                d = led.degree(a, b)
                if k < len(cuts):
                    assert d == 2 * w
                else:
                    assert d <= 2 * w
            # the extra pillar sits just after the left end of an uncoloured interval
            extra = set(Q) - set(cuts)
            for q in extra:
                assert not led.colour[led.owner[q]] and led.left[led.owner[q]] == q

    def test_no_uncoloured_interval(self, fig2_state):
        with pytest.raises(NoUncolouredIntervalInArch):
            sweep_pillars(fig2_state, (7, 13), 3)


class TestDncExtend:
    def test_rejects_non_arch(self):
        state = PillarState.empty(FIG2)
        with pytest.raises(GapOutsideArch):
            dnc_extend(state, (0, 10), [4])

    def test_rejects_gap_outside(self):
        state = build_colouring(FIG2, [10])
        with pytest.raises(GapOutsideArch):
            dnc_extend(state, (0, 10), [12])
        with pytest.raises(DuplicatePillarGap):
            dnc_extend(state, (0, 10), [10])

    def test_empty_q(self):
        state = build_colouring(FIG2, [10])
        assert dnc_extend(state, (0, 10), []) is state

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 30), st.integers(0, 2**32), st.integers(0, 2**32))
    def test_random_inserts_hold_invariants(self, m, seed, gap_seed):
        system = random_system(m, seed)
        rng = random.Random(gap_seed)
        pool = list(range(1, system.size))
        rng.shuffle(pool)
        k = rng.randint(0, len(pool) - 1)
        state = build_colouring(system, pool[:k])
        K = rng.choice(state.arches())
        inside = [g for g in range(K.lo + 1, K.hi) if g not in state.gaps]
        Q = rng.sample(inside, rng.randint(0, len(inside)))
        # the assertions inside dnc_extend raise on any violated inequality
        out = dnc_extend(state, K, Q, check=True)
        assert set(out.gaps) == set(state.gaps) | set(Q)
        assert verify_assignment(out).ok

    @settings(max_examples=500, deadline=None)
    @given(st.integers(2, 40), st.integers(0, 2**32), st.integers(0, 2**32))
    def test_small_q_inequalities(self, m, seed, gap_seed):
        # recompute t and d(K) here and compare with the promised limits
        system = random_system(m, seed)
        w = omega(system)[0]
        rng = random.Random(gap_seed)
        pool = list(range(1, system.size))
        rng.shuffle(pool)
        state = build_colouring(system, pool[: rng.randint(0, len(pool) - 1)])
        K = rng.choice(state.arches())
        inside = [g for g in range(K.lo + 1, K.hi) if g not in state.gaps]
        Q = sorted(rng.sample(inside, min(len(inside), rng.randint(1, 7))))
        if not Q:
            return
        bounds = [K.lo, *Q, K.hi]
        blocks = list(zip(bounds, bounds[1:]))
        t = max(state.degree(b) for b in blocks)
        d_K = state.degree(K)
        out = dnc_extend(state, K, Q, omega=w, check=False)
        growth = w * math.ceil(math.log2(len(Q) + 1))
        assert all(out.degree(b) <= t + growth for b in blocks)
        assert out.chi_used() <= max(state.chi_used(), d_K + growth)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 60), st.integers(0, 2**32))
def test_random_systems(m, seed):
    system = random_system(m, seed)
    result = colour(system)
    assert verify_colouring(overlap_graph(system), result.colors)
    s = result.stats
    if s.omega >= 2:
        assert s.colors_used <= s.bound
        assert s.max_arch_degree_seen <= arch_degree_bound(s.omega)
        assert verify_assignment(result.state).ok
        assert result.state.is_complete()
    assert colour(system, check=False).colors == result.colors
