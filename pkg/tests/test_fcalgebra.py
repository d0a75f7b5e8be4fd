import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import fc_partitions, fcsets
from uflim.errors import InputError, OrderError, ThreadError
from uflim.fcalgebra import (
    EMPTY,
    NATURALS,
    FcPartition,
    FcSet,
    bigg_fc,
    cofinite_filter_contains,
    fc_common_refinement,
    fc_leq,
    fc_psi,
)
from uflim.limits import enumerate_threads, is_thread, validate_diagram
from uflim.sampling import random_fc_family
from uflim.ultrafilters import fc_bigg_diagram, fc_free_thread

WINDOW = range(20)  # every support in these tests lives below 13


def members(a):
    return {n for n in WINDOW if n in a}


class TestFcSet:
    def test_strings(self):
        assert str(FcSet.finite({1, 0})) == "{0,1}"
        assert str(NATURALS) == "N"
        assert str(FcSet.cofinite({0, 1})) == "N\\{0,1}"

    def test_bad_support(self):
        with pytest.raises(InputError):
            FcSet.finite({-1})
        with pytest.raises(InputError):
            FcSet("other", frozenset())

    def test_min(self):
        assert FcSet.cofinite({0, 1, 3}).min() == 2
        with pytest.raises(InputError):
            EMPTY.min()

    @given(fcsets, fcsets)
    def test_ops_match_pointwise(self, a, b):
        assert members(a & b) == members(a) & members(b)
        assert members(a | b) == members(a) | members(b)
        assert members(a - b) == members(a) - members(b)
        assert (a <= b) == (members(a) <= members(b))

    @given(fcsets, fcsets, fcsets)
    def test_boolean_laws(self, a, b, c):
        assert a & (b | c) == (a & b) | (a & c)
        assert (a | b).complement() == a.complement() & b.complement()
        assert a.complement().complement() == a
        assert (a & a.complement()).is_empty
        assert a | a.complement() == NATURALS

    @given(fcsets)
    def test_cofinite_filter_is_ultra(self, a):
        assert cofinite_filter_contains(a) != cofinite_filter_contains(a.complement())


class TestFcPartition:
    def test_from_finite_blocks(self):
        p = FcPartition.from_finite_blocks([[2, 0], [1]])
        assert str(p) == "{0,2}|{1}|N\\{0,1,2}"
        assert p.cofinite_block == FcSet.cofinite({0, 1, 2})

    def test_overlap_rejected(self):
        with pytest.raises(InputError, match="overlap"):
            FcPartition((FcSet.finite({0, 1}), FcSet.cofinite({0})))

    def test_cover_required(self):
        with pytest.raises(InputError, match="cover"):
            FcPartition((FcSet.finite({0}), FcSet.cofinite({0, 1})))

    def test_empty_block_rejected(self):
        with pytest.raises(InputError):
            FcPartition((EMPTY, NATURALS))

    @given(fc_partitions())
    def test_exactly_one_cofinite_block(self, p):
        assert sum(b.is_infinite for b in p) == 1
        assert bigg_fc(p).blocks == (p.cofinite_block,)

    @given(fc_partitions(), fc_partitions())
    def test_meet(self, p, q):
        m = fc_common_refinement(p, q)
        assert fc_leq(m, p) and fc_leq(m, q)
        for n in WINDOW:
            (bm,) = [b for b in m if n in b]
            (bp,) = [b for b in p if n in b]
            (bq,) = [b for b in q if n in b]
            assert bm == bp & bq

    def test_psi_maps_cofinite_to_cofinite(self):
        fine = FcPartition.from_finite_blocks([[0], [1], [2]])
        coarse = FcPartition.from_finite_blocks([[0, 1]])
        m = fc_psi(fine, coarse)
        assert m[FcSet.finite({2})] == FcSet.cofinite({0, 1})
        assert m[fine.cofinite_block] == coarse.cofinite_block
        with pytest.raises(OrderError):
            fc_psi(coarse, fine)


class TestFreeThread:
    def test_example(self):
        ps = [FcPartition.from_finite_blocks([]),
              FcPartition.from_finite_blocks([[0]]),
              FcPartition.from_finite_blocks([[0], [1]])]
        d = fc_bigg_diagram(ps)
        assert validate_diagram(d) == []
        (t,) = enumerate_threads(d)
        assert t == fc_free_thread(d)
        assert t["{0}|{1}|N\\{0,1}"] == FcSet.cofinite({0, 1})

    @pytest.mark.parametrize("seed", range(30))
    def test_random_families_have_exactly_the_free_thread(self, seed):
        d = fc_bigg_diagram(random_fc_family(random.Random(seed)))
        assert validate_diagram(d) == []
        threads = enumerate_threads(d)
        assert threads == [fc_free_thread(d)]
        assert is_thread(threads[0], d)
        assert all(cofinite_filter_contains(b) for b in threads[0].values())

    @given(st.lists(fc_partitions(), min_size=1, max_size=4))
    def test_restricted_psi_lands_in_image(self, ps):
        d = fc_bigg_diagram(ps)
        for (s, t), m in d.arrows.items():
            assert set(m) == set(d.objects[s])
            assert all(v in d.objects[t] for v in m.values())

    def test_partial_object_without_cofinite_block(self):
        from uflim.limits import Diagram
        d = Diagram({"x": (FcSet.finite({0}),)}, {("x", "x"): {FcSet.finite({0}): FcSet.finite({0})}})
        with pytest.raises(ThreadError):
            fc_free_thread(d)
