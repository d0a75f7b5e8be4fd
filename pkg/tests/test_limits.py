import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_threads
from uflim.errors import ConeError, DiagramError, InputError
from uflim.limits import (
    Cone,
    Diagram,
    Thread,
    enumerate_threads,
    fp_named,
    full_diagram,
    is_thread,
    mediating_map,
    partition_diagram,
    product_size,
    restrict_labels,
    validate_diagram,
)
from uflim.partitions import GroundSet, Partition, leq, two_block
from uflim.sampling import random_partition, random_partition_diagram, random_tree_diagram
from uflim.ultrafilters import bigg_diagram

G3 = GroundSet(("a", "b", "c"))


def as_set(threads):
    return {frozenset(t.items()) for t in threads}


class TestValidate:
    def test_full_fp_is_lawful(self):
        assert validate_diagram(full_diagram(G3)) == []

    def test_single_object(self):
        d = Diagram.from_generators({"x": ("p", "q")}, {})
        assert validate_diagram(d) == []

    def test_wrong_arrow_is_named(self):
        d = full_diagram(G3)
        arrows = dict(d.arrows)
        key = ("{a}|{b}|{c}", "{a,b}|{c}")
        arrows[key] = {k: frozenset("c") for k in arrows[key]}
        bad = Diagram(d.objects, arrows, containment=True)
        issues = validate_diagram(bad)
        assert issues
        assert all(key in i.arrows for i in issues)
        assert any(i.kind == "not-containment" and i.arrows == (key,) for i in issues)

    def test_wrong_arrow_named_without_containment(self):
        d = Diagram.from_generators({"x": (0, 1), "y": (0, 1), "z": (0,)},
                                    {("x", "y"): {0: 0, 1: 1}, ("y", "z"): {0: 0, 1: 0}})
        arrows = dict(d.arrows)
        arrows[("x", "y")] = {0: 1, 1: 0}
        issues = validate_diagram(Diagram(d.objects, arrows))
        assert issues == [] or all(("x", "y") in i.arrows for i in issues)
        # the swap still commutes because z has a single label; break a label-sensitive one
        d2 = Diagram.from_generators({"x": (0, 1), "y": (0, 1), "z": (0, 1)},
                                     {("x", "y"): {0: 0, 1: 1}, ("y", "z"): {0: 0, 1: 1}})
        arrows = dict(d2.arrows)
        arrows[("x", "y")] = {0: 1, 1: 0}
        issues = validate_diagram(Diagram(d2.objects, arrows))
        assert issues and all(("x", "y") in i.arrows for i in issues)

    def test_missing_identity_and_composite(self):
        d = Diagram({"x": (0,), "y": (0,), "z": (0,)},
                    {("x", "y"): {0: 0}, ("y", "z"): {0: 0}})
        kinds = {i.kind for i in validate_diagram(d)}
        assert kinds == {"missing-identity", "missing-composite"}

    def test_not_a_map(self):
        d = Diagram.from_generators({"x": (0, 1), "y": (0,)}, {("x", "y"): {0: 0, 1: 7}})
        assert any(i.kind == "not-a-map" for i in validate_diagram(d))

    def test_closure_adds_composites(self):
        d = Diagram.from_generators({"x": (0, 1), "y": (0, 1), "z": (0,)},
                                    {("x", "y"): {0: 1, 1: 0}, ("y", "z"): {0: 0, 1: 0}})
        assert d.arrows[("x", "z")] == {0: 0, 1: 0}
        assert validate_diagram(d) == []

    def test_enumerate_rejects_invalid(self):
        d = Diagram({"x": (0,)}, {})
        with pytest.raises(DiagramError):
            enumerate_threads(d)


class TestEnumerateThreads:
    @pytest.mark.parametrize("n", range(6))
    def test_full_fp_has_n_threads(self, n):
        d = full_diagram(GroundSet.range(n))
        assert len(enumerate_threads(d)) == n

    def test_full_fp_3_matches_brute_force(self):
        d = full_diagram(G3)
        got = enumerate_threads(d)
        assert len(got) == 3
        assert as_set(got) == {frozenset(t.items()) for t in brute_force_threads(d)}

    @pytest.mark.parametrize("n", range(1, 5))
    def test_bigg_image_is_empty(self, n):
        assert enumerate_threads(bigg_diagram(GroundSet.range(n))) == []

    def test_single_object_two_labels(self):
        d = Diagram.from_generators({"x": ("P", "Q")}, {})
        assert [t["x"] for t in enumerate_threads(d)] == ["P", "Q"]

    def test_empty_diagram_has_one_empty_thread(self):
        d = Diagram({}, {})
        assert enumerate_threads(d) == [Thread({})]

    def test_empty_object_forces_empty_limit(self):
        d = Diagram.from_generators({"x": (), "y": (0, 1)}, {})
        assert enumerate_threads(d) == []

    def test_canonical_order(self):
        d = Diagram.from_generators({"x": ("q", "p"), "y": (2, 1)}, {})
        got = [(t["x"], t["y"]) for t in enumerate_threads(d)]
        assert got == [("q", 2), ("q", 1), ("p", 2), ("p", 1)]

    def test_no_least_object_needs_backtracking(self):
        # two incomparable fine objects over a shared coarse one
        d = Diagram.from_generators({"l": (0, 1, 2), "r": (0, 1, 2), "top": (0, 1)},
                                    {("l", "top"): {0: 0, 1: 0, 2: 1}, ("r", "top"): {0: 1, 1: 1, 2: 0}})
        got = enumerate_threads(d)
        assert as_set(got) == {frozenset(t.items()) for t in brute_force_threads(d)}
        assert len(got) == 2 * 1 + 1 * 2

    @pytest.mark.parametrize("seed", range(40))
    def test_random_partition_diagrams_match_oracle(self, seed):
        d = random_partition_diagram(random.Random(seed), max_product=20000)
        assert validate_diagram(d) == []
        assert as_set(enumerate_threads(d)) == {frozenset(t.items()) for t in brute_force_threads(d)}

    @pytest.mark.parametrize("seed", range(40))
    def test_random_tree_diagrams_match_oracle(self, seed):
        d = random_tree_diagram(random.Random(1000 + seed), max_product=20000)
        assert validate_diagram(d) == []
        assert as_set(enumerate_threads(d)) == {frozenset(t.items()) for t in brute_force_threads(d)}


class TestMonotonicity:
    """Limits are not monotone in raw thread count (adding the discrete partition
    to {{0,1,2,3}} takes 1 thread to 4); what holds is that threads restrict to
    threads, so the *projected* thread set only shrinks as objects are added."""

    def test_raw_count_is_not_monotone(self):
        g = GroundSet.range(4)
        coarse = {"top": Partition.indiscrete(g)}
        assert len(enumerate_threads(partition_diagram(coarse))) == 1
        finer = dict(coarse, bottom=Partition.discrete(g))
        assert len(enumerate_threads(partition_diagram(finer))) == 4

    @pytest.mark.parametrize("seed", range(30))
    def test_adding_finest_object_never_increases_projection(self, seed):
        rng = random.Random(seed)
        g = GroundSet.range(rng.randint(1, 4))
        parts = {}
        for _ in range(rng.randint(1, 5)):
            p = random_partition(rng, g, drop=0.3 if rng.random() < 0.5 else 0.0)
            parts.setdefault(str(p), p)
        before = enumerate_threads(partition_diagram(parts))
        # finer than every (possibly partial) object: singletons of the common carrier
        common = frozenset(g.as_set).intersection(*(p.carrier for p in parts.values()))
        finest = Partition(g, tuple(frozenset([a]) for a in common))
        assert all(leq(finest, p) for p in parts.values())
        bigger = partition_diagram(dict(parts, finest=finest))
        after = enumerate_threads(bigger)
        projected = {frozenset((n, t[n]) for n in parts) for t in after}
        assert projected <= as_set(before)
        assert len(projected) <= len(before)
        # a least object determines the thread: one per label that survives
        assert len(after) == len(bigger.objects["finest"]) or any(not ls for ls in bigger.objects.values())

    @pytest.mark.parametrize("seed", range(30))
    def test_restriction_never_decreases_projection(self, seed):
        rng = random.Random(seed)
        d = random_partition_diagram(rng, max_ground=4, max_objects=7)
        names = list(d.objects)
        keep = rng.sample(names, rng.randint(0, len(names)))
        sub = d.sub_diagram(keep)
        assert validate_diagram(sub) == []
        restricted = {frozenset((n, t[n]) for n in keep) for t in enumerate_threads(d)}
        assert restricted <= as_set(enumerate_threads(sub))


class TestIsThread:
    def test_round_trip(self):
        d = full_diagram(G3)
        assert all(is_thread(t, d) for t in enumerate_threads(d))

    def test_perturbed_thread(self):
        d = full_diagram(G3)
        t = dict(enumerate_threads(d)[0])
        t["{a}|{b}|{c}"] = frozenset("b") if t["{a}|{b}|{c}"] != frozenset("b") else frozenset("a")
        assert not is_thread(t, d)
        # the violated arrow lands in the two-block partition separating the choices
        cut = str(two_block({"a"}, G3))
        assert d.arrows[("{a}|{b}|{c}", cut)][t["{a}|{b}|{c}"]] != t[cut]

    def test_empty(self):
        assert is_thread({}, Diagram({}, {}))

    def test_missing_object(self):
        with pytest.raises(InputError):
            is_thread({}, full_diagram(G3))

    def test_label_outside_object(self):
        d = Diagram.from_generators({"x": (0,)}, {})
        assert not is_thread({"x": 5}, d)


class TestMediatingMap:
    def test_identity_on_limit(self):
        d = full_diagram(G3)
        limit = enumerate_threads(d)
        u = mediating_map(Cone.of_threads(limit, d), d, limit)
        assert all(u[t] == t for t in limit)

    def test_one_point(self):
        d = full_diagram(G3)
        t = enumerate_threads(d)[1]
        cone = Cone(("*",), {n: {"*": t[n]} for n in d.objects})
        assert mediating_map(cone, d) == {"*": t}

    def test_two_points(self):
        d = full_diagram(G3)
        t0, _, t2 = enumerate_threads(d)
        cone = Cone((0, 1), {n: {0: t0[n], 1: t2[n]} for n in d.objects})
        u = mediating_map(cone, d)
        assert u[0] == t0 and u[1] == t2

    def test_noncommuting_cone_names_arrow(self):
        d = full_diagram(G3)
        t = enumerate_threads(d)[0]
        legs = {n: {"*": t[n]} for n in d.objects}
        legs["{a,b,c}"] = {"*": frozenset("abc")}
        legs["{a}|{b}|{c}"] = {"*": frozenset("c")} if t["{a}|{b}|{c}"] != frozenset("c") else {"*": frozenset("a")}
        with pytest.raises(ConeError) as exc:
            mediating_map(Cone(("*",), legs), d)
        assert exc.value.arrow is not None and "{a}|{b}|{c}" in exc.value.arrow

    def test_equal_legs_equal_maps(self):
        d = full_diagram(G3)
        limit = enumerate_threads(d)
        c1 = Cone.of_threads(limit, d)
        c2 = Cone(tuple(limit), {n: dict(c1.legs[n]) for n in d.objects})
        assert mediating_map(c1, d) == mediating_map(c2, d)

    @given(st.integers(0, 10**6))
    def test_random_cones_mediate_into_limit(self, seed):
        rng = random.Random(seed)
        d = random_partition_diagram(rng, max_objects=5, max_product=5000)
        limit = enumerate_threads(d)
        apex = tuple(range(rng.randint(0, 3)))
        if not limit:
            apex = ()
        picks = {y: rng.choice(limit) for y in apex}
        cone = Cone(apex, {n: {y: picks[y][n] for y in apex} for n in d.objects})
        u = mediating_map(cone, d, limit)
        assert all(is_thread(u[y], d) and u[y] == picks[y] for y in apex)


def test_restrict_labels_and_product_size():
    g = GroundSet.range(3)
    d = full_diagram(g)
    named = fp_named(g)
    assert product_size(d) == 1 * 2 * 2 * 2 * 3
    r = restrict_labels(d, {n: p.blocks[:1] for n, p in named.items()})
    assert product_size(r) == 1
