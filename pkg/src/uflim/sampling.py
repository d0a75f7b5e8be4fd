"""Seeded random instances for sweeps: diagrams, fc partitions, orbit systems."""

from __future__ import annotations

import random

from .dynamics import OrbitSystem
from .fcalgebra import FcPartition, FcSet, fc_common_refinement
from .limits import Diagram, partition_diagram, product_size
from .partitions import GroundSet, Partition


def random_partition(rng: random.Random, ground: GroundSet, drop: float = 0.0) -> Partition:
    """Uniform-ish random full partition; each block is then dropped with probability ``drop``."""
    cells: list[list] = []
    for a in ground:
        k = rng.randint(0, len(cells))
        if k == len(cells):
            cells.append([a])
        else:
            cells[k].append(a)
    kept = [c for c in cells if rng.random() >= drop]
    return Partition(ground, tuple(frozenset(c) for c in kept))


def random_partition_diagram(rng: random.Random, max_ground: int = 4, max_objects: int = 7,
                             max_product: int = 10**6, partial: float = 0.3,
                             min_product: int = 0) -> Diagram:
    """Random (partial) partitions of a small ground set with every containment arrow."""
    while True:
        ground = GroundSet.range(rng.randint(1, max_ground))
        k = rng.randint(1, max_objects)
        parts = {}
        for _ in range(k):
            p = random_partition(rng, ground, drop=partial if rng.random() < 0.5 else 0.0)
            parts.setdefault(str(p), p)
        d = partition_diagram(parts)
        if min_product <= product_size(d) <= max_product:
            return d


def random_tree_diagram(rng: random.Random, max_objects: int = 7, max_labels: int = 4,
                        max_product: int = 10**6, min_product: int = 0) -> Diagram:
    """A rooted tree of objects, each child mapping to its parent by a random function.

    Paths in a tree are unique, so the composition closure is always lawful.
    Empty label sets occur; a child of an empty object is empty too.
    """
    while True:
        k = rng.randint(1, max_objects)
        sizes, parents = [], []
        for i in range(k):
            parent = rng.randrange(i) if i else None
            size = rng.randint(0, max_labels)
            if parent is not None and sizes[parent] == 0:
                size = 0
            sizes.append(size)
            parents.append(parent)
        objects = {f"t{i}": tuple(range(sizes[i])) for i in range(k)}
        arrows = {}
        for i, parent in enumerate(parents):
            if parent is not None:
                arrows[(f"t{i}", f"t{parent}")] = {x: rng.randrange(sizes[parent]) for x in range(sizes[i])}
        d = Diagram.from_generators(objects, arrows)
        if min_product <= product_size(d) <= max_product:
            return d


def random_fc_partition(rng: random.Random, max_support: int = 8) -> FcPartition:
    n = rng.randint(0, max_support)
    used = [x for x in range(n) if rng.random() < 0.6]
    cells: list[list] = []
    for x in used:
        k = rng.randint(0, len(cells))
        if k == len(cells):
            cells.append([x])
        else:
            cells[k].append(x)
    return FcPartition.from_finite_blocks(cells)


def random_coarsening(rng: random.Random, p: FcPartition) -> FcPartition:
    """Merge a random group of blocks (possibly into the cofinite one)."""
    blocks = list(p.blocks)
    if len(blocks) < 2:
        return p
    group = rng.sample(range(len(blocks)), rng.randint(2, len(blocks)))
    merged = blocks[group[0]]
    for i in group[1:]:
        merged = merged | blocks[i]
    rest = [b for i, b in enumerate(blocks) if i not in group]
    return FcPartition(tuple(rest) + (merged,))


def random_fc_family(rng: random.Random, max_objects: int = 6) -> list[FcPartition]:
    """fc partitions with some forced comparabilities (coarsenings, meets)."""
    parts = [random_fc_partition(rng) for _ in range(rng.randint(1, 3))]
    while len(parts) < max_objects:
        roll = rng.random()
        if roll < 0.4:
            parts.append(random_coarsening(rng, rng.choice(parts)))
        elif roll < 0.7 and len(parts) >= 2:
            a, b = rng.sample(parts, 2)
            parts.append(fc_common_refinement(a, b))
        else:
            parts.append(random_fc_partition(rng))
        if rng.random() < 0.2:
            break
    unique = {}
    for p in parts:
        unique.setdefault(str(p), p)
    return list(unique.values())


def random_fcset(rng: random.Random, bound: int = 10) -> FcSet:
    support = [x for x in range(bound) if rng.random() < 0.4]
    return FcSet.finite(support) if rng.random() < 0.5 else FcSet.cofinite(support)


def random_system(rng: random.Random, max_states: int = 6, min_states: int = 1) -> OrbitSystem:
    n = rng.randint(min_states, max_states)
    states = GroundSet.range(n)
    return OrbitSystem(states, {s: rng.randrange(n) for s in range(n)}, rng.randrange(n))
