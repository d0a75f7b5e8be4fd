"""Finite dynamical systems and the blocks their orbits visit infinitely often.

For a self-map ``T`` of a finite set, the orbit of ``x`` is a tail followed by
a cycle repeated forever.  A block is visited infinitely often exactly when it
meets the cycle, so the infinitely-visited block sets are computed
structurally rather than by simulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError
from .limits import Diagram, Thread, enumerate_threads, fp_named, full_diagram, restrict_labels
from .partitions import DEFAULT_GUARD, GroundSet, Partition


@dataclass(frozen=True)
class OrbitSystem:
    states: GroundSet
    map: Mapping
    start: object

    def __post_init__(self):
        if not isinstance(self.states, GroundSet):
            object.__setattr__(self, "states", GroundSet(tuple(self.states)))
        for s in self.states:
            if s not in self.map:
                raise InputError(f"map is not total: no image for state {s!r}")
        for s, t in self.map.items():
            if s not in self.states:
                raise InputError(f"map is defined on unknown state {s!r}")
            if t not in self.states:
                raise InputError(f"state {s!r} maps to unknown state {t!r}")
        if self.start not in self.states:
            raise InputError(f"start {self.start!r} is not a state")
        object.__setattr__(self, "map", dict(self.map))

    def __hash__(self):
        return hash((self.states, tuple(self.map[s] for s in self.states), self.start))

    def step(self, x):
        return self.map[x]


@dataclass(frozen=True)
class EventuallyPeriodicSequence:
    """``n ↦ prefix[n]`` for ``n < len(prefix)``, then ``cycle`` repeated."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise InputError("cycle of an eventually periodic sequence must be nonempty")

    def __getitem__(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]


@dataclass(frozen=True)
class OmegaBlockSet:
    partition: Partition
    blocks: tuple

    def __post_init__(self):
        for b in self.blocks:
            if b not in self.partition.blocks:
                raise InputError("omega block is not a block of its partition")


def orbit_decompose(sys: OrbitSystem) -> tuple[list, list]:
    """Split the orbit of ``sys.start`` into its non-repeating tail and its cycle."""
    first_seen = {}
    orbit = []
    x = sys.start
    while x not in first_seen:
        first_seen[x] = len(orbit)
        orbit.append(x)
        x = sys.step(x)
    mu = first_seen[x]
    return orbit[:mu], orbit[mu:]


def orbit_sequence(sys: OrbitSystem) -> EventuallyPeriodicSequence:
    """The sequence ``n ↦ T^n(start)`` in prefix/cycle form."""
    tail, cycle = orbit_decompose(sys)
    return EventuallyPeriodicSequence(tuple(tail), tuple(cycle))


def _meeting(p: Partition, recurrent) -> tuple:
    recurrent = set(recurrent)
    return tuple(b for b in p.blocks if not recurrent.isdisjoint(b))


def delta_x(sys: OrbitSystem, p: Partition) -> OmegaBlockSet:
    """Blocks of ``p`` that the orbit of the start point visits infinitely often."""
    if p.ground != sys.states or not p.is_full:
        raise InputError("delta_x needs a full partition of the system's states")
    _, cycle = orbit_decompose(sys)
    blocks = _meeting(p, cycle)
    assert blocks
    return OmegaBlockSet(p, blocks)


def delta_f(seq: EventuallyPeriodicSequence, p: Partition) -> OmegaBlockSet:
    """Blocks of ``p`` with infinite preimage under ``seq``."""
    if not p.is_full:
        raise InputError("delta_f needs a full partition of the value space")
    for v in seq.prefix + seq.cycle:
        if v not in p.ground:
            raise InputError(f"sequence value {v!r} is outside the partition's ground set")
    blocks = _meeting(p, seq.cycle)
    assert blocks
    return OmegaBlockSet(p, blocks)


def corollary_diagram(sys: OrbitSystem, guard: int = DEFAULT_GUARD, force: bool = False) -> Diagram:
    """FP(states), each partition cut down to its infinitely visited blocks.

    Containment maps restrict cleanly: a block containing an infinitely
    visited block is itself infinitely visited.
    """
    named = fp_named(sys.states, guard=guard, force=force)
    _, cycle = orbit_decompose(sys)
    labels = {name: _meeting(p, cycle) for name, p in named.items()}
    return restrict_labels(full_diagram(sys.states, guard=guard, force=force), labels)


def corollary_limit(sys: OrbitSystem, guard: int = DEFAULT_GUARD, force: bool = False,
                    validate: bool = False) -> list[Thread]:
    """Threads of ``corollary_diagram(sys)``; one per cycle state."""
    d = corollary_diagram(sys, guard=guard, force=force)
    threads = enumerate_threads(d, validate=validate)
    assert threads, "empty limit for a finite orbit"
    return threads


def discrete_point(t: Thread, states: GroundSet):
    """The state a corollary thread selects at the discrete partition."""
    name = str(Partition.discrete(states))
    (x,) = t[name]
    return x


def report(sys: OrbitSystem, partitions: Sequence[Partition] | None = None,
           guard: int = DEFAULT_GUARD, force: bool = False) -> dict:
    """Plain-data summary: tail, cycle, Δ(x) per partition, thread count, a witness thread."""
    tail, cycle = orbit_decompose(sys)
    named = fp_named(sys.states, guard=guard, force=force)
    if partitions is not None:
        named = {str(p): p for p in partitions}
    threads = corollary_limit(sys, guard=guard, force=force)
    states = sys.states
    blk = lambda b: list(states.sort(b))  # noqa: E731
    return {
        "tail": list(tail),
        "cycle": list(cycle),
        "delta": {name: [blk(b) for b in delta_x(sys, p).blocks] for name, p in named.items()},
        "thread_count": len(threads),
        "witness": {name: blk(b) for name, b in threads[0].items()},
    }
