"""Finite ground sets, (partial) partitions, the refinement order and its block maps.

A ``Partition`` is a finite family of pairwise disjoint nonempty blocks whose
union (the carrier) is a subset of a ``GroundSet``.  When the carrier is the
whole ground set the partition is *full*; otherwise it is *partial*.  Both
kinds are ordered by

    fine <= coarse  iff  every block of fine lies in exactly one block of coarse

and ``psi`` returns the induced block-to-block map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import DegeneratePartitionError, InputError, OrderError, ResourceError

Atom = Hashable
Block = frozenset

DEFAULT_GUARD = 9


@dataclass(frozen=True)
class GroundSet:
    """Ordered finite set of distinct atoms; list order is the canonical order."""

    elements: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise InputError(f"duplicate atom {e!r} in ground set")
            index[e] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)

    @classmethod
    def range(cls, n: int) -> GroundSet:
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, atom):
        return atom in self._index

    def index(self, atom) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise InputError(f"unknown atom {atom!r}") from None

    def sort(self, atoms: Iterable[Atom]) -> tuple:
        return tuple(sorted(atoms, key=self.index))

    def subset(self, atoms: Iterable[Atom]) -> frozenset:
        atoms = frozenset(atoms)
        for a in atoms:
            if a not in self._index:
                raise InputError(f"unknown atom {a!r} (not in ground set)")
        return atoms

    @property
    def as_set(self) -> frozenset:
        return frozenset(self.elements)


def _block_key(ground: GroundSet):
    return lambda b: min(ground.index(a) for a in b)


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks over a subset of ``ground``, kept in canonical order.

    Blocks are sorted by their least element under the ground order, so two
    partitions with the same blocks compare (and hash) equal.
    """

    ground: GroundSet
    blocks: tuple

    def __post_init__(self):
        seen = {}
        blocks = []
        for raw in self.blocks:
            block = frozenset(raw)
            if not block:
                raise InputError("empty block in partition")
            for a in block:
                if a not in self.ground:
                    raise InputError(f"unknown atom {a!r} in block {sorted(block, key=repr)!r}")
                if a in seen:
                    raise InputError(f"atom {a!r} appears in more than one block")
                seen[a] = block
            blocks.append(block)
        blocks.sort(key=_block_key(self.ground))
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def of(cls, ground: GroundSet | Iterable, blocks: Iterable[Iterable]) -> Partition:
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, tuple(frozenset(b) for b in blocks))

    @classmethod
    def discrete(cls, ground: GroundSet) -> Partition:
        return cls(ground, tuple(frozenset([a]) for a in ground))

    @classmethod
    def indiscrete(cls, ground: GroundSet) -> Partition:
        return cls(ground, (ground.as_set,) if len(ground) else ())

    @classmethod
    def empty(cls, ground: GroundSet) -> Partition:
        return cls(ground, ())

    @property
    def carrier(self) -> frozenset:
        return frozenset().union(*self.blocks)

    @property
    def is_full(self) -> bool:
        return len(self.carrier) == len(self.ground)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.blocks)

    def __contains__(self, block):
        return frozenset(block) in self.blocks

    def block_of(self, atom) -> frozenset | None:
        for b in self.blocks:
            if atom in b:
                return b
        return None

    def sorted_block(self, block) -> tuple:
        return self.ground.sort(block)

    def __str__(self):
        return format_partition(self)


def format_block(ground: GroundSet, block) -> str:
    return "{" + ",".join(str(a) for a in ground.sort(block)) + "}"


def format_partition(p: Partition) -> str:
    """Canonical string such as ``{a,b}|{c}``; the empty partition is ``{}``."""
    if not p.blocks:
        return "{}"
    return "|".join(format_block(p.ground, b) for b in p.blocks)


def _same_ground(p: Partition, q: Partition):
    if p.ground != q.ground:
        raise InputError(f"partitions over different ground sets: {p.ground.elements!r} vs {q.ground.elements!r}")


def containment_map(fine_blocks, coarse_blocks) -> tuple[dict, object]:
    """Map each fine block to the unique coarse block containing it.

    Works for any block type supporting ``<=`` as subset.  Returns
    ``(assignment, offender)`` where ``offender`` is the first fine block with
    zero or several containing coarse blocks (``None`` when the map is total).
    """
    assignment = {}
    for b in fine_blocks:
        hits = [c for c in coarse_blocks if b <= c]
        if len(hits) != 1:
            return assignment, b
        assignment[b] = hits[0]
    return assignment, None


def leq(fine: Partition, coarse: Partition) -> bool:
    _same_ground(fine, coarse)
    _, offender = containment_map(fine.blocks, coarse.blocks)
    return offender is None


@dataclass(frozen=True, eq=False)
class RefinementMap:
    """The block map ``finer -> coarser`` sending each block to its container."""

    finer: Partition
    coarser: Partition
    assignment: Mapping

    def __call__(self, block):
        return self.assignment[frozenset(block)]

    def __eq__(self, other):
        if not isinstance(other, RefinementMap):
            return NotImplemented
        return (self.finer, self.coarser, dict(self.assignment)) == (
            other.finer, other.coarser, dict(other.assignment))

    def __hash__(self):
        return hash((self.finer, self.coarser))

    def compose(self, inner: RefinementMap) -> RefinementMap:
        """``self ∘ inner``: first apply ``inner`` (finer -> mid), then self."""
        if inner.coarser != self.finer:
            raise InputError("maps are not composable")
        return RefinementMap(inner.finer, self.coarser,
                             {b: self.assignment[m] for b, m in inner.assignment.items()})


def psi(fine: Partition, coarse: Partition) -> RefinementMap:
    _same_ground(fine, coarse)
    assignment, offender = containment_map(fine.blocks, coarse.blocks)
    if offender is not None:
        raise OrderError(
            f"block {format_block(fine.ground, offender)} of {fine} is not contained "
            f"in exactly one block of {coarse}", block=offender)
    return RefinementMap(fine, coarse, assignment)


def common_refinement(p: Partition, q: Partition) -> Partition:
    """Meet of two full partitions: all nonempty intersections P ∩ Q."""
    _same_ground(p, q)
    if not (p.is_full and q.is_full):
        raise InputError("common_refinement needs full partitions")
    return Partition(p.ground, tuple(a & b for a in p.blocks for b in q.blocks if a & b))


def two_block(a: Iterable, ground: GroundSet) -> Partition:
    """The partition ``{A, ground \\ A}``; both cells must be nonempty."""
    a = ground.subset(a)
    if not a:
        raise DegeneratePartitionError("two_block: A is empty")
    if len(a) == len(ground):
        raise DegeneratePartitionError("two_block: A is the whole ground set")
    return Partition(ground, (a, ground.as_set - a))


def subset_witness(a: Iterable, b: Iterable, ground: GroundSet) -> Partition:
    """The nonempty members of ``{A, B \\ A, ground \\ B}`` for ``A ⊆ B``."""
    a, b = ground.subset(a), ground.subset(b)
    if not a <= b:
        raise InputError("subset_witness: A is not a subset of B")
    cells = (a, b - a, ground.as_set - b)
    return Partition(ground, tuple(c for c in cells if c))


def restricted_growth_strings(n: int) -> Iterator[tuple]:
    """All restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def extend(i, bound):
        if i == n:
            yield tuple(word)
            return
        for v in range(bound + 1):
            word[i] = v
            yield from extend(i + 1, max(bound, v + 1))

    yield from extend(1, 1)


def check_guard(size: int, guard: int = DEFAULT_GUARD, force: bool = False, what: str = "ground set"):
    if guard < 0:
        raise InputError("size guard must be >= 0")
    if size > guard and not force:
        raise ResourceError(f"{what} of size {size} exceeds the size guard {guard} (use force to override)")


def enumerate_partitions(ground: GroundSet, guard: int = DEFAULT_GUARD,
                         force: bool = False) -> Iterator[Partition]:
    """Yield every full partition of ``ground`` once, ordered by restricted growth string."""
    check_guard(len(ground), guard, force)
    atoms = ground.elements
    for word in restricted_growth_strings(len(atoms)):
        cells = [[] for _ in range(max(word, default=-1) + 1)]
        for atom, c in zip(atoms, word):
            cells[c].append(atom)
        yield Partition(ground, tuple(frozenset(c) for c in cells))
