"""The finite/cofinite Boolean algebra on the naturals.

Every ``FcSet`` is either a finite set of naturals or the complement of one.
Finite partitions of N inside this algebra have exactly one cofinite block,
which is what makes the free (non-principal) case computable here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, OrderError
from .partitions import containment_map

FINITE = "finite"
COFINITE = "cofinite"


@dataclass(frozen=True)
class FcSet:
    kind: str
    support: frozenset

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE):
            raise InputError(f"FcSet kind must be 'finite' or 'cofinite', got {self.kind!r}")
        support = frozenset(self.support)
        for n in support:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise InputError(f"FcSet support must hold naturals, got {n!r}")
        object.__setattr__(self, "support", support)

    @classmethod
    def finite(cls, elements: Iterable[int] = ()) -> FcSet:
        return cls(FINITE, frozenset(elements))

    @classmethod
    def cofinite(cls, excluded: Iterable[int] = ()) -> FcSet:
        return cls(COFINITE, frozenset(excluded))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == COFINITE

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.support

    def __contains__(self, n: int) -> bool:
        return (n in self.support) == self.is_finite

    def complement(self) -> FcSet:
        return FcSet(COFINITE if self.is_finite else FINITE, self.support)

    def __and__(self, other: FcSet) -> FcSet:
        a, b = self.support, other.support
        if self.is_finite and other.is_finite:
            return FcSet.finite(a & b)
        if self.is_finite:
            return FcSet.finite(a - b)
        if other.is_finite:
            return FcSet.finite(b - a)
        return FcSet.cofinite(a | b)

    def __or__(self, other: FcSet) -> FcSet:
        return (self.complement() & other.complement()).complement()

    def __sub__(self, other: FcSet) -> FcSet:
        return self & other.complement()

    def __le__(self, other: FcSet) -> bool:
        return (self - other).is_empty

    def __ge__(self, other: FcSet) -> bool:
        return other <= self

    def min(self) -> int:
        if self.is_finite:
            if not self.support:
                raise InputError("empty FcSet has no minimum")
            return min(self.support)
        n = 0
        while n in self.support:
            n += 1
        return n

    def __str__(self):
        items = ",".join(str(n) for n in sorted(self.support))
        if self.is_finite:
            return "{" + items + "}"
        return "N" if not self.support else "N\\{" + items + "}"


NATURALS = FcSet.cofinite()
EMPTY = FcSet.finite()


@dataclass(frozen=True)
class FcPartition:
    """Disjoint nonempty fc-blocks; unless ``partial``, they cover N."""

    blocks: tuple
    partial: bool = False

    def __post_init__(self):
        blocks = tuple(self.blocks)
        for b in blocks:
            if not isinstance(b, FcSet):
                raise InputError(f"FcPartition blocks must be FcSet, got {b!r}")
            if b.is_empty:
                raise InputError("empty block in fc partition")
        for i, a in enumerate(blocks):
            for b in blocks[i + 1:]:
                if not (a & b).is_empty:
                    raise InputError(f"fc blocks {a} and {b} overlap")
        if not self.partial:
            union = EMPTY
            for b in blocks:
                union = union | b
            if union != NATURALS:
                raise InputError(f"fc blocks do not cover N (missing {union.complement()})")
            # finitely many blocks covering N: exactly one is cofinite
            assert sum(b.is_infinite for b in blocks) == 1
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=FcSet.min)))

    @classmethod
    def from_finite_blocks(cls, finite_blocks: Iterable[Iterable[int]]) -> FcPartition:
        """Finite blocks as given plus the cofinite remainder (if nonempty)."""
        finite = [FcSet.finite(b) for b in finite_blocks]
        used = frozenset().union(*(f.support for f in finite))
        return cls(tuple(finite) + (FcSet.cofinite(used),))

    @property
    def cofinite_block(self) -> FcSet | None:
        for b in self.blocks:
            if b.is_infinite:
                return b
        return None

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self):
        return "|".join(str(b) for b in self.blocks) if self.blocks else "{}"


def fc_leq(fine: FcPartition, coarse: FcPartition) -> bool:
    _, offender = containment_map(fine.blocks, coarse.blocks)
    return offender is None


def fc_psi(fine: FcPartition, coarse: FcPartition) -> dict:
    assignment, offender = containment_map(fine.blocks, coarse.blocks)
    if offender is not None:
        raise OrderError(f"block {offender} of {fine} is not contained in exactly one block of {coarse}",
                         block=offender)
    return assignment


def fc_common_refinement(p: FcPartition, q: FcPartition) -> FcPartition:
    if p.partial or q.partial:
        raise InputError("fc_common_refinement needs full partitions")
    return FcPartition(tuple(a & b for a in p.blocks for b in q.blocks if not (a & b).is_empty))


def bigg_fc(p: FcPartition) -> FcPartition:
    """The infinite blocks of ``p``: in this algebra, just the cofinite one."""
    return FcPartition(tuple(b for b in p.blocks if b.is_infinite), partial=True)


def cofinite_filter_contains(a: FcSet) -> bool:
    """Membership in the free ultrafilter of the fc algebra (the cofinite sets)."""
    return a.is_infinite
