"""Ultrafilters on finite sets and their correspondence with threads of FP(S).

On a finite ground set every ultrafilter is principal, and the map sending an
ultrafilter to its trace on each partition is a bijection onto the threads of
the full partition diagram.  ``phi``/``phi_inverse`` realize that map, and
``replay_surjectivity`` re-checks each ultrafilter axiom for ``phi_inverse(t)``
by reading the thread at the witness partitions the argument uses.

The free case lives in the finite/cofinite algebra (see ``fcalgebra``): there
the infinite blocks of a partition are exactly its cofinite block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InputError, ThreadError
from .fcalgebra import FcPartition, bigg_fc, fc_leq, fc_psi
from .limits import Diagram, Thread, fp_named, full_diagram, is_thread, restrict_labels
from .partitions import (
    DEFAULT_GUARD,
    GroundSet,
    Partition,
    check_guard,
    common_refinement,
    format_partition,
    leq,
    psi,
    subset_witness,
    two_block,
)

AXIOM_NAMES = {
    1: "empty set excluded",
    2: "upward closed",
    3: "closed under intersection",
    4: "contains a set or its complement",
}


def all_subsets(ground: GroundSet) -> list[frozenset]:
    """Subsets in bitmask order over the ground order (∅, {a}, {b}, {a,b}, ...)."""
    atoms = ground.elements
    return [frozenset(a for i, a in enumerate(atoms) if mask >> i & 1) for mask in range(1 << len(atoms))]


@dataclass(frozen=True)
class UltrafilterFamily:
    ground: GroundSet
    members: frozenset

    def __post_init__(self):
        members = frozenset(frozenset(m) for m in self.members)
        for m in members:
            for a in m:
                if a not in self.ground:
                    raise InputError(f"member {sorted(m, key=repr)!r} contains unknown atom {a!r}")
        object.__setattr__(self, "members", members)

    def __contains__(self, subset):
        return frozenset(subset) in self.members

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class PrincipalUltrafilter:
    ground: GroundSet
    point: object

    def __post_init__(self):
        if self.point not in self.ground:
            raise InputError(f"point {self.point!r} is not in the ground set")

    def __contains__(self, subset):
        return self.point in subset

    def expand(self, guard: int = 5, force: bool = False) -> UltrafilterFamily:
        check_guard(len(self.ground), guard, force)
        return UltrafilterFamily(self.ground, frozenset(s for s in all_subsets(self.ground) if self.point in s))


@dataclass
class AxiomReport:
    """Per-axiom witness lists; an axiom passes when its list is empty."""

    failures: dict = field(default_factory=lambda: {k: [] for k in AXIOM_NAMES})

    def passed(self, axiom: int) -> bool:
        return not self.failures[axiom]

    @property
    def ok(self) -> bool:
        return all(not w for w in self.failures.values())

    def witness(self, axiom: int):
        return self.failures[axiom][0] if self.failures[axiom] else None


def check_axioms(u: UltrafilterFamily, guard: int = 5, force: bool = False) -> AxiomReport:
    """Evaluate the four ultrafilter axioms, collecting every failing witness."""
    check_guard(len(u.ground), guard, force)
    subsets = all_subsets(u.ground)
    full = u.ground.as_set
    members = sorted(u.members, key=subsets.index)
    report = AxiomReport()
    if frozenset() in u.members:
        report.failures[1].append(frozenset())
    for a in members:
        for b in subsets:
            if a < b and b not in u.members:
                report.failures[2].append((a, b))
    for a, b in combinations(members, 2):
        if a & b not in u.members:
            report.failures[3].append((a, b))
    for a in subsets:
        if a not in u.members and full - a not in u.members:
            report.failures[4].append(a)
    return report


def as_principal(u: UltrafilterFamily) -> PrincipalUltrafilter:
    """The principal ultrafilter equal to ``u``; raises if ``u`` is not one."""
    core = frozenset(u.ground.as_set)
    for m in u.members:
        core &= m
    if len(core) != 1:
        raise InputError("family is not a principal ultrafilter (its members do not meet in one point)")
    (point,) = core
    p = PrincipalUltrafilter(u.ground, point)
    if len(u.ground) <= 5 and p.expand() != u:
        raise InputError("family is not a principal ultrafilter")
    return p


def trace(u: PrincipalUltrafilter, p: Partition) -> frozenset:
    """The unique block of the full partition ``p`` that belongs to ``u``."""
    if p.ground != u.ground:
        raise InputError("partition and ultrafilter have different ground sets")
    if not p.is_full:
        raise InputError("trace needs a full partition")
    hits = [b for b in p.blocks if u.point in b]
    assert len(hits) == 1, hits
    return hits[0]


def phi(u: PrincipalUltrafilter | UltrafilterFamily, guard: int = DEFAULT_GUARD,
        force: bool = False) -> Thread:
    """The thread ``Δ ↦ Δ ∩ u`` over the full FP(ground) diagram.

    Each entry is the block itself rather than the singleton ``{block}``.
    """
    named = fp_named(u.ground, guard=guard, force=force)
    if isinstance(u, PrincipalUltrafilter):
        choice = {name: trace(u, p) for name, p in named.items()}
    else:
        choice = {}
        for name, p in named.items():
            hits = [b for b in p.blocks if b in u.members]
            if len(hits) != 1:
                raise InputError(f"family meets partition {name} in {len(hits)} blocks, not exactly one")
            choice[name] = hits[0]
    t = Thread(choice)
    assert is_thread(t, full_diagram(u.ground, guard=guard, force=force))
    return t


def phi_inverse(t: Mapping, ground: GroundSet, guard: int = DEFAULT_GUARD,
                force: bool = False) -> UltrafilterFamily:
    """The family of all blocks chosen by the thread ``t``."""
    d = full_diagram(ground, guard=guard, force=force)
    try:
        coherent = is_thread(t, d)
    except InputError as e:
        raise ThreadError(str(e)) from None
    if not coherent:
        raise ThreadError("assignment is not a thread of the full partition diagram")
    return UltrafilterFamily(ground, frozenset(t[name] for name in d.objects))


def _is_ultrafilter_mask(family: int, n: int) -> bool:
    full = (1 << n) - 1
    size = 1 << n
    if family & 1:
        return False
    members = [a for a in range(size) if family >> a & 1]
    for a in range(size):
        if not (family >> a & 1) and not (family >> (full ^ a) & 1):
            return False
    for a in members:
        for b in members:
            if not family >> (a & b) & 1:
                return False
        for b in range(size):
            if a & ~b == 0 and not family >> b & 1:
                return False
    return True


def enumerate_ultrafilters_bruteforce(ground: GroundSet, guard: int = 4,
                                      force: bool = False) -> list[UltrafilterFamily]:
    """Scan every family of subsets of ``ground`` and keep the ultrafilters.

    Works on bitmasks (subset ``s`` is bit ``s`` of the family mask) and shares
    no code with the partition or thread machinery.
    """
    check_guard(len(ground), guard, force)
    n = len(ground)
    subsets = all_subsets(ground)
    found = []
    for family in range(1 << (1 << n)):
        if _is_ultrafilter_mask(family, n):
            found.append(UltrafilterFamily(ground, frozenset(subsets[s] for s in range(1 << n) if family >> s & 1)))
    return found


def separating_partition(u: UltrafilterFamily, v: UltrafilterFamily) -> Partition:
    """``{A, S \\ A}`` for the first A in exactly one of ``u``, ``v``."""
    if u.ground != v.ground:
        raise InputError("families over different ground sets")
    subsets = all_subsets(u.ground)
    for a in subsets:
        if (a in u.members) != (a in v.members):
            return two_block(a, u.ground)
    raise InputError("families are equal")


@dataclass
class ReplayReport:
    """Outcome of re-deriving each axiom for ``phi_inverse(t)`` from ``t`` alone."""

    failures: dict = field(default_factory=lambda: {k: [] for k in AXIOM_NAMES})
    probes: dict = field(default_factory=lambda: {k: 0 for k in AXIOM_NAMES})

    @property
    def ok(self) -> bool:
        return all(not w for w in self.failures.values())


def _cut(a: frozenset, ground: GroundSet) -> Partition:
    # {A, S \ A}, or the one-cell partition when A is the whole set
    if a == ground.as_set:
        return Partition.indiscrete(ground)
    return two_block(a, ground)


def replay_surjectivity(t: Mapping, ground: GroundSet, guard: int = DEFAULT_GUARD,
                        force: bool = False) -> ReplayReport:
    """Check the axioms of ``U = {t[Δ]}`` using only ``t`` at witness partitions.

    * axiom 1: no block of any partition is empty;
    * axiom 2: for A ∈ U and A ⊆ B, ``t`` at ``{A, B∖A, S∖B}`` is A and its
      image in ``{B, S∖B}`` is B = ``t`` there;
    * axiom 3: for A, B ∈ U, ``t`` at the meet of ``{A, S∖A}`` and ``{B, S∖B}``
      maps onto A and B, hence equals A ∩ B;
    * axiom 4: for A ∉ U, ``t`` at ``{A, S∖A}`` is S∖A.
    """
    d = full_diagram(ground, guard=guard, force=force)
    if not is_thread(t, d):
        raise ThreadError("assignment is not a thread of the full partition diagram")
    report = ReplayReport()
    at = lambda p: t[format_partition(p)]  # noqa: E731
    chosen = {t[name] for name in d.objects}
    full = ground.as_set
    subsets = all_subsets(ground)

    report.probes[1] = len(d.objects)
    for name, p in fp_named(ground, guard=guard, force=force).items():
        if any(not b for b in p.blocks) or not t[name]:
            report.failures[1].append(name)

    for a in subsets:
        if a not in chosen:
            continue
        for b in subsets:
            if not a <= b:
                continue
            report.probes[2] += 1
            coarse, fine = _cut(b, ground), subset_witness(a, b, ground)
            if not (at(fine) == a and leq(fine, coarse) and psi(fine, coarse)(a) == b == at(coarse)):
                report.failures[2].append((a, b))

    for a in subsets:
        for b in subsets:
            if a not in chosen or b not in chosen:
                continue
            report.probes[3] += 1
            da, db = _cut(a, ground), _cut(b, ground)
            meet = common_refinement(da, db)
            x = at(meet)
            if not (psi(meet, da)(x) == a and psi(meet, db)(x) == b and x == a & b):
                report.failures[3].append((a, b))

    for a in subsets:
        if a in chosen:
            continue
        report.probes[4] += 1
        cut = _cut(full - a, ground) if not a else two_block(a, ground)
        if at(cut) != full - a:
            report.failures[4].append(a)
    return report


# ---------------------------------------------------------------------------
# Restriction to infinite blocks


def bigg(p: Partition) -> Partition:
    """The infinite blocks of ``p``: none, since the ground set is finite."""
    return Partition.empty(p.ground)


def bigg_diagram(ground: GroundSet, guard: int = DEFAULT_GUARD, force: bool = False) -> Diagram:
    """FP(ground) with every object cut down to its infinite blocks."""
    named = fp_named(ground, guard=guard, force=force)
    return restrict_labels(full_diagram(ground, guard=guard, force=force),
                           {name: bigg(p).blocks for name, p in named.items()})


def fc_bigg_diagram(partitions: Mapping | Iterable[FcPartition]) -> Diagram:
    """Diagram of Bigg images of full fc partitions with restricted containment maps."""
    if not isinstance(partitions, Mapping):
        partitions = {str(p): p for p in partitions}
    objects = {name: bigg_fc(p).blocks for name, p in partitions.items()}
    arrows = {}
    for s, p in partitions.items():
        for t, q in partitions.items():
            if fc_leq(p, q):
                full_map = fc_psi(p, q)
                restricted = {b: full_map[b] for b in objects[s]}
                # a superset of an infinite set is infinite, so this lands in the Bigg image
                assert all(v.is_infinite for v in restricted.values())
                arrows[(s, t)] = restricted
    return Diagram(objects, arrows, containment=True)


def fc_free_thread(d: Diagram) -> Thread:
    """The thread choosing the cofinite block of every object."""
    choice = {}
    for name, labels in d.objects.items():
        cof = [b for b in labels if b.is_infinite]
        if len(cof) != 1:
            raise ThreadError(f"object {name!r} has {len(cof)} cofinite blocks, expected exactly one")
        choice[name] = cof[0]
    t = Thread(choice)
    assert is_thread(t, d)
    return t
