"""Inverse families of finite label sets and exact enumeration of their limits.

A ``Diagram`` has named objects, each a finite tuple of labels, and arrows
``(source, target) -> {label: label}`` pointing coarse-ward.  A ``Thread``
picks one label per object so that every arrow carries the source choice to
the target choice; the set of threads is the inverse limit.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import ConeError, DiagramError, InputError
from .partitions import (
    DEFAULT_GUARD,
    GroundSet,
    Partition,
    containment_map,
    enumerate_partitions,
    format_partition,
)

Name = Hashable
ArrowKey = tuple


class Diagram:
    """Objects with finite label sets plus block maps between them.

    ``containment=True`` marks a diagram whose labels are sets (frozensets or
    ``FcSet``) and whose arrows must send each label to a superset of it;
    ``validate_diagram`` then checks that as well.
    """

    def __init__(self, objects: Mapping[Name, Sequence], arrows: Mapping[ArrowKey, Mapping],
                 containment: bool = False):
        self.objects = {name: tuple(labels) for name, labels in objects.items()}
        self.arrows = {tuple(k): dict(m) for k, m in arrows.items()}
        self.containment = containment
        self._order = {name: i for i, name in enumerate(self.objects)}

    @classmethod
    def from_generators(cls, objects, arrows, containment=False) -> Diagram:
        """Build a diagram from generating arrows, adding identities and composites.

        Existing arrows are never overwritten, so a composite that disagrees
        with a supplied arrow survives for ``validate_diagram`` to report.
        """
        objects = {name: tuple(labels) for name, labels in objects.items()}
        closed = {tuple(k): dict(m) for k, m in arrows.items()}
        for name, labels in objects.items():
            closed.setdefault((name, name), {x: x for x in labels})
        succ, pred = {}, {}
        for (i, j) in closed:
            succ.setdefault(i, set()).add(j)
            pred.setdefault(j, set()).add(i)

        def add(i, k, m):
            closed[(i, k)] = m
            succ.setdefault(i, set()).add(k)
            pred.setdefault(k, set()).add(i)
            frontier.append((i, k))

        frontier = list(closed)
        while frontier:
            i, j = frontier.pop()
            f = closed[(i, j)]
            # compose forwards (i -> j -> k) and backwards (h -> i -> j)
            for k in list(succ.get(j, ())):
                if (i, k) not in closed:
                    comp = _compose(closed[(j, k)], f)
                    if comp is not None:
                        add(i, k, comp)
            for h in list(pred.get(i, ())):
                if (h, j) not in closed:
                    comp = _compose(f, closed[(h, i)])
                    if comp is not None:
                        add(h, j, comp)
        return cls(objects, closed, containment=containment)

    @property
    def names(self) -> tuple:
        return tuple(self.objects)

    def labels(self, name) -> tuple:
        return self.objects[name]

    def position(self, name) -> int:
        return self._order[name]

    def out_arrows(self, name):
        return [(t, m) for (s, t), m in self.arrows.items() if s == name and t != name]

    def sub_diagram(self, names: Iterable[Name]) -> Diagram:
        keep = [n for n in self.objects if n in set(names)]
        ks = set(keep)
        return Diagram({n: self.objects[n] for n in keep},
                       {k: m for k, m in self.arrows.items() if k[0] in ks and k[1] in ks},
                       containment=self.containment)

    def __repr__(self):
        return f"Diagram({len(self.objects)} objects, {len(self.arrows)} arrows)"


def _compose(outer: Mapping, inner: Mapping):
    """``outer ∘ inner`` or None when the maps do not line up."""
    try:
        return {x: outer[y] for x, y in inner.items()}
    except (KeyError, TypeError):
        return None


@dataclass(frozen=True)
class Issue:
    kind: str
    arrows: tuple
    detail: str = ""

    def __str__(self):
        names = ", ".join(f"{s}->{t}" for s, t in self.arrows)
        return f"{self.kind} [{names}] {self.detail}".rstrip()


def validate_diagram(d: Diagram) -> list[Issue]:
    """All violations of the inverse-family laws; an empty list means lawful."""
    issues = []
    label_sets = {n: set(ls) for n, ls in d.objects.items()}
    for (s, t), m in d.arrows.items():
        if s not in d.objects or t not in d.objects:
            issues.append(Issue("unknown-object", ((s, t),)))
            continue
        missing = [x for x in d.objects[s] if x not in m]
        stray = [x for x in m if x not in label_sets[s]]
        outside = [x for x, y in m.items() if y not in label_sets[t]]
        if missing or stray or outside:
            issues.append(Issue("not-a-map", ((s, t),),
                                f"undefined on {missing!r}, extra keys {stray!r}, values outside target for {outside!r}"))
        elif d.containment:
            bad = [x for x, y in m.items() if not x <= y]
            if bad:
                issues.append(Issue("not-containment", ((s, t),), f"label {bad[0]!r} is not contained in its image"))
    for n in d.objects:
        ident = d.arrows.get((n, n))
        if ident is None:
            issues.append(Issue("missing-identity", ((n, n),)))
        elif any(ident.get(x) != x for x in d.objects[n]):
            issues.append(Issue("bad-identity", ((n, n),)))
    outgoing = {}
    for (s, t) in d.arrows:
        outgoing.setdefault(s, []).append(t)
    for (i, j), f in d.arrows.items():
        if i == j or i not in d.objects or j not in d.objects:
            continue
        for k in outgoing.get(j, ()):
            if k == j:
                continue
            g = d.arrows[(j, k)]
            h = d.arrows.get((i, k))
            if h is None:
                issues.append(Issue("missing-composite", ((i, j), (j, k)), f"no arrow {i}->{k}"))
                continue
            for x in d.objects[i]:
                if x in f and f[x] in g and h.get(x) != g[f[x]]:
                    issues.append(Issue("non-commuting", ((i, j), (j, k), (i, k)),
                                        f"at label {x!r}"))
                    break
    return issues


class Thread(Mapping):
    """A coherent choice of one label per diagram object."""

    def __init__(self, choice: Mapping):
        self._choice = dict(choice)

    def __getitem__(self, name):
        return self._choice[name]

    def __iter__(self):
        return iter(self._choice)

    def __len__(self):
        return len(self._choice)

    def __hash__(self):
        return hash(frozenset(self._choice.items()))

    def __repr__(self):
        return f"Thread({self._choice!r})"


def is_thread(t: Mapping, d: Diagram) -> bool:
    for name in d.objects:
        if name not in t:
            raise InputError(f"assignment is missing object {name!r}")
    for name, labels in d.objects.items():
        if t[name] not in labels:
            return False
    for (s, target), m in d.arrows.items():
        if m.get(t[s]) != t[target]:
            return False
    return True


def _thread_sort_key(d: Diagram):
    index = {n: {x: i for i, x in enumerate(ls)} for n, ls in d.objects.items()}
    names = d.names
    return lambda t: tuple(index[n][t[n]] for n in names)


def enumerate_threads(d: Diagram, validate: bool = True) -> list[Thread]:
    """Every thread of ``d`` in canonical order (objects, then labels, as listed).

    Objects are visited finest-first (fewest objects mapping into them); each
    choice is pushed forward along outgoing arrows, so when the diagram has a
    least object the search never branches below it.
    """
    if validate:
        issues = validate_diagram(d)
        if issues:
            raise DiagramError(issues)
    if any(not labels for labels in d.objects.values()):
        return []
    incoming = {n: [] for n in d.objects}
    outgoing = {n: [] for n in d.objects}
    for (s, t), m in d.arrows.items():
        if s != t:
            incoming[t].append((s, m))
            outgoing[s].append((t, m))
    order = sorted(d.objects, key=lambda n: (len(incoming[n]), d.position(n)))
    choice = {}
    results = []

    def assign(name, label, trail):
        stack = [(name, label)]
        while stack:
            n, x = stack.pop()
            if n in choice:
                if choice[n] != x:
                    return False
                continue
            for s, m in incoming[n]:
                if s in choice and m[choice[s]] != x:
                    return False
            choice[n] = x
            trail.append(n)
            for t, m in outgoing[n]:
                stack.append((t, m[x]))
        return True

    def search(pos):
        while pos < len(order) and order[pos] in choice:
            pos += 1
        if pos == len(order):
            results.append(Thread({n: choice[n] for n in d.objects}))
            return
        n = order[pos]
        for x in d.objects[n]:
            trail = []
            if assign(n, x, trail):
                search(pos + 1)
            for m in trail:
                del choice[m]

    search(0)
    results.sort(key=_thread_sort_key(d))
    return results


@dataclass(frozen=True)
class Cone:
    """An apex set with one leg ``apex -> labels`` per diagram object."""

    apex: tuple
    legs: Mapping = field(default_factory=dict)

    @classmethod
    def of_threads(cls, threads: Sequence[Thread], d: Diagram) -> Cone:
        """The limit itself as a cone, legs = projections."""
        apex = tuple(threads)
        return cls(apex, {n: {t: t[n] for t in apex} for n in d.objects})


def mediating_map(c: Cone, d: Diagram, limit: Sequence[Thread] | None = None) -> dict:
    """The unique map ``apex -> limit`` commuting with the projections."""
    for n in d.objects:
        if n not in c.legs:
            raise ConeError(f"cone has no leg for object {n!r}")
        leg = c.legs[n]
        for y in c.apex:
            if y not in leg or leg[y] not in d.objects[n]:
                raise ConeError(f"leg {n!r} is not a map from the apex into the object's labels")
    for (s, t), m in d.arrows.items():
        for y in c.apex:
            if m.get(c.legs[s][y]) != c.legs[t][y]:
                raise ConeError(f"legs do not commute with arrow {s}->{t}", arrow=(s, t))
    u = {y: Thread({n: c.legs[n][y] for n in d.objects}) for y in c.apex}
    if limit is None:
        limit = enumerate_threads(d)
    for y, t in u.items():
        assert is_thread(t, d)
        # threads are determined by their projections, so exactly one must match
        matches = [s for s in limit if all(s[n] == c.legs[n][y] for n in d.objects)]
        assert len(matches) == 1 and matches[0] == t
    return u


# ---------------------------------------------------------------------------
# Partition diagrams


def partition_diagram(partitions: Mapping[Name, Partition],
                      labels: Mapping[Name, Iterable] | None = None) -> Diagram:
    """Diagram over ``partitions`` with a containment arrow for every comparable pair.

    ``labels`` optionally restricts each object to a subset of its blocks
    (e.g. the infinite blocks, or the infinitely visited ones); arrows are the
    containment maps restricted to those labels.
    """
    objects = {}
    for name, p in partitions.items():
        chosen = p.blocks if labels is None else tuple(b for b in p.blocks if b in set(labels[name]))
        objects[name] = chosen
    arrows = {}
    items = list(partitions.items())
    for s, p in items:
        for t, q in items:
            if p.ground != q.ground:
                raise InputError("partition diagram mixes ground sets")
            assignment, offender = containment_map(p.blocks, q.blocks)
            if offender is None:
                arrows[(s, t)] = {b: assignment[b] for b in objects[s]}
    return Diagram(objects, arrows, containment=True)


def restrict_labels(d: Diagram, keep: Mapping[Name, Iterable]) -> Diagram:
    """Cut every object down to the labels in ``keep[name]``, restricting arrows.

    The caller guarantees each arrow sends kept labels to kept labels;
    ``validate_diagram`` reports a ``not-a-map`` issue otherwise.
    """
    objects = {}
    for n, labels in d.objects.items():
        wanted = set(keep[n])
        objects[n] = tuple(x for x in labels if x in wanted)
    arrows = {(s, t): {x: m[x] for x in objects[s]} for (s, t), m in d.arrows.items()}
    return Diagram(objects, arrows, containment=d.containment)


@lru_cache(maxsize=32)
def _fp_named(ground: GroundSet, guard: int, force: bool) -> tuple:
    return tuple((format_partition(p), p) for p in enumerate_partitions(ground, guard=guard, force=force))


def fp_named(ground: GroundSet, guard: int = DEFAULT_GUARD, force: bool = False) -> dict:
    """FP(ground) keyed by canonical partition string, in enumeration order."""
    return dict(_fp_named(ground, guard, force))


@lru_cache(maxsize=32)
def _full_diagram(ground: GroundSet, guard: int, force: bool) -> Diagram:
    return partition_diagram(dict(_fp_named(ground, guard, force)))


def full_diagram(ground: GroundSet, guard: int = DEFAULT_GUARD, force: bool = False) -> Diagram:
    """All of FP(ground) with every containment map; objects named canonically.

    Cached per ground set; treat the returned diagram as read-only.
    """
    return _full_diagram(ground, guard, force)


def product_size(d: Diagram) -> int:
    size = 1
    for labels in d.objects.values():
        size *= len(labels)
    return size
