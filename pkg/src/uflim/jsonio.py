"""JSON reading and writing for every artifact the CLI touches.

Parsers raise ``InputError`` with a message naming the offending value;
writers emit plain lists/dicts in canonical order so dumps are byte-stable.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Mapping

from .errors import DiagramError, InputError
from .fcalgebra import FcPartition, FcSet
from .limits import Diagram, Issue, Thread, fp_named
from .partitions import DEFAULT_GUARD, GroundSet, Partition, containment_map, format_partition
from .ultrafilters import UltrafilterFamily, bigg
from .dynamics import EventuallyPeriodicSequence, OrbitSystem


def load(source: str) -> Any:
    """Read JSON from a path, or from standard input when ``source`` is ``-``."""
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: malformed JSON: {e}") from None
    except OSError as e:
        raise InputError(f"{source}: {e.strerror}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _atom(x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"atoms must be strings or integers, got {x!r}")
    return x


def _expect(obj, kind, what):
    if not isinstance(obj, kind):
        raise InputError(f"{what}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def parse_ground(obj) -> GroundSet:
    """A ground set given as a list of atoms, ``{"ground": [...]}``, or a size ``n``."""
    if isinstance(obj, dict):
        if "ground" not in obj:
            raise InputError("expected a 'ground' field")
        obj = obj["ground"]
    if isinstance(obj, int) and not isinstance(obj, bool):
        if obj < 0:
            raise InputError("ground size must be >= 0")
        return GroundSet(tuple(str(i) for i in range(obj)))
    atoms = [_atom(a) for a in _expect(obj, list, "ground")]
    seen = set()
    for a in atoms:
        if a in seen:
            raise InputError(f"duplicate atom {a!r} in ground")
        seen.add(a)
    return GroundSet(tuple(atoms))


def _parse_block(raw, ground: GroundSet) -> frozenset:
    atoms = [_atom(a) for a in _expect(raw, list, "block")]
    seen = set()
    for a in atoms:
        if a in seen:
            raise InputError(f"duplicate atom {a!r} in block {atoms!r}")
        if a not in ground:
            raise InputError(f"unknown atom {a!r} in block {atoms!r}")
        seen.add(a)
    return frozenset(atoms)


def parse_partition(obj, ground: GroundSet | None = None) -> Partition:
    """``{"ground": [...], "blocks": [[...], ...]}``, or a bare block list when ``ground`` is known."""
    if isinstance(obj, dict):
        if "ground" in obj:
            ground = parse_ground(obj["ground"])
        if "blocks" not in obj:
            raise InputError("partition needs a 'blocks' field")
        blocks = obj["blocks"]
    else:
        blocks = obj
    if ground is None:
        raise InputError("partition has no ground set")
    return Partition(ground, tuple(_parse_block(b, ground) for b in _expect(blocks, list, "blocks")))


def block_to_json(block, ground: GroundSet) -> list:
    return list(ground.sort(block))


def partition_to_json(p: Partition) -> dict:
    return {"ground": list(p.ground.elements), "blocks": [block_to_json(b, p.ground) for b in p.blocks]}


# ---------------------------------------------------------------------------
# diagrams


def parse_diagram(obj, guard: int = DEFAULT_GUARD, force: bool = False) -> tuple[Diagram, dict]:
    """Build a partition diagram; returns ``(diagram, {name: partition})``.

    Accepted shapes::

        {"ground": [...], "generate": "full" | "bigg"}
        {"ground": [...]?, "objects": {"d1": {"partition": P, "bigg": false}},
         "arrows": [{"from": "d1", "to": "d2", "map": [[block, block], ...]?}] | "auto"}

    Arrow maps are recomputed by containment; a supplied ``map`` must agree.
    Generating arrows are closed under composition.  Law violations raise
    ``DiagramError``; malformed structure raises ``InputError``.
    """
    _expect(obj, dict, "diagram")
    ground = parse_ground(obj["ground"]) if "ground" in obj else None
    if "generate" in obj:
        if ground is None:
            raise InputError("'generate' needs a 'ground'")
        kind = obj["generate"]
        named = fp_named(ground, guard=guard, force=force)
        if kind == "full":
            labels = {n: p.blocks for n, p in named.items()}
        elif kind == "bigg":
            labels = {n: bigg(p).blocks for n, p in named.items()}
        else:
            raise InputError(f"unknown generator {kind!r} (expected 'full' or 'bigg')")
        return _assemble(named, labels, "auto", ground), named

    objects = _expect(obj.get("objects"), dict, "objects")
    if not objects:
        raise InputError("diagram has no objects")
    named, labels = {}, {}
    for name, spec in objects.items():
        _expect(spec, dict, f"object {name!r}")
        if "partition" not in spec:
            raise InputError(f"object {name!r} needs a 'partition'")
        p = parse_partition(spec["partition"], ground)
        named[name] = p
        labels[name] = bigg(p).blocks if spec.get("bigg", False) else p.blocks
    grounds = {p.ground for p in named.values()}
    if len(grounds) != 1:
        raise InputError("diagram objects use different ground sets")
    return _assemble(named, labels, obj.get("arrows", []), grounds.pop()), named


def _assemble(named: dict, labels: dict, arrows, ground: GroundSet) -> Diagram:
    issues = []
    generators = {}
    if arrows == "auto":
        pairs = [(s, t, None) for s in named for t in named]
    else:
        pairs = []
        for a in _expect(arrows, list, "arrows"):
            _expect(a, dict, "arrow")
            s, t = a.get("from"), a.get("to")
            for end in (s, t):
                if end not in named:
                    raise InputError(f"arrow refers to unknown object {end!r}")
            pairs.append((s, t, a.get("map")))
    for s, t, explicit in pairs:
        assignment, offender = containment_map(named[s].blocks, named[t].blocks)
        if offender is not None:
            if arrows != "auto":
                issues.append(Issue("not-comparable", ((s, t),),
                                    f"block {format_partition(Partition(ground, (offender,)))} has no unique container"))
            continue
        m = {b: assignment[b] for b in labels[s]}
        if explicit is not None:
            given = {}
            for pair in _expect(explicit, list, f"map of {s}->{t}"):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise InputError(f"map entries of {s}->{t} must be [block, block] pairs")
                given[_parse_block(pair[0], ground)] = _parse_block(pair[1], ground)
            if given != m:
                issues.append(Issue("wrong-map", ((s, t),), "supplied map disagrees with block containment"))
                m = given
        generators[(s, t)] = m
    if issues:
        raise DiagramError(issues)
    return Diagram.from_generators(labels, generators, containment=True)


def thread_to_json(t: Thread, ground: GroundSet) -> dict:
    return {name: block_to_json(b, ground) for name, b in t.items()}


def parse_thread(obj, ground: GroundSet) -> Thread:
    _expect(obj, dict, "thread")
    return Thread({name: _parse_block(b, ground) for name, b in obj.items()})


# ---------------------------------------------------------------------------
# ultrafilters and the fc algebra


def parse_family(obj) -> UltrafilterFamily:
    _expect(obj, dict, "family")
    if "members" not in obj:
        raise InputError("family needs a 'members' field")
    ground = parse_ground(obj)
    return UltrafilterFamily(ground, frozenset(_parse_block(m, ground) for m in _expect(obj["members"], list, "members")))


def family_to_json(u: UltrafilterFamily) -> dict:
    from .ultrafilters import all_subsets

    order = {s: i for i, s in enumerate(all_subsets(u.ground))}
    return {"ground": list(u.ground.elements),
            "members": [block_to_json(m, u.ground) for m in sorted(u.members, key=order.__getitem__)]}


def parse_fcset(obj) -> FcSet:
    _expect(obj, dict, "fc set")
    support = _expect(obj.get("support", []), list, "support")
    return FcSet(obj.get("kind"), frozenset(support))


def fcset_to_json(a: FcSet) -> dict:
    return {"kind": a.kind, "support": sorted(a.support)}


def parse_fc_partition(obj) -> FcPartition:
    if isinstance(obj, dict):
        obj = obj.get("blocks")
    return FcPartition(tuple(parse_fcset(b) for b in _expect(obj, list, "fc blocks")))


def fc_partition_to_json(p: FcPartition) -> dict:
    return {"blocks": [fcset_to_json(b) for b in p.blocks]}


# ---------------------------------------------------------------------------
# dynamics


def parse_system(obj) -> OrbitSystem:
    """``{"states": [...], "map": {"s": "t", ...}, "start": "s"}``.

    JSON object keys are strings, so map keys are matched to states by ``str``.
    """
    _expect(obj, dict, "system")
    for key in ("states", "map", "start"):
        if key not in obj:
            raise InputError(f"system needs a '{key}' field")
    states = parse_ground(obj["states"])
    by_name = {str(s): s for s in states}
    raw = _expect(obj["map"], dict, "map")
    mapping = {}
    for k, v in raw.items():
        if k not in by_name:
            raise InputError(f"map is defined on unknown state {k!r}")
        if str(v) not in by_name:
            raise InputError(f"state {k!r} maps to unknown state {v!r}")
        mapping[by_name[k]] = by_name[str(v)]
    start = obj["start"]
    if str(start) not in by_name:
        raise InputError(f"start {start!r} is not a state")
    return OrbitSystem(states, mapping, by_name[str(start)])


def system_to_json(sys_: OrbitSystem) -> dict:
    return {"states": list(sys_.states.elements),
            "map": {str(s): sys_.map[s] for s in sys_.states},
            "start": sys_.start}


def parse_sequence(obj) -> EventuallyPeriodicSequence:
    _expect(obj, dict, "sequence")
    prefix = [_atom(a) for a in _expect(obj.get("prefix", []), list, "prefix")]
    cycle = [_atom(a) for a in _expect(obj.get("cycle"), list, "cycle")]
    return EventuallyPeriodicSequence(tuple(prefix), tuple(cycle))


def sequence_to_json(seq: EventuallyPeriodicSequence) -> dict:
    return {"prefix": list(seq.prefix), "cycle": list(seq.cycle)}


def diagram_to_json(partitions: Mapping[str, Partition], d: Diagram) -> dict:
    """Objects with their partitions, plus the Hasse-reduced generating arrows."""
    from .dot import hasse_reduction

    ground = next(iter(partitions.values())).ground
    objects = {}
    for name in d.objects:
        spec = {"partition": [block_to_json(b, ground) for b in partitions[name].blocks]}
        if tuple(d.objects[name]) != partitions[name].blocks:
            spec["bigg"] = True
        objects[name] = spec
    arrows = [{"from": s, "to": t} for s, t in hasse_reduction(d)]
    return {"ground": list(ground.elements), "objects": objects, "arrows": arrows}
