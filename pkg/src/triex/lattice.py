"""Concept enumeration and the labeled lattice of conditional implications.

The central structure is the implication/condition cross table built up during
exploration: each asked implication is an object, each condition an attribute,
and a cross means "asserted to hold there". Its concept lattice organizes the
acquired implication theories by condition set; labels reduce each node to the
implications not already entailed by the nodes below it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .context import FormalContext
from .errors import InvalidArgument
from .implications import (EMPTY, Implication, closure_sequence, follows,
                           render_implication)


@dataclass(frozen=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]


def concepts(ctx: FormalContext) -> list[Concept]:
    """All formal concepts of ``ctx``, intents in lectic order."""
    return [Concept(ctx.derive_objects(intent), intent)
            for intent in closure_sequence(ctx.attributes, ctx.closure)]


@dataclass
class ConceptLattice:
    concepts: list[Concept]
    covers: list[tuple[int, int]]  # (lower, upper) positions, extent inclusion


def build_lattice(cs: Sequence[Concept]) -> ConceptLattice:
    cs = list(cs)
    below = [[i for i, a in enumerate(cs) if a.extent < b.extent] for b in cs]
    covers = []
    for j, lows in enumerate(below):
        for i in lows:
            # i is covered by j unless some k sits strictly between
            if not any(k in below[j] and i in below[k] for k in lows):
                covers.append((i, j))
    return ConceptLattice(cs, sorted(covers))


class ImplicationConditionContext:
    """Cross table of asked implications against conditions (or experts).

    Mutable on purpose: exactly one exploration session owns an instance and
    feeds it. Object keys are the canonical implication renderings; recording
    a key twice unions the condition sets.
    """

    def __init__(self, conditions: Sequence[str], attr_order: Sequence[str]):
        self.conditions = tuple(conditions)
        self.attr_order = tuple(attr_order)
        self._keys: list[str] = []
        self._imps: dict[str, Implication] = {}
        self._holds: dict[str, set[str]] = {}

    def key(self, imp: Implication) -> str:
        return render_implication(imp, self.attr_order)

    def record(self, imp: Implication, conds: Iterable[str]) -> str:
        conds = set(conds)
        if not conds <= set(self.conditions):
            raise InvalidArgument("condition outside the universe")
        if not imp.attributes() <= set(self.attr_order):
            raise InvalidArgument("implication attribute outside the universe")
        k = self.key(imp)
        if k not in self._imps:
            self._keys.append(k)
            self._imps[k] = imp
            self._holds[k] = set()
        self._holds[k] |= conds
        return k

    def keys(self) -> tuple[str, ...]:
        return tuple(self._keys)

    def implication(self, key: str) -> Implication:
        return self._imps[key]

    def holds_for(self, key: str) -> frozenset[str]:
        return frozenset(self._holds[key])

    def implications_for(self, conds: Iterable[str]) -> tuple[Implication, ...]:
        """Derivation on the condition side: implications asserted for all of ``conds``."""
        want = set(conds)
        return tuple(self._imps[k] for k in self._keys if want <= self._holds[k])

    def as_mapping(self) -> dict[str, frozenset[str]]:
        return {k: frozenset(self._holds[k]) for k in self._keys}

    def to_formal_context(self) -> FormalContext:
        pairs = [(k, c) for k in self._keys for c in self._holds[k]]
        return FormalContext(self._keys, self.conditions, pairs)

    def snapshot(self) -> dict:
        m_index = {m: i for i, m in enumerate(self.attr_order)}
        return {
            "conditions": list(self.conditions),
            "objects": [{"premise": sorted(self._imps[k].premise, key=m_index.__getitem__),
                         "conclusion": sorted(self._imps[k].conclusion, key=m_index.__getitem__)}
                        for k in self._keys],
            "incidence": [[i, c] for i, k in enumerate(self._keys)
                          for c in self.conditions if c in self._holds[k]],
        }

    @classmethod
    def from_snapshot(cls, data: dict, attr_order: Sequence[str]) -> "ImplicationConditionContext":
        kc = cls(data["conditions"], attr_order)
        keys = []
        for body in data["objects"]:
            imp = Implication(body["premise"], body["conclusion"])
            keys.append(kc.record(imp, ()))
        for i, c in data["incidence"]:
            kc._holds[keys[i]].add(c)
        return kc


@dataclass
class LatticeNode:
    id: int
    intent: tuple[str, ...]
    extent: tuple[str, ...]   # implication keys, insertion order
    label: tuple[str, ...]    # keys not entailed by strictly lower extents
    universe: bool


@dataclass
class LabeledImplicationLattice:
    nodes: list[LatticeNode]
    edges: list[tuple[int, int]]  # (lower id, upper id)

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n.id, "intent": list(n.intent), "extent": list(n.extent),
                       "label": list(n.label), "universe": n.universe}
                      for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        def esc(s: str) -> str:
            return s.replace("\\", "\\\\").replace('"', '\\"')

        out = ["digraph implication_lattice {", "  rankdir=BT;",
               '  node [shape=box, fontname="Helvetica"];']
        for n in self.nodes:
            conds = ", ".join(n.intent) if n.intent else EMPTY
            lines = [f"{{{conds}}}"]
            if n.universe:
                lines.append("all implications")
            else:
                lines.extend(n.label)
            out.append(f'  n{n.id} [label="{esc(chr(10).join(lines))}"];')
        for lo, hi in self.edges:
            out.append(f"  n{lo} -> n{hi};")
        out.append("}")
        return "\n".join(out) + "\n"

    def dump_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, ensure_ascii=False, indent=2)
            fh.write("\n")


def label_nodes(lat: ConceptLattice,
                kc: ImplicationConditionContext) -> LabeledImplicationLattice:
    """Sort, index and label the concept lattice of an implication/condition table.

    A node keeps only the extent implications that do not already follow from
    the union of all strictly lower extents. The empty-intent node stands for
    the set of all implications over the attribute universe and gets no list.
    """
    c_index = {c: i for i, c in enumerate(kc.conditions)}
    key_pos = {k: i for i, k in enumerate(kc.keys())}

    def sort_key(pos: int):
        concept = lat.concepts[pos]
        return (-len(concept.intent),
                tuple(sorted(c_index[c] for c in concept.intent)))

    old_order = sorted(range(len(lat.concepts)), key=sort_key)
    new_of_old = {old: new for new, old in enumerate(old_order)}
    ordered = [lat.concepts[old] for old in old_order]
    nodes = []
    for new_id, concept in enumerate(ordered):
        extent_keys = sorted(concept.extent, key=key_pos.__getitem__)
        universe = len(concept.intent) == 0
        if universe:
            label: tuple[str, ...] = ()
        else:
            lower = [c for c in ordered if c.extent < concept.extent]
            entailed_by = [kc.implication(k) for c in lower for k in c.extent]
            label = tuple(k for k in extent_keys
                          if not follows(kc.implication(k), entailed_by))
        nodes.append(LatticeNode(
            id=new_id,
            intent=tuple(sorted(concept.intent, key=c_index.__getitem__)),
            extent=tuple(extent_keys),
            label=label,
            universe=universe,
        ))
    edges = sorted((new_of_old[lo], new_of_old[hi]) for lo, hi in lat.covers)
    return LabeledImplicationLattice(nodes, edges)


def implication_lattice(kc: ImplicationConditionContext) -> LabeledImplicationLattice:
    """Concepts, covers and labels of the current implication/condition table."""
    return label_nodes(build_lattice(concepts(kc.to_formal_context())), kc)


def conditional_implication_lattice(domain, variant: str = "record-partial-holds",
                                    order: str = "lex") -> LabeledImplicationLattice:
    """Labeled lattice of a fully known domain, via an internal oracle run."""
    from .exploration import oracle_exploration  # deferred, avoids an import cycle
    _, kc, _ = oracle_exploration(domain, variant=variant, order=order)
    return implication_lattice(kc)
