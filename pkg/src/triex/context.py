"""Dyadic and triadic contexts, derivation operators, slicing and file formats.

A context is an immutable value. Anything that looks like mutation (adding a
counterexample object, restacking slices) builds a new context, so contexts can
be shared between sessions and threads freely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import FormatError, InvalidArgument


def _check_ids(kind: str, ids: tuple[str, ...]) -> None:
    seen = set()
    for x in ids:
        if not isinstance(x, str) or x == "":
            raise InvalidArgument(f"{kind} identifiers must be non-empty strings, got {x!r}")
        if x in seen:
            raise InvalidArgument(f"duplicate {kind} identifier {x!r}")
        seen.add(x)


@dataclass(frozen=True)
class FormalContext:
    """A cross table: objects, attributes and an incidence relation between them.

    Attribute order is significant; it fixes the lectic order every enumeration
    downstream uses. Object order matters too: counterexample search walks it.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: frozenset[tuple[str, str]]

    def __init__(self, objects: Iterable[str], attributes: Iterable[str],
                 incidence: Iterable[tuple[str, str]]):
        object.__setattr__(self, "objects", tuple(objects))
        object.__setattr__(self, "attributes", tuple(attributes))
        object.__setattr__(self, "incidence", frozenset((g, m) for g, m in incidence))
        _check_ids("object", self.objects)
        _check_ids("attribute", self.attributes)
        gs, ms = set(self.objects), set(self.attributes)
        for g, m in self.incidence:
            if g not in gs:
                raise InvalidArgument(f"incidence references unknown object {g!r}")
            if m not in ms:
                raise InvalidArgument(f"incidence references unknown attribute {m!r}")

    @cached_property
    def _rows(self) -> dict[str, frozenset[str]]:
        rows: dict[str, set[str]] = {g: set() for g in self.objects}
        for g, m in self.incidence:
            rows[g].add(m)
        return {g: frozenset(ms) for g, ms in rows.items()}

    def row(self, g: str) -> frozenset[str]:
        try:
            return self._rows[g]
        except KeyError:
            raise InvalidArgument(f"unknown object {g!r}") from None

    def derive_attributes(self, objs: Iterable[str]) -> frozenset[str]:
        """Attributes common to all of ``objs``; all attributes for ``objs = []``."""
        common = set(self.attributes)
        for g in objs:
            common &= self.row(g)
        return frozenset(common)

    def derive_objects(self, attrs: Iterable[str]) -> frozenset[str]:
        """Objects having every attribute in ``attrs``; all objects for ``attrs = []``."""
        want = frozenset(attrs)
        unknown = want - set(self.attributes)
        if unknown:
            raise InvalidArgument(f"unknown attribute {sorted(unknown)[0]!r}")
        return frozenset(g for g in self.objects if want <= self._rows[g])

    def closure(self, attrs: Iterable[str]) -> frozenset[str]:
        return self.derive_attributes(self.derive_objects(attrs))

    def with_object(self, name: str, attrs: Iterable[str]) -> "FormalContext":
        """New context with one extra object. The name must be fresh."""
        if name in self._rows:
            raise InvalidArgument(f"object {name!r} already present")
        pairs = [(name, m) for m in attrs]
        return FormalContext(self.objects + (name,), self.attributes,
                             set(self.incidence) | set(pairs))

    def sort_attributes(self, attrs: Iterable[str]) -> tuple[str, ...]:
        order = {m: i for i, m in enumerate(self.attributes)}
        return tuple(sorted(attrs, key=order.__getitem__))


def subposition(ctxs: list[FormalContext]) -> FormalContext:
    """Stack contexts over one attribute list into a single context.

    Objects are renamed "<index>:<name>" so equal names in different members
    stay distinct.
    """
    if not ctxs:
        raise InvalidArgument("subposition of an empty list")
    attrs = ctxs[0].attributes
    for c in ctxs[1:]:
        if c.attributes != attrs:
            raise InvalidArgument("subposition members must share the attribute list")
    objects = []
    incidence = []
    for i, c in enumerate(ctxs):
        for g in c.objects:
            tagged = f"{i}:{g}"
            objects.append(tagged)
            incidence.extend((tagged, m) for m in c.row(g))
    return FormalContext(objects, attrs, incidence)


@dataclass(frozen=True)
class TriadicContext:
    """Objects x attributes x conditions with a ternary incidence relation."""

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    conditions: tuple[str, ...]
    incidence: frozenset[tuple[str, str, str]]

    def __init__(self, objects, attributes, conditions, incidence):
        object.__setattr__(self, "objects", tuple(objects))
        object.__setattr__(self, "attributes", tuple(attributes))
        object.__setattr__(self, "conditions", tuple(conditions))
        object.__setattr__(self, "incidence",
                           frozenset((g, m, b) for g, m, b in incidence))
        _check_ids("object", self.objects)
        _check_ids("attribute", self.attributes)
        _check_ids("condition", self.conditions)
        gs, ms, bs = set(self.objects), set(self.attributes), set(self.conditions)
        for g, m, b in self.incidence:
            if g not in gs or m not in ms or b not in bs:
                raise InvalidArgument(f"incidence triple {(g, m, b)!r} references unknown identifiers")

    @cached_property
    def _slices(self) -> dict[str, FormalContext]:
        per: dict[str, list[tuple[str, str]]] = {b: [] for b in self.conditions}
        for g, m, b in self.incidence:
            per[b].append((g, m))
        return {b: FormalContext(self.objects, self.attributes, pairs)
                for b, pairs in per.items()}

    def slice(self, b: str) -> FormalContext:
        """The condition context for ``b``: same objects and attributes."""
        try:
            return self._slices[b]
        except KeyError:
            raise InvalidArgument(f"unknown condition {b!r}") from None

    def table(self, g: str) -> frozenset[tuple[str, str]]:
        """All (attribute, condition) pairs of one object."""
        if g not in self.objects:
            raise InvalidArgument(f"unknown object {g!r}")
        return frozenset((m, b) for gg, m, b in self.incidence if gg == g)

    def with_object(self, name: str,
                    table: Iterable[tuple[str, str]]) -> "TriadicContext":
        if name in self.objects:
            raise InvalidArgument(f"object {name!r} already present")
        triples = [(name, m, b) for m, b in table]
        return TriadicContext(self.objects + (name,), self.attributes,
                              self.conditions, set(self.incidence) | set(triples))


@dataclass(frozen=True)
class ObjectRow:
    """A counterexample object: its name plus its full attribute/condition table."""

    name: str
    table: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __init__(self, name, table=()):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "table", frozenset((m, b) for m, b in table))


@dataclass(frozen=True)
class ContextFamily:
    """Several contexts over one attribute list, keyed by member (expert) id.

    Member object sets may differ; that is the point. A counterexample lands
    only in the member context of the expert who gave it.
    """

    attributes: tuple[str, ...]
    members: Mapping[str, FormalContext]

    def __init__(self, attributes, members: Mapping[str, FormalContext]):
        object.__setattr__(self, "attributes", tuple(attributes))
        object.__setattr__(self, "members", dict(members))
        _check_ids("attribute", self.attributes)
        _check_ids("member", tuple(self.members))
        for name, ctx in self.members.items():
            if ctx.attributes != self.attributes:
                raise InvalidArgument(
                    f"member {name!r} does not share the family attribute list")

    @property
    def member_ids(self) -> tuple[str, ...]:
        return tuple(self.members)

    def member(self, e: str) -> FormalContext:
        try:
            return self.members[e]
        except KeyError:
            raise InvalidArgument(f"unknown member {e!r}") from None

    def with_counterexample(self, e: str, name: str,
                            attrs: Iterable[str]) -> "ContextFamily":
        updated = dict(self.members)
        updated[e] = self.member(e).with_object(name, attrs)
        return ContextFamily(self.attributes, updated)


def restack(slices: Mapping[str, FormalContext]) -> TriadicContext:
    """Rebuild a triadic context from per-condition slices (inverse of slicing)."""
    conditions = tuple(slices)
    if not conditions:
        raise InvalidArgument("restack needs at least one slice")
    first = slices[conditions[0]]
    triples = []
    for b, ctx in slices.items():
        if ctx.objects != first.objects or ctx.attributes != first.attributes:
            raise InvalidArgument("slices must agree on objects and attributes")
        triples.extend((g, m, b) for g, m in ctx.incidence)
    return TriadicContext(first.objects, first.attributes, conditions, triples)


# ---------------------------------------------------------------------------
# JSON formats

def triadic_from_json(data) -> TriadicContext:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    for key in ("objects", "attributes", "conditions", "incidence"):
        if key not in data:
            raise FormatError(f"missing key {key!r}")
        if not isinstance(data[key], list):
            raise FormatError(f"{key!r} must be an array")
    triples = []
    for entry in data["incidence"]:
        if not (isinstance(entry, list) and len(entry) == 3
                and all(isinstance(x, str) for x in entry)):
            raise FormatError(f"incidence entry {entry!r} is not a [object, attribute, condition] triple")
        triples.append(tuple(entry))
    if len(set(triples)) != len(triples):
        raise FormatError("duplicate incidence triple")
    return TriadicContext(data["objects"], data["attributes"],
                          data["conditions"], triples)


def triadic_to_json(t: TriadicContext) -> dict:
    order = {g: i for i, g in enumerate(t.objects)}
    morder = {m: i for i, m in enumerate(t.attributes)}
    border = {b: i for i, b in enumerate(t.conditions)}
    triples = sorted(t.incidence, key=lambda x: (order[x[0]], morder[x[1]], border[x[2]]))
    return {
        "objects": list(t.objects),
        "attributes": list(t.attributes),
        "conditions": list(t.conditions),
        "incidence": [list(x) for x in triples],
    }


def family_from_json(data) -> ContextFamily:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    if "attributes" not in data or "members" not in data:
        raise FormatError("family JSON needs 'attributes' and 'members'")
    if not isinstance(data["members"], dict):
        raise FormatError("'members' must be an object")
    attributes = data["attributes"]
    members = {}
    for name, body in data["members"].items():
        if not isinstance(body, dict) or "objects" not in body or "incidence" not in body:
            raise FormatError(f"member {name!r} needs 'objects' and 'incidence'")
        pairs = []
        for entry in body["incidence"]:
            if not (isinstance(entry, list) and len(entry) == 2
                    and all(isinstance(x, str) for x in entry)):
                raise FormatError(f"member {name!r}: incidence entry {entry!r} is not a [object, attribute] pair")
            pairs.append(tuple(entry))
        if len(set(pairs)) != len(pairs):
            raise FormatError(f"member {name!r}: duplicate incidence pair")
        members[name] = FormalContext(body["objects"], attributes, pairs)
    return ContextFamily(attributes, members)


def family_to_json(f: ContextFamily) -> dict:
    out = {"attributes": list(f.attributes), "members": {}}
    for name, ctx in f.members.items():
        gorder = {g: i for i, g in enumerate(ctx.objects)}
        morder = {m: i for i, m in enumerate(ctx.attributes)}
        pairs = sorted(ctx.incidence, key=lambda x: (gorder[x[0]], morder[x[1]]))
        out["members"][name] = {
            "objects": list(ctx.objects),
            "incidence": [list(x) for x in pairs],
        }
    return out


def load_json(path: str):
    """Parse a triadic or family JSON file, detected by its keys."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(str(exc)) from exc
    if isinstance(data, dict) and "members" in data:
        return family_from_json(data)
    return triadic_from_json(data)


# ---------------------------------------------------------------------------
# Burmeister cross table format

def loads_cxt(text: str) -> FormalContext:
    """Parse a Burmeister .cxt cross table."""
    lines = text.splitlines()
    # meaningful lines keep their original number for error messages
    body = [(i + 1, ln.rstrip("\n")) for i, ln in enumerate(lines)]
    pos = 0

    def next_line(allow_blank=False):
        nonlocal pos
        while pos < len(body):
            lineno, ln = body[pos]
            pos += 1
            if ln.strip() == "" and not allow_blank:
                continue
            return lineno, ln
        raise FormatError("unexpected end of file")

    lineno, header = next_line()
    if header.strip() != "B":
        raise FormatError("expected format marker 'B'", line=lineno)
    lineno, gline = next_line()
    lineno2, mline = next_line()
    try:
        ng, nm = int(gline.strip()), int(mline.strip())
    except ValueError:
        raise FormatError("object/attribute counts must be integers", line=lineno) from None
    if ng < 0 or nm < 0:
        raise FormatError("counts must be non-negative", line=lineno)
    objects = [next_line()[1].strip() for _ in range(ng)]
    attributes = [next_line()[1].strip() for _ in range(nm)]
    incidence = []
    for g in objects:
        lineno, rowtext = next_line()
        cells = rowtext.strip()
        if len(cells) != nm:
            raise FormatError(f"row for {g!r} has {len(cells)} cells, expected {nm}", line=lineno)
        for m, cell in zip(attributes, cells):
            if cell in ("X", "x"):
                incidence.append((g, m))
            elif cell != ".":
                raise FormatError(f"unexpected cell {cell!r} in row for {g!r}", line=lineno)
    return FormalContext(objects, attributes, incidence)


def dumps_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    out.extend(ctx.objects)
    out.extend(ctx.attributes)
    for g in ctx.objects:
        row = ctx.row(g)
        out.append("".join("X" if m in row else "." for m in ctx.attributes))
    return "\n".join(out) + "\n"


def load_cxt(path: str) -> FormalContext:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_cxt(fh.read())
