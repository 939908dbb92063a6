"""Attribute implications: semantics, entailment, lectic enumeration, canonical bases.

Everything here is a pure function over immutable values. Conclusions are kept
as full sets; rendering strips premise attributes so "b ⟹ a, b" prints as
"b ⟹ a", which is also the canonical object key used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .context import FormalContext, TriadicContext
from .errors import InvalidArgument, PreconditionViolation

ARROW = "⟹"
EMPTY = "∅"


@dataclass(frozen=True)
class Implication:
    premise: frozenset[str]
    conclusion: frozenset[str]

    def __init__(self, premise: Iterable[str], conclusion: Iterable[str]):
        object.__setattr__(self, "premise", frozenset(premise))
        object.__setattr__(self, "conclusion", frozenset(conclusion))

    def attributes(self) -> frozenset[str]:
        return self.premise | self.conclusion

    def trivial(self) -> bool:
        return self.conclusion <= self.premise


@dataclass(frozen=True)
class ConditionalImplication:
    implication: Implication
    conditions: frozenset[str]

    def __init__(self, implication: Implication, conditions: Iterable[str]):
        object.__setattr__(self, "implication", implication)
        object.__setattr__(self, "conditions", frozenset(conditions))


def render_set(attrs: Iterable[str], order: Sequence[str]) -> str:
    index = {m: i for i, m in enumerate(order)}
    items = sorted(attrs, key=index.__getitem__)
    return ", ".join(items) if items else EMPTY


def render_implication(imp: Implication, order: Sequence[str]) -> str:
    """Canonical text form; premise attributes are dropped from the conclusion."""
    shown = imp.conclusion - imp.premise
    return f"{render_set(imp.premise, order)} {ARROW} {render_set(shown, order)}"


def render_conditional(imp: Implication, conditions: Iterable[str],
                       attr_order: Sequence[str], cond_order: Sequence[str]) -> str:
    return (f"{render_implication(imp, attr_order)}"
            f" @ {{{render_set(conditions, cond_order)}}}")


def respects(row: Iterable[str], imp: Implication) -> bool:
    """Does one attribute set satisfy the implication?"""
    t = frozenset(row)
    return not imp.premise <= t or imp.conclusion <= t


def implication_holds(ctx: FormalContext, imp: Implication) -> bool:
    unknown = imp.attributes() - set(ctx.attributes)
    if unknown:
        raise InvalidArgument(f"unknown attribute {sorted(unknown)[0]!r}")
    return imp.conclusion <= ctx.closure(imp.premise)


def l_closure(imps: Iterable[Implication], attrs: Iterable[str]) -> frozenset[str]:
    """Smallest superset of ``attrs`` respecting every implication.

    Naive fixpoint iteration; premise sets here are tiny and the rule lists
    short, so no indexing structure is warranted.
    """
    rules = list(imps)
    closed = set(attrs)
    changed = True
    while changed:
        changed = False
        for imp in rules:
            if imp.premise <= closed and not imp.conclusion <= closed:
                closed |= imp.conclusion
                changed = True
    return frozenset(closed)


def follows(imp: Implication, imps: Iterable[Implication]) -> bool:
    return imp.conclusion <= l_closure(imps, imp.premise)


def next_closure(a: Iterable[str], order: Sequence[str],
                 clo: Callable[[frozenset[str]], frozenset[str]]) -> Optional[frozenset[str]]:
    """Lectically next clo-closed set after ``a``, or None past the last one.

    ``a`` itself need not be closed; the enumeration still continues from its
    lectic position, which is exactly what the canonical base loop needs after
    it extends the rule set mid-walk.
    """
    index = {m: i for i, m in enumerate(order)}
    current = frozenset(a)
    for i in range(len(order) - 1, -1, -1):
        m = order[i]
        if m in current:
            current = current - {m}
        else:
            candidate = clo(current | {m})
            # accept unless the candidate sneaks in an attribute before position i
            if all(index[x] >= i or x in current for x in candidate):
                return candidate
    return None


def closure_sequence(order: Sequence[str],
                     clo: Callable[[frozenset[str]], frozenset[str]]) -> Iterator[frozenset[str]]:
    """All clo-closed subsets in lectic order, starting from clo(∅)."""
    a: Optional[frozenset[str]] = clo(frozenset())
    while a is not None:
        yield a
        a = next_closure(a, order, clo)


def canonical_base(ctx: FormalContext,
                   background: Sequence[Implication] = ()) -> tuple[Implication, ...]:
    """Minimal implication cover of ``ctx`` relative to ``background``.

    Every background implication must already hold in the context. The result
    together with the background entails exactly the implications valid in the
    context, and no member can be dropped.
    """
    bg = list(background)
    if len(set(bg)) != len(bg):
        raise InvalidArgument("duplicate implication in background set")
    for imp in bg:
        if not implication_holds(ctx, imp):
            raise PreconditionViolation(
                f"background implication does not hold: {render_implication(imp, ctx.attributes)}")
    rules = list(bg)
    base: list[Implication] = []

    def clo(x: frozenset[str]) -> frozenset[str]:
        return l_closure(rules, x)

    # start at the background closure of ∅, the first enumerable set;
    # a bare ∅ would be skipped by the walk whenever it is not closed
    a: Optional[frozenset[str]] = clo(frozenset())
    while a is not None:
        closed = ctx.closure(a)
        if closed != a:
            imp = Implication(a, closed)
            base.append(imp)
            rules.append(imp)
        a = next_closure(a, ctx.attributes, clo)
    return tuple(base)


def conditional_holds(t: TriadicContext, cimp: ConditionalImplication) -> bool:
    """True iff the implication holds in every condition context named by ``cimp``."""
    unknown = cimp.conditions - set(t.conditions)
    if unknown:
        raise InvalidArgument(f"unknown condition {sorted(unknown)[0]!r}")
    return all(implication_holds(t.slice(c), cimp.implication)
               for c in cimp.conditions)
