"""Interactive acquisition of conditional implications from experts.

One engine instance is a resumable state machine: it walks the condition
subsets in a fixed linear extension, enumerates candidate premises per subset
with NextClosure over the currently known rules, and parks at most one open
question at a time. Answers either accept the implication for the whole
subset, or reject it for part of it and supply a counterexample object that
immediately enlarges the example context.

Programmatic experts are plain callables Question -> Answer. An interactive
expert is whoever drives ``pending``/``submit`` from the outside (terminal
loop, HTTP client); the engine itself does not care.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence, Union

from .context import (ContextFamily, FormalContext, ObjectRow, TriadicContext,
                      family_from_json, family_to_json, subposition,
                      triadic_from_json, triadic_to_json)
from .errors import (FormatError, InconsistentAnswer, InvalidArgument,
                     RejectedAnswer, TranscriptDivergence)
from .implications import (Implication, implication_holds, l_closure,
                           next_closure, render_implication, render_set,
                           respects)
from .lattice import ImplicationConditionContext

VARIANTS = ("record-partial-holds", "only-full-holds")
ORDERS = ("lex", "revlex")

SNAPSHOT_FORMAT = "triex-session/1"


@dataclass(frozen=True)
class Question:
    """Ask: does premise ⟹ conclusion hold under every one of ``conditions``?"""

    conditions: tuple[str, ...]
    premise: frozenset[str]
    conclusion: frozenset[str]  # full closure, premise included

    def implication(self) -> Implication:
        return Implication(self.premise, self.conclusion)

    def render(self, attr_order: Sequence[str], cond_order: Sequence[str]) -> str:
        return (f"{render_implication(self.implication(), attr_order)}"
                f" @ {{{render_set(self.conditions, cond_order)}}}")


@dataclass(frozen=True)
class FamilyCounterexample:
    expert: str
    name: str
    attributes: frozenset[str]

    def __init__(self, expert: str, name: str, attributes: Iterable[str]):
        object.__setattr__(self, "expert", expert)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "attributes", frozenset(attributes))


Counterexample = Union[ObjectRow, FamilyCounterexample]


@dataclass(frozen=True)
class Answer:
    """Expert verdict: the conditions the implication holds for, plus one
    counterexample when that is not all of them."""

    holds_for: frozenset[str]
    counterexample: Optional[Counterexample] = None

    def __init__(self, holds_for: Iterable[str],
                 counterexample: Optional[Counterexample] = None):
        object.__setattr__(self, "holds_for", frozenset(holds_for))
        object.__setattr__(self, "counterexample", counterexample)


def linear_extension(conditions: Sequence[str], order: str = "lex") -> list[frozenset[str]]:
    """All nonempty condition subsets, largest first.

    Ties within one cardinality: "lex" compares the ascending index tuples,
    "revlex" compares descending index tuples elementwise-negated, which walks
    subsets containing late conditions first.
    """
    if not conditions:
        raise InvalidArgument("need at least one condition")
    if order not in ORDERS:
        raise InvalidArgument(f"unknown order {order!r}")
    index = {c: i for i, c in enumerate(conditions)}
    subsets = [frozenset(s) for k in range(len(conditions), 0, -1)
               for s in combinations(conditions, k)]

    def key(s: frozenset[str]):
        if order == "lex":
            return (-len(s), tuple(sorted(index[c] for c in s)))
        return (-len(s), tuple(-index[c] for c in sorted(s, key=index.__getitem__,
                                                         reverse=True)))

    return sorted(subsets, key=key)


class ExplorationEngine:
    """Resumable exploration over a triadic example context or a context family."""

    def __init__(self, *, attributes: Sequence[str], conditions: Sequence[str],
                 mode: str = "triadic", examples=None, kc=None,
                 variant: str = "record-partial-holds", order: str = "lex",
                 schedule: Optional[Sequence[Iterable[str]]] = None,
                 background: Sequence[Implication] = ()):
        if mode not in ("triadic", "family"):
            raise InvalidArgument(f"unknown mode {mode!r}")
        if variant not in VARIANTS:
            raise InvalidArgument(f"unknown variant {variant!r}")
        if order not in ORDERS:
            raise InvalidArgument(f"unknown order {order!r}")
        self.mode = mode
        self.attributes = tuple(attributes)
        self.conditions = tuple(conditions)
        if not self.conditions:
            raise InvalidArgument("need at least one condition")
        self.variant = variant
        self.order = order
        self.examples = self._adopt_examples(examples)
        self.kc = kc if kc is not None else ImplicationConditionContext(
            self.conditions, self.attributes)
        self.background = tuple(background)
        for imp in self.background:
            if not imp.attributes() <= set(self.attributes):
                raise InvalidArgument("background implication outside the attribute universe")
        if schedule is None:
            self.schedule = linear_extension(self.conditions, order)
        else:
            self.schedule = [frozenset(d) for d in schedule]
            for d in self.schedule:
                if not d or not d <= set(self.conditions):
                    raise InvalidArgument(f"bad schedule entry {sorted(d)!r}")
        self.node_index = 0
        self.current_premise: Optional[frozenset[str]] = None
        self.pending: Optional[Question] = None
        self.transcript: list[dict] = []
        self.inconsistent = False
        self.inconsistency_reports: list[dict] = []
        self.finished = False
        self.answered = 0
        self._advance()

    # -- construction helpers ------------------------------------------------

    def _adopt_examples(self, examples):
        if examples is None:
            if self.mode == "triadic":
                return TriadicContext((), self.attributes, self.conditions, ())
            return ContextFamily(self.attributes, {
                e: FormalContext((), self.attributes, ()) for e in self.conditions})
        if self.mode == "triadic":
            if not isinstance(examples, TriadicContext):
                raise InvalidArgument("triadic mode needs a triadic example context")
            if examples.attributes != self.attributes or examples.conditions != self.conditions:
                raise InvalidArgument("example context does not match the universe")
            return examples
        if not isinstance(examples, ContextFamily):
            raise InvalidArgument("family mode needs a context family")
        if examples.attributes != self.attributes:
            raise InvalidArgument("family does not match the attribute universe")
        members = dict(examples.members)
        for e in self.conditions:
            members.setdefault(e, FormalContext((), self.attributes, ()))
        if set(members) != set(self.conditions):
            raise InvalidArgument("family members do not match the expert list")
        # member order pinned to the expert order for reproducible stacking
        return ContextFamily(self.attributes, {e: members[e] for e in self.conditions})

    # -- state machine -------------------------------------------------------

    @property
    def status(self) -> str:
        if self.inconsistent:
            return "inconsistent"
        if self.finished:
            return "finished"
        if self.pending is not None:
            return "awaiting-answer"
        return "advancing"

    def _members_for(self, d: frozenset[str]) -> list[FormalContext]:
        if self.mode == "triadic":
            return [self.examples.slice(c) for c in self.conditions if c in d]
        return [self.examples.member(e) for e in self.conditions if e in d]

    def _subposition_for(self, d: frozenset[str]) -> FormalContext:
        return subposition(self._members_for(d))

    def _rules_for(self, d: frozenset[str]) -> list[Implication]:
        return list(self.background) + list(self.kc.implications_for(d))

    def _sorted_conditions(self, conds: Iterable[str]) -> tuple[str, ...]:
        index = {c: i for i, c in enumerate(self.conditions)}
        return tuple(sorted(conds, key=index.__getitem__))

    def _advance(self) -> None:
        """Move to the next open question, crossing schedule nodes as needed."""
        if self.finished or self.inconsistent:
            return
        while self.node_index < len(self.schedule):
            d = self.schedule[self.node_index]
            rules = self._rules_for(d)
            clo = lambda x: l_closure(rules, x)  # noqa: E731
            stacked = self._subposition_for(d)
            a = self.current_premise
            if a is None:
                a = clo(frozenset())
            while a is not None:
                closed = stacked.closure(a)
                if closed != a:
                    self.current_premise = a
                    self.pending = Question(self._sorted_conditions(d), a, closed)
                    return
                a = next_closure(a, self.attributes, clo)
            self.node_index += 1
            self.current_premise = None
        self.pending = None
        self.finished = True

    def submit(self, answer: Answer) -> None:
        """Apply one expert answer to the pending question and advance.

        Raises RejectedAnswer when the answer fails validation (the question
        stays pending) and InconsistentAnswer when a valid counterexample
        contradicts earlier accepted knowledge (the session is then flagged
        and refuses further answers).
        """
        if self.inconsistent:
            raise InvalidArgument("session is flagged inconsistent")
        if self.pending is None:
            raise InvalidArgument("no pending question")
        q = self.pending
        reason = self.validate_answer(q, answer)
        if reason is not None:
            raise RejectedAnswer(*reason)
        d = frozenset(q.conditions)
        imp = q.implication()
        if answer.holds_for == d:
            self.kc.record(imp, d)
            self._log(q, answer, "true")
            # step past the accepted premise before recomputing, with the
            # fresh implication already in the rule set
            rules = self._rules_for(d)
            nxt = next_closure(q.premise, self.attributes,
                               lambda x: l_closure(rules, x))
            self.current_premise = nxt
            if nxt is None:
                self.node_index += 1
        else:
            report = self._consistency_report(q, answer)
            if report is not None:
                self.inconsistent = True
                self.inconsistency_reports.append(report)
                raise InconsistentAnswer(report)
            ingested = self._ingest(answer.counterexample)
            if self.variant == "record-partial-holds":
                self.kc.record(imp, answer.holds_for)
            self._log(q, answer, ingested)
            # keep the premise: the enlarged examples shrink its closure,
            # possibly down to the premise itself
        self.answered += 1
        self.pending = None
        self._advance()

    def _log(self, q: Question, answer: Answer, answer_text: str) -> None:
        m_index = {m: i for i, m in enumerate(self.attributes)}
        b_index = {c: i for i, c in enumerate(self.conditions)}
        cex = answer.counterexample
        if cex is None:
            payload = None
        elif isinstance(cex, ObjectRow):
            payload = {"name": answer_text,
                       "table": [[m, b] for m, b in
                                 sorted(cex.table, key=lambda p: (m_index[p[0]], b_index[p[1]]))]}
        else:
            payload = {"expert": cex.expert, "name": answer_text,
                       "attributes": sorted(cex.attributes, key=m_index.__getitem__)}
        self.transcript.append({
            "conditions": list(q.conditions),
            "premise": sorted(q.premise, key=m_index.__getitem__),
            "conclusion": sorted(q.conclusion - q.premise, key=m_index.__getitem__),
            "holds_for": sorted(answer.holds_for, key=b_index.__getitem__),
            "answer": answer_text,
            "counterexample": payload,
        })

    # -- answer checking -----------------------------------------------------

    def validate_answer(self, q: Question, answer: Answer):
        """None when acceptable, else a (reason-code, detail) pair."""
        d = frozenset(q.conditions)
        imp = q.implication()
        unknown = answer.holds_for - set(self.conditions)
        if unknown:
            return ("unknown-attribute",
                    f"unknown condition {sorted(unknown)[0]!r} in holds_for")
        if not answer.holds_for <= d:
            extra = sorted(answer.holds_for - d)[0]
            return ("contradicts-claim",
                    f"condition {extra!r} was not part of the question")
        cex = answer.counterexample
        if answer.holds_for == d:
            if cex is not None:
                return ("contradicts-claim",
                        "counterexample given although the implication was fully accepted")
            return None
        if cex is None:
            return ("missing-counterexample",
                    "rejected conditions require a counterexample")
        if self.mode == "triadic":
            return self._check_triadic_cex(q, answer, cex)
        return self._check_family_cex(q, answer, cex)

    def _check_triadic_cex(self, q: Question, answer: Answer, cex):
        if not isinstance(cex, ObjectRow):
            return ("contradicts-claim", "triadic sessions take whole object rows")
        imp = q.implication()
        for m, b in cex.table:
            if m not in self.attributes:
                return ("unknown-attribute", f"unknown attribute {m!r}")
            if b not in self.conditions:
                return ("unknown-attribute", f"unknown condition {b!r}")
        rows = {c: frozenset(m for m, b in cex.table if b == c)
                for c in self.conditions}
        for c in answer.holds_for:
            if not respects(rows[c], imp):
                return ("contradicts-claim",
                        f"object {cex.name!r} violates the implication under {c!r}, "
                        "which the answer claims it holds for")
        rejected = frozenset(q.conditions) - answer.holds_for
        if not any(not respects(rows[c], imp) for c in rejected):
            return ("no-violation",
                    f"object {cex.name!r} does not violate the implication under "
                    "any rejected condition")
        return None

    def _check_family_cex(self, q: Question, answer: Answer, cex):
        if not isinstance(cex, FamilyCounterexample):
            return ("contradicts-claim", "family sessions take per-expert counterexamples")
        if cex.expert not in self.conditions:
            return ("unknown-attribute", f"unknown expert {cex.expert!r}")
        if cex.expert not in frozenset(q.conditions):
            return ("contradicts-claim",
                    f"expert {cex.expert!r} was not part of the question")
        if cex.expert in answer.holds_for:
            return ("contradicts-claim",
                    f"the answer claims the implication holds for {cex.expert!r}")
        unknown = cex.attributes - set(self.attributes)
        if unknown:
            return ("unknown-attribute", f"unknown attribute {sorted(unknown)[0]!r}")
        if respects(cex.attributes, q.implication()):
            return ("no-violation",
                    f"object {cex.name!r} does not violate the implication")
        return None

    def _consistency_report(self, q: Question, answer: Answer) -> Optional[dict]:
        """A valid counterexample may still contradict earlier assertions."""
        cex = answer.counterexample
        if isinstance(cex, ObjectRow):
            rows = {c: frozenset(m for m, b in cex.table if b == c)
                    for c in self.conditions}
            checked = self.conditions
            name = cex.name
        else:
            rows = {cex.expert: cex.attributes}
            checked = (cex.expert,)
            name = cex.name
        for key in self.kc.keys():
            held = self.kc.holds_for(key)
            imp = self.kc.implication(key)
            for c in checked:
                if c in held and not respects(rows.get(c, frozenset()), imp):
                    return {
                        "object": name,
                        "implication": key,
                        "condition": c,
                        "detail": (f"counterexample {name!r} violates {key} under "
                                   f"{c!r}, accepted earlier for that condition"),
                    }
        return None

    # -- counterexample ingestion ---------------------------------------------

    def _fresh_name(self, name: str, taken: Iterable[str]) -> str:
        taken = set(taken)
        if name not in taken:
            return name
        n = 2
        while f"{name}#{n}" in taken:
            n += 1
        fresh = f"{name}#{n}"
        warnings.warn(f"counterexample name {name!r} already used, storing as {fresh!r}",
                      stacklevel=3)
        return fresh

    def _ingest(self, cex: Counterexample) -> str:
        if isinstance(cex, ObjectRow):
            name = self._fresh_name(cex.name, self.examples.objects)
            self.examples = self.examples.with_object(name, cex.table)
            return name
        member = self.examples.member(cex.expert)
        name = self._fresh_name(cex.name, member.objects)
        self.examples = self.examples.with_counterexample(cex.expert, name,
                                                          cex.attributes)
        return name

    # -- serialization ---------------------------------------------------------

    def pending_json(self) -> Optional[dict]:
        if self.pending is None:
            return None
        q = self.pending
        m_index = {m: i for i, m in enumerate(self.attributes)}
        return {
            "conditions": list(q.conditions),
            "premise": sorted(q.premise, key=m_index.__getitem__),
            "conclusion": sorted(q.conclusion, key=m_index.__getitem__),
            "new_attributes": sorted(q.conclusion - q.premise, key=m_index.__getitem__),
            "text": q.render(self.attributes, self.conditions),
        }

    def snapshot(self) -> dict:
        if self.mode == "triadic":
            examples = triadic_to_json(self.examples)
        else:
            examples = family_to_json(self.examples)
        m_index = {m: i for i, m in enumerate(self.attributes)}
        return {
            "format": SNAPSHOT_FORMAT,
            "mode": self.mode,
            "attributes": list(self.attributes),
            "conditions": list(self.conditions),
            "variant": self.variant,
            "order": self.order,
            "schedule": [list(self._sorted_conditions(d)) for d in self.schedule],
            "node_index": self.node_index,
            "current_premise": (None if self.current_premise is None
                                else sorted(self.current_premise, key=m_index.__getitem__)),
            "pending": self.pending_json(),
            "examples": examples,
            "kc": self.kc.snapshot(),
            "background": [{"premise": sorted(i.premise, key=m_index.__getitem__),
                            "conclusion": sorted(i.conclusion, key=m_index.__getitem__)}
                           for i in self.background],
            "transcript": list(self.transcript),
            "inconsistent": self.inconsistent,
            "inconsistency_reports": list(self.inconsistency_reports),
            "finished": self.finished,
            "answered": self.answered,
        }

    @classmethod
    def restore(cls, data: dict) -> "ExplorationEngine":
        if not isinstance(data, dict) or data.get("format") != SNAPSHOT_FORMAT:
            raise FormatError(f"not a {SNAPSHOT_FORMAT} snapshot")
        if data["mode"] == "triadic":
            examples = triadic_from_json(data["examples"])
        else:
            examples = family_from_json(data["examples"])
        engine = cls.__new__(cls)
        engine.mode = data["mode"]
        engine.attributes = tuple(data["attributes"])
        engine.conditions = tuple(data["conditions"])
        engine.variant = data["variant"]
        engine.order = data["order"]
        engine.examples = examples
        engine.kc = ImplicationConditionContext.from_snapshot(data["kc"],
                                                              engine.attributes)
        engine.background = tuple(Implication(b["premise"], b["conclusion"])
                                  for b in data["background"])
        engine.schedule = [frozenset(d) for d in data["schedule"]]
        engine.node_index = data["node_index"]
        engine.current_premise = (None if data["current_premise"] is None
                                  else frozenset(data["current_premise"]))
        p = data["pending"]
        engine.pending = (None if p is None else
                          Question(tuple(p["conditions"]), frozenset(p["premise"]),
                                   frozenset(p["conclusion"])))
        engine.transcript = list(data["transcript"])
        engine.inconsistent = data["inconsistent"]
        engine.inconsistency_reports = list(data["inconsistency_reports"])
        engine.finished = data["finished"]
        engine.answered = data["answered"]
        return engine


def transcript_csv(rows: Sequence[dict]) -> str:
    """Render transcript rows in the five interaction columns."""
    import csv
    import io

    def cell(values) -> str:
        return ", ".join(values) if values else "∅"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["conditions", "premise", "conclusion", "holds_for", "answer"])
    for row in rows:
        writer.writerow([cell(row["conditions"]), cell(row["premise"]),
                         cell(row["conclusion"]), cell(row["holds_for"]),
                         row["answer"]])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Experts

class OracleExpert:
    """Answers from a fully known triadic domain.

    Counterexamples cite the first violating object in domain object order and
    always carry the object's whole table across every condition.
    """

    def __init__(self, domain: TriadicContext):
        self.domain = domain

    def __call__(self, q: Question) -> Answer:
        imp = q.implication()
        holds_for = frozenset(c for c in q.conditions
                              if implication_holds(self.domain.slice(c), imp))
        if holds_for == frozenset(q.conditions):
            return Answer(holds_for)
        rejected = [c for c in q.conditions if c not in holds_for]
        for g in self.domain.objects:
            for c in rejected:
                if not respects(self.domain.slice(c).row(g), imp):
                    return Answer(holds_for, ObjectRow(g, self.domain.table(g)))
        raise AssertionError("a rejected condition must have a violating object")


class FamilyOracleExpert:
    """Consolidated answers from one fully known context per expert."""

    def __init__(self, truth: dict[str, FormalContext]):
        self.truth = dict(truth)

    def __call__(self, q: Question) -> Answer:
        imp = q.implication()
        holds_for = frozenset(e for e in q.conditions
                              if implication_holds(self.truth[e], imp))
        if holds_for == frozenset(q.conditions):
            return Answer(holds_for)
        for e in q.conditions:
            if e in holds_for:
                continue
            ctx = self.truth[e]
            for g in ctx.objects:
                if not respects(ctx.row(g), imp):
                    return Answer(holds_for,
                                  FamilyCounterexample(e, g, ctx.row(g)))
        raise AssertionError("a rejecting expert must have a violating object")


class ScriptedExpert:
    """Replays recorded transcript rows; any divergence is an error."""

    def __init__(self, rows: Sequence[dict]):
        self.rows = list(rows)
        self.position = 0

    def __call__(self, q: Question) -> Answer:
        if self.position >= len(self.rows):
            raise TranscriptDivergence(
                f"question {q.conditions}/{sorted(q.premise)} past the end of the script")
        row = self.rows[self.position]
        asked = (list(q.conditions), sorted(q.premise), sorted(q.conclusion - q.premise))
        recorded = (list(row["conditions"]), sorted(row["premise"]),
                    sorted(row["conclusion"]))
        if asked != recorded:
            raise TranscriptDivergence(
                f"expected {recorded}, exploration asked {asked}")
        self.position += 1
        payload = row.get("counterexample")
        if payload is None:
            cex: Optional[Counterexample] = None
        elif "expert" in payload:
            cex = FamilyCounterexample(payload["expert"], payload["name"],
                                       payload["attributes"])
        else:
            cex = ObjectRow(payload["name"],
                            [(m, b) for m, b in payload["table"]])
        return Answer(row["holds_for"], cex)


def run_with_expert(engine: ExplorationEngine,
                    expert: Callable[[Question], Answer]) -> ExplorationEngine:
    """Drive the engine to completion; programmatic experts must answer validly."""
    while engine.pending is not None:
        engine.submit(expert(engine.pending))
    return engine


# ---------------------------------------------------------------------------
# Whole-protocol runs

def explore_conditions(d: Iterable[str], examples, background: Sequence[Implication],
                       expert: Callable[[Question], Answer],
                       variant: str = "record-partial-holds"):
    """Acquire the implications of one condition subset.

    Returns (accepted implications beyond the background, enlarged examples,
    the implication/condition fragment recorded along the way).
    """
    d = frozenset(d)
    if isinstance(examples, TriadicContext):
        mode, attributes, conditions = "triadic", examples.attributes, examples.conditions
    else:
        mode, attributes, conditions = "family", examples.attributes, examples.member_ids
    engine = ExplorationEngine(mode=mode, attributes=attributes,
                               conditions=conditions, examples=examples,
                               variant=variant, schedule=[d],
                               background=background)
    run_with_expert(engine, expert)
    new = tuple(engine.kc.implication(k) for k in engine.kc.keys()
                if d <= engine.kc.holds_for(k))
    return new, engine.examples, engine.kc


def triadic_exploration(examples: TriadicContext,
                        kc: Optional[ImplicationConditionContext],
                        expert: Callable[[Question], Answer],
                        variant: str = "record-partial-holds",
                        order: str = "lex",
                        schedule: Optional[Sequence[Iterable[str]]] = None):
    """Full run over all nonempty condition subsets. Returns (examples, kc)."""
    engine = ExplorationEngine(mode="triadic", attributes=examples.attributes,
                               conditions=examples.conditions, examples=examples,
                               kc=kc, variant=variant, order=order,
                               schedule=schedule)
    run_with_expert(engine, expert)
    return engine.examples, engine.kc


def family_exploration(examples: ContextFamily,
                       kc: Optional[ImplicationConditionContext],
                       experts, variant: str = "record-partial-holds",
                       order: str = "lex",
                       schedule: Optional[Sequence[Iterable[str]]] = None):
    """Full run over expert subsets; ``experts`` is a consolidated responder
    or a mapping expert id -> full context (wrapped into one)."""
    if isinstance(experts, dict):
        experts = FamilyOracleExpert(experts)
    engine = ExplorationEngine(mode="family", attributes=examples.attributes,
                               conditions=examples.member_ids, examples=examples,
                               kc=kc, variant=variant, order=order,
                               schedule=schedule)
    run_with_expert(engine, experts)
    return engine.examples, engine.kc


def oracle_exploration(domain, variant: str = "record-partial-holds",
                       order: str = "lex",
                       conditions: Optional[Sequence[str]] = None):
    """Run the whole protocol against a known domain.

    ``conditions`` restricts the schedule to subsets of the given set.
    Returns (examples, kc, engine); the engine carries transcript and counts.
    """
    if isinstance(domain, TriadicContext):
        mode = "triadic"
        conds = domain.conditions
        expert: Callable[[Question], Answer] = OracleExpert(domain)
    elif isinstance(domain, ContextFamily):
        mode = "family"
        conds = domain.member_ids
        expert = FamilyOracleExpert(dict(domain.members))
    else:
        raise InvalidArgument("domain must be a triadic context or a context family")
    schedule = linear_extension(conds, order)
    if conditions is not None:
        allowed = frozenset(conditions)
        unknown = allowed - set(conds)
        if unknown:
            raise InvalidArgument(f"unknown condition {sorted(unknown)[0]!r}")
        schedule = [d for d in schedule if d <= allowed]
    engine = ExplorationEngine(mode=mode, attributes=domain.attributes,
                               conditions=conds, variant=variant, order=order,
                               schedule=schedule)
    run_with_expert(engine, expert)
    return engine.examples, engine.kc, engine


def next_extent_exploration(domain: TriadicContext,
                            variant: str = "record-partial-holds"):
    """Schedule condition sets from the concept extents of the evolving table.

    This mirrors the tempting shortcut of enumerating only the closed condition
    sets of the implication/condition context instead of the whole power set.
    It can stop too early: once every recorded implication holds everywhere or
    nowhere, the only intents left are the full set and the empty one, so
    single-condition knowledge is never asked for. Kept as an executable
    regression of that failure mode; the linear-extension schedule is the one
    to use.
    """
    expert = OracleExpert(domain)
    examples = TriadicContext((), domain.attributes, domain.conditions, ())
    kc = ImplicationConditionContext(domain.conditions, domain.attributes)
    explored: set[frozenset[str]] = set()
    questions = 0
    while True:
        fc = kc.to_formal_context()

        def ext_clo(objs: frozenset[str]) -> frozenset[str]:
            return fc.derive_objects(fc.derive_attributes(objs))

        target = None
        extent: Optional[frozenset[str]] = ext_clo(frozenset())
        while extent is not None:
            intent = fc.derive_attributes(extent)
            if intent and frozenset(intent) not in explored:
                target = frozenset(intent)
                break
            extent = next_closure(extent, fc.objects, ext_clo)
        if target is None:
            break
        explored.add(target)
        engine = ExplorationEngine(mode="triadic", attributes=domain.attributes,
                                   conditions=domain.conditions, examples=examples,
                                   kc=kc, variant=variant, schedule=[target])
        run_with_expert(engine, expert)
        examples = engine.examples
        questions += engine.answered
    return examples, kc, questions
