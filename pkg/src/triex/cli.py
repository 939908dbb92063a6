"""Terminal front door: validate files, run oracle explorations, emit lattices,
drive an interactive session, serve the HTTP API.

Exit codes: 0 ok, 1 validation failure, 2 I/O trouble, 3 inconsistency flagged.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .context import (ContextFamily, ObjectRow, TriadicContext, load_cxt,
                      load_json)
from .errors import InconsistentAnswer, RejectedAnswer, TriexError
from .exploration import (ORDERS, VARIANTS, Answer, ExplorationEngine,
                          FamilyCounterexample, oracle_exploration,
                          transcript_csv)
from .lattice import implication_lattice

EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INCONSISTENT = 3


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_domain(path: str):
    try:
        if path.endswith(".cxt"):
            return load_cxt(path)
        return load_json(path)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
    except TriexError as exc:
        _fail(EXIT_VALIDATION, f"{path}: {exc}")


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")


@click.group()
@click.version_option(package_name="triex")
def main() -> None:
    """Acquire conditional implication theories from domains and experts."""


@main.command()
@click.argument("path", type=click.Path())
def validate(path: str) -> None:
    """Parse PATH and report what it contains; non-zero exit on problems."""
    loaded = _load_domain(path)
    if isinstance(loaded, TriadicContext):
        click.echo(f"ok: triadic context, {len(loaded.objects)} objects, "
                   f"{len(loaded.attributes)} attributes, {len(loaded.conditions)} conditions")
    elif isinstance(loaded, ContextFamily):
        sizes = ", ".join(f"{e}:{len(c.objects)}" for e, c in loaded.members.items())
        click.echo(f"ok: context family, {len(loaded.attributes)} attributes, "
                   f"members {sizes}")
    else:
        click.echo(f"ok: formal context, {len(loaded.objects)} objects, "
                   f"{len(loaded.attributes)} attributes")


def _guard_conditions(n: int, force: bool) -> None:
    if n > 12 and not force:
        _fail(EXIT_VALIDATION,
              f"{n} conditions means {2 ** n - 1} schedule nodes; pass --force to proceed")


@main.command()
@click.argument("domain", type=click.Path())
@click.option("--variant", type=click.Choice(VARIANTS), default="record-partial-holds",
              show_default=True)
@click.option("--order", type=click.Choice(ORDERS), default="lex", show_default=True,
              help="Tie break within one subset cardinality.")
@click.option("--conditions", default=None,
              help="Comma separated conditions; restricts the schedule to their subsets.")
@click.option("--transcript", "transcript_out", type=click.Path(), default=None)
@click.option("--lattice", "lattice_out", type=click.Path(), default=None)
@click.option("--dot", "dot_out", type=click.Path(), default=None)
@click.option("--force", is_flag=True, help="Run even with more than 12 conditions.")
def oracle(domain, variant, order, conditions, transcript_out, lattice_out,
           dot_out, force) -> None:
    """Explore a fully known DOMAIN automatically and write the results."""
    dom = _load_domain(domain)
    names = dom.conditions if isinstance(dom, TriadicContext) else dom.member_ids
    _guard_conditions(len(names), force)
    restrict = None
    if conditions is not None:
        restrict = [c.strip() for c in conditions.split(",") if c.strip()]
    try:
        _, kc, engine = oracle_exploration(dom, variant=variant, order=order,
                                           conditions=restrict)
    except TriexError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if transcript_out:
        _write_text(transcript_out, transcript_csv(engine.transcript))
    if lattice_out or dot_out:
        lat = implication_lattice(kc)
        if lattice_out:
            _write_text(lattice_out, json.dumps(lat.to_json(), ensure_ascii=False,
                                                indent=2) + "\n")
        if dot_out:
            _write_text(dot_out, lat.to_dot())
    click.echo(f"questions: {engine.answered}")


@main.command()
@click.argument("domain", type=click.Path())
@click.option("--variant", type=click.Choice(VARIANTS), default="record-partial-holds",
              show_default=True)
@click.option("--order", type=click.Choice(ORDERS), default="lex", show_default=True)
@click.option("--json", "json_out", type=click.Path(), default=None)
@click.option("--dot", "dot_out", type=click.Path(), default=None)
@click.option("--force", is_flag=True, help="Run even with more than 12 conditions.")
def lattice(domain, variant, order, json_out, dot_out, force) -> None:
    """Labeled lattice of DOMAIN's conditional implications (internal oracle run)."""
    dom = _load_domain(domain)
    names = dom.conditions if isinstance(dom, TriadicContext) else dom.member_ids
    _guard_conditions(len(names), force)
    try:
        _, kc, _ = oracle_exploration(dom, variant=variant, order=order)
    except TriexError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    lat = implication_lattice(kc)
    text = json.dumps(lat.to_json(), ensure_ascii=False, indent=2) + "\n"
    if json_out:
        _write_text(json_out, text)
    if dot_out:
        _write_text(dot_out, lat.to_dot())
    if not json_out and not dot_out:
        click.echo(text, nl=False)


def _engine_from_config(path: str) -> ExplorationEngine:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(EXIT_VALIDATION, f"{path}: {exc}")
    from .service import CreateSessionPayload, _build_examples
    try:
        payload = CreateSessionPayload(**config)
        examples = _build_examples(payload)
        return ExplorationEngine(mode=payload.mode, attributes=payload.attributes,
                                 conditions=payload.conditions, examples=examples,
                                 variant=payload.variant, order=payload.order)
    except TriexError as exc:
        _fail(EXIT_VALIDATION, f"{path}: {exc}")
    except Exception as exc:  # pydantic validation
        _fail(EXIT_VALIDATION, f"{path}: {exc}")


def _save_snapshot(engine: ExplorationEngine, path: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(engine.snapshot(), fh, ensure_ascii=False)
    import os
    os.replace(tmp, path)


def _prompt_counterexample(engine: ExplorationEngine, holds_for: list[str]):
    q = engine.pending
    name = click.prompt("counterexample object name", type=str)
    if engine.mode == "triadic":
        table = []
        for b in engine.conditions:
            raw = click.prompt(f"attributes of {name!r} under {b!r} (comma separated, empty for none)",
                               default="", show_default=False)
            table.extend((m.strip(), b) for m in raw.split(",") if m.strip())
        return Answer(holds_for, ObjectRow(name, table))
    rejected = [e for e in q.conditions if e not in holds_for]
    expert = click.prompt(f"which expert rejects it {rejected}", type=str)
    raw = click.prompt(f"attributes of {name!r} (comma separated)", default="",
                       show_default=False)
    attrs = [m.strip() for m in raw.split(",") if m.strip()]
    return Answer(holds_for, FamilyCounterexample(expert, name, attrs))


@main.command()
@click.argument("config", type=click.Path(), required=False)
@click.option("--resume", "resume_path", type=click.Path(), default=None,
              help="Continue from a saved session snapshot.")
@click.option("--snapshot", "snapshot_path", type=click.Path(), default=None,
              help="Where to save state after every answer.")
def explore(config, resume_path, snapshot_path) -> None:
    """Run an interactive terminal session from a CONFIG file."""
    if resume_path:
        try:
            with open(resume_path, "r", encoding="utf-8") as fh:
                engine = ExplorationEngine.restore(json.load(fh))
        except OSError as exc:
            _fail(EXIT_IO, f"cannot read {resume_path}: {exc}")
        except (TriexError, json.JSONDecodeError, KeyError) as exc:
            _fail(EXIT_VALIDATION, f"{resume_path}: {exc}")
        out = snapshot_path or resume_path
    elif config:
        engine = _engine_from_config(config)
        out = snapshot_path or str(Path(config).with_suffix(".session.json"))
    else:
        _fail(EXIT_VALIDATION, "need a CONFIG file or --resume")

    if engine.inconsistent:
        _fail(EXIT_INCONSISTENT, "session is flagged inconsistent")

    try:
        while engine.pending is not None:
            q = engine.pending
            click.echo(f"\n[node {engine.node_index + 1}/{len(engine.schedule)}, "
                       f"answered {engine.answered}]")
            click.echo(f"  {q.render(engine.attributes, engine.conditions)}")
            holds_for = [c for c in q.conditions
                         if click.confirm(f"  holds under {c!r}?")]
            if len(holds_for) == len(q.conditions):
                answer = Answer(holds_for)
            else:
                answer = _prompt_counterexample(engine, holds_for)
            try:
                engine.submit(answer)
            except RejectedAnswer as exc:
                click.echo(f"rejected ({exc.reason}): {exc.detail}", err=True)
                continue
            except InconsistentAnswer as exc:
                _save_snapshot(engine, out)
                click.echo(f"inconsistent: {exc}", err=True)
                sys.exit(EXIT_INCONSISTENT)
            _save_snapshot(engine, out)
    except click.exceptions.Abort:
        _save_snapshot(engine, out)
        click.echo(f"\nsaved to {out}; resume with --resume {out}")
        sys.exit(0)
    _save_snapshot(engine, out)
    click.echo(f"\nfinished after {engine.answered} answers; state in {out}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8421, show_default=True)
@click.option("--data-dir", default="./sessions", show_default=True,
              help="Directory holding one JSON file per session.")
@click.option("--static-dir", default=None, type=click.Path(),
              help="Serve a web UI bundle at the root path.")
def serve(host, port, data_dir, static_dir) -> None:
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app
    try:
        uvicorn.run(create_app(data_dir, static_dir), host=host, port=port,
                    log_level="info")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot serve on {host}:{port}: {exc}")


if __name__ == "__main__":
    main()
