"""Main CLI entry point for kmlab."""

import functools
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel

from kmlab.cli.reports import Report, RunConfig, write_report
from kmlab.config import configure_logging, load_config
from kmlab.errors import (
    AmbientMismatch,
    DepthTooSmall,
    EmptyWithinBound,
    IntegralityError,
    NotConverged,
    NotDominant,
    NotGCM,
    NotSymmetrizable,
    UnknownPreset,
    UnstableLattice,
    WindowTooSmall,
)
from kmlab.reps import (
    HighestWeightModule,
    char_demazure,
    char_L,
    check_weyl_kac,
    peterson_mults,
    real_roots,
    verify_containment_order,
    verify_distributive,
    window_depths,
)
from kmlab.ring import (
    GradedRingTruncation,
    build_truncation,
    check_canonical_degree,
    check_compatibility,
    demazure_ideal,
    find_splitting,
    pluecker_quadrics,
    reduce_mod_p,
    vanishing_at_extremal_points,
    verify_degree2_presentation,
)
from kmlab.ring.pluecker import format_relation
from kmlab.rootdata import (
    GCM,
    WeylElement,
    canonicalize,
    enumerate_elements,
    list_presets,
    parse_word,
    require_dominant,
    resolve_gcm,
    validate_gcm,
)
from kmlab.rootdata.presets import load_catalog

console = Console(stderr=True)

# Invalid input or a window too small for the request.
USAGE_ERRORS = (
    NotGCM,
    NotDominant,
    UnknownPreset,
    ValidationError,
    NotSymmetrizable,
    WindowTooSmall,
    DepthTooSmall,
    EmptyWithinBound,
    NotConverged,
    AmbientMismatch,
)
# A property expected to hold on every window failed.
FALSIFICATIONS = (UnstableLattice, IntegralityError)


def handle_errors(fn: Callable[..., None]) -> Callable[..., None]:
    """Map library exceptions to the exit-code contract: 2 for usage, 1 for falsification."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            fn(*args, **kwargs)
        except USAGE_ERRORS as e:
            console.print(f"[red]Error: {e}[/red]")
            sys.exit(2)
        except FALSIFICATIONS as e:
            console.print(f"[red]Falsified: {e}[/red]")
            sys.exit(1)

    return wrapper


def load_gcm(source: str) -> GCM:
    """Resolve a preset name, a GCM file, or an inline JSON matrix such as "[[2,-1],[-1,2]]"."""
    if source.lstrip().startswith("["):
        try:
            matrix = json.loads(source)
        except json.JSONDecodeError as e:
            raise click.BadParameter(f"invalid inline matrix: {e}") from e
        return validate_gcm(matrix, name="inline")
    return resolve_gcm(source)


def parse_weight(gcm: GCM, text: str) -> Tuple[int, ...]:
    try:
        anchor = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as e:
        raise click.BadParameter(f"weight must be comma-separated integers, got {text!r}") from e
    if len(anchor) != gcm.rank:
        raise click.BadParameter(f"weight needs {gcm.rank} entries, got {len(anchor)}")
    return anchor


def parse_element(gcm: GCM, text: str) -> WeylElement:
    try:
        return canonicalize(gcm, parse_word(gcm, text))
    except KeyError as e:
        raise click.BadParameter(str(e)) from e


def parse_elements(gcm: GCM, text: str) -> List[WeylElement]:
    """Comma-separated elements, each a dot-separated reduced word."""
    return [parse_element(gcm, tok) for tok in text.split(",") if tok.strip()]


def make_run(ctx: click.Context, command: str, **fields: Any) -> RunConfig:
    return RunConfig(
        command=command,
        output_format=ctx.obj["output_format"],
        output=ctx.obj["output"],
        **{k: v for k, v in fields.items() if v is not None},
    )


def finish(ctx: click.Context, report: Report, passed: Optional[bool] = None) -> None:
    """Write the report and exit 1 if a checked property failed."""
    report.timestamp = ctx.obj["timestamp"]
    write_report(report)
    if passed is not None:
        status = "[green]passed[/green]" if passed else "[red]FAILED[/red]"
        console.print(f"{report.run.command}: {status}")
    if passed is False:
        sys.exit(1)


def preset_option(fn: Callable[..., None]) -> Callable[..., None]:
    return click.option(
        "--preset", "-g", "source", required=True, help="Preset name or GCM file (JSON/YAML)"
    )(fn)


@click.group()
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["tsv", "json"]),
    help="Report format (default from KMLAB_OUTPUT_FORMAT)",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the report here")
@click.option("--no-timestamp", is_flag=True, help="Omit the timestamp from report headers")
@click.option("--log-level", help="Log level (default from KMLAB_LOG_LEVEL)")
@click.pass_context
def cli(
    ctx: click.Context,
    output_format: Optional[str],
    output: Optional[str],
    no_timestamp: bool,
    log_level: Optional[str],
) -> None:
    """kmlab - truncated computations for Kac-Moody flag varieties."""
    config = load_config()

    # Override with CLI arguments
    if output_format:
        config["output_format"] = output_format
    if log_level:
        config["log_level"] = log_level

    configure_logging(config["log_level"])
    ctx.obj = {
        "config": config,
        "output_format": config["output_format"],
        "output": output,
        "timestamp": not no_timestamp,
    }


# GCM and roots ------------------------------------------------------------------


@cli.group()
def gcm() -> None:
    """Generalized Cartan matrices."""


@gcm.command("check")
@click.argument("source")
@click.pass_context
@handle_errors
def gcm_check(ctx: click.Context, source: str) -> None:
    """Validate a GCM and print its symmetrizer."""
    matrix = load_gcm(source)
    run = make_run(ctx, "gcm check", gcm=source)
    report = Report(run, ["field", "value"])
    report.rows = [
        ["name", matrix.name or "-"],
        ["rank", matrix.rank],
        ["labels", list(matrix.labels)],
        ["symmetrizable", matrix.is_symmetrizable],
        ["symmetrizer", list(matrix.symmetrizer) if matrix.symmetrizer else None],
        ["blocks", ";".join(".".join(matrix.labels[i] for i in b) for b in matrix.blocks())],
    ]
    if not matrix.is_symmetrizable:
        console.print(f"[yellow]{NotSymmetrizable(matrix.name)}[/yellow]")
    finish(ctx, report)


@cli.command()
@preset_option
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.option("--mults", is_flag=True, help="Include imaginary roots via the Peterson recursion")
@click.pass_context
@handle_errors
def roots(ctx: click.Context, source: str, depth: int, mults: bool) -> None:
    """Positive roots of height <= d with multiplicities."""
    matrix = load_gcm(source)
    run = make_run(ctx, "roots", gcm=source, depth=depth)
    table = peterson_mults(matrix, depth) if mults else real_roots(matrix, depth)
    report = Report(run, ["root", "multiplicity", "kind"])
    for root in table.sorted_roots():
        entry = table.entries[root]
        kind = "real" if entry.is_real else "imaginary"
        report.rows.append([list(root), entry.multiplicity, kind])
    report.summary = {"roots": len(table.entries)}
    finish(ctx, report)


# Characters and modules -----------------------------------------------------------


@cli.group()
def char() -> None:
    """Truncated characters."""


@char.command("L")
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.pass_context
@handle_errors
def char_l(ctx: click.Context, source: str, weight: str, depth: int) -> None:
    """Character of L(lambda) up to depth d."""
    matrix = load_gcm(source)
    anchor = parse_weight(matrix, weight)
    run = make_run(ctx, "char L", gcm=source, weight=list(anchor), depth=depth)
    config = ctx.obj["config"]
    character = char_L(
        matrix, anchor, depth, config["stable_sweeps"], config["max_sweeps"]
    )
    report = Report(run, ["m", "coeff"], [[list(m), c] for m, c in character.terms()])
    report.summary = {"mass": character.mass}
    finish(ctx, report)


@char.command("demazure")
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("--w", "word", required=True, help="Reduced word, e.g. 1.2.1")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.pass_context
@handle_errors
def char_dem(ctx: click.Context, source: str, weight: str, word: str, depth: int) -> None:
    """Character of the thin Demazure module L_w(lambda)."""
    matrix = load_gcm(source)
    anchor = parse_weight(matrix, weight)
    w = parse_element(matrix, word)
    run = make_run(
        ctx, "char demazure", gcm=source, weight=list(anchor), depth=depth, elements=[w.label()]
    )
    character = char_demazure(matrix, anchor, w, depth)
    report = Report(run, ["m", "coeff"], [[list(m), c] for m, c in character.terms()])
    report.summary = {"mass": character.mass}
    finish(ctx, report)


@cli.command()
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.pass_context
@handle_errors
def dims(ctx: click.Context, source: str, weight: str, depth: int) -> None:
    """Weight-space dimensions from Gram ranks, cross-checked against char_L."""
    matrix = load_gcm(source)
    anchor = parse_weight(matrix, weight)
    run = make_run(ctx, "dims", gcm=source, weight=list(anchor), depth=depth)
    config = ctx.obj["config"]
    character = char_L(matrix, anchor, depth, config["stable_sweeps"], config["max_sweeps"])
    module = HighestWeightModule(matrix, anchor)
    report = Report(run, ["m", "gram_dim", "char_coeff", "match"])
    agree = True
    for m in window_depths(matrix.rank, depth):
        gram, coeff = module.dim_weight(m), character.coefficient(m)
        if gram or coeff:
            report.rows.append([list(m), gram, coeff, gram == coeff])
            agree = agree and gram == coeff
    report.summary = {"agree": agree}
    finish(ctx, report, agree)


@cli.command()
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.pass_context
@handle_errors
def weylkac(ctx: click.Context, source: str, weight: str, depth: int) -> None:
    """Truncated Weyl-Kac identity for L(lambda)."""
    matrix = load_gcm(source)
    anchor = parse_weight(matrix, weight)
    run = make_run(ctx, "weylkac", gcm=source, weight=list(anchor), depth=depth)
    result = check_weyl_kac(matrix, anchor, depth)
    report = Report(run, ["field", "value"])
    report.rows = [
        ["equal", result.equal],
        ["numerator_terms", result.numerator_terms],
        ["roots_used", result.roots_used],
        ["first_mismatch", list(result.first_mismatch[0]) if result.first_mismatch else None],
    ]
    finish(ctx, report, result.equal)


# Demazure lattice checks ------------------------------------------------------------


@cli.command("lattice-check")
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("-S", "elements", required=True, help="Weyl elements, e.g. 1,2 or 1.2,2.1")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.option("--search-len", type=int, default=6, show_default=True, help="Length bound for S'")
@click.pass_context
@handle_errors
def lattice_check(
    ctx: click.Context, source: str, weight: str, elements: str, depth: int, search_len: int
) -> None:
    """Find S' with the intersection over S equal to the sum over S'."""
    matrix = load_gcm(source)
    anchor = require_dominant(matrix, parse_weight(matrix, weight)).anchor
    targets = parse_elements(matrix, elements)
    run = make_run(
        ctx,
        "lattice-check",
        gcm=source,
        weight=list(anchor),
        depth=depth,
        search_len=search_len,
        elements=[w.label() for w in targets],
    )
    result = verify_distributive(HighestWeightModule(matrix, anchor), targets, depth, search_len)
    report = Report(run, ["m", "intersection_dim"])
    report.rows = [[list(m), n] for m, n in result.intersection_dims.items()]
    report.summary = {
        "found": result.found,
        "method": result.method or None,
        "certificate": list(result.certificate) if result.certificate else None,
    }
    finish(ctx, report, result.passed)


@cli.command("order-check")
@preset_option
@click.option("--lambda", "weight", required=True, help="Highest weight, e.g. 1,1")
@click.option("--max-len", type=int, required=True, help="Largest element length")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.pass_context
@handle_errors
def order_check(ctx: click.Context, source: str, weight: str, max_len: int, depth: int) -> None:
    """Thick containment against the Bruhat order."""
    matrix = load_gcm(source)
    anchor = require_dominant(matrix, parse_weight(matrix, weight)).anchor
    run = make_run(
        ctx, "order-check", gcm=source, weight=list(anchor), depth=depth, max_len=max_len
    )
    result = verify_containment_order(HighestWeightModule(matrix, anchor), max_len, depth)
    report = Report(run, ["v", "w", "contained", "bruhat_leq"])
    report.rows = [list(row) for row in result.counterexamples]
    report.summary = {
        "pairs_checked": result.pairs_checked,
        "undecided": len(result.undecided),
        "converse_checked": result.iff_checked,
    }
    finish(ctx, report, result.passed)


# Section ring -----------------------------------------------------------------------


@cli.command()
@preset_option
@click.option("--deg", "degree", type=int, default=2, show_default=True, help="Degree bound D")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.option("--present", is_flag=True, help="Check the degree-two presentation (needs D >= 3)")
@click.option(
    "--max-len", type=int, default=3, show_default=True, help="Extremal points up to this length"
)
@click.pass_context
@handle_errors
def pluecker(
    ctx: click.Context, source: str, degree: int, depth: int, present: bool, max_len: int
) -> None:
    """Quadratic relations among the generators and their extremal vanishing."""
    matrix = load_gcm(source)
    if present:
        degree = max(degree, 3)
    run = make_run(ctx, "pluecker", gcm=source, degree=degree, depth=depth, max_len=max_len)
    truncation = build_truncation(matrix, degree, depth)
    blocks = pluecker_quadrics(truncation)
    report = Report(run, ["generators", "m", "relation"])
    for block in blocks:
        pair = [matrix.labels[block.generators[0]], matrix.labels[block.generators[1]]]
        for relation in block.relations:
            text = format_relation(truncation, block, relation)
            report.rows.append([pair, list(block.depth), text])

    elements = enumerate_elements(matrix, max_len)
    vanishing = vanishing_at_extremal_points(truncation, blocks, elements)
    passed = all(v.vanishes is not False for v in vanishing)
    report.summary = {
        "quadrics": sum(b.count for b in blocks),
        "extremal_points": len(vanishing),
        "extremal_undecided": sum(1 for v in vanishing if v.vanishes is None),
        "extremal_failures": [v.w for v in vanishing if v.vanishes is False],
    }
    if present:
        presentation = verify_degree2_presentation(truncation, blocks)
        report.summary["presentation"] = presentation.passed
        report.summary["presentation_failures"] = [
            [list(lam), list(m), got, want] for lam, m, got, want in presentation.failures()
        ]
        passed = passed and presentation.passed
    finish(ctx, report, passed)


@cli.command()
@preset_option
@click.option("--prime", "-p", type=int, required=True, help="Characteristic p")
@click.option("--deg", "degree", type=int, required=True, help="Degree bound D")
@click.option("--depth", "-d", type=int, required=True, help="Depth bound d")
@click.option("--compat", default="", help="Weyl elements whose ideals must be preserved")
@click.option("--canonical", is_flag=True, help="Impose the canonical-degree condition")
@click.pass_context
@handle_errors
def frobenius(
    ctx: click.Context,
    source: str,
    prime: int,
    degree: int,
    depth: int,
    compat: str,
    canonical: bool,
) -> None:
    """Search for a Frobenius splitting of the ring truncation over F_p."""
    matrix = load_gcm(source)
    compat_elements = parse_elements(matrix, compat)
    run = make_run(
        ctx,
        "frobenius",
        gcm=source,
        prime=prime,
        degree=degree,
        depth=depth,
        elements=[w.label() for w in compat_elements],
    )
    console.print(
        Panel.fit(
            "[bold blue]Frobenius splitting search[/bold blue]\n\n"
            f"GCM: [cyan]{source}[/cyan]  p = [cyan]{prime}[/cyan]  "
            f"window = [cyan](D={degree}, d={depth})[/cyan]",
            border_style="blue",
        )
    )
    truncation = reduce_mod_p(GradedRingTruncation(matrix, degree, depth), prime)
    ideals = [demazure_ideal(w, truncation) for w in compat_elements]
    candidate = find_splitting(truncation, ideals, canonical)
    report = Report(run, ["kappa", "source_depth", "target_depth", "matrix"])
    if candidate is None:
        report.summary = {"splitting": "none on window"}
        finish(ctx, report, False)
        return

    certificate = candidate.to_dict()
    for entry in certificate["maps"]:  # type: ignore[union-attr]
        report.rows.append(
            [
                entry["kappa"],
                entry["source_depth"],
                entry["target_depth"],
                json.dumps(entry["matrix"]),
            ]
        )
    canonical_results: Dict[str, Any] = {}
    for i in matrix.indices:
        try:
            canonical_results[matrix.labels[i]] = check_canonical_degree(candidate, i)
        except WindowTooSmall:
            canonical_results[matrix.labels[i]] = "window too small"
    compatible = [
        w.label()
        for w, ideal in zip(compat_elements, ideals)
        if check_compatibility(candidate, ideal)
    ]
    verified = candidate.report is not None and candidate.report.passed
    report.summary = {
        "splitting": "found",
        "verified": verified,
        "compatible_with": compatible,
        "canonical_degree": canonical_results,
    }
    passed = verified and len(compatible) == len(ideals)
    if canonical:
        passed = passed and all(v is True for v in canonical_results.values())
    finish(ctx, report, passed)


# Weyl group and housekeeping ----------------------------------------------------------


@cli.group()
def weyl() -> None:
    """Weyl group utilities."""


@weyl.command("enumerate")
@preset_option
@click.option("--max-len", type=int, required=True, help="Largest element length")
@click.pass_context
@handle_errors
def weyl_enumerate(ctx: click.Context, source: str, max_len: int) -> None:
    """List Weyl group elements up to a length."""
    matrix = load_gcm(source)
    run = make_run(ctx, "weyl enumerate", gcm=source, max_len=max_len)
    elements = enumerate_elements(matrix, max_len)
    report = Report(run, ["length", "reduced_word", "rho_image_depth"])
    report.rows = [[w.length, w.label(), list(w.rho_image.depth)] for w in elements]
    finish(ctx, report)


@cli.command()
def presets() -> None:
    """List the preset catalog."""
    for name, entry in load_catalog().items():
        console.print(f"[cyan]{name}[/cyan]  {entry.get('description', '')}")
    click.echo("\n".join(list_presets()))


@cli.command()
def version() -> None:
    """Show version information."""
    from kmlab import __version__

    console.print(f"kmlab version: [cyan]{__version__}[/cyan]")


@cli.command()
def config() -> None:
    """Show current configuration."""
    cfg = load_config()

    console.print(
        Panel.fit(
            f"[bold blue]Current Configuration[/bold blue]\n\n"
            f"Presets: [cyan]{cfg['presets_path'] or '(bundled)'}[/cyan]\n"
            f"Log Level: [cyan]{cfg['log_level']}[/cyan]\n"
            f"Max Sweeps: [cyan]{cfg['max_sweeps']}[/cyan]\n"
            f"Stable Sweeps: [cyan]{cfg['stable_sweeps']}[/cyan]\n"
            f"Output Format: [cyan]{cfg['output_format']}[/cyan]",
            border_style="blue",
        )
    )


if __name__ == "__main__":
    cli()
