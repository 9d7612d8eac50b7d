"""
Command-line surface: validate, props, nuclei, aut, holomorph, verify, enumerate.

Machine output (JSON, loop files) goes to stdout and diagnostics go to the
log on stderr. Exit codes: 0 success, 1 check failure, 2 input error,
3 bound or budget error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from src.config.settings import get_settings
from src.enumeration.enumerator import FILTERS, EnumSpec, filter_count
from src.loop_theory.autotopy import (
    PermGroup,
    autotopic_bijections,
    autotopism_group,
    autotopism_group_bruteforce,
    automorphism_group,
    regular_sets,
    regular_sets_bruteforce,
)
from src.loop_theory.core_tables import LoopTable
from src.loop_theory.errors import LoopError, LoopIntegrityError
from src.loop_theory.holomorph import build_holomorph, subgroup_closure
from src.loop_theory.nuclei_centers import nuclei_report
from src.utils.loop_io import (
    EnumerationPayload,
    HolomorphPayload,
    NucleiPayload,
    PermGroupPayload,
    PropertiesPayload,
    RegularSetsPayload,
    TheoremReportPayload,
    TriplesPayload,
    ValidationPayload,
    format_loop,
    load_loop,
    parse_perm_list,
    to_json,
    write_loop_file,
)
from src.verification.checks import FAILS, SKIPPED, CheckResult
from src.verification.osborn_verifier import CHECK_ORDER, full_report

logger = logging.getLogger(__name__)

MARKS = {"holds": "✅", "fails": "❌", "skipped": "⚠️"}


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _resolve_group(L: LoopTable, args) -> Tuple[PermGroup, str]:
    """The automorphism group A selected by --aum / --gens."""
    if getattr(args, "gens", None):
        gens = parse_perm_list(args.gens, L.n)
        group = subgroup_closure(L, gens)
        return group, "generated by " + ", ".join(g.cycle_string() for g in gens)
    if getattr(args, "aum", "full") == "trivial":
        return PermGroup.trivial(L.n), "trivial group"
    return automorphism_group(L), "full automorphism group"


# --- Commands ---

def cmd_validate(args) -> int:
    L = load_loop(args.loop)
    if args.format == "json":
        _emit(to_json(ValidationPayload(loop=L.label, valid=True, order=L.n, identity=L.e + 1)))
    else:
        _emit(f"✅ {L.label}: valid loop of order {L.n}, identity {L.e + 1}")
    return 0


def cmd_props(args) -> int:
    L = load_loop(args.loop)
    payload = PropertiesPayload.from_loop(L)
    if args.format == "json":
        _emit(to_json(payload))
        return 0
    lines = [
        f"loop: {payload.loop}",
        f"order: {payload.order}",
        f"identity: {payload.identity}",
        f"associative: {payload.associative}"
        + (f" (fails at {tuple(payload.associativity_witness)})" if payload.associativity_witness else ""),
        f"commutative: {payload.commutative}"
        + (f" (fails at {tuple(payload.commutativity_witness)})" if payload.commutativity_witness else ""),
        "left inverses: " + " ".join(map(str, payload.left_inverses)),
        "right inverses: " + " ".join(map(str, payload.right_inverses)),
    ]
    _emit("\n".join(lines))
    return 0


def cmd_nuclei(args) -> int:
    L = load_loop(args.loop)
    report = nuclei_report(L)
    payload = NucleiPayload.from_report(L, report)
    if args.format == "json":
        _emit(to_json(payload))
        return 0
    for key, members in payload.model_dump(exclude={"loop"}).items():
        _emit(f"{key}: {{{', '.join(map(str, members))}}}")
    return 0


def _compare(label: str, ours, oracle) -> None:
    if ours != oracle:
        raise LoopIntegrityError(f"{label}: search and oracle disagree")
    logger.info("✅ %s agrees with the oracle", label)


def cmd_aut(args) -> int:
    L = load_loop(args.loop)
    jobs = args.jobs
    if args.triples:
        triples = autotopism_group(L, jobs=jobs)
        if args.oracle:
            _compare("autotopism group", triples, autotopism_group_bruteforce(L))
        payload = TriplesPayload.from_triples(triples)
        text = [f"autotopisms: {payload.count}"] + [
            f"({t.a.cycle_string()}, {t.b.cycle_string()}, {t.c.cycle_string()})" for t in triples
        ]
    elif args.regular:
        sets = regular_sets(L)
        if args.oracle:
            _compare("regular sets", sets, regular_sets_bruteforce(L))
        payload = RegularSetsPayload.from_sets(sets)
        text = [
            f"{name}: {getattr(sets, name).order} " + " ".join(p.cycle_string() for p in getattr(sets, name))
            for name in ("p_set", "lambda_set", "phi_set", "psi_set")
        ]
    elif args.sigma:
        sigma = autotopic_bijections(L, jobs=jobs)
        if args.oracle:
            _compare("autotopic bijections", set(sigma), {t.a for t in autotopism_group_bruteforce(L)})
        payload = PermGroupPayload.from_group("autotopic bijections", sigma)
        text = [f"autotopic bijections: {sigma.order}"] + [p.cycle_string() for p in sigma]
    else:
        aum = automorphism_group(L)
        if args.oracle:
            diagonal = {t.a for t in autotopism_group(L, jobs=jobs) if t.is_diagonal}
            _compare("automorphism group", set(aum), diagonal)
        payload = PermGroupPayload.from_group("automorphisms", aum)
        text = [f"automorphisms: {aum.order}"] + [p.cycle_string() for p in aum]

    _emit(to_json(payload) if args.format == "json" else "\n".join(text))
    return 0


def cmd_holomorph(args) -> int:
    L = load_loop(args.loop)
    A, group_label = _resolve_group(L, args)
    H = build_holomorph(L, A, name=f"holomorph of {L.label}")
    generators = [g.cycle_string() for g in A.generators]
    header = [
        f"holomorph of {L.label} by the {group_label}",
        f"|A| = {A.order}, n = {L.n}, order = {H.order}",
        "generators: " + (" ".join(generators) if generators else "none"),
    ]
    if args.format == "json":
        payload = HolomorphPayload(
            loop=L.label,
            order=H.order,
            group_order=A.order,
            generators=generators,
            table=[[v + 1 for v in row] for row in H.h_table.rows()],
        )
        text = to_json(payload)
    else:
        text = format_loop(H.h_table, header)

    if args.out:
        path = Path(args.out)
        if args.format == "json":
            path.write_text(text if text.endswith("\n") else text + "\n")
        else:
            write_loop_file(path, H.h_table, header)
        logger.info("✅ Wrote holomorph of order %d to %s", H.order, path)
    else:
        _emit(text)
    return 0


def _render(result: CheckResult, depth: int = 0) -> List[str]:
    pad = "  " * depth
    mark = MARKS[result.status]
    if result.status == FAILS:
        detail = f"fails at {result.layout} = {result.display_witness()}" if result.witness else "fails"
    elif result.status == SKIPPED:
        detail = f"skipped ({result.reason})"
    else:
        detail = f"holds ({result.scanned} instances)"
    lines = [f"{pad}{mark} {result.name}: {detail}"]
    if result.statement and result.status == FAILS and not result.parts:
        lines.append(f"{pad}   {result.statement}")
    for part in result.parts:
        lines.extend(_render(part, depth + 1))
    return lines


def cmd_verify(args) -> int:
    L = load_loop(args.loop)
    A, group_label = _resolve_group(L, args)
    checks = [c for c in args.checks.split(",")] if args.checks else None
    report = full_report(L, A, checks=checks, loop_id=L.label, group_id=group_label)
    if args.format == "json":
        _emit(to_json(TheoremReportPayload.from_report(report)))
    else:
        lines = [f"{report.loop_id} with the {report.group_id} (|A| = {report.group_order})"]
        for result in report.results:
            lines.extend(_render(result))
        for key, agrees in report.equivalences.items():
            lines.append(f"{'✅' if agrees else '❌'} {key}")
        for line in report.contradictions:
            lines.append(f"❌ contradiction: {line}")
        _emit("\n".join(lines))
    return report.exit_code


def _filters(values: Optional[Sequence[str]]) -> Tuple[str, ...]:
    return tuple(f for value in values or () for f in value.split(",") if f.strip())


def cmd_enumerate(args) -> int:
    spec = EnumSpec(order=args.order, filters=_filters(args.filter), limit=args.limit)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    emitted = []

    def on_match(position: int, L: LoopTable) -> None:
        header = [f"order-{spec.order} normalized loop at position {position + 1}"]
        if out_dir is not None:
            write_loop_file(out_dir / f"order{spec.order}_{position + 1:05d}.loop", L, header)
        if args.stream:
            if emitted:
                sys.stdout.write("---\n")
            sys.stdout.write(format_loop(L, header))
        emitted.append(position)

    counts = filter_count(spec, jobs=args.jobs, on_match=on_match)
    payload = EnumerationPayload.from_counts(counts, emitted=len(emitted))
    summary = to_json(payload) if args.format == "json" else "\n".join(
        [f"order {counts.order}: scanned {counts.scanned}, emitted {len(emitted)}"]
        + [f"{t.name}: {t.count}" for t in counts.tallies]
    )
    if args.stream:
        sys.stderr.write(summary + "\n")
    else:
        _emit(summary)
    return 0


# --- Parser ---

def _add_group_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--aum", choices=["full", "trivial"], default="full",
                       help="Use the full or the trivial automorphism group")
    group.add_argument("--gens", action="append",
                       help='Generator literal such as "1,3,2"; repeat or separate with ";"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loops", description="Finite loop engine and Osborn checks")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes (default LOOPS_JOBS)")
    parser.add_argument("--log-level", default=None, help="Logging level (default LOOPS_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("validate", "Check that a table is a loop"),
        ("props", "Order, identity, associativity and inverses"),
        ("nuclei", "Nuclei, centrum and center"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("loop", help="Loop file or builtin:NAME")

    aut = sub.add_parser("aut", help="Automorphism, autotopism and regular groups")
    aut.add_argument("loop")
    which = aut.add_mutually_exclusive_group()
    which.add_argument("--triples", action="store_true", help="Autotopism group")
    which.add_argument("--automorphisms", action="store_true", help="Automorphism group (default)")
    which.add_argument("--regular", action="store_true", help="Regular bijection groups")
    which.add_argument("--sigma", action="store_true", help="First components of autotopisms")
    aut.add_argument("--oracle", action="store_true", help="Cross-check against the brute-force route")

    holo = sub.add_parser("holomorph", help="Build the A-holomorph")
    holo.add_argument("loop")
    _add_group_options(holo)
    holo.add_argument("--out", help="Write the table to this file")

    verify = sub.add_parser("verify", help="Run Osborn and holomorph checks")
    verify.add_argument("loop")
    _add_group_options(verify)
    verify.add_argument("--checks", default="all",
                        help="Comma-separated checks: " + ", ".join(CHECK_ORDER))

    enum = sub.add_parser("enumerate", help="Enumerate normalized loops")
    enum.add_argument("--order", type=int, required=True)
    enum.add_argument("--filter", action="append", help="Filter: " + ", ".join(FILTERS))
    enum.add_argument("--limit", type=int, default=None)
    enum.add_argument("--out", help="Directory for one loop file per result")
    enum.add_argument("--stream", action="store_true", help="Write matches to stdout separated by ---")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "props": cmd_props,
    "nuclei": cmd_nuclei,
    "aut": cmd_aut,
    "holomorph": cmd_holomorph,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch.

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level.upper())
    if args.jobs is None:
        args.jobs = get_settings().jobs
    try:
        return COMMANDS[args.command](args)
    except LoopError as e:
        logger.error("❌ %s: %s", type(e).__name__, e)
        return e.exit_code
