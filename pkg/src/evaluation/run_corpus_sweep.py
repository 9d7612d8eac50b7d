"""
Acceptance sweeps over built-in groups and enumerated loops.

Writes a JSON summary (default ``results/corpus_sweep.json``) covering:
group sanity, the equivalence sweep, the consequence sweep, the regular-set
oracle and witness replay. The summary does not depend on ``--jobs``.
"""

import argparse
import json
import logging
import os
import sys
from collections import Counter
from typing import Any, Dict, List, Tuple

from tqdm import tqdm

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
sys.path.insert(0, project_root)

from src.config.settings import get_settings
from src.enumeration.enumerator import EnumSpec, enumerate_loops
from src.loop_theory.autotopy import PermGroup, automorphism_group, regular_sets, regular_sets_bruteforce
from src.loop_theory.core_tables import LoopTable
from src.loop_theory.holomorph import all_subgroups
from src.loop_theory.nuclei_centers import nuclei_report
from src.utils.builtin_loops import BUILTIN
from src.utils.workers import parallel_map
from src.verification.checks import FAILS
from src.verification.osborn_verifier import (
    EQUIVALENT_CHECKS,
    VerifierContext,
    full_report,
    holomorph_osborn_direct,
    osborn_check,
    replay_witness,
)

logger = logging.getLogger(__name__)

SANITY_GROUPS = [f"Z{n}" for n in range(2, 9)] + ["V4", "S3", "D4", "Q8"]
EQUIVALENCE_CHECKS = list(EQUIVALENT_CHECKS) + ["offset_autotopisms"]


def group_sanity(name: str) -> Dict[str, Any]:
    """Osborn forms agree, nuclei are full, and the full holomorph is Osborn."""
    L = BUILTIN[name]()
    forms = osborn_check(L, "all")
    nuclei = nuclei_report(L)
    aum = automorphism_group(L)
    direct = holomorph_osborn_direct(L, aum)
    ok = bool(forms.holds and forms.notes["variants_agree"] and nuclei.nucleus.is_full and direct.holds)
    return {
        "loop": name,
        "order": L.n,
        "aum_order": aum.order,
        "osborn": forms.holds,
        "variants_agree": forms.notes["variants_agree"],
        "nucleus_full": nuclei.nucleus.is_full,
        "holomorph_osborn": direct.holds,
        "ok": ok,
    }


def _groups_for(L: LoopTable, all_of_them: bool) -> List[Tuple[str, PermGroup]]:
    aum = automorphism_group(L)
    if all_of_them:
        return [(f"subgroup {k + 1} of order {A.order}", A) for k, A in enumerate(all_subgroups(aum))]
    groups = [("trivial group", PermGroup.trivial(L.n))]
    if not aum.is_trivial:
        groups.append(("full automorphism group", aum))
    return groups


def sweep_loop(args: Tuple[LoopTable, bool]) -> Dict[str, Any]:
    """All sweeps for one loop; module-level so it can run in a worker."""
    L, all_subgroups_wanted = args
    pairs = []
    for group_label, A in _groups_for(L, all_subgroups_wanted):
        report = full_report(L, A, loop_id=L.label, group_id=group_label)
        ctx = VerifierContext(L, A)
        failing = [
            leaf.name
            for result in report.results
            for leaf in result.leaves()
            if leaf.status == FAILS
        ]
        replayed = all(
            replay_witness(L, A, result, ctx) for result in report.results if result.status == FAILS
        )
        direct = report.result("holomorph_osborn").holds
        pairs.append({
            "group": group_label,
            "group_order": A.order,
            "holomorph_osborn": direct,
            "equivalences_hold": all(report.equivalences.values()),
            "failing": failing if direct else [],
            "witnesses_replay": replayed,
        })
    return {"loop": L.label, "order": L.n, "pairs": pairs}


def regular_oracle(L: LoopTable) -> bool:
    return regular_sets(L) == regular_sets_bruteforce(L)


def run_sweep(max_order: int = 4, full_order: int = 4, jobs: int = 1) -> Dict[str, Any]:
    """
    Run every sweep and return the JSON-ready summary.

    Args:
        max_order: Largest enumerated order
        full_order: Orders up to this one use every subgroup of AUM;
            larger orders use the trivial and the full group
        jobs: Worker processes for the per-loop sweep
    """
    sanity = [group_sanity(name) for name in tqdm(SANITY_GROUPS, desc="Group sanity")]

    corpus: List[LoopTable] = []
    for order in range(1, max_order + 1):
        corpus.extend(enumerate_loops(EnumSpec(order=order), jobs=jobs))
    logger.info("Corpus holds %d normalized loops up to order %d", len(corpus), max_order)

    items = [(L, L.n <= full_order) for L in corpus]
    per_loop: List[Dict[str, Any]] = []
    chunk = max(1, jobs) * 4
    for start in tqdm(range(0, len(items), chunk), desc="Theorem sweep"):
        per_loop.extend(parallel_map(sweep_loop, items[start:start + chunk], jobs))

    oracle_bound = get_settings().brute_force_bound
    oracle = {
        L.label: regular_oracle(L)
        for L in tqdm(corpus, desc="Regular-set oracle")
        if L.n <= oracle_bound
    }

    pairs = [p for entry in per_loop for p in entry["pairs"]]
    osborn_pairs = [p for p in pairs if p["holomorph_osborn"]]
    refuted = Counter(name for p in osborn_pairs for name in p["failing"])

    summary = {
        "group_sanity_ok": all(s["ok"] for s in sanity),
        "corpus_size": len(corpus),
        "pairs": len(pairs),
        "osborn_holomorph_pairs": len(osborn_pairs),
        "equivalences_hold": all(p["equivalences_hold"] for p in pairs),
        "witnesses_replay": all(p["witnesses_replay"] for p in pairs),
        "regular_oracle_agrees": all(oracle.values()),
        "failing_under_osborn_holomorph": dict(sorted(refuted.items())),
    }
    return {"summary": summary, "group_sanity": sanity, "loops": per_loop, "regular_oracle": oracle}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Acceptance sweeps for the loop engine")
    parser.add_argument("--max-order", type=int, default=4)
    parser.add_argument("--full-order", type=int, default=4,
                        help="Largest order swept over every subgroup of AUM")
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--output", default=None, help="Output JSON path")
    args = parser.parse_args(argv)

    settings = get_settings()
    jobs = settings.jobs if args.jobs is None else args.jobs
    output_path = args.output or os.path.join(settings.results_dir, "corpus_sweep.json")

    payload = run_sweep(args.max_order, args.full_order, jobs)
    os.makedirs(os.path.dirname(os.path.abspath(output_path)), exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=4, ensure_ascii=False)

    summary = payload["summary"]
    print(f"SUCCESS: Results saved to {output_path}")
    for key, value in summary.items():
        print(f"  {key}: {value}")
    clean = summary["group_sanity_ok"] and summary["equivalences_hold"] and summary["witnesses_replay"]
    return 0 if clean else 1


if __name__ == "__main__":
    logging.basicConfig(level=get_settings().log_level, format='%(asctime)s - %(levelname)s - %(message)s')
    sys.exit(main())
