"""Command-line interface.

Exit codes: 0 verified/success, 1 property not satisfied, 2 input error,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import plots
from .characters import (CHARACTER_CAP, ZERO_TOL, CharacterTable, NumericalDegeneracy, TableError,
                         align_to_group, burnside_character_table, commutator_count_via_frobenius,
                         load_character_table)
from .commutators import (BRUTE_FORCE_CAP, CapExceeded, CommutatorReport, check_commutator_closure,
                          check_perfect_threshold, check_proposition1, commutator_mask,
                          commutator_width_le2, env_cap, is_perfect, noncommutators)
from .f2 import F2Error, load_matrix
from .group import (FiniteGroup, center, check_axioms, conjugacy_classes, derived_subgroup,
                    element_order)
from .groupfile import GroupFileError, load_group
from .perm import GroupTooLarge, PermutationError
from .semidirect import (PAPER_ORDER, Q, ConstructionError, build_a6, build_paper_group,
                         dump_action_table, load_paper_matrices, module_blocks)

OK, NOT_SATISFIED, INPUT_ERROR, INVARIANT_FAILURE = 0, 1, 2, 3

log = logging.getLogger("onecomm")


class InvariantFailure(RuntimeError):
    pass


@dataclass
class PipelineConfig:
    paths: list[Path] = field(default_factory=list)
    method: str = "auto"
    brute_cap: int = BRUTE_FORCE_CAP
    character_cap: int = CHARACTER_CAP
    tolerance: float = ZERO_TOL
    format: str = "text"
    threads: int = 1
    seed: int = 0
    figures: Path | None = None

    def __post_init__(self) -> None:
        if self.brute_cap <= 0 or self.character_cap <= 0:
            raise ValueError("caps must be positive")
        if not 0 < self.tolerance < 1:
            raise ValueError("tolerance must lie in (0, 1)")
        if self.method not in ("auto", "brute", "class-reduced", "frobenius"):
            raise ValueError(f"unknown method {self.method!r}")


class Timer:
    def __init__(self) -> None:
        self.timings: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 4)


def _elements(G: FiniteGroup, indices) -> list[dict]:
    return [G.describe_json(int(i)) for i in indices]


def commutator_section(G: FiniteGroup, rep: CommutatorReport) -> dict:
    return {
        "method": rep.method,
        "commutator_count": rep.commutator_count,
        "noncommutator_count": len(rep.noncommutator_indices),
        "noncommutators": _elements(G, rep.noncommutator_indices[:64]),
        "is_perfect": rep.is_perfect,
    }


def prop1_section(G: FiniteGroup, p) -> dict:
    out = {"applicable": p.applicable, "noncommutator_count": p.noncommutator_count,
           "notes": p.notes}
    if p.applicable:
        out.update(u=G.describe_json(p.u), order_two=p.order_two, central=p.central,
                   perfect=p.perfect, product_of_two=p.product_of_two,
                   witness=_elements(G, p.witness) if p.witness else None)
    return out


def emit(report: dict, cfg: PipelineConfig, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(report, indent=2, default=_json_default))
    else:
        print(text)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(type(o))


def _yes(flag) -> str:
    return str(flag).lower()


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" + ("" if n == 1 else "s")


def _commutator_mask_with(G: FiniteGroup, cfg: PipelineConfig, P, table: CharacterTable | None,
                          timer: Timer):
    """Commutator mask by the configured method; returns (mask, method, frobenius report)."""
    method = cfg.method
    if method == "auto":
        method = "brute" if G.order <= cfg.brute_cap else "class-reduced"
    if method == "frobenius":
        with timer("character_table"):
            if table is None:
                table = burnside_character_table(G, P, seed=cfg.seed, cap=cfg.character_cap)
            else:
                table = align_to_group(table, G, P)
        with timer("frobenius"):
            frob = commutator_count_via_frobenius(table, cfg.tolerance)
        if frob.unresolved:
            raise InvariantFailure(f"Frobenius sums numerically unresolved for classes {frob.unresolved}")
        hit = np.array([bool(v) for v in frob.verdicts])
        return hit[P.class_id], "frobenius", frob
    with timer("commutators"):
        mask, used = commutator_mask(G, method, P, cfg.threads, cfg.brute_cap)
    return mask, used, None


def analyze_group(G: FiniteGroup, cfg: PipelineConfig, table: CharacterTable | None = None,
                  timer: Timer | None = None) -> tuple[dict, np.ndarray, object]:
    timer = timer or Timer()
    with timer("conjugacy_classes"):
        P = conjugacy_classes(G)
    mask, used, frob = _commutator_mask_with(G, cfg, P, table, timer)
    failures = check_commutator_closure(G, mask)
    if failures:
        raise InvariantFailure("; ".join(failures))
    with timer("perfect"):
        perfect = is_perfect(G, mask)
    rep = CommutatorReport(G.order, int(mask.sum()), noncommutators(G, mask), perfect, used, P.count)
    with timer("proposition1"):
        p1 = check_proposition1(G, mask)
    with timer("width"):
        width, width_witness = commutator_width_le2(G, mask)
    with timer("center"):
        z = center(G)
    report = {
        "group": {"name": G.name, "order": G.order, "class_count": P.count},
        "commutators": commutator_section(G, rep),
        "proposition1": prop1_section(G, p1),
        "perfect_threshold": check_perfect_threshold(G, mask),
        "width_le2": {"holds": width,
                      "witness": G.describe_json(width_witness) if width_witness is not None else None},
        "center": {"size": len(z), "elements": _elements(G, z[:64])},
    }
    if frob is not None:
        report["frobenius"] = {"commutator_count": frob.commutator_count,
                               "sums": [[s.real, s.imag] for s in frob.sums]}
    report["timings"] = timer.timings
    if cfg.figures:
        comm_classes = np.zeros(P.count, dtype=bool)
        comm_classes[P.class_id[mask]] = True
        stem = G.name.replace("/", "_").replace(":", "_").replace("^", "")
        path = plots.plot_class_sizes(P.sizes, comm_classes, Path(cfg.figures) / f"{stem}_classes.png",
                                      title=f"{G.name}: conjugacy classes")
        report["figures"] = [str(path)]
        if frob is not None:
            path = plots.plot_frobenius_sums(frob.sums, Path(cfg.figures) / f"{stem}_frobenius.png",
                                             cfg.tolerance, title=G.name)
            report["figures"].append(str(path))
    return report, mask, p1


# commands


def cmd_verify_paper_group(args, cfg: PipelineConfig) -> int:
    timer = Timer()
    checks: list[dict] = []
    report: dict = {"command": "verify-paper-group", "checks": checks}

    def check(name: str, passed: bool, detail: str = "") -> bool:
        checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return passed

    def finish(code: int, text: str) -> int:
        report["exit_code"] = code
        report["timings"] = timer.timings
        emit(report, cfg, text)
        return code

    with timer("fixtures"):
        try:
            default_sig, default_eta = load_paper_matrices()
            msig = load_matrix(args.m_sigma) if args.m_sigma else default_sig
            meta = load_matrix(args.m_eta) if args.m_eta else default_eta
        except (OSError, F2Error) as exc:
            return finish(INPUT_ERROR, f"input error: {exc}")
        a6 = build_a6()
    check("a6_order", a6.order == 360, f"order {a6.order}")
    report["blocks"] = {"M_sigma": module_blocks(msig), "M_eta": module_blocks(meta)}
    if args.dry_run:
        return finish(OK, f"dry run: fixtures loaded, A6 order {a6.order}")

    with timer("build"):
        try:
            G = build_paper_group(msig, meta)
        except ConstructionError as exc:
            check("homomorphism", False, str(exc))
            return finish(INVARIANT_FAILURE, f"invariant failure: homomorphism: {exc}")
    check("homomorphism", True, f"{a6.order ** 2} pairs, convention {G.a6.convention}")
    if not check("order", G.order == PAPER_ORDER, f"order {G.order}"):
        return finish(INVARIANT_FAILURE, f"invariant failure: order {G.order} != {PAPER_ORDER}")
    try:
        with timer("axioms"):
            check_axioms(G, seed=cfg.seed)
    except Exception as exc:  # GroupError
        check("axioms", False, str(exc))
        return finish(INVARIANT_FAILURE, f"invariant failure: axioms: {exc}")
    check("axioms", True)
    sig_i, eta_i = G.generators[-2], G.generators[-1]
    check("generator_orders", element_order(G, sig_i) == 5 and element_order(G, eta_i) == 3)

    with timer("center"):
        z_abstract = center(G)
        z_eigen = G.eigenspace_center()
    u_index = G.index(Q, 0)
    report["center"] = {"size": len(z_abstract), "elements": _elements(G, z_abstract)}
    if not check("center_routes_agree", z_abstract == z_eigen,
                 f"abstract {len(z_abstract)}, eigenspace {len(z_eigen)}"):
        return finish(INVARIANT_FAILURE, "invariant failure: center routes disagree")
    center_ok = check("center_size_4", len(z_abstract) == 4, f"{len(z_abstract)} elements")
    center_ok &= check("u_central", u_index in z_abstract)

    try:
        analysis, mask, p1 = analyze_group(G, cfg, timer=timer)
    except InvariantFailure as exc:
        return finish(INVARIANT_FAILURE, f"invariant failure: {exc}")
    report.update({k: v for k, v in analysis.items() if k not in ("center", "timings")})
    non = analysis["commutators"]["noncommutators"]
    unique_ok = check("unique_noncommutator",
                      len(non) == 1 and non[0]["index"] == u_index,
                      ", ".join(G.describe(n["index"]) for n in non[:4]))
    prop_ok = check("proposition1", p1.all_hold)
    width_ok = check("width_le2", analysis["width_le2"]["holds"])

    if args.frobenius:
        fcfg = PipelineConfig(method="frobenius", character_cap=10**6, seed=cfg.seed,
                              tolerance=cfg.tolerance)
        try:
            fmask, _, frob = _commutator_mask_with(G, fcfg, conjugacy_classes(G), None, timer)
        except (InvariantFailure, NumericalDegeneracy, TableError) as exc:
            check("frobenius_agrees", False, str(exc))
            return finish(INVARIANT_FAILURE, f"invariant failure: frobenius: {exc}")
        if not check("frobenius_agrees", np.array_equal(fmask, mask),
                     f"{frob.commutator_count} commutators by characters"):
            return finish(INVARIANT_FAILURE, "invariant failure: Frobenius count disagrees")

    head = (f"{_count(len(non), 'noncommutator')}: "
            + "; ".join(G.describe(n["index"]) for n in non[:4])
            + f"; order {G.order}; center {len(z_abstract)}")
    lines = [head]
    lines += [f"  [{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" + (f": {c['detail']}" if c["detail"] else "")
              for c in checks]
    if p1.applicable:
        c1, c2 = p1.witness
        lines.append(f"  witness u = c1*c2 with c1 = {G.describe(c1)}, c2 = {G.describe(c2)}")
    ok = center_ok and unique_ok and prop_ok and width_ok
    return finish(OK if ok else NOT_SATISFIED, "\n".join(lines))


def _load_table_for(path: Path, table_dir: Path | None) -> CharacterTable | None:
    if table_dir is None:
        return None
    candidate = Path(table_dir) / path.name
    return load_character_table(candidate) if candidate.exists() else None


def cmd_analyze(args, cfg: PipelineConfig) -> int:
    try:
        G = load_group(args.file)
        table = load_character_table(args.table) if args.table else None
    except (GroupFileError, PermutationError, TableError, GroupTooLarge) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    try:
        report, _, _ = analyze_group(G, cfg, table)
    except (CapExceeded, TableError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (InvariantFailure, NumericalDegeneracy) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return INVARIANT_FAILURE
    report = {"command": "analyze", **report, "exit_code": OK}
    c = report["commutators"]
    p1 = report["proposition1"]
    non = ", ".join(G.describe(n["index"]) for n in c["noncommutators"][:8])
    lines = [
        f"{G.name}: order {G.order}, {report['group']['class_count']} classes, method {c['method']}",
        f"{_count(c['noncommutator_count'], 'noncommutator')}; perfect: {_yes(c['is_perfect'])}"
        + (f" [{non}]" if non else ""),
        f"commutators: {c['commutator_count']}",
        f"perfect threshold: {_yes(report['perfect_threshold'])}",
        f"width <= 2: {_yes(report['width_le2']['holds'])}",
        f"center: {report['center']['size']}",
    ]
    if p1["applicable"]:
        lines.append("proposition 1: " + ", ".join(
            f"{k} {_yes(p1[k])}" for k in ("order_two", "central", "perfect", "product_of_two")))
    else:
        lines.append("proposition 1: " + "; ".join(p1["notes"]))
    emit(report, cfg, "\n".join(lines))
    return OK


def search_one(path: Path, cfg: PipelineConfig, table_dir: Path | None) -> dict:
    """One pass of the search pipeline: perfect, width <= 2, even center, count."""
    timer = Timer()
    row: dict = {"file": str(path), "stages": {}, "timings": timer.timings}
    G = load_group(path)
    row.update(name=G.name, order=G.order)
    with timer("perfect"):
        perfect = bool(derived_subgroup(G).all())
    row["stages"]["perfect"] = perfect
    if not perfect:
        row["hit"] = False
        return row
    with timer("classes"):
        P = conjugacy_classes(G)
    with timer("width"):
        mask, used = commutator_mask(G, "auto", P, cfg.threads, cfg.brute_cap)
        width, _ = commutator_width_le2(G, mask)
    row["stages"]["width_le2"] = width
    if not width:
        row["hit"] = False
        return row
    with timer("center"):
        zsize = len(center(G))
    row["stages"]["center_even"] = zsize % 2 == 0
    if zsize % 2:
        row["hit"] = False
        return row
    table = _load_table_for(path, table_dir)
    with timer("count"):
        if table is not None or G.order <= cfg.character_cap:
            if table is None:
                table = burnside_character_table(G, P, seed=cfg.seed, cap=cfg.character_cap)
            else:
                table = align_to_group(table, G, P)
            frob = commutator_count_via_frobenius(table, cfg.tolerance)
            if frob.unresolved:
                raise InvariantFailure(f"{path}: unresolved Frobenius sums")
            count, row["count_method"] = frob.commutator_count, "frobenius"
        else:
            count, row["count_method"] = int(mask.sum()), used
    row["commutator_count"] = count
    row["hit"] = count + 1 == G.order
    return row


def cmd_search(args, cfg: PipelineConfig) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"input error: {directory} is not a directory", file=sys.stderr)
        return INPUT_ERROR
    rows, hits, skipped = [], [], []
    for path in sorted(directory.glob("*.json")):
        try:
            row = search_one(path, cfg, args.table_dir)
        except (GroupFileError, PermutationError, GroupTooLarge, TableError, CapExceeded) as exc:
            log.warning("skipping %s: %s", path, exc)
            skipped.append({"file": str(path), "reason": str(exc)})
            continue
        except (InvariantFailure, NumericalDegeneracy) as exc:
            print(f"invariant failure: {exc}", file=sys.stderr)
            return INVARIANT_FAILURE
        rows.append(row)
        if row["hit"]:
            hits.append(row)
            if args.first:
                break
    report = {"command": "search", "groups": rows, "hits": [h["file"] for h in hits],
              "skipped": skipped, "exit_code": OK}
    if cfg.figures and rows:
        report["figures"] = [str(plots.plot_search_timings(rows, Path(cfg.figures) / "search_timings.png"))]
    lines = []
    for r in rows:
        stages = ", ".join(f"{k} {_yes(v)}" for k, v in r["stages"].items())
        tail = f", commutators {r['commutator_count']}" if "commutator_count" in r else ""
        lines.append(f"{'HIT ' if r['hit'] else '    '}{r['name']} (order {r['order']}): {stages}{tail}")
    lines.append(f"{_count(len(hits), 'hit')}" + "".join(f"; {h['name']} order {h['order']}" for h in hits))
    emit(report, cfg, "\n".join(lines))
    return OK


def cmd_chartable(args, cfg: PipelineConfig) -> int:
    try:
        G = load_group(args.file)
        P = conjugacy_classes(G)
        T = burnside_character_table(G, P, seed=cfg.seed, cap=cfg.character_cap)
    except (GroupFileError, PermutationError, GroupTooLarge) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (NumericalDegeneracy, TableError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return INVARIANT_FAILURE
    doc = T.to_json()
    if args.output:
        Path(args.output).write_text(doc)
    frob = commutator_count_via_frobenius(T, cfg.tolerance)
    if cfg.figures:
        plots.plot_frobenius_sums(frob.sums, Path(cfg.figures) / f"{G.name}_frobenius.png",
                                  cfg.tolerance, title=G.name)
    if not args.output:
        sys.stdout.write(doc)
    elif cfg.format == "json":
        emit({"command": "chartable", "group": {"name": G.name, "order": G.order, "class_count": T.k},
              "degrees": [int(d) for d in np.rint(T.degrees)],
              "frobenius_sums": [[s.real, s.imag] for s in frob.sums],
              "output": str(args.output), "exit_code": OK}, cfg, "")
    else:
        lines = [f"{G.name}: {T.k} classes, degrees {[int(d) for d in np.rint(T.degrees)]}"]
        for c in range(T.k):
            s = frob.sums[c]
            lines.append(f"  class {c} size {int(T.sizes[c])}: sum {s.real:+.6f}{s.imag:+.6f}i"
                         f" -> {'commutator' if frob.verdicts[c] else 'noncommutator'}")
        print("\n".join(lines))
    return OK


def cmd_dump_actions(args, cfg: PipelineConfig) -> int:
    try:
        G = build_paper_group()
    except ConstructionError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return INVARIANT_FAILURE
    text = dump_action_table(G)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="zero tolerance for Frobenius sums (default 1e-6)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for random draws (default 0)")
    common.add_argument("--figures", type=Path, default=argparse.SUPPRESS,
                        help="write PNG figures into this directory")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="onecomm", parents=[common],
                                     description="Commutator analysis of finite groups.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-paper-group", parents=[common],
                       help="build Z2^10:A6 and verify its unique noncommutator")
    p.add_argument("--dry-run", action="store_true")
    p.add_argument("--frobenius", action="store_true",
                   help="also count commutators through the character table (slow)")
    p.add_argument("--m-sigma", type=Path, help="override the M_sigma fixture")
    p.add_argument("--m-eta", type=Path, help="override the M_eta fixture")
    p.set_defaults(func=cmd_verify_paper_group)

    p = sub.add_parser("analyze", parents=[common], help="analyze a group file")
    p.add_argument("file", type=Path)
    p.add_argument("--method", choices=("auto", "brute", "class-reduced", "frobenius"), default="auto")
    p.add_argument("--table", type=Path, help="character table to use with --method frobenius")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", parents=[common], help="run the search pipeline over a directory")
    p.add_argument("dir", type=Path)
    p.add_argument("--first", action="store_true", help="stop at the first hit")
    p.add_argument("--table-dir", type=Path, help="directory of character tables named like the group files")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("chartable", parents=[common], help="compute a character table")
    p.add_argument("file", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_chartable)

    p = sub.add_parser("dump-actions", parents=[common], help="print all 360 action matrices")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_dump_actions)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cap = env_cap(BRUTE_FORCE_CAP)
    try:
        cfg = PipelineConfig(
            method=getattr(args, "method", "auto"),
            brute_cap=cap,
            character_cap=env_cap(CHARACTER_CAP),
            tolerance=getattr(args, "tolerance", ZERO_TOL),
            format=getattr(args, "format", "text"),
            threads=getattr(args, "threads", 1),
            seed=getattr(args, "seed", 0),
            figures=getattr(args, "figures", None),
        )
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    return args.func(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
