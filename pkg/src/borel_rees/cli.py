"""Batch command-line surface.

Commands: closure | fiber-graph | verify | kernel-oracle | detect-cubics |
koszul-report | paper-examples. Data goes to stdout (and files under --out);
progress chatter goes to stderr. Exit codes: 0 certified/match, 2
refuted/obstructed/mismatch, 3 inconclusive, 4 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .borel import InvalidIdeal, load_collection, order_view, region_partition
from .monomial import MonomialParseError, parse_monomial
from .orders import (
    build_G1,
    build_G2,
    build_G3,
    build_fiber_type_basis,
    build_head_and_tail_basis,
    dump_basis,
)
from .presentation import MultiDegree, enumerate_fiber
from .reduction import build_graph, to_dot
from .verifier import (
    VerificationReport,
    check_membership,
    detect_obstructions,
    koszul_report,
    mixed_kernel_span,
    progress_to_stderr,
    quadratic_basis_for,
    toric_kernel_span,
    verify_gb,
    verify_gb_mixed,
)

EXIT_OK = 0
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 4


@dataclass
class RunConfig:
    command: str
    spec_path: str | None = None
    budget: tuple[int, ...] = ()
    order: str | None = None
    basis: str | None = None
    out: str | None = None
    jobs: int = 1
    x_degree: int | None = None
    mu: str | None = None
    t: tuple[int, ...] = ()
    example: str | None = None
    params: dict = field(default_factory=dict)


def _emit(payload: dict, out_dir: str | None, filename: str = "report.json") -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(text)


def _load_ideals(cfg: RunConfig):
    if not cfg.spec_path:
        raise InvalidIdeal("--spec FILE is required for this command")
    with open(cfg.spec_path) as fh:
        return load_collection(json.load(fh))


def _parse_budget(text: str) -> tuple[int, ...]:
    try:
        budget = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; want e.g. 2,1")
    if any(b < 0 for b in budget):
        raise argparse.ArgumentTypeError("budgets must be >= 0")
    return budget


def _basis_for(ideals, name: str | None, order: str | None):
    """Resolve --basis / --order into a marked collection."""
    choice = name or {"rlex": "g1", "mrlex": "g2", "ht": "ht", None: None}[order]
    if choice is None:
        choice = "g1" if len(ideals) == 1 else "ht"
    if choice == "g1":
        if len(ideals) != 1:
            raise InvalidIdeal("basis g1 applies to a single ideal")
        return build_G1(ideals[0], 1)
    if choice == "g2":
        if len(ideals) != 1:
            raise InvalidIdeal("basis g2 applies to a single ideal")
        return build_G2(order_view(ideals[0]), 1)
    if choice == "g3":
        if len(ideals) != 2:
            raise InvalidIdeal("basis g3 applies to a pair of ideals")
        return build_G3(order_view(ideals[0]), order_view(ideals[1]))
    if choice == "ht":
        if len(ideals) != 2:
            raise InvalidIdeal("basis ht applies to a pair of ideals")
        return build_head_and_tail_basis(
            order_view(ideals[0]), order_view(ideals[1])
        )
    if choice == "fiber-type":
        fiber_gb = quadratic_basis_for(ideals)
        if fiber_gb is None:
            raise InvalidIdeal(
                "no constructive fiber basis for this collection"
            )
        return build_fiber_type_basis(ideals, fiber_gb)
    raise InvalidIdeal(f"unknown basis {choice!r}")


def cmd_closure(cfg: RunConfig) -> int:
    ideals = _load_ideals(cfg)
    payload = {"n": ideals[0].n, "ideals": []}
    for ideal in ideals:
        entry = {
            "borel_generators": [str(g) for g in ideal.borel_generators],
            "degree": ideal.degree,
            "minimal_generators": [str(g) for g in ideal.minimal_generators],
            "exponent_vectors": [list(g.exps) for g in ideal.minimal_generators],
        }
        if ideal.num_borel_generators == 2 and ideal.degree == 2:
            view = region_partition(ideal)
            entry["regions"] = {
                "B_M": [str(g) for g in view.B_M],
                "B_N": [str(g) for g in view.B_N],
                "indices": {"a": view.a, "b": view.b, "c": view.c, "d": view.d},
            }
        payload["ideals"].append(entry)
    _emit(payload, cfg.out, "closure.json")
    return EXIT_OK


def cmd_fiber_graph(cfg: RunConfig) -> int:
    ideals = _load_ideals(cfg)
    n = ideals[0].n
    r = len(ideals)
    try:
        x_part = parse_monomial(cfg.mu or "", n)
    except MonomialParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t = cfg.t or (0,) * r
    if len(t) != r:
        print(f"error: t-vector needs {r} entries", file=sys.stderr)
        return EXIT_USAGE
    mu = MultiDegree(x_part.exps, tuple(t))
    rules = _basis_for(ideals, cfg.basis, cfg.order)
    fiber = enumerate_fiber(mu, ideals)
    if not fiber:
        _emit({"multidegree": mu.display(), "summary": "empty"}, cfg.out,
              "fiber.json")
        return EXIT_OK
    graph = build_graph(rules, fiber=fiber)
    dot = to_dot(graph, name=mu.display(), r=r)
    payload = {
        "multidegree": mu.display(),
        "vertices": sorted(v.label("auto", r) for v in graph.vertices),
        "vertex_count": len(graph.vertices),
        "sinks": sorted(s.label("auto", r) for s in graph.sinks),
        "has_cycle": graph.has_cycle,
        "edge_count": graph.num_edges(),
        "dot": dot,
    }
    _emit(payload, cfg.out, "fiber.json")
    if cfg.out:
        Path(cfg.out, "fiber.dot").write_text(dot)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    ideals = _load_ideals(cfg)
    if len(cfg.budget) != len(ideals):
        print(
            f"error: budget needs {len(ideals)} entries", file=sys.stderr
        )
        return EXIT_USAGE
    rules = _basis_for(ideals, cfg.basis, cfg.order)
    if cfg.basis == "fiber-type":
        report = verify_gb_mixed(
            rules, ideals, cfg.budget, cfg.x_degree, progress_to_stderr
        )
    else:
        report = verify_gb(
            rules,
            ideals,
            cfg.budget,
            jobs=cfg.jobs,
            progress=progress_to_stderr,
        )
    payload = report.to_json_dict()
    payload["basis"] = cfg.basis or ("g1" if len(ideals) == 1 else "ht")
    _emit(payload, cfg.out, "verify.json")
    if cfg.out:
        Path(cfg.out, "basis.jsonl").write_text(dump_basis(rules, len(ideals)))
    return EXIT_OK if report.verdict == "certified-up-to-bound" else EXIT_REFUTED


def cmd_kernel_oracle(cfg: RunConfig) -> int:
    from .borel import collection_spec

    ideals = _load_ideals(cfg)
    rules = _basis_for(ideals, cfg.basis, cfg.order)
    report = VerificationReport(
        ideals=collection_spec(ideals), t_budget=tuple(cfg.budget)
    )
    if cfg.basis == "fiber-type":
        x_degree = cfg.x_degree if cfg.x_degree is not None else 2 * max(
            i.degree for i in ideals
        )
        pairs = mixed_kernel_span(ideals, cfg.budget, x_degree)
        report.notes.append(f"mixed kernel pairs up to x-degree {x_degree}")
    else:
        pairs = toric_kernel_span(ideals, cfg.budget)
    checked, failures = check_membership(pairs, rules)
    report.oracle_binomials_checked = checked
    report.oracle_failures = failures
    _emit(report.to_json_dict(), cfg.out, "oracle.json")
    return EXIT_OK if not failures else EXIT_REFUTED


def cmd_detect_cubics(cfg: RunConfig) -> int:
    ideals = _load_ideals(cfg)
    witnesses = detect_obstructions(ideals, cfg.budget)
    payload = {
        "t_budget": list(cfg.budget),
        "witnesses": [w.to_json_dict() for w in witnesses],
    }
    _emit(payload, cfg.out, "cubics.json")
    return EXIT_REFUTED if witnesses else EXIT_OK


def cmd_koszul_report(cfg: RunConfig) -> int:
    ideals = _load_ideals(cfg)
    report = koszul_report(
        ideals, cfg.budget, jobs=cfg.jobs, progress=progress_to_stderr
    )
    _emit(report.to_json_dict(), cfg.out, "koszul.json")
    return report.exit_code


def cmd_paper_examples(cfg: RunConfig) -> int:
    from .paper_cases import is_default_run, load_expectation, run_case

    try:
        result = run_case(cfg.example, cfg.params)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    if not all(result.get("checks", {}).values()):
        status = EXIT_REFUTED
    if is_default_run(cfg.example, cfg.params):
        expected = load_expectation(cfg.example)
        if expected is not None:
            match = expected == result
            result["matches_expectation"] = match
            if not match:
                status = EXIT_REFUTED
    _emit(result, cfg.out, f"{cfg.example.replace('.', '_')}.json")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borel-rees",
        description="Strongly stable ideals, toric presentations, and "
        "fiber-graph certification of explicit Groebner bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=False):
        p.add_argument("--spec", dest="spec_path", help="ideal spec JSON file")
        p.add_argument("--out", help="directory for reports and DOT files")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        if budget:
            p.add_argument(
                "--budget", type=_parse_budget, default=(2,),
                help="per-ideal t bound, e.g. 2,1",
            )

    p = sub.add_parser("closure", help="minimal generators and regions")
    common(p)

    p = sub.add_parser("fiber-graph", help="one fiber graph, DOT + summary")
    common(p)
    p.add_argument("--mu", required=True, help="x-part, e.g. x2*x3*x4^2*x5*x6")
    p.add_argument("--t", type=_parse_budget, default=None,
                   help="t-vector, e.g. 2,1")
    p.add_argument("--order", choices=["rlex", "mrlex", "ht"])
    p.add_argument("--basis",
                   choices=["g1", "g2", "g3", "ht", "fiber-type"])

    p = sub.add_parser("verify", help="exhaustive fiber-graph certification")
    common(p, budget=True)
    p.add_argument("--order", choices=["rlex", "mrlex", "ht"])
    p.add_argument("--basis", choices=["g1", "g2", "g3", "ht", "fiber-type"])
    p.add_argument("--xdeg", dest="x_degree", type=int,
                   help="x-degree bound for fiber-type verification")

    p = sub.add_parser("kernel-oracle", help="brute-force kernel membership")
    common(p, budget=True)
    p.add_argument("--order", choices=["rlex", "mrlex", "ht"])
    p.add_argument("--basis", choices=["g1", "g2", "g3", "ht", "fiber-type"])
    p.add_argument("--xdeg", dest="x_degree", type=int)

    p = sub.add_parser("detect-cubics", help="disconnected-fiber obstructions")
    common(p, budget=True)

    p = sub.add_parser("koszul-report", help="gate + obstructions + GB run")
    common(p, budget=True)

    p = sub.add_parser("paper-examples", help="run a named worked example")
    p.add_argument("example", help="ex2.2 ex2.3 ex2.4 fig1..fig4 ex4.1 ex4.2 ex4.3")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--c", type=int, default=0)
    p.add_argument("--out")
    return parser


_HANDLERS = {
    "closure": cmd_closure,
    "fiber-graph": cmd_fiber_graph,
    "verify": cmd_verify,
    "kernel-oracle": cmd_kernel_oracle,
    "detect-cubics": cmd_detect_cubics,
    "koszul-report": cmd_koszul_report,
    "paper-examples": cmd_paper_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        spec_path=getattr(ns, "spec_path", None),
        budget=tuple(getattr(ns, "budget", ()) or ()),
        order=getattr(ns, "order", None),
        basis=getattr(ns, "basis", None),
        out=getattr(ns, "out", None),
        jobs=getattr(ns, "jobs", 1),
        x_degree=getattr(ns, "x_degree", None),
        mu=getattr(ns, "mu", None),
        t=tuple(getattr(ns, "t", ()) or ()),
        example=getattr(ns, "example", None),
        params={k: getattr(ns, k) for k in ("a", "b", "c") if hasattr(ns, k)},
    )
    try:
        return _HANDLERS[cfg.command](cfg)
    except (InvalidIdeal, MonomialParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
