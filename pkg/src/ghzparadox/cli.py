"""Command-line front end.

Exit codes: 0 contradiction confirmed or verification passed, 2 no
contradiction (the system is satisfiable), 1 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import kernels
from .analysis import (
    dimensional_irreducibility_check,
    genuine_in_parties,
    irreducibility_scan,
    prime_factors,
    prime_reduction,
)
from .exactnum import as_phase, format_phase
from .fileio import (
    FileFormatError,
    digest,
    instance_to_dict,
    load_any,
    load_instance,
    save_instance,
    system_to_dict,
    validate,
    witness_to_dict,
)
from .lhv import (
    CongruenceSystem,
    DerivationError,
    SystemParseError,
    brute_force_solve,
    default_cap,
    extract_system,
    lr_congruence,
    mermin_system,
    snf_solve,
    var_name,
)
from .paradox import InstanceError, ParadoxInstance, generate, invariance_gamma, verify_concurrency

EXIT_OK, EXIT_ERROR, EXIT_SAT = 0, 1, 2


class UsageError(Exception):
    pass


def _report(command: str, source: dict, **sections) -> dict:
    doc = {
        "schema_version": 1,
        "kind": "ghz-paradox-report",
        "command": command,
        "instance_digest": digest(source),
        "backend": kernels.BACKEND,
    }
    doc.update({k: v for k, v in sections.items() if v is not None})
    return doc


def _emit(args, report: dict, lines: list[str]) -> int:
    validate(report, "report")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return report["exit_status"]


def _omega(e: Optional[int], dim: int) -> str:
    if e is None:
        return "not an eigenstate"
    e = e % dim
    if e == 0:
        return "1"
    return f"w^-{dim - e}" if dim - e < e else f"w^{e}"


# ------------------------------------------------------------------ commands


def _parse_pair(text: Optional[str]):
    if text is None:
        return (0, None)
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--pair expects 'a/b,c/d', got {text!r}")
    return tuple(as_phase(x) for x in parts)


def cmd_generate(args) -> int:
    p = generate(args.parties, args.settings, args.dim_factor, _parse_pair(args.pair))
    if args.out:
        save_instance(p, args.out)
        print(f"wrote {args.out}: N={p.n_parties} M={p.n_settings} d={p.dim_factor} D={p.dim}, "
              f"{len(p.composites)} composites", file=sys.stderr)
    else:
        print(json.dumps(instance_to_dict(p), indent=2))
    return EXIT_OK


def _quantum_section(p: ParadoxInstance) -> tuple[dict, list[str]]:
    conc = verify_concurrency(p)
    rows, lines = [], [f"instance: N={p.n_parties} M={p.n_settings} d={p.dim_factor} D={p.dim} ({p.generator})"]
    for c, e in zip(p.composites, conc.eigenvalues):
        g = invariance_gamma(c.phases)
        rows.append({
            "label": c.label,
            "phases": [format_phase(x) for x in c.phases],
            "gamma_phase_sum": g,
            "eigen_exponent": e,
        })
        agree = g is not None and e is not None and e == (-g) % p.dim
        lines.append(
            f"  {c.label:>4} ({', '.join(format_phase(x) for x in c.phases)})  gamma={g}  "
            f"eigenvalue {_omega(e, p.dim)}  {'ok' if agree else 'MISMATCH'}"
        )
    lines.append(f"common GHZ eigenstate: {conc.common_eigenstate}")
    lines.append(f"all pairs commute: {conc.all_commute} ({len(conc.noncommuting_pairs)} non-commuting pairs)")
    lines.append(f"concurrent: {conc.concurrent}")
    section = {
        "composites": rows,
        "common_eigenstate": conc.common_eigenstate,
        "all_commute": conc.all_commute,
        "concurrent": conc.concurrent,
        "noncommuting_pairs": [list(x) for x in conc.noncommuting_pairs],
    }
    return section, lines


def cmd_verify(args) -> int:
    p = load_instance(args.file)
    section, lines = _quantum_section(p)
    ok = section["common_eigenstate"] and all(
        r["gamma_phase_sum"] is not None and r["eigen_exponent"] == (-r["gamma_phase_sum"]) % p.dim
        for r in section["composites"]
    )
    lines.append("verification " + ("passed" if ok else "FAILED"))
    report = _report("verify", instance_to_dict(p), quantum=section, exit_status=EXIT_OK if ok else EXIT_ERROR)
    return _emit(args, report, lines)


def _parse_overrides(items: Sequence[str]) -> dict[int, int]:
    out = {}
    for item in items or ():
        try:
            idx, val = item.split("=")
            out[int(idx)] = int(val)
        except ValueError:
            raise UsageError(f"--override-rhs expects INDEX=VALUE, got {item!r}") from None
    return out


def _classical_section(system: CongruenceSystem, method: str, cap: int, overrides: dict,
                       instance: Optional[ParadoxInstance] = None) -> tuple[dict, list[str], bool]:
    solvers = {}
    if method in ("snf", "both"):
        solvers["snf"] = snf_solve(system)
    if method in ("brute", "both"):
        solvers["brute"] = brute_force_solve(system, cap)
        if method == "brute" and solvers["brute"].status == "too_large":
            solvers["snf"] = snf_solve(system)
    decided = {k: r for k, r in solvers.items() if r.status != "too_large"}
    statuses = {r.status for r in decided.values()}
    if len(statuses) != 1:
        raise RuntimeError(f"solvers disagree: { {k: r.status for k, r in solvers.items()} }")
    status = statuses.pop()
    lines = [
        f"LHV system: {system.n_equations} equations, {len(system.variables)} variables, mod {system.modulus}",
        f"rhs: ({', '.join(map(str, system.rhs))}) mod {system.modulus}",
    ]
    if overrides:
        lines.append("rhs overrides: " + ", ".join(f"{k}={v}" for k, v in sorted(overrides.items())))
    names = {"snf": "snf", "brute": "brute force"}
    tag = " and ".join(names[k] for k in ("snf", "brute") if k in decided)
    if "brute" in decided:
        tag += f" ({decided['brute'].checked} assignments)"
    if "brute" in solvers and solvers["brute"].status == "too_large":
        lines.append(f"brute force skipped: {system.assignment_count()} assignments exceed cap {cap}")
    sol = {}
    for k, r in solvers.items():
        sol[k] = {
            "status": r.status,
            "witness": witness_to_dict(r.witness),
            "checked": r.checked,
            "witness_valid": None if r.witness is None else system.satisfied_by(r.witness),
        }
    if status == "unsat":
        lines.append(f"Unsat by {tag}: no local hidden-variable model")
    else:
        w = (decided.get("brute") or decided["snf"]).witness
        lines.append(f"Sat by {tag}: local hidden-variable model exists")
        lines.append("witness: " + ", ".join(f"{var_name(v)}={x}" for v, x in w.items()))
    lr = None
    if instance is not None:
        try:
            cond = lr_congruence(instance, system)
        except DerivationError as exc:
            lines.append(f"LR condition: not derivable ({exc})")
        else:
            xi = f"{var_name(cond.xi_vars[0])} - {var_name(cond.xi_vars[1])}"
            lr = {
                "a": cond.a,
                "eta": cond.eta,
                "modulus": cond.modulus,
                "solvable": cond.solvable,
                "witness_xi": cond.witness_xi,
                "xi": xi,
            }
            verdict = f"xi = {cond.witness_xi}" if cond.solvable else "no integer solution"
            lines.append(f"LR condition: {cond.a}*xi = {cond.eta} (mod {cond.modulus}) with xi = {xi}: {verdict}")
    section = {
        "modulus": system.modulus,
        "n_variables": len(system.variables),
        "n_equations": system.n_equations,
        "rhs": list(system.rhs),
        "overrides": {str(k): v for k, v in overrides.items()},
        "solvers": sol,
        "contradiction": status == "unsat",
        "lr_condition": lr,
    }
    return section, lines, status == "unsat"


def cmd_lhv(args) -> int:
    obj = load_any(args.file)
    instance = obj if isinstance(obj, ParadoxInstance) else None
    system = extract_system(obj) if instance is not None else obj
    source = instance_to_dict(obj) if instance is not None else system_to_dict(system)
    overrides = _parse_overrides(args.override_rhs)
    if overrides:
        try:
            system = system.with_rhs(overrides)
        except IndexError as exc:
            raise UsageError(str(exc)) from None
    cap = args.cap if args.cap is not None else default_cap()
    section, lines, unsat = _classical_section(system, args.method, cap, overrides, instance)
    report = _report("lhv", source, classical=section, exit_status=EXIT_OK if unsat else EXIT_SAT)
    return _emit(args, report, lines)


def cmd_analyze(args) -> int:
    p = load_instance(args.file)
    chosen = [args.irreducibility, args.prime_reduction, args.party_removal, args.dimension]
    if not any(chosen):
        args.irreducibility = args.prime_reduction = args.party_removal = args.dimension = True
    full = snf_solve(extract_system(p))
    lines = [f"instance: N={p.n_parties} M={p.n_settings} d={p.dim_factor} D={p.dim}",
             f"full LHV system: {full.status}"]
    out = {}
    if args.irreducibility:
        if full.sat:
            lines.append("irreducibility: skipped, the full system is satisfiable")
        else:
            scan = irreducibility_scan(p, cross_check=not args.no_cross_check, cap=args.cap)
            out["irreducibility"] = {
                "removals": [
                    {
                        "removed": var_name(r.removed),
                        "surviving": list(r.surviving),
                        "solvable": r.solvable,
                        "witness": witness_to_dict(r.witness),
                        "lone_variables": [var_name(v) for v in r.lone_variables],
                        "brute_checked": r.brute_checked,
                    }
                    for r in scan.removals
                ],
                "prime_reductions": [_prime_dict(x) for x in scan.prime_reductions],
                "all_removals_sat": scan.all_removals_sat,
                "irreducible": scan.irreducible,
            }
            for r in scan.removals:
                lone = ", ".join(var_name(v) for v in r.lone_variables) or "none"
                lines.append(f"  remove {var_name(r.removed)}: {'Sat' if r.solvable else 'Unsat'}; lone: {lone}")
            lines.append(f"irreducible: {scan.irreducible}")
    if args.prime_reduction:
        reds = [prime_reduction(p, q) for q in prime_factors(p.n_settings)]
        out["prime_reduction"] = [_prime_dict(x) for x in reds]
        for x in reds:
            lines.append(f"prime reduction q={x.prime}: {'reducible' if x.reducible else 'not reducible'} ({x.reason})")
    if args.party_removal:
        genuine, reps = genuine_in_parties(p)
        out["party_removal"] = {
            "parties": [
                {"party": r.party, "eigen_exponents": list(r.eigenvalues), "common_eigenstate": r.common_eigenstate}
                for r in reps
            ],
            "genuine": genuine,
        }
        for r in reps:
            failing = sum(e is None for e in r.eigenvalues)
            lines.append(f"  drop party {r.party}: {failing}/{len(r.eigenvalues)} reduced composites lose the GHZ eigenstate")
        lines.append(f"genuine in parties: {genuine}")
    if args.dimension:
        dim = dimensional_irreducibility_check(p)
        out["dimension"] = {
            "D": dim.dim,
            "pairs": [
                {
                    "alpha": format_phase(x.alpha),
                    "alpha_prime": format_phase(x.alpha_prime),
                    "parties": list(x.parties),
                    "min_overlap": x.min_overlap,
                    "max_deviation": x.max_deviation,
                    "max_row_sum_error": x.max_row_sum_error,
                }
                for x in dim.pairs
            ],
            "passed": dim.passed,
        }
        low = min((x.min_overlap for x in dim.pairs), default=float("nan"))
        lines.append(f"dimensional irreducibility: {'pass' if dim.passed else 'FAIL'} "
                     f"({len(dim.pairs)} phase pairs, min overlap {low:.6g})")
    status = EXIT_SAT if full.sat else EXIT_OK
    report = _report("analyze", instance_to_dict(p), analyses=out, exit_status=status)
    return _emit(args, report, lines)


def _prime_dict(x) -> dict:
    sub = None
    if x.sub_instance is not None:
        sub = [[format_phase(v) for v in c.phases] for c in x.sub_instance.composites]
    return {"prime": x.prime, "reducible": x.reducible, "reason": x.reason, "sub_composites": sub}


def cmd_demo(args) -> int:
    system = mermin_system()
    section, lines, unsat = _classical_section(system, "both", default_cap(), {})
    lines.insert(0, "Mermin three-qubit argument, outcomes (-1)^x:")
    report = _report("demo", system_to_dict(system), classical=section, exit_status=EXIT_OK if unsat else EXIT_SAT)
    return _emit(args, report, lines)


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")

    parser = argparse.ArgumentParser(prog="ghzparadox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a paradox instance")
    g.add_argument("--parties", "-N", type=int, required=True)
    g.add_argument("--settings", "-M", type=int, required=True)
    g.add_argument("--dim-factor", "-d", type=int, default=1)
    g.add_argument("--pair", help="last party's two settings, e.g. 0/3,1/3")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common], help="check invariance, eigenvalues, concurrency")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    lh = sub.add_parser("lhv", parents=[common], help="decide local hidden-variable solvability")
    lh.add_argument("file", help="instance JSON, system JSON or plain-text equations")
    lh.add_argument("--method", choices=["snf", "brute", "both"], default="both")
    lh.add_argument("--cap", type=int, help="brute-force assignment cap (default from GHZPARADOX_BRUTE_CAP or 1e7)")
    lh.add_argument("--override-rhs", action="append", metavar="INDEX=VALUE",
                    help="replace the rhs of equation INDEX (0-based); repeatable")
    lh.set_defaults(func=cmd_lhv)

    an = sub.add_parser("analyze", parents=[common], help="irreducibility and genuineness analyses")
    an.add_argument("file")
    an.add_argument("--irreducibility", action="store_true")
    an.add_argument("--prime-reduction", action="store_true")
    an.add_argument("--party-removal", action="store_true")
    an.add_argument("--dimension", action="store_true")
    an.add_argument("--cap", type=int)
    an.add_argument("--no-cross-check", action="store_true", help="skip brute-force confirmation of removals")
    an.set_defaults(func=cmd_analyze)

    de = sub.add_parser("demo", parents=[common], help="built-in demonstration systems")
    de.add_argument("name", choices=["mermin"])
    de.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InstanceError, FileFormatError, SystemParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - internal failures map to exit code 1
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
