"""Command-line front end: hh, analyze, extensions, koszul, bound.

All reports are JSON on stdout (or --output).  Exit codes: 0 success,
2 validation error (the report is the error object {stage, witness}),
3 size-guard refusal, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, regular_bimodule, transport_bimodule, with_unital_basis
from .cohomology import hh, hochschild_homology
from .extensions import (
    cocycles_cohomologous,
    enumerate_extension_classes,
    extension_class_from_section,
    is_two_cocycle,
    lift_exists,
    zero_two_cochain,
)
from .io_json import (
    SchemaError,
    dumps,
    load_algebra,
    load_bimodule,
    load_cochain,
    load_extension,
    ring_from_json,
    ring_to_json,
)
from .koszul import (
    finite_koszul_tor,
    free_module,
    graded_koszul_tor,
    hcdim_lower_bound,
    regular_sequence_check,
)
from .matrix import DEFAULT_GUARD, SizeGuardError
from .projectivity import hcdim_scan, is_quasi_free, separability_idempotent
from .rings import RingError


def _invariants_doc(invs) -> dict:
    return {"free_rank": invs.free_rank, "torsion": [str(t) for t in invs.torsion]}


def _matrix_doc(M) -> list:
    return [[M.ring.format(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def _emit(doc, out_path) -> None:
    text = dumps(doc)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _guard_value(args) -> int | None:
    if args.guard is None:
        return DEFAULT_GUARD
    return None if args.guard == 0 else args.guard


# -- subcommands ------------------------------------------------------------------


def cmd_hh(args) -> int:
    A = load_algebra(args.algebra)
    M = load_bimodule(args.bimodule) if args.bimodule else regular_bimodule(A)
    if M.algebra != A:
        raise SchemaError("bimodule", "bimodule algebra differs from the requested algebra")
    guard = _guard_value(args)
    if args.homology:
        invs = hochschild_homology(A, M, args.degree, guard=guard)
        doc = {"degree": args.degree, "homology": True, **_invariants_doc(invs)}
        _emit(doc, args.output)
        return 0
    canonicalized = False
    if args.unnormalized:
        normalized = False
    else:
        if not A.has_unital_basis:
            try:
                A2, P = with_unital_basis(A)
                M = transport_bimodule(M, A2, P)
                A = A2
                canonicalized = True
                normalized = True
            except AlgebraError:
                normalized = False
        else:
            normalized = True
    report = hh(A, M, args.degree, normalized=normalized, guard=guard, representatives=args.representatives)
    doc = {"degree": args.degree, **_invariants_doc(report.invariants)}
    if canonicalized:
        doc["basis_canonicalized"] = True
        doc["canonical_basis"] = list(A.basis_names)
    if args.representatives and report.representatives is not None:
        doc["representatives"] = [_matrix_doc(c.matrix) for c in report.representatives]
    _emit(doc, args.output)
    return 0


def cmd_analyze(args) -> int:
    from .cohomology import center, derivations, inner_derivations, hh1_report

    A = load_algebra(args.algebra)
    M = regular_bimodule(A)
    guard = _guard_value(args)
    doc: dict = {"rank": A.rank, "scalars": ring_to_json(A.ring)}
    doc["center_dim"] = center(A, M).cols
    doc["der_dim"] = derivations(A, M).cols
    doc["inn_dim"] = _rank_of(inner_derivations(A, M))
    h1 = hh1_report(A, M)
    doc["hh1"] = _invariants_doc(h1.invariants)
    e = separability_idempotent(A)
    doc["separability"] = {"separable": e is not None}
    if e is not None:
        doc["separability"]["idempotent"] = [A.ring.format(v) for v in e.col_list(0)]
    qf = is_quasi_free(A, guard=guard)
    doc["quasi_free"] = {"quasi_free": qf.quasi_free}
    if qf.quasi_free:
        doc["quasi_free"]["lifts_checked"] = qf.lifts_checked
    elif qf.witness is not None and hasattr(qf.witness, "matrix"):
        doc["quasi_free"]["witness_cocycle"] = _matrix_doc(qf.witness.matrix)
    scan = hcdim_scan(A, args.cap, guard=guard)
    doc["hcdim"] = {
        "proved_upper": scan.upper_text,
        "witnessed_lower": scan.witnessed_lower,
        "witnesses": [{"degree": n, "module": name} for n, name in scan.witnesses],
        "notes": list(scan.notes),
    }
    _emit(doc, args.output)
    return 0


def _rank_of(M) -> int:
    from .matrix import rank

    return rank(M)


def cmd_extensions(args) -> int:
    A = load_algebra(args.algebra)
    M = load_bimodule(args.bimodule) if args.bimodule else regular_bimodule(A)
    if args.enumerate:
        reps = enumerate_extension_classes(A, M)
        doc = {
            "classes": len(reps),
            "representatives": [_matrix_doc(r.matrix) for r in reps],
        }
    elif args.cocycle_class:
        B = load_cochain(args.cocycle_class)
        ok, witness = is_two_cocycle(B)
        doc = {"cocycle": ok}
        if not ok:
            doc["witness"] = list(witness)
        else:
            zeta = cocycles_cohomologous(B, zero_two_cochain(B.algebra, B.bimodule))
            doc["cohomologous_to_zero"] = zeta is not None
            if zeta is not None:
                doc["zeta"] = _matrix_doc(zeta)
    else:
        E = load_extension(args.lift)
        Bs = extension_class_from_section(E)
        section = lift_exists(E)
        doc = {"class": _matrix_doc(Bs.matrix), "lift": section is not None}
        if section is not None:
            doc["section"] = _matrix_doc(section)
    _emit(doc, args.output)
    return 0


def cmd_koszul(args) -> int:
    guard = _guard_value(args)
    if args.finite:
        instance = json.loads(Path(args.finite).read_text())
        base = Path(args.finite).parent
        from .io_json import _resolve_algebra, presented_module_from_json

        A = _resolve_algebra(instance.get("algebra"), base)
        if "module" in instance and instance["module"] != "self":
            Mod = presented_module_from_json(dict(instance["module"], algebra=instance.get("algebra")), base)
        else:
            Mod = free_module(A)
        seq = [[A.ring.parse(s) for s in x] for x in instance.get("sequence", [])]
        reg = regular_sequence_check(free_module(A), seq)
        doc = {"regular": reg.ok}
        if not reg.ok:
            doc["failing_index"] = reg.failing_index
            doc["reason"] = reg.reason
        else:
            report = finite_koszul_tor(A, seq, Mod, guard=guard)
            doc["tor"] = [_invariants_doc(t) for t in report.tor]
            doc["fd_certificate"] = report.fd_certificate
    else:
        ring = ring_from_json(args.ring if not args.ring.startswith("{") else json.loads(args.ring))
        report = graded_koszul_tor(args.vars, ring, args.cap, guard=guard)
        doc = {
            "variables": report.variables,
            "cap": report.cap,
            "tor": [
                dict(_invariants_doc(t), degree=i, by_internal_degree={str(e): _invariants_doc(h) for e, h in report.by_degree[i]})
                for i, t in enumerate(report.tor)
            ],
            "fd_certificate": report.fd_certificate,
        }
    _emit(doc, args.output)
    return 0


def cmd_bound(args) -> int:
    report = hcdim_lower_bound(args.fd, args.Dk, args.fdk)
    doc = {
        "fd": report.fd,
        "Dk": report.base_dim,
        "fdk": report.fd_base,
        "hcdim_lower_bound": report.bound,
        "not_quasi_free": report.not_quasi_free,
        "inequality": report.inequality,
        "verdict": f"HCdim >= {report.bound}"
        + ("; not quasi-free" if report.not_quasi_free else ""),
    }
    _emit(doc, args.output)
    return 0


def cmd_fixtures(args) -> int:
    from importlib import resources

    root = resources.files("hochschild") / "fixtures"
    names = sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))
    if args.name:
        if args.name not in names:
            raise SchemaError("fixtures", f"unknown fixture {args.name}; try --list")
        sys.stdout.write(str(root / args.name) + "\n")
    else:
        for n in names:
            sys.stdout.write(n + "\n")
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hochschild",
        description="Exact Hochschild cohomology, extensions and Koszul certificates",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="write the JSON report here instead of stdout")
        sp.add_argument("--guard", type=int, help="matrix-entry guard (0 = unlimited)")

    hhp = sub.add_parser("hh", help="Hochschild cohomology/homology groups")
    hhp.add_argument("algebra")
    hhp.add_argument("--bimodule", help="coefficient bimodule file (default: A itself)")
    hhp.add_argument("--degree", type=int, required=True)
    hhp.add_argument("--unnormalized", action="store_true", help="force the raw bar cocomplex")
    hhp.add_argument("--homology", action="store_true", help="compute HH_n instead of HH^n")
    hhp.add_argument("--representatives", action="store_true", help="include representative cocycles")
    common(hhp)
    hhp.set_defaults(func=cmd_hh)

    an = sub.add_parser("analyze", help="center, derivations, separability, quasi-freeness, HCdim scan")
    an.add_argument("algebra")
    an.add_argument("--cap", type=int, default=2, help="syzygy/probe depth for the HCdim scan")
    common(an)
    an.set_defaults(func=cmd_analyze)

    ex = sub.add_parser("extensions", help="square-zero extension classes and lifting")
    ex.add_argument("algebra")
    ex.add_argument("bimodule", nargs="?", help="coefficient bimodule file (default: A itself)")
    g = ex.add_mutually_exclusive_group(required=True)
    g.add_argument("--enumerate", action="store_true", help="enumerate all classes (finite fields)")
    g.add_argument("--class", dest="cocycle_class", help="check a cocycle file and test triviality")
    g.add_argument("--lift", help="decide lifting of an extension file")
    common(ex)
    ex.set_defaults(func=cmd_extensions)

    ko = sub.add_parser("koszul", help="Koszul Tor tables and flat-dimension certificates")
    ko.add_argument("--vars", type=int, help="number of polynomial variables (graded route)")
    ko.add_argument("--ring", default="Z", help='base ring: Z, Q or {"Fp": p}')
    ko.add_argument("--cap", type=int, default=4, help="internal degree cap (graded route)")
    ko.add_argument("--finite", help="finite-rank instance file: {algebra, sequence, module}")
    common(ko)
    ko.set_defaults(func=cmd_koszul)

    bo = sub.add_parser("bound", help="assemble the HCdim lower bound fd - D(k) - fd_k")
    bo.add_argument("--fd", type=int, required=True, help="certified flat dimension (or Krull input)")
    bo.add_argument("--Dk", type=int, required=True, help="global dimension of the base ring")
    bo.add_argument("--fdk", type=int, default=0, help="flat dimension of the algebra over the base")
    common(bo)
    bo.set_defaults(func=cmd_bound)

    fx = sub.add_parser("fixtures", help="list bundled fixture files or print a path")
    fx.add_argument("name", nargs="?", help="fixture file name to locate")
    fx.add_argument("--output", help=argparse.SUPPRESS)
    fx.add_argument("--guard", type=int, help=argparse.SUPPRESS)
    fx.set_defaults(func=cmd_fixtures)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        _emit({"error": {"stage": exc.stage, "witness": exc.witness}}, getattr(args, "output", None))
        return 2
    except SizeGuardError as exc:
        _emit({"error": {"stage": "size-guard", "witness": str(exc)}}, getattr(args, "output", None))
        return 3
    except (AlgebraError, RingError, ValueError) as exc:
        _emit({"error": {"stage": "validation", "witness": str(exc)}}, getattr(args, "output", None))
        return 2
    except Exception as exc:  # internal failure: report and exit 4
        _emit({"error": {"stage": "internal", "witness": f"{type(exc).__name__}: {exc}"}}, getattr(args, "output", None))
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
