"""``covhom`` command line.

Exit codes: 0 success, 1 usage error, 2 a computed value disagrees with its
closed form (the report is still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from . import formulas
from .alexander import BadPrime, build_alexander_matrix, crowell_ranks, homology_space
from .cover import CapExceeded, Cover, CoverSpec, Family, Kind
from .linalg import write_matrix

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for key, value in obj.items():
            out += _flatten(value, f"{prefix}.{key}" if prefix else str(key))
        return out
    if isinstance(obj, list):
        return [(prefix, json.dumps(obj))]
    return [(prefix, str(obj))]


def _emit(obj: dict, fmt: str, table: tuple[list[str], list[list[Any]]] | None = None) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table is not None:
            writer.writerow(table[0])
            writer.writerows(table[1])
        else:
            writer.writerow(["key", "value"])
            writer.writerows(_flatten(obj))
        return buf.getvalue()
    lines = [f"{key}: {value}" for key, value in _flatten(obj)]
    return "\n".join(lines) + "\n"


def _envelope(command: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def _spec(args) -> CoverSpec:
    if not 3 <= args.s <= 6:
        raise UsageError(f"--s must lie in [3, 6], got {args.s}")
    if not 2 <= args.k <= 8:
        raise UsageError(f"--k must lie in [2, 8], got {args.k}")
    spec = CoverSpec(args.s, args.k, Kind(getattr(args, "kind", "full")))
    spec.check_cap(args.force)
    return spec


def cmd_schreier(args):
    spec = _spec(args)
    cover = Cover(spec, force=args.force)
    name = "schreier_count_full" if spec.kind is Kind.FULL else "schreier_count_cyclic"
    expected = formulas.expected(name, spec.s, spec.k)
    gens = [{"t": str(g.t), "x": g.x, "word": str(g.value), "family": g.family_name} for g in cover.generators]
    ok = (len(gens) == expected and cover.family_sizes() == cover.expected_family_sizes()
          and all(g.family is not Family.OTHER for g in cover.generators))
    body = {
        "s": spec.s, "k": spec.k, "kind": spec.kind.value,
        "generators": gens,
        "count": len(gens),
        "expected_count": expected,
        "family_sizes": cover.family_sizes(),
        "expected_family_sizes": cover.expected_family_sizes(),
        "ok": ok,
    }
    table = (["t", "x", "word", "family"], [[g["t"], g["x"], g["word"], g["family"]] for g in gens])
    return _envelope("schreier", body), table, ok


def cmd_homology(args):
    spec = _spec(args)
    report = crowell_ranks(spec, force=args.force)
    body = report.to_dict()
    ok = report.ok
    if args.prime is not None:
        dim = homology_space(spec, args.prime, force=args.force).dimension
        body["mod_p"] = {"prime": args.prime, "dimension": dim, "matches_rank_H1": dim == report.rank_H1}
        ok &= dim == report.rank_H1
    if args.dump_matrix:
        write_matrix(args.dump_matrix, build_alexander_matrix(spec, force=args.force).expand())
        body["dumped_matrix"] = args.dump_matrix
    body["ok"] = ok
    return _envelope("homology", body), None, ok


def cmd_characters(args):
    from .characters import character_rows, verification_primes

    args.kind = "full"
    spec = _spec(args)
    p = args.prime or verification_primes(spec, 1)[0]
    rows = character_rows(spec, p)
    report = crowell_ranks(spec, force=args.force)
    total = sum(r.index.C for r in rows)
    ok = all(r.ok for r in rows) and total == report.rank_H1 and report.formulas_ok
    header = [f"i{j}" for j in range(1, spec.s)] + [f"i{spec.s}", "z", "c", "C", "verified_dim"]
    body = {
        "s": spec.s, "k": spec.k, "prime": p,
        "columns": header,
        "rows": [r.as_list() for r in rows],
        "sum_C": total,
        "rank_H1": report.rank_H1,
        "ok": ok,
    }
    return _envelope("characters", body), (header, [r.as_list() for r in rows]), ok


def cmd_fermat(args):
    from .fermat import (
        SIGMA1, SIGMA2, braid_action_matrices, braid_closed_form_checks, braid_relation_holds,
        closed_homology_basis, unimodular,
    )

    n = args.n
    if not 2 <= n <= 8:
        raise UsageError(f"--n must lie in [2, 8], got {n}")
    basis = closed_homology_basis(n)
    expected = formulas.expected("fermat_basis", n, 0)
    ok = len(basis.classes) == expected
    body: dict[str, Any] = {
        "n": n,
        "genus": basis.genus,
        "basis": [f"[b,a]^(alpha^{i} beta^{j})" for i, j in basis.labels],
        "basis_size": len(basis.classes),
        "expected_basis_size": expected,
    }
    if args.action:
        if n < 3:
            raise UsageError("--action needs n >= 3")
        M1, M2 = braid_action_matrices(n)
        checks = braid_closed_form_checks(n)
        braid = braid_relation_holds(M1, M2)
        body.update({
            "sigma1": M1.tolist(),
            "sigma2": M2.tolist(),
            "sigma1_abelian": SIGMA1.abelian_matrix().tolist(),
            "sigma2_abelian": SIGMA2.abelian_matrix().tolist(),
            "invertible": unimodular(M1) and unimodular(M2),
            "braid_relation_holds": braid,
            "closed_form_checks": len(checks),
            "closed_form_failures": [f"{c.name}: {c.detail}" for c in checks if not c.ok],
        })
        ok &= braid and not body["closed_form_failures"]
    body["ok"] = ok
    return _envelope("fermat", body), None, ok


def cmd_magnus(args):
    from .magnus import commutative_image, theta
    from .words import parse_word

    if not 1 <= args.degree <= 8:
        raise UsageError(f"--degree must lie in [1, 8], got {args.degree}")
    try:
        w = parse_word(args.word, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = theta(w, args.degree)
    ok = t.constant == 1 and t.linear_part() == w.exponent_sums()
    body = {
        "word": str(w),
        "rank": w.rank,
        "degree": args.degree,
        "series": str(t),
        "terms": [{"index": list(m), "coefficient": c} for m, c in t.terms()],
        "commutative_image": str(commutative_image(t)),
        "linear_part": list(t.linear_part()),
        "ok": ok,
    }
    table = (["index", "coefficient"], [[" ".join(map(str, m)), c] for m, c in t.terms()])
    return _envelope("magnus", body), table, ok


def cmd_reduce(args):
    from .burau import verify_reduction

    args.kind = "full"
    spec = _spec(args)
    report = verify_reduction(spec.s, spec.k, prime=args.prime, force=args.force)
    return _envelope("reduce", report.to_dict()), None, report.ok


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all(args.seed)
    ok = all(r.passed for r in results)
    body = {"seed": args.seed, "criteria": [r.to_dict() for r in results], "ok": ok}
    if args.format == "text":
        lines = [r.line() for r in results]
        for r in results:
            lines += [f"    {f}" for f in r.failures]
        return None, "\n".join(lines) + "\n", ok
    table = (["criterion", "point", "passed"],
             [[r.number, p, v] for r in results for p, v in r.points.items()])
    return _envelope("selftest", body), table, ok


def build_parser() -> argparse.ArgumentParser:
    from .acceptance import DEFAULT_SEED

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None,
                        help="output format (json; selftest defaults to text)")
    common.add_argument("--force", action="store_true", help="ignore the |H| cap")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)

    def cover_args(p, kind=True):
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if kind:
            p.add_argument("--kind", choices=[k.value for k in Kind], default="full")

    parser = _Parser(prog="covhom", description="Homology of abelian covers of the punctured sphere")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("schreier", parents=[common], help="Schreier generators of a cover")
    cover_args(p)
    p.set_defaults(func=cmd_schreier)

    p = sub.add_parser("homology", parents=[common], help="Alexander ranks, H_1 and genus")
    cover_args(p)
    p.add_argument("--prime", type=int)
    p.add_argument("--dump-matrix", metavar="PATH")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("characters", parents=[common], help="character decomposition of H_1")
    cover_args(p, kind=False)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("fermat", parents=[common], help="Fermat curve basis and braid action")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--action", action="store_true")
    p.set_defaults(func=cmd_fermat)

    p = sub.add_parser("magnus", parents=[common], help="truncated Magnus expansion of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_magnus)

    p = sub.add_parser("reduce", parents=[common], help="full to cyclic collapse")
    cover_args(p, kind=False)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance grid")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        # parent actions are shared, so the per-command default is applied here
        args.format = "text" if args.command == "selftest" else "json"
    try:
        if args.inject_fault:
            formulas.inject_fault(args.inject_fault)
        body, table, ok = args.func(args)
    except (UsageError, CapExceeded, BadPrime, KeyError, ValueError) as exc:
        print(f"covhom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        formulas.clear_faults()
    if isinstance(table, str):
        sys.stdout.write(table)
    else:
        sys.stdout.write(_emit(body, args.format, table))
    return EXIT_OK if ok else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
