"""Command-line front end.

Inputs are either catalog ids (``g1n1:n=7``, ``R7_g1:n=5,b2=2``) or paths to
algebra documents.  Every command prints a report with the command echo, a
content hash of the input algebra, the result payload and a discrepancy list.
Exit codes: 0 when every checked claim holds, 1 when a claim or identity
fails, 2 on parse or flag errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import algebra as alg
from . import catalog, cohomology as coh, derivations as der, gradings
from .document import DocumentError, content_hash, dumps, load

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# inputs and reports


def resolve_input(text: str) -> tuple[alg.Algebra, catalog.CatalogId | None]:
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        try:
            return load(path), None
        except OSError as e:
            raise UsageError(f"cannot read {text}: {e.strerror}") from None
        except (DocumentError, ValueError, IndexError) as e:
            raise UsageError(f"{text}: {e}") from None
    try:
        cid = catalog.CatalogId.parse(text)
        return catalog.build(cid), cid
    except (catalog.CatalogError, ValueError) as e:
        raise UsageError(str(e)) from None


def make_report(argv: list[str], fingerprint: str, result: dict, discrepancies: list) -> dict:
    return {
        "command": " ".join(argv),
        "input_fingerprint": fingerprint,
        "result": result,
        "discrepancies": discrepancies,
        "status": "fail" if discrepancies else "ok",
    }


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


def render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else '[]'}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                sub = render_text(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "structured":
        out.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    else:
        out.write("\n".join(render_text(report)) + "\n")


def _vec(a: alg.Algebra, v) -> str:
    if not isinstance(v, dict):
        v = {k: x for k, x in enumerate(v) if x}
    return alg.format_vector(v, a.labels)


# ---------------------------------------------------------------------------
# commands; each returns (result payload, discrepancies)


def cmd_check(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    fp = alg.fingerprint(a)
    result = {"name": a.name or str(cid or ""), **fp}
    disc = []
    fail = alg.first_leibniz_failure(a)
    if fail is not None:
        i, j, k, v = fail
        disc.append({"kind": "leibniz_identity", "triple": [a.labels[i], a.labels[j], a.labels[k]],
                     "residual": _vec(a, v)})
    if cid is not None and cid.family in catalog.NILPOTENT_FAMILIES and fp["nil_index"] != a.dim - 1:
        disc.append({"kind": "quasi_filiform", "claimed_nil_index": a.dim - 1, "computed": fp["nil_index"]})
    return result, disc


def cmd_derivations(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    space = der.derivation_space(a)
    inner = der.inner_derivations(a)
    result = {
        "derivation_dim": space.dim,
        "inner_dim": inner.dim,
        "outer_dim": space.dim - inner.dim,
        "right_multiplications_are_derivations": all(
            der.is_derivation(a, der.right_multiplication(a, i)) for i in range(a.dim)),
    }
    disc = []
    if args.basis:
        result["basis"] = [der.format_map(d, a.labels) for d in space.basis]
    if cid is not None and cid.family in catalog.NILPOTENT_FAMILIES:
        rep = der.verify_derivation_parametrization(cid.family, cid.n)
        result["parametrization"] = {"parameters": rep.parameter_count, "span_dim": rep.parametric_span_dim,
                                     "matches": rep.passed}
        disc += rep.discrepancies()
    return result, disc


def cmd_cohomology(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    rep = coh.cohomology(args.theory, a, args.degree, representatives=args.representatives)
    result = rep.as_dict()
    if args.representatives:
        result["representatives"] = [coh._format_cochain(r, a.labels) for r in rep.representative_basis]
    disc = []
    claims = catalog.cohomology_claims(cid) if cid is not None else {}
    claimed = claims.get((args.theory, args.degree))
    if claimed is not None:
        result["claimed_dim_H"] = claimed
        if claimed != rep.dim_H:
            disc.append({"kind": "dimension", "theory": args.theory, "degree": args.degree,
                         "claimed": claimed, "computed": rep.dim_H})
    if args.theory == "leibniz" and args.degree == 2 and rep.dim_H == 0:
        result["rigid"] = True  # HL^2 = 0 forces rigidity
    return result, disc


def cmd_grading(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    bound = args.bound if args.bound is not None else 2 * a.dim
    g = gradings.max_length_search(a, bound)
    disc = []
    if g is None:
        result = {"bound": bound, "found": False}
    else:
        length, connected = gradings.gradation_length(g)
        result = {"bound": bound, "found": True, "length": length, "connected": connected,
                  "maximum_length": length == a.dim,
                  "weights": {lab: w for lab, w in zip(a.labels, g.weights)}}
    if cid is not None and cid.family in catalog.NILPOTENT_FAMILIES and not result.get("maximum_length"):
        disc.append({"kind": "maximum_length", "claimed": a.dim, "found": result.get("length")})
    return result, disc


def _parse_indices(a: alg.Algebra, text: str) -> list[int]:
    out = []
    for lab in filter(None, (t.strip() for t in text.split(","))):
        if lab not in a.labels:
            raise UsageError(f"unknown basis label {lab!r}")
        out.append(a.labels.index(lab))
    return out


def cmd_nilradical(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    if args.span:
        idx = _parse_indices(a, args.span)
    elif cid is not None:
        idx = list(range(catalog.nilradical_dim(cid)))
    else:
        raise UsageError("--span is required for document inputs")
    rep = der.verify_nilradical(a, idx, trials=args.trials, seed=args.seed)
    result = {"span": [a.labels[i] for i in idx], "checks": rep.checks(), "certified": rep.passed}
    disc = []
    if not rep.passed:
        disc.append({"kind": "nilradical_certificate", "failed_check": rep.first_failure(),
                     "details": rep.details})
    return result, disc


def cmd_export(a: alg.Algebra, cid, args) -> tuple[dict, list]:
    text = dumps(a)
    if args.output:
        Path(args.output).write_text(text)
        return {"written": args.output}, []
    return {"document": json.loads(text)}, []


# ---------------------------------------------------------------------------
# reproduce


def _parse_ns(text: str) -> tuple[int, ...]:
    try:
        ns = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--n expects a comma-separated list of integers, got {text!r}") from None
    if not ns:
        raise UsageError("--n needs at least one value")
    return ns


def reproduce(ns: tuple[int, ...], seed: int = 0, trials: int = 2) -> tuple[dict, list]:
    """Recheck the classification claims on the instances with nilradical dims in ``ns``."""
    suite = catalog.default_suite(ns)
    sections: dict[str, dict] = {}
    disc: list[dict] = []

    def record(section, key, ok, extra=None):
        sections.setdefault(section, {})[key] = "pass" if ok else "FAIL"
        if not ok:
            disc.append({"section": section, "instance": key, **(extra or {})})

    for e in suite:
        a = e.build()
        key = str(e.id)
        fail = alg.first_leibniz_failure(a)
        ok = fail is None and (alg.is_lie(a) or e.kind != "nilpotent")
        record("identities", key, ok, {"triple": None if fail is None else [a.labels[t] for t in fail[:3]]})
        if e.kind == "nilpotent":
            ni = alg.nil_index(a)
            record("quasi_filiform", key, ni == a.dim - 1, {"nil_index": ni})
            g = gradings.max_length_search(a, 2 * a.dim)
            length = gradings.gradation_length(g)[0] if g else None
            record("maximum_length", key, length == a.dim, {"length": length})
            rep = der.verify_derivation_parametrization(e.id.family, e.id.n)
            record("derivation_parametrization", key, rep.passed, {"details": rep.discrepancies()})
        else:
            rep = der.verify_nilradical(a, e.nilradical, seed=seed)
            record("nilradical", key, rep.passed, {"failed_check": rep.first_failure()})

    for e in suite:
        claims = catalog.cohomology_claims(e.id)
        if not claims:
            continue
        a = e.build()
        key = str(e.id)
        if e.id.family in coh.REPRESENTATIVE_FAMILIES:
            r = coh.verify_cocycle_representatives(e.id)
            record("cocycle_representatives", key, r.passed, {"dim_H2": r.dim_H2, "details": r.discrepancies()})
            hl2 = coh.cohomology("leibniz", a, 2, representatives=False).dim_H
            record("leibniz_H2", key, hl2 == claims[("leibniz", 2)], {"computed": hl2})
            continue
        for (theory, degree), want in sorted(claims.items()):
            got = coh.cohomology(theory, a, degree, representatives=False).dim_H
            record("cohomology", f"{key} {theory} H{degree}", got == want, {"claimed": want, "computed": got})
        n = len(e.nilradical)
        q = [i for i in range(a.dim) if i not in e.nilradical]
        hs = coh.hochschild_serre_h2(a, e.nilradical, q)
        record("hochschild_serre", key, hs == claims[("lie", 2)], {"assembled": hs})

    rng = random.Random(seed)
    for e in suite:
        if e.dim > 8 or trials <= 0:
            continue
        a = e.build()
        base = _invariants(a)
        ok = True
        for _ in range(trials):
            b = alg.change_basis(a, alg.random_invertible(a.dim, rng))
            ok = ok and _invariants(b) == base
        record("basis_invariance", str(e.id), ok)

    summary = {s: f"{sum(v == 'pass' for v in d.values())}/{len(d)}" for s, d in sections.items()}
    return {"ns": list(ns), "seed": seed, "summary": summary, "checks": sections}, disc


def _invariants(a: alg.Algebra) -> dict:
    fp = alg.fingerprint(a)
    fp["derivation_dim"] = der.derivation_space(a).dim
    return fp


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz-lab", description="Exact checks on Leibniz and Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, helptext):
        p = sub.add_parser(name, help=helptext)
        if name != "reproduce":
            p.add_argument("input", help="catalog id (e.g. g1n1:n=7) or algebra document path")
        _add_common(p)
        return p

    add("check", "identity status, series and annihilators")
    p = add("derivations", "derivation algebra and published parametrization")
    p.add_argument("--basis", action="store_true", help="list a basis of derivations")
    p = add("cohomology", "cohomology dimension in one degree")
    p.add_argument("--degree", type=int, choices=coh.SUPPORTED_DEGREES, required=True)
    p.add_argument("--theory", choices=coh.THEORIES, default="leibniz")
    p.add_argument("--representatives", action="store_true")
    p = add("grading", "search for a connected gradation of maximum length")
    p.add_argument("--bound", type=int, default=None, help="weight bound (default 2*dim)")
    p = add("nilradical", "certify a nilradical candidate")
    p.add_argument("--span", help="comma-separated basis labels (default e1..en for catalog ids)")
    p.add_argument("--trials", type=int, default=50)
    p = add("export", "write the algebra document")
    p.add_argument("--output", "-o")
    p = add("reproduce", "recheck the classification claims")
    p.add_argument("--n", default="5,7", help="nilradical dimensions, e.g. 5,7")
    p.add_argument("--trials", type=int, default=2, help="random basis changes per instance")
    return parser


COMMANDS: dict[str, Callable] = {
    "check": cmd_check,
    "derivations": cmd_derivations,
    "cohomology": cmd_cohomology,
    "grading": cmd_grading,
    "nilradical": cmd_nilradical,
    "export": cmd_export,
}


def main(argv: list[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "reproduce":
            if args.trials < 0:
                raise UsageError("--trials must be nonnegative")
            ns = _parse_ns(args.n)
            result, disc = reproduce(ns, args.seed, args.trials)
            fp = hashlib.sha256(json.dumps({"ns": ns, "seed": args.seed}).encode()).hexdigest()
        else:
            if getattr(args, "bound", None) is not None and args.bound < 1:
                raise UsageError("--bound must be at least 1")
            a, cid = resolve_input(args.input)
            result, disc = COMMANDS[args.command](a, cid, args)
            fp = content_hash(a)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (coh.CohomologyError, gradings.GradationError, catalog.CatalogError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit(make_report(["leibniz-lab", *argv], fp, result, disc), args.format, out)
    return EXIT_FAIL if disc else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
