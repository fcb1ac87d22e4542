"""Command-line surface: tables, classification runs, smoothness checks,
spectra, and golden-file regeneration.

Exit codes: 0 success, 2 usage or input error, 3 partial classification,
4 certified-singular witness, 5 inconclusive smoothness.
"""

import argparse
import json
import sys
from pathlib import Path

from .admissibility import admissible_primes, is_prime, max_admissible_prime
from .classify import RunConfig, classify_with_audit
from .forms import form_from_json
from .hodge import is_stable_under, klein_tangent_spectrum
from .signatures import BudgetExceededError
from .smoothness import (
    DEFAULT_MODULI,
    certify_smooth_over_Q,
    singular_point_from_lemma_base,
)

GOLDEN_DIR = Path(__file__).parent / "golden"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARTIAL = 3
EXIT_SINGULAR = 4
EXIT_INCONCLUSIVE = 5


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(out, text: str):
    out.write(text)


# ---------------------------------------------------------------------------
# admissible


def _parse_range(spec: str):
    lo, _, hi = spec.partition("..")
    return int(lo), int(hi)


def cmd_admissible(args, out) -> int:
    if args.range:
        lo, hi = _parse_range(args.range)
        if lo < 2 or hi < lo:
            raise SystemExit(EXIT_USAGE)
        ns = range(lo, hi + 1)
    else:
        if args.n is None or args.n < 2:
            raise SystemExit(EXIT_USAGE)
        ns = [args.n]
    rows = []
    for n in ns:
        if args.max_only:
            rows.append({"n": n, "max_prime": max_admissible_prime(n)})
        else:
            rows.append({"n": n, "admissible_primes": list(admissible_primes(n))})
    if args.format == "json":
        _emit(out, _dump(rows))
    elif args.format == "csv":
        for r in rows:
            if args.max_only:
                _emit(out, f"{r['n']},{r['max_prime']}\n")
            else:
                primes = " ".join(str(p) for p in r["admissible_primes"])
                _emit(out, f"{r['n']},{primes}\n")
    else:
        if args.max_only:
            _emit(out, "| n | max prime |\n|---|---|\n")
            for r in rows:
                _emit(out, f"| {r['n']} | {r['max_prime']} |\n")
        else:
            _emit(out, "| n | admissible primes |\n|---|---|\n")
            for r in rows:
                primes = ", ".join(str(p) for p in r["admissible_primes"])
                _emit(out, f"| {r['n']} | {primes} |\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify


def _sigma_str(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _classification_document(n: int, primes, config: RunConfig):
    families, rejected, notes = [], [], []
    partial = False
    for p in primes:
        try:
            acc, rej, why = classify_with_audit(n, p, config)
        except BudgetExceededError as exc:
            partial = True
            notes.append(f"p={p}: incomplete: {exc}")
            continue
        families.extend(r.to_json() for r in acc)
        rejected.extend(r.to_json() for r in rej)
        notes.extend(why)
    doc = {
        "n": n,
        "families": families,
        "rejected": rejected,
        "notes": notes,
        "seed": config.seed,
        "trials": config.trials,
    }
    return doc, partial


def _render_classification(doc, fmt: str, out):
    if fmt == "json":
        _emit(out, _dump(doc))
        return
    if fmt == "csv":
        _emit(out, "label,p,n,sigma,weight,dim_E,dim_norm,D\n")
        for r in doc["families"]:
            _emit(
                out,
                f"{r['label'] or ''},{r['p']},{r['n']},"
                f"\"{_sigma_str(r['sigma'])}\",{r['weight']},"
                f"{r['dim_E']},{r['dim_norm']},{r['D']}\n",
            )
        return
    _emit(out, "| label | p | sigma | weight | dim_E | dim_norm | D |\n")
    _emit(out, "|---|---|---|---|---|---|---|\n")
    for r in doc["families"]:
        _emit(
            out,
            f"| {r['label'] or ''} | {r['p']} | {_sigma_str(r['sigma'])} "
            f"| {r['weight']} | {r['dim_E']} | {r['dim_norm']} | {r['D']} |\n",
        )
    for note in doc["notes"]:
        _emit(out, f"\nnote: {note}\n")


def cmd_classify(args, out) -> int:
    if args.n < 2:
        raise SystemExit(EXIT_USAGE)
    config = RunConfig(
        strategy=args.strategy,
        trials=args.trials,
        seed=args.seed,
        moduli=tuple(args.moduli) if args.moduli else DEFAULT_MODULI,
        budget=args.budget,
    )
    if args.p is not None:
        if not is_prime(args.p):
            raise SystemExit(EXIT_USAGE)
        primes = [args.p]
    else:
        primes = list(admissible_primes(args.n))
    doc, partial = _classification_document(args.n, primes, config)
    _render_classification(doc, args.format, out)
    return EXIT_PARTIAL if partial else EXIT_OK


# ---------------------------------------------------------------------------
# smooth


def cmd_smooth(args, out) -> int:
    try:
        payload = json.loads(Path(args.form).read_text())
        F = form_from_json(payload)
    except (OSError, ValueError, TypeError, KeyError) as exc:
        _emit(out, f"error: {exc}\n")
        return EXIT_USAGE
    if not F:
        _emit(out, "error: zero form\n")
        return EXIT_USAGE
    witness = singular_point_from_lemma_base(F)
    if witness is not None:
        _emit(out, _dump({"singular_witness": witness.to_json()}))
        return EXIT_SINGULAR
    moduli = tuple(args.moduli) if args.moduli else DEFAULT_MODULI
    cert = certify_smooth_over_Q(F, moduli)
    if cert is None:
        _emit(out, _dump({"result": "inconclusive", "moduli": list(moduli)}))
        return EXIT_INCONCLUSIVE
    _emit(out, _dump({"certificate": cert.to_json()}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(args, out) -> int:
    if args.klein not in (3, 5):
        raise SystemExit(EXIT_USAGE)
    spec = klein_tangent_spectrum(args.klein)
    doc = spec.to_json()
    if args.klein == 5:
        doc["stable_under"] = {"m": 11, "stable": is_stable_under(spec, 11)}
    else:
        doc["stable_under"] = None
    _emit(out, _dump(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# golden files


def _golden_documents():
    yield "admissible_tables.json", _dump(
        {
            "admissible_primes": {
                str(n): list(admissible_primes(n)) for n in range(2, 11)
            },
            "max_admissible_prime": {
                str(n): max_admissible_prime(n) for n in range(11, 21)
            },
        }
    )
    for n in (2, 3, 4):
        config = RunConfig()
        doc, _ = _classification_document(n, list(admissible_primes(n)), config)
        yield f"classify_n{n}.json", _dump(doc)


def regen_golden(out) -> int:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, text in _golden_documents():
        (GOLDEN_DIR / name).write_text(text)
        _emit(out, f"wrote {GOLDEN_DIR / name}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubiclass",
        description="Prime-order automorphisms of smooth cubic n-folds: "
        "admissible primes, family classification, certified smoothness, "
        "tangent-space spectra.",
    )
    parser.add_argument(
        "--regen-golden",
        action="store_true",
        help="rewrite the in-repo golden files and exit",
    )
    sub = parser.add_subparsers(dest="command")

    pa = sub.add_parser("admissible", help="admissible prime tables")
    pa.add_argument("--n", type=int)
    pa.add_argument("--range", help="inclusive range like 11..20")
    pa.add_argument("--max-only", action="store_true")
    pa.add_argument("--format", choices=("json", "csv", "md"), default="md")

    pc = sub.add_parser("classify", help="classify families for dimension n")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--p", type=int)
    pc.add_argument(
        "--strategy",
        choices=("auto", "exhaustive", "chain_pruned"),
        default="auto",
    )
    pc.add_argument("--trials", type=int, default=20)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--budget", type=int, default=10**8)
    pc.add_argument("--moduli", type=int, nargs="*")
    pc.add_argument("--format", choices=("json", "csv", "md"), default="json")

    ps = sub.add_parser("smooth", help="certify a cubic form file")
    ps.add_argument("form", help="JSON form file")
    ps.add_argument("--moduli", type=int, nargs="*")

    pq = sub.add_parser("spectrum", help="Klein tangent-space spectrum")
    pq.add_argument("--klein", type=int, required=True)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.regen_golden:
            return regen_golden(out)
        handlers = {
            "admissible": cmd_admissible,
            "classify": cmd_classify,
            "smooth": cmd_smooth,
            "spectrum": cmd_spectrum,
        }
        if args.command is None:
            parser.print_usage()
            return EXIT_USAGE
        return handlers[args.command](args, out)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    except ValueError as exc:
        _emit(out, f"error: {exc}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
