"""Command-line interface.

Exit codes: 0 success, 1 negative or inconclusive verdict (NOT-FOUND,
CAP-EXCEEDED, EXHAUSTED, a false predicate, a failed check), 2 usage or
parse errors.  All outputs are deterministic byte-for-byte for identical
inputs and flags; timings appear in json output only with --timings.

The environment variable FORGE_SEED is reserved and ignored: every
algorithm here is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .coset import CapExceeded, Finite, coset_table, enumerate_cosets
from .corpus import all_entries, check_entry, higman_presentation
from .dual import align, dualize, write_bundle
from .intmatrix import (
    exponent_matrix,
    invariant_factors,
    is_perfect_presentation,
    matrix_from_text,
    matrix_to_text,
    smith_normal_form,
)
from .lemma2 import presentation_from_matrix
from .moves import (
    CertificateError,
    format_certificate,
    parse_certificate,
    replay_trace,
)
from .presentation import (
    ParseError,
    format_presentation,
    is_balanced,
    parse_presentation,
    total_letters,
)
from .quotient import cycle_notation, find_nontrivial_quotient
from .search import SearchLimits, search_trivialization


class _Output:
    def __init__(self, args):
        self.fmt = args.format
        self.timings = args.timings
        self.t0 = time.monotonic()

    def emit(self, verdict: str, lines, data: dict) -> None:
        if self.fmt == "json":
            payload = {
                "verdict": verdict,
                "data": data,
                "timings": (
                    {"seconds": round(time.monotonic() - self.t0, 3)} if self.timings else {}
                ),
            }
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            for line in lines:
                print(line)


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_presentation(path: str):
    return parse_presentation(_read(path))


# --- subcommands --------------------------------------------------------------


def cmd_parse(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    text = format_presentation(p)
    out.emit(
        "ok",
        [text],
        {"presentation": text, "generators": len(p.generators), "relators": len(p.relators)},
    )
    return 0


def cmd_balanced(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    flag = is_balanced(p)
    out.emit("balanced" if flag else "unbalanced", [f"BALANCED {str(flag).lower()}"], {"balanced": flag})
    return 0 if flag else 1


def cmd_matrix(args) -> int:
    out = _Output(args)
    a = exponent_matrix(_load_presentation(args.file))
    out.emit(
        "ok",
        [matrix_to_text(a).rstrip("\n")],
        {"rows": a.nrows, "cols": a.ncols, "entries": [list(r) for r in a.rows]},
    )
    return 0


def cmd_snf(args) -> int:
    out = _Output(args)
    a = matrix_from_text(_read(args.file))
    factors, u, v = smith_normal_form(a)
    lines = [
        "FACTORS " + " ".join(str(f) for f in factors),
        "U",
        matrix_to_text(u).rstrip("\n"),
        "V",
        matrix_to_text(v).rstrip("\n"),
    ]
    out.emit(
        "ok",
        lines,
        {
            "factors": list(factors),
            "u": [list(r) for r in u.rows],
            "v": [list(r) for r in v.rows],
        },
    )
    return 0


def cmd_perfect(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    flag = is_perfect_presentation(p)
    facs = invariant_factors(exponent_matrix(p))
    out.emit(
        "perfect" if flag else "imperfect",
        [f"PERFECT {str(flag).lower()}"],
        {"perfect": flag, "invariant_factors": list(facs)},
    )
    return 0 if flag else 1


def cmd_lemma2(args) -> int:
    out = _Output(args)
    a = matrix_from_text(_read(args.file))
    p, cert = presentation_from_matrix(a)
    pres_text = format_presentation(p)
    cert_text = format_certificate(cert)
    letters = total_letters(p)
    if args.output:
        d = Path(args.output)
        d.mkdir(parents=True, exist_ok=True)
        (d / "presentation.pres").write_text(pres_text + "\n")
        (d / "build.cert").write_text(cert_text)
        lines = [pres_text, f"LETTERS {letters}", f"WROTE {d / 'presentation.pres'}", f"WROTE {d / 'build.cert'}"]
    else:
        lines = [pres_text, f"LETTERS {letters}", cert_text.rstrip("\n")]
    out.emit(
        "ok",
        lines,
        {"presentation": pres_text, "letters": letters, "moves": len(cert.moves)},
    )
    return 0


def cmd_dualize(args) -> int:
    out = _Output(args)
    d = dualize(_load_presentation(args.file))
    text = format_presentation(d)
    out.emit("ok", [text], {"dual": text})
    return 0


def cmd_theorem3(args) -> int:
    out = _Output(args)
    kc = align(_load_presentation(args.file))
    d = Path(args.output)
    write_bundle(kc, d)
    dual_text = format_presentation(kc.dual)
    lines = [
        f"WROTE {d}",
        f"DUAL {dual_text}",
        f"MOVES {len(kc.trivialization.moves)}",
    ]
    out.emit(
        "ok",
        lines,
        {
            "bundle": str(d),
            "dual": dual_text,
            "moves": len(kc.trivialization.moves),
            "insertions": len(kc.augmented.relators)
            and sum(len(a) - len(s) for a, s in zip(kc.augmented.relators, kc.source.relators)) // 2,
        },
    )
    return 0


def cmd_order(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    result = enumerate_cosets(p, args.max_cosets)
    if isinstance(result, Finite):
        lines = [f"ORDER {result.order}"]
        if args.table:
            t = coset_table(p, args.max_cosets)
            for i, row in enumerate(t.rows):
                lines.append(f"{i + 1}: " + " ".join(str(x + 1) for x in row))
        out.emit("order", lines, {"order": result.order})
        return 0
    out.emit("cap-exceeded", [f"CAP-EXCEEDED {result.cosets}"], {"cosets": result.cosets})
    return 1


def cmd_quotient(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    w = find_nontrivial_quotient(p, args.max_degree)
    if w is None:
        out.emit("exhausted", [f"EXHAUSTED {args.max_degree}"], {"max_degree": args.max_degree})
        return 1
    lines = [f"DEGREE {w.degree}"]
    for name, img in zip(p.generators, w.images):
        lines.append(f"{name} -> {cycle_notation(img)}")
    lines.append(f"IMAGE-ORDER {w.image_order}")
    out.emit(
        "found",
        lines,
        {
            "degree": w.degree,
            "images": {name: cycle_notation(img) for name, img in zip(p.generators, w.images)},
            "image_order": w.image_order,
        },
    )
    return 0


def cmd_acsearch(args) -> int:
    out = _Output(args)
    p = _load_presentation(args.file)
    limits = SearchLimits(
        max_total_letters=args.max_total_letters,
        max_relator_letters=args.max_letters,
        max_depth=args.max_depth,
        max_states=args.max_states,
    )
    r = search_trivialization(p, limits)
    stats = {
        "states_seen": r.states_seen,
        "states_expanded": r.states_expanded,
        "limit_hit": r.limit_hit,
    }
    if r.found:
        cert_text = format_certificate(r.certificate)
        lines = [
            f"FOUND depth={r.found_depth} moves={len(r.certificate.moves)} "
            f"states-seen={r.states_seen} states-expanded={r.states_expanded}"
        ]
        if args.output:
            Path(args.output).write_text(cert_text)
            lines.append(f"WROTE {args.output}")
        else:
            lines.append(cert_text.rstrip("\n"))
        out.emit(
            "found",
            lines,
            dict(stats, depth=r.found_depth, moves=len(r.certificate.moves)),
        )
        return 0
    lines = [
        "NOT-FOUND",
        f"STATES-SEEN {r.states_seen}",
        f"STATES-EXPANDED {r.states_expanded}",
        f"LIMIT {r.limit_hit or 'space-exhausted'}",
    ]
    out.emit("not-found", lines, stats)
    return 1


def cmd_verify_cert(args) -> int:
    out = _Output(args)
    cert = parse_certificate(_read(args.file))
    ok, step, final = replay_trace(cert)
    if ok:
        out.emit("verified", ["OK"], {"moves": len(cert.moves)})
        return 0
    out.emit(
        "failed",
        [f"FAILED step {step}"],
        {"failed_step": step, "reached": format_presentation(final)},
    )
    return 1


def cmd_corpus(args) -> int:
    out = _Output(args)
    if args.family:
        variant = (1, 2) if args.family == "higman" else (2, 3)
        text = format_presentation(higman_presentation(args.m, variant))
        out.emit("ok", [text], {"presentation": text, "family": args.family, "m": args.m})
        return 0
    lines = []
    failures = {}
    for entry in all_entries():
        problems = check_entry(entry)
        if problems:
            failures[entry.name] = problems
            lines.append(f"{entry.name}: FAIL ({'; '.join(problems)})")
        else:
            lines.append(f"{entry.name}: ok")
    lines.append(f"{'FAIL' if failures else 'OK'} {len(all_entries()) - len(failures)}/{len(all_entries())}")
    out.emit("ok" if not failures else "regression", lines, {"failures": failures})
    return 0 if not failures else 1


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acforge",
        description="Andrews-Curtis move calculus on balanced group presentations: "
        "exact abelianization, trivial-group constructions from unimodular matrices, "
        "dual presentations with alignment certificates, coset enumeration, finite "
        "quotient search, and bounded trivialization search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kwargs):
        s = sub.add_parser(name, help=help_text, **kwargs)
        s.set_defaults(func=func)
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--timings", action="store_true", help="include wall time in json output")
        return s

    s = add("parse", cmd_parse, "parse a presentation file and echo its canonical form")
    s.add_argument("file")

    s = add("balanced", cmd_balanced, "check generator count == relator count")
    s.add_argument("file")

    s = add("matrix", cmd_matrix, "print the exponent (abelianized presentation) matrix")
    s.add_argument("file")

    s = add("snf", cmd_snf, "Smith normal form of a matrix file (factors, U, V)")
    s.add_argument("file")

    s = add("perfect", cmd_perfect, "check that the abelianization is trivial")
    s.add_argument("file")

    s = add("lemma2", cmd_lemma2, "trivial-group presentation realizing a unimodular matrix")
    s.add_argument("file", help="matrix file ('n m' header, then rows)")
    s.add_argument("-o", "--output", help="directory for presentation.pres and build.cert")

    s = add("dualize", cmd_dualize, "dual presentation under the scan-order witness")
    s.add_argument("file")

    s = add("theorem3", cmd_theorem3, "aligned dual + trivialization certificate bundle")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True, help="bundle output directory")

    s = add("order", cmd_order, "group order by coset enumeration (HLT)")
    s.add_argument("file")
    s.add_argument("--max-cosets", type=int, default=10**6)
    s.add_argument("--table", action="store_true", help="dump the closed coset table")

    s = add("quotient", cmd_quotient, "search for a quotient in a symmetric group")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, default=7)

    s = add("acsearch", cmd_acsearch, "bounded search for a trivializing move certificate")
    s.add_argument("file")
    s.add_argument("--max-depth", type=int, default=SearchLimits().max_depth)
    s.add_argument("--max-letters", type=int, default=SearchLimits().max_relator_letters)
    s.add_argument("--max-total-letters", type=int, default=SearchLimits().max_total_letters)
    s.add_argument("--max-states", type=int, default=SearchLimits().max_states)
    s.add_argument("-o", "--output", help="write the certificate to this file")

    s = add("verify-cert", cmd_verify_cert, "replay a certificate file")
    s.add_argument("file")

    s = add("corpus", cmd_corpus, "run the example corpus, or print a family presentation")
    s.add_argument("--family", choices=("higman", "higman23"))
    s.add_argument("--m", type=int, default=4, help="family size (with --family)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CertificateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
