"""
Command line front end.

Each subcommand calls one library operation and prints its serialized result.
Words use the braid grammar (``"1 -2"`` or ``"s1 s2^-1"``) and curve systems
the ``"n=6; [1-2],[3-4]"`` form. Any argument written ``@path`` is read from
that file, which is the practical way to pass multi-line decompositions.

The exit status is 2 when a search ran out of budget. Otherwise it is 0 for a
definite answer and 1 for errors or failed verifications.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, TextIO

from . import __version__
from .braid import (
    BraidError,
    exponent_sum,
    format_word,
    inverse,
    multiply,
    parse_word,
    power,
    underlying_permutation,
)
from .curves import CurveError, parse_curves, preserves
from .garside import (
    DEFAULT_BUDGET,
    ConjugacyCertificate,
    Conjugate,
    NotConjugate,
    SearchBudgetExceeded,
    Unknown,
    equals,
    normal_form,
)
from .harness import (
    CERTIFIED,
    FAMILIES,
    UNKNOWN,
    TrialConfig,
    brute_force_root,
    conjugacy_via_powers,
    run_trials,
)
from .periodic import NotPeriodicError, classify_periodic, standardize_periodic
from .regular import regular_conjugacy_test, to_regular_form
from .tubular import DecompositionError, embed, extract, format_decomposition, parse_decomposition

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


class _Result:
    def __init__(self, text: str, data, code: int = EXIT_OK):
        self.text = text
        self.data = data
        self.code = code


def _read(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], encoding="utf-8") as fh:
            return fh.read()
    return value


def _word(args, text: str):
    return parse_word(_read(text), args.strands)


def _cert_result(cert: ConjugacyCertificate) -> _Result:
    text = f"conjugate\nwitness: {format_word(cert.witness)}\nverified: {str(cert.verified).lower()}"
    data = {"status": "conjugate", **cert.to_json()}
    return _Result(text, data, EXIT_OK if cert.verified else EXIT_ERROR)


def _conj_result(res) -> _Result:
    if isinstance(res, Conjugate):
        return _cert_result(res.certificate)
    if isinstance(res, NotConjugate):
        return _Result(f"not conjugate: {res.reason}", {"status": "not_conjugate", "reason": res.reason})
    assert isinstance(res, Unknown)
    return _Result(
        f"unknown: {res.reason} ({res.explored} explored)",
        {"status": "unknown", "explored": res.explored, "reason": res.reason},
        EXIT_UNKNOWN,
    )


def _bool(v: bool) -> _Result:
    return _Result(str(v).lower(), v)


# --------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> _Result:
    nf = normal_form(_word(args, args.word))
    data = {
        "n": nf.n,
        "inf": nf.inf,
        "factors": [[v + 1 for v in f] for f in nf.factors],
        "text": str(nf),
    }
    return _Result(str(nf), data)


def cmd_eq(args) -> _Result:
    return _bool(equals(_word(args, args.a), _word(args, args.b)))


def _word_result(w) -> _Result:
    return _Result(format_word(w), {"n": w.n, "word": format_word(w)})


def cmd_mul(args) -> _Result:
    return _word_result(multiply(*(_word(args, w) for w in args.words)))


def cmd_inv(args) -> _Result:
    return _word_result(inverse(_word(args, args.word)))


def cmd_pow(args) -> _Result:
    return _word_result(power(_word(args, args.word), args.power))


def cmd_expsum(args) -> _Result:
    s = exponent_sum(_word(args, args.word))
    return _Result(str(s), s)


def cmd_perm(args) -> _Result:
    p = underlying_permutation(_word(args, args.word))
    cycles = [list(c) for c in p.cycles() if len(c) > 1]
    text = " ".join(map(str, p.images))
    if cycles:
        text += "\n" + "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
    return _Result(text, {"images": list(p.images), "cycles": cycles})


def cmd_periodic(args) -> _Result:
    cls = classify_periodic(_word(args, args.word))
    return _Result(f"{cls.base} t={cls.t} n={cls.n}", cls.to_json())


def cmd_standardize(args) -> _Result:
    return _cert_result(standardize_periodic(_word(args, args.word), args.budget))


def cmd_curves_preserves(args) -> _Result:
    C = parse_curves(_read(args.curves))
    return _bool(preserves(parse_word(_read(args.word), C.n), C))


def cmd_decompose(args) -> _Result:
    C = parse_curves(_read(args.curves))
    d = extract(parse_word(_read(args.word), C.n), C)
    text = format_decomposition(d)
    return _Result(text, {"decomposition": text})


def cmd_embed(args) -> _Result:
    return _word_result(embed(parse_decomposition(_read(args.decomposition))))


def cmd_regular_form(args) -> _Result:
    rf = to_regular_form(parse_decomposition(_read(args.decomposition)), args.budget)
    return _Result(rf.to_text(), rf.to_json())


def cmd_reg_conj(args) -> _Result:
    a = to_regular_form(parse_decomposition(_read(args.a)), args.budget)
    b = to_regular_form(parse_decomposition(_read(args.b)), args.budget)
    return _conj_result(regular_conjugacy_test(a, b, args.budget))


def cmd_roots_conj(args) -> _Result:
    alpha, beta = _word(args, args.a), _word(args, args.b)
    hints = None
    if args.hint_a or args.hint_b:
        if not (args.hint_a and args.hint_b):
            raise ValueError("--hint-a and --hint-b must be given together")
        hints = (parse_decomposition(_read(args.hint_a)), parse_decomposition(_read(args.hint_b)))
    res = conjugacy_via_powers(alpha, beta, args.power, hints, args.budget)
    lines = [res.outcome]
    if res.certificate is not None:
        lines.append(f"witness: {format_word(res.certificate.witness)}")
        lines.append(f"verified: {str(res.certificate.verified).lower()}")
    if res.detail:
        lines.append(res.detail)
    code = EXIT_OK
    if res.outcome == UNKNOWN:
        code = EXIT_UNKNOWN
    elif res.outcome == CERTIFIED and not res.certificate.verified:
        code = EXIT_ERROR
    return _Result("\n".join(lines), res.to_json(), code)


def cmd_brute_root(args) -> _Result:
    roots = brute_force_root(_word(args, args.word), args.power, args.max_letters)
    words = [format_word(w) for w in roots]
    return _Result("\n".join(words) if words else "(none)", {"roots": words})


def cmd_verify(args) -> _Result:
    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    config = TrialConfig(families=families, trials=args.trials, seed=args.seed, budget=args.budget)
    reports, summary = run_trials(config)
    lines = [json.dumps(r.to_json()) for r in reports] + [json.dumps(summary)]
    code = EXIT_ERROR if summary["unexpected"] else EXIT_OK
    text = "\n".join(lines)
    return _Result(text, None, code)


# --------------------------------------------------------------------------


def _hex(value: str) -> int:
    return int(value, 16)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the result here instead of standard output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="super summit elements to explore")
    common.add_argument("--seed", type=_hex, default=0x2A, help="master seed, hexadecimal")

    strands = argparse.ArgumentParser(add_help=False)
    strands.add_argument("-n", "--strands", type=int, required=True)

    parser = argparse.ArgumentParser(prog="braidroot", description="Braid group computations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str, with_n: bool = True):
        p = sub.add_parser(name, parents=[common] + ([strands] if with_n else []), help=help)
        p.set_defaults(func=func)
        return p

    add("normalize", cmd_normalize, "left-weighted normal form").add_argument("word")
    p = add("eq", cmd_eq, "decide equality of two braids")
    p.add_argument("a")
    p.add_argument("b")
    add("mul", cmd_mul, "product of braids").add_argument("words", nargs="+")
    add("inv", cmd_inv, "inverse braid").add_argument("word")
    p = add("pow", cmd_pow, "power of a braid")
    p.add_argument("word")
    p.add_argument("-k", "--power", type=int, required=True)
    add("expsum", cmd_expsum, "exponent sum").add_argument("word")
    add("perm", cmd_perm, "strand permutation").add_argument("word")
    add("periodic", cmd_periodic, "classify a periodic braid").add_argument("word")
    add("standardize", cmd_standardize, "conjugate a periodic braid to standard form").add_argument("word")
    p = add("curves-preserves", cmd_curves_preserves, "does a braid preserve a curve system", with_n=False)
    p.add_argument("--curves", required=True)
    p.add_argument("word")
    p = add("decompose", cmd_decompose, "tubular decomposition of a tube-respecting word", with_n=False)
    p.add_argument("--curves", required=True)
    p.add_argument("word")
    add("embed", cmd_embed, "braid of a decomposition", with_n=False).add_argument("decomposition")
    add("regular-form", cmd_regular_form, "regular form and conjugator", with_n=False).add_argument(
        "decomposition"
    )
    p = add("reg-conj", cmd_reg_conj, "conjugacy of two decompositions via regular forms", with_n=False)
    p.add_argument("a")
    p.add_argument("b")
    p = add("roots-conj", cmd_roots_conj, "certify conjugacy of braids with equal k-th powers")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-k", "--power", type=int, required=True)
    p.add_argument("--hint-a", help="decomposition of the first braid")
    p.add_argument("--hint-b", help="decomposition of the second braid")
    p = add("brute-root", cmd_brute_root, "exhaustive search for k-th roots")
    p.add_argument("word")
    p.add_argument("-k", "--power", type=int, required=True)
    p.add_argument("--max-letters", type=int, default=4)
    p = add("verify", cmd_verify, "run seeded theorem trials", with_n=False)
    p.add_argument("--families", default="F1,F2,F3", help=f"comma separated, from {','.join(FAMILIES)}")
    p.add_argument("--trials", type=int, default=200)
    return parser


def _emit(result: _Result, fmt: str, stream: TextIO) -> None:
    if fmt == "json" and result.data is not None:
        stream.write(json.dumps(result.data) + "\n")
    else:
        stream.write(result.text + "\n")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        result = args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (BraidError, CurveError, DecompositionError, NotPeriodicError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except AssertionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit(result, args.format, fh)
    else:
        _emit(result, args.format, sys.stdout)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
