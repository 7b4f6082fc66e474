"""``ipword``: generation, analysis and certificate commands with canonical JSON/CSV.

Exit status: 0 success / verified, 1 falsified certificate or unmet ``--expect``,
2 usage errors and undecidable requests.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import dynamics as dyn
from . import ipcheck
from . import palindromic as pal
from .errors import InvalidArgument, IpwordError, ResourceLimit, UnsupportedFormat
from .generators import Substitution, SturmianParams, characteristic_word, mechanical_word
from .numeration import decode_value, digit_rule_letter, greedy_representation
from .presets import parse_alpha, parse_directive, parse_generators, parse_rho, parse_target, parse_word
from .words import complexity_profile, occurrences, recurrence_gap, special_factors, word_str

MAX_HORIZON = 10**8


@dataclass
class RunReport:
    name: str
    params: dict
    result: dict
    horizon: int | None = None
    verified: bool = True
    table: tuple | None = field(default=None, compare=False)  # (columns, rows) for csv

    def to_dict(self):
        return {"command": {"name": self.name, "params": self.params}, "result": self.result,
                "horizon": self.horizon, "verified": self.verified}


def _check_exact(value, path="report"):
    if isinstance(value, float):
        raise UnsupportedFormat(f"floating point value at {path}")
    if isinstance(value, dict):
        for k, v in value.items():
            _check_exact(v, f"{path}.{k}")
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _check_exact(v, f"{path}[{i}]")


def emit_report(report: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        doc = report.to_dict()
        _check_exact(doc)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if report.table is None:
            raise UnsupportedFormat(f"{report.name} produces a nested result; use json")
        columns, rows = report.table
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(columns)
        out.writerows(rows)
        return buf.getvalue()
    raise UnsupportedFormat(f"unknown format {fmt!r}")


# -- argument helpers --------------------------------------------------------

def _word(args, name="word", suffix=""):
    spec = getattr(args, name)
    if spec == "mechanical":
        return mechanical_word(_params(args, suffix))
    return parse_word(spec)


def _params(args, suffix=""):
    alpha = parse_alpha(args.alpha)
    rho = getattr(args, "rho" + suffix, None)
    conv = getattr(args, "conv" + suffix, None)
    if suffix:
        rho = args.rho if rho is None else rho
        conv = args.conv if conv is None else conv
    p, q = parse_rho(rho, alpha)
    return SturmianParams(alpha, p, q, conv or "lower")


def _mechanical_args(p, second=False):
    p.add_argument("--alpha", default=None, help="slope literal, e.g. '(3-sqrt(5))/2' (default golden)")
    p.add_argument("--rho", default=None, help="intercept p + q*alpha, e.g. '1/2' or 'alpha'")
    p.add_argument("--conv", default=None, choices=["lower", "upper"])
    if second:
        p.add_argument("--rho2", default=None, help="intercept of the second word")
        p.add_argument("--conv2", default=None, choices=["lower", "upper"])


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _spec_of(stream):
    return stream.spec or "anonymous"


# -- commands ----------------------------------------------------------------

def cmd_generate(args):
    w = _word(args)
    letters = w.prefix(args.length)
    return RunReport("generate", {}, {"kind": "word-prefix", "word": _spec_of(w),
                                      "letters": word_str(letters)},
                     args.length, table=(("index", "letter"), list(enumerate(letters))))


def cmd_occurrences(args):
    w = _word(args)
    occ = occurrences(w, args.factor, args.horizon)
    return RunReport("occurrences", {}, {"kind": "occurrences", "word": _spec_of(w),
                                         "factor": word_str(occ.factor), "bound": occ.bound,
                                         "positions": list(occ.positions)},
                     args.horizon, table=(("position",), [(p,) for p in occ.positions]))


def cmd_complexity(args):
    w = _word(args)
    prof = complexity_profile(w, args.n_max, args.horizon)
    rows = [(n, c) for n, c in enumerate(prof.counts, 1)]
    return RunReport("complexity", {}, {"kind": "complexity", "word": _spec_of(w),
                                        "counts": list(prof.counts)},
                     args.horizon, table=(("n", "rho"), rows))


def cmd_special_factors(args):
    w = _word(args)
    sf = special_factors(w, args.length, args.horizon)
    as_list = lambda s: sorted(word_str(u) for u in s)  # noqa: E731
    return RunReport("special-factors", {}, {
        "kind": "special-factors", "word": _spec_of(w), "length": args.length,
        "left": as_list(sf.left), "right": as_list(sf.right), "bispecial": as_list(sf.bispecial)},
        args.horizon)


def cmd_zeckendorff(args):
    if args.decode:
        value = decode_value(args.m, args.n)
        return RunReport("zeckendorff", {}, {"kind": "decoded", "m": args.m, "digits": args.n,
                                             "value": value})
    rep = greedy_representation(args.m, int(args.n))
    return RunReport("zeckendorff", {}, {"kind": "representation", "m": args.m, "n": int(args.n),
                                         "digits": str(rep)},
                     table=(("n", "digits"), [(int(args.n), str(rep))]))


def cmd_digit_rule(args):
    rows = [(n, digit_rule_letter(args.m, n)) for n in range(args.length)]
    return RunReport("digit-rule", {}, {"kind": "word-prefix", "word": f"digit-rule:{args.m}",
                                        "letters": word_str([a for _, a in rows])},
                     args.length, table=(("index", "letter"), rows))


def cmd_fs_check(args):
    gens = ipcheck.check_generators(parse_generators(args.gens, args.count))
    # the target has to decide every subset sum, so the horizon grows to cover them
    horizon = max(args.horizon, sum(gens) + len(_factor_of(args.target)) + 1)
    if horizon > MAX_HORIZON:
        raise ResourceLimit(f"subset sums reach {sum(gens)}; word prefixes are capped at {MAX_HORIZON}")
    target = parse_target(args.target, horizon)
    res = ipcheck.verify_fs_subset(gens, target)
    ok = isinstance(res, ipcheck.FsCertificate)
    result = res.to_dict()
    result["requested_horizon"] = args.horizon
    return RunReport("fs-check", {}, result, horizon, ok)


def _factor_of(target_text):
    return target_text.rpartition("|")[2]


def cmd_ip_search(args):
    target = parse_target(args.target, args.bound + len(_factor_of(args.target)) - 1)
    found = ipcheck.finite_fs_big_check(target, args.k, args.bound)
    if found is None:
        return RunReport("ip-search", {}, {"kind": "no-witness", "k": args.k, "bound": args.bound},
                         args.bound, False)
    return RunReport("ip-search", {}, found.to_dict(), args.bound)


def cmd_non_ip_cert(args):
    frac = Fraction(args.split)
    if not 0 < frac < 1:
        raise InvalidArgument("--split must lie strictly between 0 and 1")
    arities = tuple(int(a) for a in args.arities.split(","))
    if len(arities) != 2:
        raise InvalidArgument("--arities takes two values")
    bound = args.bound
    target = ipcheck.OccurrenceTarget(parse_word("fibonacci"), "1", bound)
    classes = ipcheck.fibonacci_split_classes(ipcheck.split_point(frac), bound)
    res = ipcheck.non_ip_partition_certificate(target, classes, arities, bound)
    return RunReport("non-ip-cert", {}, res.to_dict(), bound,
                     isinstance(res, ipcheck.NonIpCertificate))


def cmd_separation(args):
    x, y = _word(args, "x"), _word(args, "y", "2")
    char = None
    if args.x == "mechanical":
        char = characteristic_word(parse_alpha(args.alpha))
    cert = dyn.separation_analysis(x, y, args.horizon, char)
    return RunReport("separation", {}, cert.to_dict(), args.horizon)


def cmd_classify(args):
    params = _params(args)
    s = dyn.classify_singularity(params)
    return RunReport("classify", {}, {"kind": "singularity", "params": params.label(),
                                      "singular": s.singular, "n": s.n, "label": str(s)})


def cmd_verdict(args):
    params = _params(args)
    v = dyn.ip_verdict_sturmian(params, args.factor, args.horizon)
    ok = args.expect is None or v.verdict == args.expect
    result = v.to_dict()
    result["factor"] = word_str(v.factor)
    result["params"] = params.label()
    return RunReport("verdict", {}, result, args.horizon, ok)


def cmd_proximality(args):
    x, y = _word(args, "x"), _word(args, "y", "2")
    rep = dyn.proximality_scan(x, y, args.horizon)
    return RunReport("proximality", {}, rep.to_dict(), args.horizon,
                     table=(("start", "length"), list(rep.runs)))


def cmd_coincidence(args):
    hit = dyn.coincidence_check(args.r, args.i, args.j, args.horizon)
    return RunReport("coincidence", {}, {"kind": "coincidence", "r": args.r, "i": args.i,
                                         "j": args.j, "first": hit}, args.horizon, hit is None)


def cmd_thickness(args):
    sub = Substitution.parse(args.sub)
    prof = dyn.thickness_profile(sub, args.u, args.v, args.n_max, args.horizon, args.letter)
    result = prof.to_dict()
    result["u"], result["v"] = word_str(prof.u), word_str(prof.v)
    result["substitution"] = sub.rules()
    return RunReport("thickness", {}, result, args.horizon)


def cmd_t3(args):
    part = dyn.t3_build(args.r, args.n)
    shifts = args.shifts or 2 * args.n + 4
    rows = [(n, *(int(part.verdict(i, n)) for i in range(1, args.r + 1))) for n in range(1, shifts + 1)]
    classes = part.classes(args.horizon)
    result = {"kind": "t3", "r": args.r, "N": args.n, "word": word_str(part.word.prefix(min(args.horizon, 64))),
              "verdicts": {str(n): [bool(v) for v in row] for n, *row in rows},
              "class_sizes": {str(i): len(c) for i, c in classes.items()}}
    ok = sum(len(c) for c in classes.values()) == args.horizon
    cols = ("n",) + tuple(f"central_{i}" for i in range(1, args.r + 1))
    return RunReport("t3", {}, result, args.horizon, ok, table=(cols, rows))


def cmd_t4(args):
    part = dyn.t4_partition(args.r, args.horizon, args.variant)
    result = part.to_dict()
    result["factors"] = [word_str(f) for f in part.factors]
    result["groups"] = [[word_str(f) for f in g] for g in part.groups]
    return RunReport("t4", {}, result, args.horizon, part.verified)


def cmd_pal_closure(args):
    w = args.word
    out = pal.iterated_pal_closure(w) if args.iterate else pal.pal_closure(w)
    return RunReport("pal-closure", {}, {"kind": "palindrome", "input": w, "output": out,
                                         "iterated": bool(args.iterate)})


def cmd_psi(args):
    stream = pal.PsiStream(parse_directive(args.directive))
    letters = stream.prefix(args.length)
    return RunReport("psi", {}, {"kind": "word-prefix", "word": _spec_of(stream),
                                 "letters": word_str(letters),
                                 "palindromic_prefixes": [k for k in stream.palindromic_prefix_lengths()
                                                          if k <= args.length]},
                     args.length, table=(("index", "letter"), list(enumerate(letters))))


def cmd_partition(args):
    part = pal.infinite_central_partition(args.horizon)
    result = part.to_dict()
    result["max_gaps"] = {}
    w = pal.psi_staircase()
    for a in sorted(part.classes):
        try:
            result["max_gaps"][str(a)] = recurrence_gap(w, (a,), args.horizon - 1)
        except IpwordError:
            result["max_gaps"][str(a)] = None
    return RunReport("partition", {}, result, args.horizon, part.verified)


def cmd_verify(args):
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"not JSON: {exc}") from None
    if "result" in doc and "command" in doc:
        doc = doc["result"]
    kind = doc.get("kind")
    if kind not in ("separation", "fs-certificate", "fs-big-witness", "non-ip-certificate"):
        raise InvalidArgument(f"nothing to verify in a {kind!r} report")
    try:
        ok = dyn.verify_separation(doc) if kind == "separation" else ipcheck.verify_certificate(doc)
    except (IpwordError, KeyError, TypeError, ValueError):
        ok = False  # a certificate whose claims cannot even be checked is not valid
    return RunReport("verify", {}, {"kind": "verification", "certificate": kind, "valid": ok},
                     doc.get("horizon", doc.get("bound")), ok)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ipword", description=__doc__.splitlines()[0])
    top.add_argument("--format", choices=["json", "csv"], default="json")
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
        return p

    word_help = "word preset (fibonacci, mbonacci:M, tm:R:I, weakmix, psi-staircase, ...) or 'mechanical'"

    p = command("generate", cmd_generate, "print a prefix of a word")
    p.add_argument("word", help=word_help)
    p.add_argument("--length", type=_positive, default=20)
    _mechanical_args(p)

    p = command("occurrences", cmd_occurrences, "occurrence set of a factor")
    p.add_argument("word", help=word_help)
    p.add_argument("factor")
    p.add_argument("--horizon", type=_positive, default=1000)
    _mechanical_args(p)

    p = command("complexity", cmd_complexity, "factor complexity profile")
    p.add_argument("word", help=word_help)
    p.add_argument("--n-max", type=_positive, default=20)
    p.add_argument("--horizon", type=_positive, default=10000)
    _mechanical_args(p)

    p = command("special-factors", cmd_special_factors, "left/right special factors of one length")
    p.add_argument("word", help=word_help)
    p.add_argument("--length", type=_positive, default=5)
    p.add_argument("--horizon", type=_positive, default=10000)
    _mechanical_args(p)

    p = command("zeckendorff", cmd_zeckendorff, "greedy representation (or --decode a digit word)")
    p.add_argument("n")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--decode", action="store_true")

    p = command("digit-rule", cmd_digit_rule, "letters of 0t from trailing ones of Z_m(n-1)")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--length", type=_positive, default=20)

    p = command("fs-check", cmd_fs_check, "certify FS(x_1..x_k) inside an occurrence set")
    p.add_argument("--target", required=True, help="WORD|FACTOR, e.g. 'fib|0' or '0+fib|1'")
    p.add_argument("--gens", required=True, help="fib-odd, fib-even, mbonacci:M:K or '2,5,13'")
    p.add_argument("--count", type=_positive, default=None)
    p.add_argument("--horizon", type=_positive, default=10000)

    p = command("ip-search", cmd_ip_search, "search k generators whose FS lies in a target")
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=_positive, default=4)
    p.add_argument("--bound", type=_positive, default=10000)

    p = command("non-ip-cert", cmd_non_ip_cert, "two-class certificate that f|_1 has no IP structure")
    p.add_argument("--split", default="1/2", help="alpha' as a fraction of 1 - alpha")
    p.add_argument("--arities", default="3,2")
    p.add_argument("--bound", type=_positive, default=2000)

    for name, func, help_text in (("separation", cmd_separation, "merge/separation dichotomy"),
                                  ("proximality", cmd_proximality, "maximal agreement runs")):
        p = command(name, func, help_text)
        p.add_argument("x", help=word_help)
        p.add_argument("y", help=word_help + " (uses --rho2/--conv2)")
        p.add_argument("--horizon", type=_positive, default=10000)
        _mechanical_args(p, second=True)

    p = command("classify", cmd_classify, "singular or nonsingular mechanical word")
    _mechanical_args(p)

    p = command("verdict", cmd_verdict, "central / not-IP verdict for a factor")
    p.add_argument("factor")
    p.add_argument("--horizon", type=_positive, default=10000)
    p.add_argument("--expect", choices=["central", "not-IP"], default=None)
    _mechanical_args(p)

    p = command("coincidence", cmd_coincidence, "first index where two Thue-Morse fixed points agree")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--horizon", type=_positive, default=100000)

    p = command("thickness", cmd_thickness, "achievable gaps between u and v")
    p.add_argument("--sub", default="0->001;1->11001")
    p.add_argument("--u", default="0")
    p.add_argument("--v", default="0")
    p.add_argument("--letter", type=int, default=None)
    p.add_argument("--n-max", type=_nonneg, default=200)
    p.add_argument("--horizon", type=_positive, default=100000)

    p = command("t3", cmd_t3, "finite partition with prescribed central shifts")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n", type=_positive, default=3)
    p.add_argument("--shifts", type=_positive, default=None)
    p.add_argument("--horizon", type=_positive, default=10000)

    p = command("t4", cmd_t4, "partition by length-m factors of the weak-mixing word")
    p.add_argument("--r", type=_positive, default=3)
    p.add_argument("--variant", default="11001", choices=["11001", "11100"])
    p.add_argument("--horizon", type=_positive, default=10000)

    p = command("pal-closure", cmd_pal_closure, "right palindromic closure (or psi with --iterate)")
    p.add_argument("word")
    p.add_argument("--iterate", action="store_true")

    p = command("psi", cmd_psi, "prefix of psi(directive)")
    p.add_argument("directive", help="staircase, constant:A or periodic:WORD")
    p.add_argument("--length", type=_positive, default=50)

    p = command("partition", cmd_partition, "infinite partition from psi(staircase)")
    p.add_argument("--horizon", type=int, default=1000)

    p = command("verify", cmd_verify, "re-check a certificate from its JSON report ('-' = stdin)")
    p.add_argument("file")
    return top


def _echo(args) -> dict:
    skip = {"func", "format", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
        report.params = _echo(args)
        text = emit_report(report, args.format)
    except (IpwordError, ValueError, OSError) as exc:
        print(f"ipword {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0 if report.verified else 1


if __name__ == "__main__":
    sys.exit(main())
