"""Text names for words, targets and generator families, shared by the CLI and by
certificate re-verification.  ``parse_word(stream.spec)`` rebuilds ``stream``.

Word grammar::

    fibonacci | fib | mbonacci:M | tm:R:I | weakmix | weakmix:11100
    psi-staircase | psi-constant:A | psi-periodic:WORD | periodic:WORD
    sub[0->01;1->0]@0
    mechanical:alpha=LIT,rho=LIT,conv=lower|upper
    t3:R:N
    HEAD+WORD          (finite head prepended, e.g. 0+fibonacci)
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidArgument
from .generators import (
    GOLDEN_ALPHA,
    FixedPointStream,
    SturmianParams,
    Substitution,
    generalized_tm_fixed_point,
    m_bonacci,
    mechanical_word,
    weak_mixing,
)
from .numeration import fibonacci_even, fs_generators
from .quadratic import QuadraticReal, parse_linear
from .words import PeriodicStream, PrependStream, WordStream, as_word


def parse_alpha(text: str | None) -> QuadraticReal:
    if text is None or text.strip() in ("", "golden"):
        return GOLDEN_ALPHA
    lin = parse_linear(text, allow_alpha=False)
    return QuadraticReal(lin.one, lin.root, lin.d or 5)


def parse_rho(text: str | None, alpha: QuadraticReal) -> tuple[Fraction, Fraction]:
    """``p + q*alpha`` from a literal that may use alpha or sqrt(d) (d matching alpha)."""
    if text is None or not text.strip():
        return Fraction(0), Fraction(0)
    lin = parse_linear(text)
    p, q = lin.one, lin.alpha
    if lin.root:
        if lin.d != alpha.d:
            raise InvalidArgument("rho must lie in Q + Q*alpha")
        # sqrt(d) = (alpha - a) / b
        q += lin.root / alpha.b
        p -= lin.root * alpha.a / alpha.b
    return p, q


def _mechanical(body: str) -> WordStream:
    fields = {}
    for part in body.split(","):
        if "=" not in part:
            raise InvalidArgument(f"malformed mechanical field {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {"alpha", "rho", "conv"}
    if unknown:
        raise InvalidArgument(f"unknown mechanical fields {sorted(unknown)}")
    alpha = parse_alpha(fields.get("alpha"))
    p, q = parse_rho(fields.get("rho"), alpha)
    return mechanical_word(SturmianParams(alpha, p, q, fields.get("conv", "lower")))


def _int_fields(text: str, count: int, name: str) -> list[int]:
    parts = text.split(":")
    if len(parts) != count:
        raise InvalidArgument(f"{name} expects {count - 1} integer parameter(s)")
    try:
        return [int(v) for v in parts[1:]]
    except ValueError:
        raise InvalidArgument(f"non-integer parameter in {text!r}") from None


def parse_word(spec: str) -> WordStream:
    s = spec.strip()
    if not s:
        raise InvalidArgument("empty word name")
    if s.startswith("mechanical:"):
        return _mechanical(s[len("mechanical:"):])
    if s.startswith("sub["):
        close = s.find("]@")
        if close < 0:
            raise InvalidArgument(f"malformed substitution word {s!r}")
        sub = Substitution.parse(s[4:close])
        return FixedPointStream(sub, int(s[close + 2:]))
    head, plus, rest = s.partition("+")
    if plus and head and all(c.isdigit() or c == "," for c in head):
        return PrependStream(as_word(head), parse_word(rest))
    if s in ("fibonacci", "fib"):
        return m_bonacci(2)
    if s.startswith("mbonacci:"):
        (m,) = _int_fields(s, 2, "mbonacci")
        return m_bonacci(m)
    if s.startswith("tm:"):
        r, i = _int_fields(s, 3, "tm")
        return generalized_tm_fixed_point(r, i)
    if s == "weakmix":
        return weak_mixing()
    if s.startswith("weakmix:"):
        return weak_mixing(s.split(":", 1)[1])
    if s.startswith("periodic:"):
        return PeriodicStream(as_word(s.split(":", 1)[1]))
    if s.startswith("t3:"):
        from .dynamics import t3_build

        r, n = _int_fields(s, 3, "t3")
        return t3_build(r, n).word
    if s.startswith("psi-"):
        from . import palindromic as pal

        return pal.PsiStream(parse_directive(s[4:]), s)
    raise InvalidArgument(f"unknown word {s!r}")


def parse_directive(spec: str) -> WordStream:
    from . import palindromic as pal

    s = spec.strip()
    if s == "staircase":
        return pal.staircase()
    if s.startswith("constant:"):
        return pal.constant(int(s.split(":", 1)[1]))
    if s.startswith("periodic:"):
        return pal.periodic(s.split(":", 1)[1])
    raise InvalidArgument(f"unknown directive sequence {s!r}")


def parse_target(text: str, horizon: int):
    """``WORD|FACTOR``: the occurrence set of FACTOR in WORD, decided below the horizon."""
    from .ipcheck import OccurrenceTarget

    word, bar, factor = text.rpartition("|")
    if not bar or not word or not factor:
        raise InvalidArgument(f"target must look like WORD|FACTOR, got {text!r}")
    return OccurrenceTarget(parse_word(word), factor, horizon)


def parse_generators(text: str, count: int | None = None) -> list[int]:
    """fib-odd, fib-even, mbonacci:M:K, or an explicit list like ``2,5,13``."""
    s = text.strip()
    if s in ("fib-odd", "fib-even") or s.startswith("mbonacci:"):
        if count is None:
            raise InvalidArgument(f"{s} needs a count")
        if s == "fib-odd":
            return fs_generators(2, 1, count)
        if s == "fib-even":
            return fibonacci_even(count)
        m, k = _int_fields(s, 3, "mbonacci")
        return fs_generators(m, k, count)
    try:
        xs = [int(v) for v in s.replace(" ", ",").split(",") if v]
    except ValueError:
        raise InvalidArgument(f"unknown generator family {s!r}") from None
    if not xs:
        raise InvalidArgument("no generators given")
    return xs[:count] if count is not None else xs
