"""Constructors for the infinite words: substitution fixed points, mechanical
(Sturmian) words, m-bonacci, generalized Thue-Morse and weak-mixing examples."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import Degenerate, InvalidArgument, NotProlongable
from .quadratic import QuadraticReal, floor_surd
from .words import FiniteWord, WordStream, as_word, word_str

GOLDEN_ALPHA = QuadraticReal(Fraction(3, 2), Fraction(-1, 2), 5)


class Substitution:
    """A non-erasing morphism given by the images of its letters."""

    def __init__(self, images: Mapping[int, Sequence[int] | str]):
        imgs = {int(a): as_word(v) for a, v in images.items()}
        if not imgs:
            raise InvalidArgument("empty substitution")
        alphabet = set(imgs)
        for a, v in imgs.items():
            if not v:
                raise InvalidArgument(f"image of {a} is empty")
            if not set(v) <= alphabet:
                raise InvalidArgument(f"image of {a} leaves the alphabet")
        self.images: dict[int, FiniteWord] = dict(sorted(imgs.items()))

    @property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(self.images)

    @classmethod
    def parse(cls, text: str) -> Substitution:
        """Rules ``a -> bcd`` separated by newlines or ``;``."""
        images = {}
        for line in text.replace(";", "\n").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "->" not in line:
                raise InvalidArgument(f"malformed rule {line!r}")
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            images[int(lhs)] = as_word(rhs)
        return cls(images)

    def rules(self) -> str:
        return ";".join(f"{a}->{word_str(v)}" for a, v in self.images.items())

    def __call__(self, word: Sequence[int]) -> FiniteWord:
        out: list[int] = []
        for a in word:
            out.extend(self.images[a])
        return tuple(out)

    def incidence_matrix(self) -> np.ndarray:
        idx = {a: i for i, a in enumerate(self.alphabet)}
        m = np.zeros((len(idx), len(idx)), dtype=np.int64)
        for a, v in self.images.items():
            for b in v:
                m[idx[a], idx[b]] += 1
        return m

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.images == other.images

    def __hash__(self):
        return hash(self.rules())

    def __repr__(self):
        return f"Substitution({self.rules()!r})"


def is_primitive(sub: Substitution) -> bool:
    m = sub.incidence_matrix() > 0
    p = m.copy()
    for _ in range(len(m) ** 2):
        if p.all():
            return True
        p = (p.astype(np.int64) @ m.astype(np.int64)) > 0
    return bool(p.all())


class FixedPointStream(WordStream):
    """The fixed point of ``sub`` starting with ``letter``.

    Uses ``w = sub(w0) sub(w1) ...``: the buffer starts as sub(letter) and the
    image of letter i is appended once the buffer is read past it.
    """

    def __init__(self, sub: Substitution, letter: int, spec: str | None = None):
        if letter not in sub.images:
            raise InvalidArgument(f"{letter} is not in the alphabet")
        img = sub.images[letter]
        if img[0] != letter:
            raise NotProlongable(f"image of {letter} does not start with {letter}")
        if len(img) < 2:
            raise Degenerate(f"iterates of {letter} stay bounded")
        super().__init__(sub.alphabet,
                         {"generator": "fixed_point", "rules": sub.rules(), "letter": letter},
                         spec or f"sub[{sub.rules()}]@{letter}")
        self.substitution = sub
        self.letter = letter
        self._next = 1

    def _fill(self, n):
        buf, images = self._buf, self.substitution.images
        if not buf:
            buf.extend(images[self.letter])
        while len(buf) < n:
            buf.extend(images[buf[self._next]])
            self._next += 1


def fixed_point(sub: Substitution, letter: int) -> FixedPointStream:
    return FixedPointStream(sub, letter)


@dataclass(frozen=True)
class SturmianParams:
    """Slope alpha and intercept rho = p + q*alpha (reduced into [0, 1))."""

    alpha: QuadraticReal
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    convention: str = "lower"

    def __post_init__(self):
        if self.alpha.is_rational:
            raise InvalidArgument("slope must be irrational")
        if not (0 < self.alpha < 1):
            raise InvalidArgument("slope must lie in (0, 1)")
        if self.convention not in ("lower", "upper"):
            raise InvalidArgument(f"convention must be 'lower' or 'upper', got {self.convention!r}")
        p, q = Fraction(self.p), Fraction(self.q)
        p -= (self.alpha * q + p).floor()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def rho(self) -> QuadraticReal:
        return self.alpha * self.q + self.p

    def companion(self) -> SturmianParams:
        other = "upper" if self.convention == "lower" else "lower"
        return SturmianParams(self.alpha, self.p, self.q, other)

    def label(self) -> str:
        return f"alpha={self.alpha},rho={self.p}+({self.q})alpha,conv={self.convention}"


class MechanicalStream(WordStream):
    """lower: floor(a(n+1)+rho) - floor(an+rho); upper: same with ceilings."""

    def __init__(self, params: SturmianParams, spec: str | None = None):
        super().__init__({0, 1},
                         {"generator": "mechanical", "alpha": str(params.alpha),
                          "p": str(params.p), "q": str(params.q), "convention": params.convention},
                         spec or f"mechanical:{params.label()}")
        self.params = params
        A, B, D = params.alpha.integer_form()
        p, q = params.p, params.q
        # alpha*n + rho = (rat(n) + sur(n)*sqrt(d)) / den, with rat, sur affine in n
        self._den = p.denominator * q.denominator * D
        self._rat0 = p.numerator * q.denominator * D + q.numerator * p.denominator * A
        self._rat1 = q.denominator * p.denominator * A
        self._sur0 = q.numerator * p.denominator * B
        self._sur1 = q.denominator * p.denominator * B
        self._d = params.alpha.d
        self._upper = params.convention == "upper"

    def _edge(self, n: int) -> int:
        a = self._rat0 + n * self._rat1
        b = self._sur0 + n * self._sur1
        if self._upper:
            return -floor_surd(-a, -b, self._d, self._den)
        return floor_surd(a, b, self._d, self._den)

    def _fill(self, n):
        start = len(self._buf)
        stop = max(n, start + 4096)
        edges = [self._edge(k) for k in range(start, stop + 1)]
        self._buf.extend(edges[i + 1] - edges[i] for i in range(stop - start))


def mechanical_word(params: SturmianParams) -> MechanicalStream:
    return MechanicalStream(params)


def characteristic_word(alpha: QuadraticReal) -> MechanicalStream:
    return MechanicalStream(SturmianParams(alpha, Fraction(0), Fraction(1), "lower"))


def m_bonacci_substitution(m: int) -> Substitution:
    if m < 2:
        raise InvalidArgument("m must be at least 2")
    return Substitution({i: (0, i + 1) if i < m - 1 else (0,) for i in range(m)})


def m_bonacci(m: int) -> FixedPointStream:
    s = FixedPointStream(m_bonacci_substitution(m), 0, "fibonacci" if m == 2 else f"mbonacci:{m}")
    s.description["family"] = f"{m}-bonacci"
    return s


def fibonacci() -> FixedPointStream:
    return m_bonacci(2)


def generalized_tm_substitution(r: int) -> Substitution:
    """j -> j, j+1, ..., r, 1, ..., j-1 on the letters 1..r."""
    if r < 2:
        raise InvalidArgument("r must be at least 2")
    return Substitution({j: tuple((j - 1 + t) % r + 1 for t in range(r)) for j in range(1, r + 1)})


def generalized_tm_fixed_point(r: int, i: int) -> FixedPointStream:
    if not 1 <= i <= r:
        raise InvalidArgument(f"letter {i} outside 1..{r}")
    return FixedPointStream(generalized_tm_substitution(r), i, f"tm:{r}:{i}")


WEAK_MIXING_RULES = {"11001": "0->001;1->11001", "11100": "0->001;1->11100"}


def weak_mixing_substitution(variant: str = "11001") -> Substitution:
    try:
        return Substitution.parse(WEAK_MIXING_RULES[variant])
    except KeyError:
        raise InvalidArgument(f"unknown weak-mixing variant {variant!r}") from None


def weak_mixing(variant: str = "11001") -> FixedPointStream:
    spec = "weakmix" if variant == "11001" else f"weakmix:{variant}"
    return FixedPointStream(weak_mixing_substitution(variant), 0, spec)
