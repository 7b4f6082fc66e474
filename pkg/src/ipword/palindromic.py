"""Right palindromic closure, iterated closure psi, and the infinite partition of
the positive integers read off the psi-image of the staircase directive word."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import InvalidArgument
from .words import FunctionStream, PeriodicStream, WordStream, as_word


def _is_pal(w: Sequence) -> bool:
    return all(w[i] == w[-1 - i] for i in range(len(w) // 2))


def longest_palindromic_suffix_direct(w: Sequence) -> int:
    """Length of the longest palindromic suffix, by direct scan (quadratic)."""
    n = len(w)
    for start in range(n):
        if _is_pal(w[start:]):
            return n - start
    return 0


def longest_palindromic_suffix(w: Sequence) -> int:
    """Same as the direct scan in linear time: the KMP border of
    reverse(w) # w is the longest prefix of reverse(w) ending w, a palindrome."""
    n = len(w)
    if n == 0:
        return 0
    sep = object()
    s = list(w[::-1]) + [sep] + list(w)
    fail = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return fail[-1]


def pal_closure(w):
    """Shortest palindrome having ``w`` as a prefix.  Strings stay strings."""
    k = longest_palindromic_suffix(w)
    head = w[: len(w) - k]
    if isinstance(w, str):
        return w + head[::-1]
    w = tuple(w)
    return w + tuple(head)[::-1]


def iterated_pal_closure(prefix):
    """psi applied letter by letter; psi of the empty word is empty."""
    text = isinstance(prefix, str)
    out = "" if text else ()
    for a in prefix:
        out = pal_closure(out + (a if text else (a,)))
    return out


# -- directive sequences ---------------------------------------------------

def _staircase_block(start, stop):
    # 0; 0,1; 0,1,2; ...  Block t (t >= 1) spans indices t(t-1)/2 .. t(t+1)/2 - 1.
    out = []
    for n in range(start, stop):
        t = (1 + isqrt(8 * n + 1)) // 2
        out.append(n - t * (t - 1) // 2)
    return out


def staircase() -> WordStream:
    return FunctionStream(_staircase_block, None, {"directive": "staircase"}, "staircase")


def constant(a: int) -> WordStream:
    s = PeriodicStream((int(a),))
    s.description = {"directive": "constant", "letter": int(a)}
    s.spec = f"constant:{int(a)}"
    return s


def periodic(word) -> WordStream:
    return PeriodicStream(as_word(word))


# -- the limit word psi(delta) ---------------------------------------------

class PsiStream(WordStream):
    """psi of an infinite directive word.

    Extends psi one directive letter at a time with the Justin-type update:
    if a last occurred at directive index j, psi(wa) = psi(w) + psi(w)[|psi(delta[:j])|:],
    otherwise psi(wa) = psi(w) a psi(w).  The direct closure is the oracle in tests.
    """

    def __init__(self, delta: WordStream, spec: str | None = None):
        super().__init__(None, {"generator": "psi", "directive": delta.description},
                         spec or (f"psi-{delta.spec}" if delta.spec else None))
        self.delta = delta
        self.steps = 0  # directive letters consumed
        self._lengths = [0]  # |psi(delta[:i])|
        self._last: dict[int, int] = {}

    def _step(self):
        buf, i = self._buf, self.steps
        a = self.delta.letter_at(i)
        j = self._last.get(a)
        if j is None:
            buf.extend([a] + buf[:])
        else:
            buf.extend(buf[self._lengths[j]:])
        self._last[a] = i
        self.steps += 1
        self._lengths.append(len(buf))

    def _fill(self, n):
        while len(self._buf) < n:
            self._step()

    def palindromic_prefix_lengths(self) -> tuple[int, ...]:
        """|psi(delta[:i])| for the directive prefixes consumed so far."""
        return tuple(self._lengths)


def psi_stream(delta: WordStream) -> PsiStream:
    return PsiStream(delta)


def psi_staircase() -> PsiStream:
    return PsiStream(staircase(), "psi-staircase")


# -- infinite partition ------------------------------------------------------

@dataclass(frozen=True)
class CentralPartition:
    horizon: int
    classes: dict  # letter -> tuple of n in [1, horizon)
    verified: bool

    def class_of(self, n: int) -> int:
        if not 1 <= n < self.horizon:
            raise InvalidArgument(f"{n} is outside [1, {self.horizon})")
        for a, members in self.classes.items():
            if n in members:
                return a
        raise AssertionError("unreachable for a verified partition")

    def to_dict(self):
        return {"kind": "central-partition", "horizon": self.horizon,
                "classes": {str(a): list(v) for a, v in sorted(self.classes.items())},
                "verified": self.verified}


def infinite_central_partition(horizon: int) -> CentralPartition:
    """n >= 1 goes to class omega_{n-1}, omega = psi(staircase)."""
    if horizon < 2:
        raise InvalidArgument("horizon must be at least 2")
    arr = psi_staircase().array(horizon - 1)
    classes = {int(a): tuple(int(p) + 1 for p in np.flatnonzero(arr == a)) for a in np.unique(arr)}
    seen = sorted(n for v in classes.values() for n in v)
    verified = seen == list(range(1, horizon))
    return CentralPartition(horizon, classes, verified)

