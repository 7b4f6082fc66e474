"""Fibonacci / m-bonacci numbers and greedy (Zeckendorff) representations.

Base terms: T_k = 2^k for k < m, then T_k = T_{k-1} + ... + T_{k-m}.
For m = 2 this is F_0 = 1, F_1 = 2, F_2 = 3, F_3 = 5, ...
Digit words are written most significant digit first.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidArgument


class NumerationBase:
    def __init__(self, m: int):
        if m < 2:
            raise InvalidArgument("m must be at least 2")
        self.m = m
        self._terms = [2 ** k for k in range(m)]
        self._lock = threading.Lock()

    def _extend_to(self, count: int) -> None:
        if len(self._terms) >= count:
            return
        with self._lock:
            t, m = self._terms, self.m
            while len(t) < count:
                t.append(sum(t[-m:]))

    def _cover(self, n: int) -> None:
        while self._terms[-1] <= n:
            self._extend_to(len(self._terms) + 8)

    def term(self, k: int) -> int:
        self._extend_to(k + 1)
        return self._terms[k]

    def terms(self, k: int) -> list[int]:
        self._extend_to(k)
        return self._terms[:k]

    def top_index(self, n: int) -> int:
        """Largest k with T_k <= n (n >= 1)."""
        self._cover(n)
        return bisect_right(self._terms, n) - 1


@lru_cache(maxsize=None)
def numeration_base(m: int) -> NumerationBase:
    return NumerationBase(m)


def base_terms(m: int, k: int) -> list[int]:
    if k < 1:
        raise InvalidArgument("k must be at least 1")
    return numeration_base(m).terms(k)


@dataclass(frozen=True)
class DigitWord:
    digits: tuple[int, ...]
    m: int = 2

    def __post_init__(self):
        if self.digits and self.digits[0] != 1:
            raise InvalidArgument("leading digit must be 1")
        if set(self.digits) - {0, 1}:
            raise InvalidArgument("digits must be 0 or 1")
        if "1" * self.m in str(self):
            raise InvalidArgument(f"contains {self.m} consecutive 1s")

    @classmethod
    def parse(cls, text: str, m: int = 2) -> DigitWord:
        return cls(tuple(int(c) for c in text.strip()), m)

    def trailing_ones(self) -> int:
        k = 0
        for t in reversed(self.digits):
            if t != 1:
                break
            k += 1
        return k

    def __str__(self):
        return "".join(map(str, self.digits))

    def __len__(self):
        return len(self.digits)


def _greedy_digits(m: int, n: int) -> tuple[int, ...]:
    base = numeration_base(m)
    k = base.top_index(n)
    terms = base.terms(k + 1)
    out = []
    for i in range(k, -1, -1):
        if terms[i] <= n:
            out.append(1)
            n -= terms[i]
        else:
            out.append(0)
    return tuple(out)


def greedy_representation(m: int, n: int) -> DigitWord:
    if m < 2:
        raise InvalidArgument("m must be at least 2")
    if n < 0:
        raise InvalidArgument("cannot represent a negative number")
    if n == 0:
        return DigitWord((), m)
    return DigitWord(_greedy_digits(m, n), m)


def decode_value(m: int, w: DigitWord | str | Sequence[int]) -> int:
    if isinstance(w, DigitWord):
        digits = w.digits
    elif isinstance(w, str):
        digits = tuple(int(c) for c in w.strip())
    else:
        digits = tuple(w)
    if set(digits) - {0, 1}:
        raise InvalidArgument("digits must be 0 or 1")
    terms = numeration_base(m).terms(len(digits)) if digits else []
    return sum(t for t, digit in zip(reversed(terms), digits) if digit)


def digit_rule_letter(m: int, n: int) -> int:
    """Letter n of g = 0t (t the m-bonacci word): trailing 1s of Z_m(n-1).

    A representation that is entirely 1s counts all of them; g_0 = 0.
    """
    if n < 0:
        raise InvalidArgument("negative index")
    if n <= 1:
        return 0
    k = 0
    for t in reversed(_greedy_digits(m, n - 1)):
        if t != 1:
            break
        k += 1
    return k


def fs_generators(m: int, k: int, count: int) -> list[int]:
    """x_n = T_{mn+k} for n < count."""
    if not 0 <= k < m:
        raise InvalidArgument(f"need 0 <= k < m, got k={k}")
    base = numeration_base(m)
    return [base.term(m * n + k) for n in range(count)]


def fibonacci_odd(count: int) -> list[int]:
    """F_1, F_3, F_5, ... (F_0 = 1)."""
    return fs_generators(2, 1, count)


def fibonacci_even(count: int) -> list[int]:
    """F_2, F_4, F_6, ..."""
    base = numeration_base(2)
    return [base.term(2 * n + 2) for n in range(count)]
