"""Finite and infinite words, occurrence sets, factor analytics, prefix codes.

Letters are nonnegative integers.  A finite word is a plain tuple of ints.
Every analytic function takes an explicit horizon and only ever inspects the
prefix ``w[0:horizon]`` (prefix-code partitions also read the code-word
length past the last position they classify).
"""

from __future__ import annotations

import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientData, InvalidArgument, NotMaximal

FiniteWord = tuple[int, ...]


def as_word(w: str | Iterable[int]) -> FiniteWord:
    """Normalise ``"0100"``, ``"0,1,2"`` or a sequence of ints into a word."""
    if isinstance(w, str):
        s = w.strip()
        if not s:
            return ()
        if "," in s or " " in s:
            return tuple(int(t) for t in s.replace(",", " ").split())
        return tuple(int(c) for c in s)
    return tuple(int(a) for a in w)


def word_str(w: Sequence[int]) -> str:
    if all(0 <= a < 10 for a in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


def is_prefix(u: Sequence[int], v: Sequence[int]) -> bool:
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)


class WordStream:
    """An index-addressable infinite word backed by a growing prefix buffer.

    Subclasses implement ``_fill(n)``, which must append letters to
    ``self._buf`` until it holds at least ``n`` of them.  Fills happen under a
    lock and are deterministic, so concurrent readers always agree.
    """

    def __init__(self, alphabet: Iterable[int] | None, description: dict, spec: str | None = None):
        self.alphabet = None if alphabet is None else frozenset(alphabet)
        self.description = dict(description)
        self.spec = spec
        self._buf: list[int] = []
        self._arr = np.zeros(0, dtype=np.int64)
        self._lock = threading.Lock()

    def _fill(self, n: int) -> None:
        raise NotImplementedError

    def _ensure(self, n: int) -> None:
        if len(self._buf) < n:
            with self._lock:
                if len(self._buf) < n:
                    self._fill(n)

    def letter_at(self, n: int) -> int:
        if n < 0:
            raise InvalidArgument("negative index")
        self._ensure(n + 1)
        return self._buf[n]

    def prefix(self, n: int) -> FiniteWord:
        self._ensure(n)
        return tuple(self._buf[:n])

    def window(self, start: int, length: int) -> FiniteWord:
        self._ensure(start + length)
        return tuple(self._buf[start:start + length])

    def array(self, n: int) -> np.ndarray:
        """Read-only int64 array of the first n letters."""
        arr = self._arr
        if len(arr) < n:
            self._ensure(n)
            with self._lock:
                if len(self._arr) < n:
                    size = max(n, min(len(self._buf), 2 * n))
                    new = np.array(self._buf[:size], dtype=np.int64)
                    new.setflags(write=False)
                    self._arr = new
                arr = self._arr
        return arr[:n]

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.stop is None or key.stop < 0:
                raise InvalidArgument("slices of an infinite word need an explicit stop")
            return self.prefix(key.stop)[key]
        return self.letter_at(key)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec or self.description} {word_str(self.prefix(12))}...>"


class PrependStream(WordStream):
    """The word ``head`` followed by ``base``."""

    def __init__(self, head: Sequence[int], base: WordStream, description: dict | None = None):
        head = tuple(head)
        alph = None if base.alphabet is None else set(base.alphabet) | set(head)
        spec = f"{word_str(head)}+{base.spec}" if base.spec else None
        super().__init__(alph, description or {"generator": "prepend", "head": list(head),
                                               "base": base.description}, spec)
        self.head = head
        self.base = base

    def _fill(self, n):
        if not self._buf:
            self._buf.extend(self.head)
        need = n - len(self._buf)
        if need > 0:
            k = len(self._buf) - len(self.head)
            self._buf.extend(self.base.prefix(k + need)[k:])


class PeriodicStream(WordStream):
    def __init__(self, period: Sequence[int]):
        period = tuple(period)
        if not period:
            raise InvalidArgument("empty period")
        super().__init__(set(period), {"generator": "periodic", "period": list(period)},
                         f"periodic:{word_str(period)}")
        self.period = period

    def _fill(self, n):
        p = self.period
        while len(self._buf) < n:
            self._buf.extend(p)


class FunctionStream(WordStream):
    """Letters given by a block function ``block(start, stop) -> list``."""

    def __init__(self, block, alphabet, description, spec=None, chunk: int = 4096):
        super().__init__(alphabet, description, spec)
        self._block = block
        self._chunk = chunk

    def _fill(self, n):
        start = len(self._buf)
        stop = max(n, start + self._chunk)
        self._buf.extend(self._block(start, stop))


# -- occurrence sets -------------------------------------------------------

@dataclass(frozen=True)
class OccurrenceSet:
    """Positions of ``factor`` in a stream, complete for n <= horizon - |factor|."""

    factor: FiniteWord
    horizon: int
    positions: tuple[int, ...]
    _members: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.positions))

    @property
    def bound(self) -> int:
        """Exclusive bound below which membership is decided."""
        return self.horizon - len(self.factor) + 1

    def __contains__(self, n: int) -> bool:
        if n >= self.bound:
            raise InsufficientData(f"{n} lies beyond the decided range [0, {self.bound})")
        return n in self._members

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def recheck(self, stream: WordStream) -> bool:
        """Independent rescan of the stream."""
        u = self.factor
        found = tuple(n for n in range(self.bound) if stream.window(n, len(u)) == u)
        return found == self.positions


def _window_mask(arr: np.ndarray, u: FiniteWord, count: int) -> np.ndarray:
    mask = np.ones(count, dtype=bool)
    for i, a in enumerate(u):
        mask &= arr[i:i + count] == a
    return mask


def occurrences(w: WordStream, u: str | Sequence[int], horizon: int) -> OccurrenceSet:
    u = as_word(u)
    if not u:
        raise InvalidArgument("empty factor")
    if horizon < len(u):
        raise InvalidArgument("horizon shorter than the factor")
    count = horizon - len(u) + 1
    mask = _window_mask(w.array(horizon), u, count)
    return OccurrenceSet(u, horizon, tuple(int(p) for p in np.flatnonzero(mask)))


def _windows(w: WordStream, n: int, horizon: int) -> np.ndarray:
    if n < 1 or n > horizon:
        raise InvalidArgument(f"need 1 <= n <= horizon, got n={n}, horizon={horizon}")
    return np.lib.stride_tricks.sliding_window_view(w.array(horizon), n)


def factors_of_length(w: WordStream, n: int, horizon: int) -> set[FiniteWord]:
    rows = np.unique(_windows(w, n, horizon), axis=0)
    return {tuple(int(a) for a in r) for r in rows}


@dataclass(frozen=True)
class ComplexityProfile:
    horizon: int
    counts: tuple[int, ...]

    def rho(self, n: int) -> int:
        return self.counts[n - 1]


def complexity_profile(w: WordStream, n_max: int, horizon: int) -> ComplexityProfile:
    """Factor counts for lengths 1..n_max, by refining window ids one letter at a time."""
    if n_max < 1 or n_max > horizon:
        raise InvalidArgument(f"need 1 <= n_max <= horizon, got {n_max}")
    arr = w.array(horizon)
    radix = int(arr.max()) + 1 if len(arr) else 1
    ids = arr.copy()
    counts = []
    for n in range(1, n_max + 1):
        if n > 1:
            key = ids[:-1] * radix + arr[n - 1:]
            _, ids = np.unique(key, return_inverse=True)
            ids = ids.astype(np.int64).ravel()
        else:
            _, ids = np.unique(ids, return_inverse=True)
            ids = ids.astype(np.int64).ravel()
        counts.append(int(ids.max()) + 1)
    return ComplexityProfile(horizon, tuple(counts))


@dataclass(frozen=True)
class SpecialFactors:
    length: int
    horizon: int
    left: frozenset
    right: frozenset

    @property
    def bispecial(self) -> frozenset:
        return self.left & self.right


def special_factors(w: WordStream, n: int, horizon: int) -> SpecialFactors:
    ext = factors_of_length(w, n + 1, horizon)
    lefts: dict[FiniteWord, set[int]] = {}
    rights: dict[FiniteWord, set[int]] = {}
    for v in ext:
        lefts.setdefault(v[1:], set()).add(v[0])
        rights.setdefault(v[:-1], set()).add(v[-1])
    return SpecialFactors(
        n, horizon,
        frozenset(u for u, s in lefts.items() if len(s) > 1),
        frozenset(u for u, s in rights.items() if len(s) > 1),
    )


def recurrence_gap(w: WordStream, u: str | Sequence[int], horizon: int) -> int:
    pos = occurrences(w, u, horizon).positions
    if len(pos) < 2:
        raise InsufficientData(f"{word_str(as_word(u))} occurs fewer than twice below {horizon}")
    return max(b - a for a, b in zip(pos, pos[1:]))


# -- prefix codes ----------------------------------------------------------

@dataclass(frozen=True)
class PrefixCode:
    code_words: frozenset

    def __init__(self, words: Iterable):
        ws = frozenset(as_word(u) for u in words)
        if not ws or () in ws:
            raise InvalidArgument("a prefix code needs nonempty code words")
        for u in ws:
            for v in ws:
                if u != v and is_prefix(u, v):
                    raise InvalidArgument(f"{word_str(u)} is a prefix of {word_str(v)}")
        object.__setattr__(self, "code_words", ws)

    def __iter__(self):
        return iter(sorted(self.code_words))


@dataclass(frozen=True)
class PrefixCodePartition:
    code: PrefixCode
    horizon: int
    classes: dict  # code word -> tuple of positions < horizon

    def classify(self, n: int) -> FiniteWord:
        for u, pos in self.classes.items():
            if n in pos:
                return u
        raise InvalidArgument(f"{n} is outside [0, {self.horizon})")


def prefix_code_partition(w: WordStream, code: PrefixCode | Iterable, horizon: int) -> PrefixCodePartition:
    if not isinstance(code, PrefixCode):
        code = PrefixCode(code)
    longest = max(len(u) for u in code.code_words)
    arr = w.array(horizon + longest)
    owner = np.full(horizon, -1, dtype=np.int64)
    words = sorted(code.code_words)
    for idx, u in enumerate(words):
        mask = _window_mask(arr, u, horizon)
        if not mask.any():
            raise InvalidArgument(f"{word_str(u)} is not a factor within the horizon")
        owner[mask] = idx
    missing = np.flatnonzero(owner < 0)
    if len(missing):
        p = int(missing[0])
        raise NotMaximal(p, w.window(p, longest))
    classes = {u: tuple(int(p) for p in np.flatnonzero(owner == i)) for i, u in enumerate(words)}
    return PrefixCodePartition(code, horizon, classes)
