"""Finite-sum sets, FS-subset certificates, witness search and partition-based
non-IP certificates.

A *target* is a subset of N whose membership is decided below an exclusive
``bound``.  Targets serialize to plain dicts so that certificates can be
re-verified from their JSON form alone.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InsufficientData, InvalidArgument, ResourceLimit, UnsupportedFormat
from .generators import GOLDEN_ALPHA
from .numeration import digit_rule_letter
from .quadratic import QuadraticReal
from .words import WordStream, as_word, occurrences, word_str

MAX_FS_GENERATORS = 25


# -- targets ---------------------------------------------------------------

class Target:
    bound: int
    label: str = "target"

    def _test(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self.bound:
            raise InsufficientData(f"{n} is beyond the decided range [0, {self.bound}) of {self.label}")
        return self._test(n)

    def mask(self, stop: int) -> np.ndarray:
        if stop > self.bound:
            raise InsufficientData(f"{self.label} is decided only below {self.bound}")
        return np.fromiter((self._test(n) for n in range(stop)), dtype=bool, count=stop)

    def members(self, stop: int) -> np.ndarray:
        return np.flatnonzero(self.mask(stop))

    def contains_many(self, values: Iterable[int]) -> np.ndarray:
        return np.array([v in self for v in values], dtype=bool)

    def to_dict(self) -> dict:
        raise UnsupportedFormat(f"{type(self).__name__} is not serializable")


class OccurrenceTarget(Target):
    """w|_u, decided for positions n <= horizon - |u|."""

    def __init__(self, stream: WordStream, factor, horizon: int):
        self.stream = stream
        self.factor = as_word(factor)
        self.horizon = horizon
        self.occ = occurrences(stream, self.factor, horizon)
        self.bound = self.occ.bound
        self._mask = np.zeros(self.bound, dtype=bool)
        self._mask[list(self.occ.positions)] = True
        self.label = f"{stream.spec or 'word'}|{word_str(self.factor)}"

    def _test(self, n):
        return bool(self._mask[n])

    def mask(self, stop):
        if stop > self.bound:
            raise InsufficientData(f"{self.label} is decided only below {self.bound}")
        return self._mask[:stop].copy()

    def contains_many(self, values):
        v = np.asarray(list(values), dtype=object)
        if len(v) and (v.max() >= self.bound):
            raise InsufficientData(f"sum {v.max()} is beyond the decided range of {self.label}")
        return self._mask[v.astype(np.int64)] if len(v) else np.zeros(0, dtype=bool)

    def to_dict(self):
        if self.stream.spec is None:
            raise UnsupportedFormat("stream has no reproducible spec")
        return {"type": "occurrences", "word": self.stream.spec,
                "factor": list(self.factor), "horizon": self.horizon}


class FiniteTarget(Target):
    def __init__(self, elements: Iterable[int], bound: int):
        self.elements = frozenset(int(e) for e in elements)
        self.bound = bound
        if any(e >= bound or e < 0 for e in self.elements):
            raise InvalidArgument("finite target elements must lie in [0, bound)")
        self.label = "finite set"

    def _test(self, n):
        return n in self.elements

    def to_dict(self):
        return {"type": "finite", "elements": sorted(self.elements), "bound": self.bound}


class ResidueTarget(Target):
    """{n : n mod modulus in residues}, e.g. the odd numbers."""

    def __init__(self, modulus: int, residues: Iterable[int], bound: int):
        self.modulus = modulus
        self.residues = frozenset(r % modulus for r in residues)
        self.bound = bound
        self.label = f"residues {sorted(self.residues)} mod {modulus}"

    def _test(self, n):
        return n % self.modulus in self.residues

    def mask(self, stop):
        if stop > self.bound:
            raise InsufficientData(f"{self.label} is decided only below {self.bound}")
        return np.isin(np.arange(stop) % self.modulus, list(self.residues))

    def to_dict(self):
        return {"type": "residues", "modulus": self.modulus,
                "residues": sorted(self.residues), "bound": self.bound}


class RotationTarget(Target):
    """{n : left <= frac((n + offset) * alpha) < right}, decided exactly."""

    def __init__(self, alpha: QuadraticReal, left: QuadraticReal, right: QuadraticReal,
                 bound: int, offset: int = 1):
        self.alpha, self.left, self.right = alpha, left, right
        self.offset = offset
        self.bound = bound
        self.label = f"rotation [{float(left):.4f}, {float(right):.4f})"

    def _test(self, n):
        x = (self.alpha * (n + self.offset)).frac()
        return self.left <= x < self.right

    def to_dict(self):
        return {"type": "rotation", "alpha": str(self.alpha), "left": str(self.left),
                "right": str(self.right), "offset": self.offset, "bound": self.bound}


class DigitRuleTarget(Target):
    """{n : g_n = letter} with g = 0t decided through the m-Zeckendorff digit rule.

    Membership costs O(log n), so the bound may be astronomically large.
    """

    def __init__(self, m: int, letter: int, bound: int):
        self.m, self.letter, self.bound = m, letter, bound
        self.label = f"digit-rule g|{letter} (m={m})"

    def _test(self, n):
        return digit_rule_letter(self.m, n) == self.letter

    def to_dict(self):
        return {"type": "digit-rule", "m": self.m, "letter": self.letter, "bound": self.bound}


def target_from_dict(doc: dict) -> Target:
    from .presets import parse_word  # presets imports this module

    kind = doc.get("type")
    if kind == "occurrences":
        return OccurrenceTarget(parse_word(doc["word"]), doc["factor"], int(doc["horizon"]))
    if kind == "finite":
        return FiniteTarget(doc["elements"], int(doc["bound"]))
    if kind == "residues":
        return ResidueTarget(int(doc["modulus"]), doc["residues"], int(doc["bound"]))
    if kind == "rotation":
        return RotationTarget(QuadraticReal.parse(doc["alpha"]), QuadraticReal.parse(doc["left"]),
                              QuadraticReal.parse(doc["right"]), int(doc["bound"]),
                              int(doc.get("offset", 1)))
    if kind == "digit-rule":
        return DigitRuleTarget(int(doc["m"]), int(doc["letter"]), int(doc["bound"]))
    raise InvalidArgument(f"unknown target type {kind!r}")


# -- finite sums ---------------------------------------------------------

def check_generators(xs: Sequence[int]) -> list[int]:
    xs = [int(x) for x in xs]
    if not xs:
        raise InvalidArgument("need at least one generator")
    if any(x < 0 for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
        raise InvalidArgument("generators must be strictly increasing naturals")
    if len(xs) > MAX_FS_GENERATORS:
        raise ResourceLimit(f"{len(xs)} generators exceed the limit of {MAX_FS_GENERATORS}")
    return xs


def subset_sums(xs: Sequence[int]) -> list[int]:
    """All 2^k subset sums; index j is the sum over the bits set in j (j = 0 is empty)."""
    sums = [0]
    for x in xs:
        sums += [s + x for s in sums]
    return sums


def fs_set(xs: Sequence[int]) -> list[int]:
    xs = check_generators(xs)
    return sorted(set(subset_sums(xs)[1:]))


@dataclass(frozen=True)
class FsCertificate:
    generators: tuple[int, ...]
    target: Target
    sums_checked: int

    def to_dict(self):
        return {"kind": "fs-certificate", "generators": list(self.generators),
                "target": self.target.to_dict(), "bound": self.target.bound,
                "sums_checked": self.sums_checked, "verified": True}


@dataclass(frozen=True)
class FsViolation:
    generators: tuple[int, ...]
    subset: tuple[int, ...]  # indices into generators
    value: int

    def to_dict(self):
        return {"kind": "fs-violation", "generators": list(self.generators),
                "subset": list(self.subset), "sum": self.value, "verified": False}


def verify_fs_subset(xs: Sequence[int], target: Target) -> FsCertificate | FsViolation:
    xs = check_generators(xs)
    if sum(xs) >= target.bound:
        raise InsufficientData(f"largest sum {sum(xs)} needs a bound above {target.bound}")
    sums = subset_sums(xs)
    ok = target.contains_many(sums[1:])
    bad = np.flatnonzero(~ok)
    if len(bad):
        j = int(bad[0]) + 1
        subset = tuple(i for i in range(len(xs)) if j >> i & 1)
        return FsViolation(tuple(xs), subset, sums[j])
    return FsCertificate(tuple(xs), target, len(sums) - 1)


def ip_witness_search(target: Target, k: int, bound: int) -> tuple[int, ...] | None:
    """Lexicographically smallest x1 < ... < xk (all >= 1) with FS inside target below bound.

    ``None`` only means no witness exists below ``bound``.
    """
    if k < 1 or k > 12:
        raise InvalidArgument("k must lie in 1..12")
    if bound > target.bound:
        raise InsufficientData(f"bound {bound} exceeds the decided range {target.bound}")
    mask = target.mask(bound)
    members = np.flatnonzero(mask)
    members = members[members >= 1]

    def extend(chosen, sums):
        if len(chosen) == k:
            return tuple(chosen)
        top = int(sums.max())
        last = chosen[-1] if chosen else 0
        cands = members[(members > last) & (members + top < bound)]
        if not len(cands):
            return None
        ok = mask[cands[:, None] + sums[None, :]].all(axis=1)
        for c in cands[ok]:
            c = int(c)
            found = extend(chosen + [c], np.concatenate([sums, sums + c]))
            if found:
                return found
        return None

    return extend([], np.zeros(1, dtype=np.int64))


@dataclass(frozen=True)
class FsBigWitness:
    k: int
    generators: tuple[int, ...]
    target: Target

    def to_dict(self):
        return {"kind": "fs-big-witness", "k": self.k, "generators": list(self.generators),
                "target": self.target.to_dict(), "bound": self.target.bound, "verified": True}


def finite_fs_big_check(target: Target, k: int, bound: int) -> FsBigWitness | None:
    found = ip_witness_search(target, k, bound)
    return None if found is None else FsBigWitness(k, found, target)


# -- non-IP certificates ---------------------------------------------------

@dataclass(frozen=True)
class NonIpCertificate:
    target: Target
    classes: tuple[Target, ...]
    arities: tuple[int, ...]
    bound: int
    sums_checked: tuple[int, ...]

    def to_dict(self):
        return {"kind": "non-ip-certificate", "target": self.target.to_dict(),
                "classes": [c.to_dict() for c in self.classes], "arities": list(self.arities),
                "bound": self.bound, "sums_checked": list(self.sums_checked), "verified": True}


@dataclass(frozen=True)
class NonIpCounterexample:
    class_index: int
    elements: tuple[int, ...]
    value: int

    def to_dict(self):
        return {"kind": "non-ip-counterexample", "class": self.class_index,
                "elements": list(self.elements), "sum": self.value, "verified": False}


def _sums_outside(elements: np.ndarray, arity: int, target_mask: np.ndarray, bound: int):
    """Count arity-subsets of distinct elements summing below bound; stop at the first
    sum that lands inside the target.  Returns (count, violating tuple or None)."""
    count = 0

    def rec(start, chosen, total):
        nonlocal count
        if len(chosen) == arity - 1:
            tail = elements[start:]
            tail = tail[tail + total < bound]
            count += len(tail)
            hit = np.flatnonzero(target_mask[tail + total])
            if len(hit):
                x = int(tail[hit[0]])
                return tuple(chosen) + (x,)
            return None
        for i in range(start, len(elements)):
            e = int(elements[i])
            # the remaining picks are all larger than e
            if total + e * (arity - len(chosen)) >= bound:
                break
            found = rec(i + 1, chosen + [e], total + e)
            if found:
                return found
        return None

    found = rec(0, [], 0)
    return count, found


def non_ip_partition_certificate(target: Target, classes: Sequence[Target],
                                 arities: Sequence[int], bound: int):
    if len(classes) != len(arities) or not classes:
        raise InvalidArgument("need one arity per class")
    if any(n < 1 for n in arities):
        raise InvalidArgument("arities must be positive")
    tmask = target.mask(bound)
    cmasks = [c.mask(bound) for c in classes]
    cover = np.zeros(bound, dtype=np.int64)
    for cm in cmasks:
        cover += cm
    if (cover > 1).any():
        raise InvalidArgument(f"classes overlap at {int(np.flatnonzero(cover > 1)[0])}")
    if not np.array_equal(cover == 1, tmask):
        raise InvalidArgument(f"classes do not partition the target (first mismatch at "
                              f"{int(np.flatnonzero((cover == 1) != tmask)[0])})")
    checked = []
    for j, (cm, n) in enumerate(zip(cmasks, arities)):
        count, bad = _sums_outside(np.flatnonzero(cm), n, tmask, bound)
        if bad:
            return NonIpCounterexample(j, bad, sum(bad))
        checked.append(count)
    return NonIpCertificate(target, tuple(classes), tuple(arities), bound, tuple(checked))


def fibonacci_split_classes(alpha_prime: QuadraticReal, bound: int,
                            alpha: QuadraticReal = GOLDEN_ALPHA):
    """The two rotation classes splitting f|_1: [1-a, 1-a') and [1-a', 1),
    each read at the point frac((n+1) a)."""
    one = QuadraticReal.rational(1, alpha.d)
    a1 = RotationTarget(alpha, one - alpha, one - alpha_prime, bound, offset=1)
    a2 = RotationTarget(alpha, one - alpha_prime, one, bound, offset=1)
    return a1, a2


def split_point(fraction: Fraction | int, alpha: QuadraticReal = GOLDEN_ALPHA) -> QuadraticReal:
    """alpha' = fraction * (1 - alpha)."""
    return (1 - alpha) * Fraction(fraction)


def verify_certificate(doc: dict) -> bool:
    """Re-check an ipcheck certificate from its serialized form only."""
    kind = doc.get("kind")
    if kind == "fs-certificate":
        target = target_from_dict(doc["target"])
        res = verify_fs_subset(doc["generators"], target)
        return isinstance(res, FsCertificate) and res.sums_checked == doc["sums_checked"]
    if kind == "fs-big-witness":
        target = target_from_dict(doc["target"])
        gens = doc["generators"]
        return len(gens) == doc["k"] and isinstance(verify_fs_subset(gens, target), FsCertificate)
    if kind == "non-ip-certificate":
        res = non_ip_partition_certificate(
            target_from_dict(doc["target"]), [target_from_dict(c) for c in doc["classes"]],
            doc["arities"], int(doc["bound"]))
        return isinstance(res, NonIpCertificate) and list(res.sums_checked) == doc["sums_checked"]
    raise InvalidArgument(f"not an ipcheck certificate: {kind!r}")
