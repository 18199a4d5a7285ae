"""Finite-support permutations of omega and recovery from successor conjugates.

If k = theta^-1 . S . theta is known (S the successor), then theta^-1 is
determined by its value at 0 through theta^-1(m+1) = k(theta^-1(m)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Mapping, Sequence

from .core_bits import EPReal


class OutOfWindowError(ValueError):
    """An iterate left the range covered by the supplied table."""


@dataclass(frozen=True)
class FinSupPermutation:
    """A bijection of omega that is the identity off a finite set.

    ``exceptions`` lists ``(n, theta(n))`` for every moved point, sorted.
    """

    exceptions: tuple[tuple[int, int], ...] = ()
    inverse_exceptions: tuple[tuple[int, int], ...] = field(
        default=(), compare=False, repr=False
    )

    def __post_init__(self):
        points = [int(n) for n, _ in self.exceptions]
        if len(set(points)) != len(points):
            raise ValueError("duplicate points in permutation")
        moved = {int(n): int(m) for n, m in self.exceptions if int(n) != int(m)}
        if any(n < 0 or m < 0 for n, m in moved.items()):
            raise ValueError("permutation points must be naturals")
        if set(moved) != set(moved.values()):
            raise ValueError(f"not a permutation with finite support: {dict(moved)}")
        inverse = {m: n for n, m in moved.items()}
        object.__setattr__(self, "exceptions", tuple(sorted(moved.items())))
        object.__setattr__(self, "inverse_exceptions", tuple(sorted(inverse.items())))
        object.__setattr__(self, "_fwd", moved)
        object.__setattr__(self, "_bwd", inverse)

    @classmethod
    def identity(cls) -> "FinSupPermutation":
        return cls()

    @classmethod
    def swap(cls, a: int, b: int) -> "FinSupPermutation":
        return cls(((a, b), (b, a)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "FinSupPermutation":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "FinSupPermutation":
        """Permutation with theta(i) = images[i] below len(images), identity above."""
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{list(images)} is not a permutation of range({len(images)})")
        return cls(tuple(enumerate(images)))

    @classmethod
    def from_json(cls, data) -> "FinSupPermutation":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple((int(a), int(b)) for a, b in data["pairs"]))

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.exceptions]}

    def __call__(self, n: int) -> int:
        return self._fwd.get(n, n)

    def inv(self, n: int) -> int:
        return self._bwd.get(n, n)

    def inverse(self) -> "FinSupPermutation":
        return FinSupPermutation(self.inverse_exceptions)

    def then(self, other: "FinSupPermutation") -> "FinSupPermutation":
        """The permutation n -> other(self(n))."""
        points = set(self.support()) | set(other.support())
        return FinSupPermutation(tuple((n, other(self(n))) for n in points))

    def support(self) -> list[int]:
        return [n for n, _ in self.exceptions]

    def bound(self) -> int:
        """Least N such that theta is the identity on [N, oo)."""
        return max(self.support(), default=-1) + 1

    def table(self, upto: int) -> list[int]:
        return [self(n) for n in range(upto)]

    def inverse_table(self, upto: int) -> list[int]:
        return [self.inv(n) for n in range(upto)]

    def __str__(self) -> str:
        if not self.exceptions:
            return "id"
        return json.dumps(self.to_json(), separators=(",", ":"))


def permutations_of(size: int) -> Iterator[FinSupPermutation]:
    """All permutations with support inside {0, ..., size-1}."""
    for images in permutations(range(size)):
        yield FinSupPermutation.from_images(images)


def conjugate_successor(theta: FinSupPermutation, upto: int) -> list[int]:
    """Table of k = theta^-1 . S . theta on [0, upto)."""
    return [theta.inv(theta(n) + 1) for n in range(upto)]


def recover_inverse(k: Sequence[int], seed: int, m: int) -> list[int]:
    """Table of theta^-1 on [0, m) by iterating t(j+1) = k(t(j)) from t(0) = seed.

    Raises OutOfWindowError when an iterate reaches m or beyond.
    """
    out = []
    t = seed
    for j in range(m):
        if not 0 <= t < m:
            raise OutOfWindowError(f"iterate t({j}) = {t} is outside [0, {m})")
        out.append(t)
        if j + 1 < m:
            if t >= len(k):
                raise OutOfWindowError(f"k is not tabulated at {t}")
            t = k[t]
    return out


def induced_map(theta: FinSupPermutation, x: EPReal) -> EPReal:
    """The real A . theta, i.e. n -> x(theta(n))."""
    h = max(len(x.head), theta.bound())
    bits = x.bits(h + len(x.period))
    fwd = theta._fwd
    head = tuple(bits[fwd.get(n, n)] for n in range(h))
    return EPReal(head, tuple(bits[h:]))


def load_table(data) -> list[int]:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list) or not all(isinstance(v, int) and v >= 0 for v in data):
        raise ValueError("a table must be a JSON array of naturals")
    return data
