"""Finite binary strings, eventually periodic reals and the E0 relations.

Reals in 2^omega are represented by eventually periodic sequences
``head · period^omega``.  Values are kept in a canonical form (shortest
period, shortest head), so structural equality is extensional equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Iterable, Iterator, Optional


_BIT_SET = frozenset((0, 1))


def _bits(values: Iterable[int]) -> tuple[int, ...]:
    if type(values) is tuple:
        out = values
    else:
        out = tuple(int(v) for v in values)
    if not _BIT_SET.issuperset(out):
        raise ValueError(f"not bits: {sorted(map(repr, set(out) - _BIT_SET))}")
    return out


class BitString(tuple):
    """A finite binary string; position 0 is the leftmost character."""

    __slots__ = ()

    def __new__(cls, bits: Iterable[int] | str = ()):
        if isinstance(bits, str):
            bits = [int(c) for c in bits if not c.isspace()]
        return super().__new__(cls, _bits(bits))

    @classmethod
    def parse(cls, text: str) -> "BitString":
        text = text.strip()
        if text in ("", "e", "ε"):
            return cls()
        if set(text) - {"0", "1"}:
            raise ValueError(f"malformed bit string: {text!r}")
        return cls(text)

    def __str__(self) -> str:
        return "".join(map(str, self))

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def __add__(self, other) -> "BitString":
        return BitString(tuple.__add__(self, tuple(other)))

    def extensions(self, extra: int) -> Iterator["BitString"]:
        """All extensions by exactly ``extra`` bits, in lexicographic order."""
        for tail in product((0, 1), repeat=extra):
            yield BitString(tuple(self) + tail)


def is_prefix(sigma: BitString, tau: BitString) -> bool:
    return len(sigma) <= len(tau) and tau[: len(sigma)] == tuple(sigma)


def _minimal_period(period: tuple[int, ...]) -> tuple[int, ...]:
    p = len(period)
    for d in range(1, p):
        if p % d == 0 and all(period[i] == period[i % d] for i in range(d, p)):
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicReal:
    """The real ``head · period · period · ...`` in canonical form."""

    head: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        head, period = _bits(self.head), _bits(self.period)
        if not period:
            raise ValueError("period must be nonempty")
        period = _minimal_period(period)
        while head and head[-1] == period[-1]:
            head = head[:-1]
            period = period[-1:] + period[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicReal":
        """Parse ``"head|period"``, e.g. ``"100|0"`` for 1 0 0 0 ..."""
        try:
            head, period = text.strip().split("|")
        except ValueError:
            raise ValueError(f"expected 'head|period', got {text!r}") from None
        return cls(BitString.parse(head), BitString.parse(period))

    @classmethod
    def constant(cls, bit: int) -> "EventuallyPeriodicReal":
        return cls((), (bit,))

    @classmethod
    def from_set(cls, members: Iterable[int]) -> "EventuallyPeriodicReal":
        """Characteristic function of a finite set of naturals."""
        members = set(members)
        if any(m < 0 for m in members):
            raise ValueError("set members must be naturals")
        size = max(members, default=-1) + 1
        return cls(tuple(int(i in members) for i in range(size)), (0,))

    def __str__(self) -> str:
        return f"{BitString(self.head)}|{BitString(self.period)}"

    def __call__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        h = len(self.head)
        if n < h:
            return self.head[n]
        return self.period[(n - h) % len(self.period)]

    def prefix(self, length: int) -> BitString:
        return BitString(self.bits(length))

    def bits(self, length: int) -> tuple[int, ...]:
        """The first ``length`` values as a plain tuple."""
        h, p = self.head, self.period
        if length <= len(h):
            return h[:length]
        reps = -(-(length - len(h)) // len(p))
        return (h + p * reps)[:length]

    def tail_key(self, n: int) -> tuple:
        """Canonical description of the restriction to ``[n, oo)``.

        Two reals agree on ``[n, oo)`` iff their tail keys at ``n`` match.
        """
        h = len(self.head)
        if n < h:
            return (self.head[n:], self.period)
        r = (n - h) % len(self.period)
        return ((), self.period[r:] + self.period[:r])

    def support(self) -> Optional[list[int]]:
        """Members of the set this real characterises, or None if infinite."""
        if any(self.period):
            return None
        return [i for i, b in enumerate(self.head) if b]


EPReal = EventuallyPeriodicReal


@dataclass(frozen=True)
class Window:
    """Exhaustive checks quantify over positions below ``limit``."""

    limit: int

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("window limit must be >= 1")


def agrees_from(x: EPReal, y: EPReal, n: int = 0) -> bool:
    """Decide agreement on ``[n, oo)`` by comparing up to the periodicity bound.

    Past both heads the pair is periodic with period lcm(|p1|, |p2|), so one
    full joint period beyond ``max(n, |h1|, |h2|)`` settles the question.
    """
    end = max(n, len(x.head), len(y.head)) + lcm(len(x.period), len(y.period))
    return all(x(i) == y(i) for i in range(n, end))


def splice(sigma: BitString, x: EPReal) -> EPReal:
    """The real equal to sigma below ``|sigma|`` and to x from there on."""
    k = len(sigma)
    if k <= len(x.head):
        return EPReal(tuple(sigma) + x.head[k:], x.period)
    r = (k - len(x.head)) % len(x.period)
    return EPReal(tuple(sigma), x.period[r:] + x.period[:r])


def hamming_window(x: EPReal, y: EPReal, w: Window) -> int:
    return sum(x(i) != y(i) for i in range(w.limit))


def eq_star_n(x: EPReal, y: EPReal, n: int) -> bool:
    """X =*_n Y: the two reals agree on every position >= n."""
    if n < 0:
        raise ValueError("n must be a natural number")
    return agrees_from(x, y, n)


def eq_star(x: EPReal, y: EPReal) -> Optional[int]:
    """Least n with X =*_n Y, or None when the reals are not E0-equivalent."""
    h = max(len(x.head), len(y.head))
    period = lcm(len(x.period), len(y.period))
    if any(x(i) != y(i) for i in range(h, h + period)):
        return None
    for i in range(h - 1, -1, -1):
        if x(i) != y(i):
            return i + 1
    return 0


def all_reals(head_length: int, tails: Iterable[int] = (0, 1)) -> Iterator[EPReal]:
    """Every real with a head of the given length followed by a constant tail."""
    tails = tuple(tails)
    for t in tails:
        for head in product((0, 1), repeat=head_length):
            yield EPReal(head, (t,))
