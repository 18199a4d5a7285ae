"""Uniform E0-invariance: moduli, bounded checks, the min-drop map and
truth-table extraction from a forcing condition.

F is uniformly E0-invariant with modulus a -> b when X =*_a Y always
implies F(X) =*_b F(Y).  Checks here run over a finite universe: every real
whose head has ``w.limit`` bits followed by 0^omega or 1^omega.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional, Union

from .core_bits import (
    BitString,
    EPReal,
    Window,
    eq_star,
    eq_star_n,
    hamming_window,
)
from .generic_elimination import BudgetExhausted, PartialOracleFunctional
from .perm_recovery import FinSupPermutation, induced_map
from .tt_algebra import (
    DEFAULT_MAX_USE,
    MissingTableError,
    OutputTable,
    TruthTableFunctional,
    UseLimitExceeded,
)


class RangeExceeded(LookupError):
    """A modulus table was queried outside its tabulated range."""


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class UniformModulus:
    """A table a -> b, normalised to be nondecreasing."""

    modulus: tuple[int, ...]

    def __post_init__(self):
        out, best = [], 0
        for b in self.modulus:
            best = max(best, int(b))
            out.append(best)
        object.__setattr__(self, "modulus", tuple(out))

    def __call__(self, a: int) -> int:
        if not 0 <= a < len(self.modulus):
            raise RangeExceeded(f"modulus tabulated on [0, {len(self.modulus)}), asked {a}")
        return self.modulus[a]

    def __len__(self) -> int:
        return len(self.modulus)

    @classmethod
    def identity(cls, upto: int) -> "UniformModulus":
        return cls(tuple(range(upto)))

    @classmethod
    def shift(cls, upto: int) -> "UniformModulus":
        return cls(tuple(max(a - 1, 0) for a in range(upto)))

    @classmethod
    def for_permutation(cls, theta: FinSupPermutation, upto: int) -> "UniformModulus":
        return cls(tuple(perm_modulus(theta, a) for a in range(upto)))


def modulus_compose(outer: UniformModulus, inner: UniformModulus) -> UniformModulus:
    """Modulus of outer-map . inner-map: a -> outer(inner(a))."""
    return UniformModulus(tuple(outer(inner(a)) for a in range(len(inner))))


def perm_modulus(theta: FinSupPermutation, a: int) -> int:
    """Modulus of A -> A . theta at a: 1 + max{theta^-1(m) : m < a}, or 0 when a = 0."""
    if a == 0:
        return 0
    return max(theta.inv(m) for m in range(a)) + 1


@dataclass(frozen=True)
class CantorMap:
    evaluator: Callable[[EPReal], EPReal] = field(compare=False)
    description: str = "map"

    def __call__(self, x: EPReal) -> EPReal:
        return self.evaluator(x)

    def __str__(self) -> str:
        return self.description


def min_drop(x: EPReal) -> EPReal:
    """Remove the least element of the set x (x itself when empty)."""
    for i, bit in enumerate(x.head):
        if bit:
            return EPReal(x.head[:i] + (0,) + x.head[i + 1 :], x.period)
    if 1 not in x.period:
        return x
    j = x.period.index(1)
    p = x.period
    head = x.head + p[:j] + (0,)
    r = (j + 1) % len(p)
    return EPReal(head, p[r:] + p[:r])


def shift_real(x: EPReal) -> EPReal:
    """S*(X) = X . S, i.e. drop position 0."""
    if x.head:
        return EPReal(x.head[1:], x.period)
    return EPReal((), x.period[1:] + x.period[:1])


def compose_maps(outer: CantorMap, inner: CantorMap) -> CantorMap:
    return CantorMap(lambda x: outer(inner(x)), f"{outer}.{inner}")


def permutation_map(theta: FinSupPermutation) -> CantorMap:
    return CantorMap(lambda x: induced_map(theta, x), f"perm:{json.dumps(theta.to_json(), separators=(',', ':'))}")


IDENTITY = CantorMap(lambda x: x, "identity")
MIN_DROP = CantorMap(min_drop, "min-drop")
SHIFT = CantorMap(shift_real, "shift")


def cantor_map(name: str) -> CantorMap:
    """Registry: ``identity``, ``min-drop``, ``shift`` or ``perm:<json>``."""
    fixed = {"identity": IDENTITY, "min-drop": MIN_DROP, "shift": SHIFT}
    if name in fixed:
        return fixed[name]
    if name.startswith("perm:"):
        return permutation_map(FinSupPermutation.from_json(name[len("perm:") :]))
    raise ValueError(f"unknown map {name!r}")


@dataclass(frozen=True)
class Counterexample:
    x: EPReal
    y: EPReal
    a: int
    b: int

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"X": str(self.x), "Y": str(self.y), "a": self.a, "b": self.b}


@lru_cache(maxsize=4)
def _universe(limit: int) -> tuple[EPReal, ...]:
    # ordered by tail, then by the head read as a little-endian integer
    return tuple(
        EPReal(tuple((i >> j) & 1 for j in range(limit)), (t,))
        for t in (0, 1)
        for i in range(1 << limit)
    )


@lru_cache(maxsize=32)
def _classes(limit: int, a: int) -> tuple[tuple[int, ...], ...]:
    """Indices of the universe grouped into =*_a classes."""
    classes: dict = {}
    for idx, x in enumerate(_universe(limit)):
        classes.setdefault(x.tail_key(a), []).append(idx)
    return tuple(tuple(c) for c in classes.values())


@lru_cache(maxsize=8)
def _images(f: CantorMap, limit: int) -> tuple[EPReal, ...]:
    return tuple(f(x) for x in _universe(limit))


def check_uniform(
    f: CantorMap, a: int, b: int, w: Window
) -> Union[bool, Counterexample]:
    """True if X =*_a Y implies F(X) =*_b F(Y) on the test universe.

    Otherwise the violating pair least in (Y, X) universe order.
    """
    xs, images = _universe(w.limit), _images(f, w.limit)
    best = None
    for members in _classes(w.limit, a):
        keys = {images[i].tail_key(b) for i in members}
        if len(keys) > 1 and (best is None or members[0] < best[0]):
            best = members
    if best is None:
        return True
    y = best[0]
    ykey = images[y].tail_key(b)
    x = next(i for i in best if images[i].tail_key(b) != ykey)
    return Counterexample(xs[x], xs[y], a, b)


def least_modulus(f: CantorMap, a: int, w: Window, b_max: int) -> Optional[int]:
    """Least b <= b_max for which check_uniform passes, by exhaustion."""
    for b in range(b_max + 1):
        if check_uniform(f, a, b, w) is True:
            return b
    return None


def min_drop_counterexample(b: int) -> tuple[EPReal, EPReal]:
    """(X, Y) with X =*_1 Y but min_drop(X), min_drop(Y) disagreeing at or past b."""
    c = max(b, 1)
    y = EPReal.from_set({c})
    x = EPReal.from_set({0, c})
    return x, y


def check_hamming_bound(x: EPReal, y: EPReal, a: int, w: Window) -> bool:
    """Hamming distance of the min-drop images is at most a + 2.

    The count runs over ``w`` widened, when needed, to the point from which
    the images agree, so it is the full distance.
    """
    if not eq_star_n(x, y, a):
        raise PreconditionViolated(f"{x} and {y} are not =*_{a}")
    fx, fy = min_drop(x), min_drop(y)
    settle = eq_star(fx, fy)
    if settle is None:
        raise ValueError(f"images of {x} and {y} differ infinitely often")
    return hamming_window(fx, fy, Window(max(w.limit, settle))) <= a + 2


class MissingDatabase(MissingTableError):
    pass


def extract_tt_from_forcing(
    phi: PartialOracleFunctional,
    sigma: BitString,
    modulus_b: int,
    db: Mapping[int, OutputTable],
    upto: int,
    probe_bound: Optional[int] = None,
    budget: int = 1 << 16,
    samples: int = 64,
    seed: int = 0,
    max_use: int = DEFAULT_MAX_USE,
) -> TruthTableFunctional:
    """Truth tables of F(X)(n) = phi^(sigma spliced onto X)(n).

    Outputs below ``modulus_b`` come from ``db``.  Above it, the use set is
    found by flipping single positions of the probe string against several
    base assignments; ``samples`` random assignments then cross-check the
    table, and any disagreement is traced back to a missing position.
    Every query is made on a string of length ``probe_bound``.
    """
    sigma = tuple(sigma)
    if probe_bound is None:
        probe_bound = max(len(sigma), 2 * upto + 2)
    free = list(range(len(sigma), probe_bound))
    rng = random.Random(seed)

    outputs = []
    for n in range(upto):
        if n < modulus_b:
            if n not in db:
                raise MissingDatabase(f"no database table for output {n} < b={modulus_b}")
            outputs.append(db[n])
            continue
        outputs.append(_learn_table(phi, sigma, n, free, budget, samples, rng, max_use))
    return TruthTableFunctional(tuple(outputs))


def _learn_table(phi, sigma, n, free, budget, samples, rng, max_use) -> OutputTable:
    def ev(assign: Mapping[int, int]) -> int:
        rho = sigma + tuple(assign.get(p, 0) for p in free)
        v = phi.query(rho, n, budget)
        if v is None:
            raise BudgetExhausted(f"phi({n}) diverges on {BitString(rho)} with budget {budget}")
        return v

    bases = [{}, {p: 1 for p in free}]
    bases += [{p: rng.getrandbits(1) for p in free} for _ in range(8)]
    use: set[int] = set()
    for base in bases:
        v = ev(base)
        for p in free:
            if p not in use and ev({**base, p: 1 - base.get(p, 0)}) != v:
                use.add(p)

    while True:
        if len(use) > max_use:
            raise UseLimitExceeded(f"output {n} reads more than {max_use} positions")
        order = sorted(use)
        table = OutputTable.from_function(order, lambda *bits: ev(dict(zip(order, bits))))
        missing = None
        for _ in range(samples):
            z = {p: rng.getrandbits(1) for p in free}
            if ev(z) != table.evaluate(lambda p: z.get(p, 0)):
                missing = _culprit(ev, z, use)
                break
        if missing is None:
            return table
        use.add(missing)


def _culprit(ev, z, use) -> int:
    """Zero the off-use positions of z one at a time until the output moves."""
    current = dict(z)
    v = ev(current)
    for p in sorted(z):
        if p in use or not current[p]:
            continue
        current[p] = 0
        w = ev(current)
        if w != v:
            return p
    raise AssertionError("table disagreement without a responsible position")
