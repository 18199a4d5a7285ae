"""Truth-table functionals on Cantor space.

A functional maps reals to reals; output bit n is a Boolean function of the
input bits at a finite, strictly increasing ``use`` list.  Row indices put
``use[0]`` at the least significant bit: the row read for input A is
``sum(A(use[i]) << i)``.

Functionals carry a tuple of materialised tables and, optionally, a rule
generating the table for any n.  Rules let families such as
A -> (n -> A(2n) A(2n+1)) be used at every n without a size bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .core_bits import Window
from .perm_recovery import FinSupPermutation

DEFAULT_MAX_USE = 20


class MissingTableError(LookupError):
    """No table exists for the requested output."""


class UseLimitExceeded(ValueError):
    """A composed use set grew beyond the configured cap."""


@dataclass(frozen=True)
class OutputTable:
    use: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self):
        use = tuple(int(u) for u in self.use)
        table = tuple(int(b) for b in self.table)
        if any(u < 0 for u in use) or any(a >= b for a, b in zip(use, use[1:])):
            raise ValueError(f"use must be strictly increasing naturals: {use}")
        if len(table) != 1 << len(use):
            raise ValueError(f"table length {len(table)} != 2^{len(use)}")
        if any(b not in (0, 1) for b in table):
            raise ValueError("table entries must be bits")
        object.__setattr__(self, "use", use)
        object.__setattr__(self, "table", table)

    @classmethod
    def projection(cls, position: int) -> "OutputTable":
        return cls((position,), (0, 1))

    @classmethod
    def constant(cls, bit: int) -> "OutputTable":
        return cls((), (bit,))

    @classmethod
    def from_function(cls, use: Sequence[int], fn: Callable[..., int]) -> "OutputTable":
        """Tabulate ``fn(bit_for_use0, bit_for_use1, ...)``."""
        k = len(use)
        rows = [int(fn(*[(row >> i) & 1 for i in range(k)])) for row in range(1 << k)]
        return cls(tuple(use), tuple(rows))

    @classmethod
    def from_json(cls, data) -> "OutputTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["use"]), tuple(data["table"]))

    def to_json(self) -> dict:
        return {"use": list(self.use), "table": list(self.table)}

    def row(self, x: Callable[[int], int]) -> int:
        r = 0
        for i, u in enumerate(self.use):
            r |= x(u) << i
        return r

    def evaluate(self, x: Callable[[int], int]) -> int:
        """Output bit for the input real (or any position -> bit callable)."""
        return self.table[self.row(x)]


def tables_equivalent(s: OutputTable, t: OutputTable) -> bool:
    """Extensional equality over the union of both use sets."""
    union = sorted(set(s.use) | set(t.use))
    for row in range(1 << len(union)):
        bits = {u: (row >> i) & 1 for i, u in enumerate(union)}
        if s.evaluate(bits.__getitem__) != t.evaluate(bits.__getitem__):
            return False
    return True


def is_projection(t: OutputTable, position: int) -> bool:
    """True iff ``t`` computes A -> A(position)."""
    if position not in t.use:
        return False
    i = t.use.index(position)
    return all(t.table[row] == (row >> i) & 1 for row in range(len(t.table)))


Rule = Callable[[int], OutputTable]


@dataclass(frozen=True)
class TruthTableFunctional:
    outputs: tuple[OutputTable, ...] = ()
    rule: Optional[Rule] = field(default=None, compare=False)
    rule_name: Optional[str] = None

    @property
    def arity(self) -> int:
        return len(self.outputs)

    def table(self, n: int) -> OutputTable:
        if 0 <= n < len(self.outputs):
            return self.outputs[n]
        if n >= 0 and self.rule is not None:
            return self.rule(n)
        raise MissingTableError(f"no table for output {n} (arity {self.arity})")

    def tables(self, upto: int) -> list[OutputTable]:
        return [self.table(n) for n in range(upto)]

    def materialize(self, upto: int) -> "TruthTableFunctional":
        return TruthTableFunctional(tuple(self.tables(upto)), self.rule, self.rule_name)

    def apply(self, x: Callable[[int], int], n: int) -> int:
        return self.table(n).evaluate(x)

    def image(self, x: Callable[[int], int]) -> Callable[[int], int]:
        """The output real as a lazy position -> bit function."""
        return lambda n: self.apply(x, n)

    def to_json(self, upto: Optional[int] = None) -> dict:
        tables = self.outputs if upto is None else self.tables(upto)
        out: dict = {"outputs": [t.to_json() for t in tables]}
        if self.rule_name is not None:
            out["rule"] = self.rule_name
        return out

    @classmethod
    def from_json(cls, data) -> "TruthTableFunctional":
        if isinstance(data, str):
            data = json.loads(data)
        outputs = tuple(OutputTable.from_json(t) for t in data.get("outputs", []))
        name = data.get("rule")
        if name is None:
            return cls(outputs)
        if name not in RULES:
            raise ValueError(f"unknown rule {name!r}; known: {sorted(RULES)}")
        return cls(outputs, RULES[name], name)


def _pair_and(n: int) -> OutputTable:
    return OutputTable((2 * n, 2 * n + 1), (0, 0, 0, 1))


RULES: dict[str, Rule] = {
    "pair-and": _pair_and,
    "identity": OutputTable.projection,
    "shift": lambda n: OutputTable.projection(n + 1),
}


def builtin(name: str, upto: int = 0) -> TruthTableFunctional:
    f = TruthTableFunctional((), RULES[name], name)
    return f.materialize(upto) if upto else f


def identity(upto: int = 0) -> TruthTableFunctional:
    return builtin("identity", upto)


def pair_and(upto: int = 0) -> TruthTableFunctional:
    """A -> (n -> A(2n) A(2n+1))."""
    return builtin("pair-and", upto)


def tt_apply(f: TruthTableFunctional, x: Callable[[int], int], n: int) -> int:
    return f.apply(x, n)


def substitute(
    outer: OutputTable, inner: TruthTableFunctional, max_use: int = DEFAULT_MAX_USE
) -> OutputTable:
    """The table of A -> outer(inner(A)).

    The composite use is the sorted union of inner's uses over outer's use.
    """
    inner_tables = [inner.table(u) for u in outer.use]
    union = sorted({p for t in inner_tables for p in t.use})
    if len(union) > max_use:
        raise UseLimitExceeded(f"composite use has {len(union)} positions > {max_use}")
    slot = {p: i for i, p in enumerate(union)}
    wiring = [([slot[p] for p in t.use], t.table) for t in inner_tables]
    rows = []
    for row in range(1 << len(union)):
        outer_row = 0
        for j, (slots, table) in enumerate(wiring):
            inner_row = 0
            for i, s in enumerate(slots):
                inner_row |= ((row >> s) & 1) << i
            outer_row |= table[inner_row] << j
        rows.append(outer.table[outer_row])
    return OutputTable(tuple(union), tuple(rows))


def tt_compose(
    g: TruthTableFunctional,
    f: TruthTableFunctional,
    upto: int,
    max_use: int = DEFAULT_MAX_USE,
) -> TruthTableFunctional:
    """The functional A -> g(f(A)), materialised for outputs below ``upto``.

    Outputs past ``upto`` are substituted on demand.
    """
    outputs = tuple(substitute(g.table(n), f, max_use) for n in range(upto))
    return TruthTableFunctional(outputs, lambda n: substitute(g.table(n), f, max_use))


MapOnIndices = Union[Callable[[int], int], Sequence[int]]


def star_of_function(f: MapOnIndices, upto: int) -> TruthTableFunctional:
    """f* : A -> A . f, so output n reads input position f(n)."""
    fn = f if callable(f) else f.__getitem__
    outputs = tuple(OutputTable.projection(fn(n)) for n in range(upto))
    rule = (lambda n: OutputTable.projection(fn(n))) if callable(f) else None
    return TruthTableFunctional(outputs, rule)


def shift(upto: int = 0) -> TruthTableFunctional:
    """S*: A -> (n -> A(n+1))."""
    return builtin("shift", upto)


def from_permutation(theta: FinSupPermutation, upto: int) -> TruthTableFunctional:
    """A -> A . theta."""
    return star_of_function(theta, upto)


def verify_homeo_pair(
    fwd: TruthTableFunctional, bwd: TruthTableFunctional, w: Window
) -> bool:
    """Both compositions are the identity on outputs below ``w.limit``."""
    for composite in (tt_compose(bwd, fwd, w.limit), tt_compose(fwd, bwd, w.limit)):
        if not all(is_projection(composite.table(n), n) for n in range(w.limit)):
            return False
    return True


@dataclass(frozen=True)
class HomeoPair:
    forward: TruthTableFunctional
    backward: TruthTableFunctional
    verified_window: Window

    @classmethod
    def build(
        cls, forward: TruthTableFunctional, backward: TruthTableFunctional, w: Window
    ) -> "HomeoPair":
        if not verify_homeo_pair(forward, backward, w):
            raise ValueError(f"functionals are not mutually inverse below {w.limit}")
        return cls(forward, backward, w)

    @classmethod
    def from_permutation(cls, theta: FinSupPermutation, w: Window) -> "HomeoPair":
        upto = max(w.limit, theta.bound())
        return cls.build(
            from_permutation(theta, upto), from_permutation(theta.inverse(), upto), w
        )

    def inverse(self) -> "HomeoPair":
        return HomeoPair(self.backward, self.forward, self.verified_window)


def _conjunction(positions: Sequence[int]) -> str:
    return "".join(f"A({p})" for p in positions) if positions else "1"


def render(t: OutputTable) -> Optional[str]:
    """Readable form for constants, conjunctions and implications between conjunctions.

    Returns None when the table matches none of these shapes.
    """
    use = t.use
    if all(b == t.table[0] for b in t.table):
        return str(t.table[0])
    if t == OutputTable.from_function(use, lambda *bits: all(bits)):
        return _conjunction(use)
    for k in range(1, len(use)):
        left, right = use[:k], use[k:]
        implication = OutputTable.from_function(
            use, lambda *bits, k=k: (not all(bits[:k])) or all(bits[k:])
        )
        if t == implication:
            return f"{_conjunction(left)} -> {_conjunction(right)}"
    return None
