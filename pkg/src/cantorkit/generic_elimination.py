"""Partial oracle functionals and the candidate-elimination algorithm.

A partial oracle functional answers ``query(rho, n, budget)`` with a bit or
None ("no convergence yet").  Given a condition sigma above which the
functional never errs about ``rho(g(n))``, ``compute_g`` recovers g(n):
look it up in the finite database, otherwise bound g(n) by the length of a
halting extension and eliminate candidates in pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Optional, Sequence, Union

from .core_bits import BitString

Query = Callable[[tuple, int, int], Optional[int]]
GMap = Union[Sequence[int], Callable[[int], int]]


class BudgetExhausted(RuntimeError):
    """No convergence was found within the search limit."""


class InconsistentInstance(RuntimeError):
    """The oracle contradicts the forcing hypothesis on the explored region."""


@dataclass(frozen=True)
class PartialOracleFunctional:
    """A monotone partial map (rho, n, budget) -> bit or None."""

    rule: Query = field(compare=False)
    name: str = "anonymous"

    def query(self, rho: Sequence[int], n: int, budget: int) -> Optional[int]:
        return self.rule(rho, n, budget)

    def __str__(self) -> str:
        return self.name


def _g_lookup(g: GMap) -> Callable[[int], Optional[int]]:
    if callable(g):
        return g
    table = list(g)
    return lambda n: table[n] if 0 <= n < len(table) else None


def bit_of_g(g: GMap, name: str = "bit-of-g") -> PartialOracleFunctional:
    """Phi^rho(n) = rho(g(n)); reading position g(n) costs g(n)+1 steps."""
    lookup = _g_lookup(g)

    def rule(rho, n, budget):
        m = lookup(n)
        if m is None or m >= len(rho) or budget <= m:
            return None
        return rho[m]

    return PartialOracleFunctional(rule, name)


def never() -> PartialOracleFunctional:
    return PartialOracleFunctional(lambda rho, n, budget: None, "never")


def constant(bit: int) -> PartialOracleFunctional:
    """Converges to ``bit`` without reading the oracle."""
    if bit not in (0, 1):
        raise ValueError("constant oracle needs a bit")
    return PartialOracleFunctional(
        lambda rho, n, budget: bit if budget >= 1 else None, f"constant:{bit}"
    )


def complement(phi: PartialOracleFunctional) -> PartialOracleFunctional:
    def rule(rho, n, budget):
        v = phi.query(rho, n, budget)
        return None if v is None else 1 - v

    return PartialOracleFunctional(rule, f"not({phi.name})")


def from_truth_table(f, name: str = "tt") -> PartialOracleFunctional:
    """View a truth-table functional as an oracle converging once its use is present."""

    def rule(rho, n, budget):
        t = f.table(n)
        if budget < 1 or (t.use and t.use[-1] >= len(rho)):
            return None
        return t.evaluate(rho.__getitem__)

    return PartialOracleFunctional(rule, name)


def _show(rho: Sequence[int]) -> str:
    return "".join(map(str, rho)) or "ε"


def _query(phi, rho, n, budget, transcript):
    v = phi.query(rho, n, budget)
    if transcript is not None:
        transcript.append(f"({_show(rho)}, {n}, {budget}) -> {'diverge' if v is None else v}")
    return v


def _search(phi, tau, n, search_limit, transcript):
    """Stage j queries every extension of tau by at most j bits, in
    length-then-lexicographic order, with budget 2**j."""
    base = tuple(tau)
    for stage in range(search_limit + 1):
        budget = 1 << stage
        for extra in range(stage + 1):
            for tail in product((0, 1), repeat=extra):
                rho = base + tail
                v = _query(phi, rho, n, budget, transcript)
                if v is not None:
                    return BitString(rho), v
    raise BudgetExhausted(
        f"no halting extension of {_show(base)} for n={n} within {search_limit} stages"
    )


def find_halting_extension(
    phi: PartialOracleFunctional,
    tau: BitString,
    n: int,
    search_limit: int,
    transcript: Optional[list] = None,
) -> BitString:
    """First extension rho of tau on which phi(n) converges, by dovetailing.

    ``search_limit`` is the last stage: extensions are at most that many bits
    longer than tau and budgets at most ``2**search_limit``.
    """
    return _search(phi, tau, n, search_limit, transcript)[0]


@dataclass(frozen=True)
class ForcingInstance:
    phi: PartialOracleFunctional
    sigma: BitString = BitString()
    database: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sigma", BitString(self.sigma))
        bad = {k: v for k, v in self.database.items() if v >= len(self.sigma)}
        if bad:
            raise ValueError(f"database values must be below |sigma|={len(self.sigma)}: {bad}")

    @classmethod
    def with_known_g(
        cls, phi: PartialOracleFunctional, sigma: BitString, g: GMap, scan: int
    ) -> "ForcingInstance":
        """Build the database {(k, g(k)) : g(k) < |sigma|} by scanning k < scan."""
        lookup = _g_lookup(g)
        sigma = BitString(sigma)
        db = {}
        for k in range(scan):
            v = lookup(k)
            if v is not None and v < len(sigma):
                db[k] = v
        return cls(phi, sigma, db)


def _pair_tau(sigma: BitString, a: int, b: int, bit_a: int) -> BitString:
    bits = list(sigma) + [0] * (b + 1 - len(sigma))
    bits[a], bits[b] = bit_a, 1 - bit_a
    return BitString(bits)


def _probe(inst, n, a, b, bit_a, search_limit, transcript) -> int:
    rho, v = _search(inst.phi, _pair_tau(inst.sigma, a, b, bit_a), n, search_limit, transcript)
    return a if rho[a] != v else b


def eliminate_pair(
    inst: ForcingInstance,
    n: int,
    a: int,
    b: int,
    search_limit: int,
    transcript: Optional[list] = None,
    confirm: bool = True,
) -> int:
    """Return whichever of a, b cannot be g(n).

    The probe extends sigma by zeros with tau(a)=0, tau(b)=1, finds a halting
    rho above tau and eliminates the candidate whose bit disagrees with
    phi^rho(n).  With ``confirm`` a second probe with the two bits swapped
    must eliminate the same candidate; if it eliminates the other one, both
    are refuted and InconsistentInstance is raised.
    """
    if not len(inst.sigma) <= a < b:
        raise ValueError(f"need |sigma| <= a < b, got |sigma|={len(inst.sigma)}, a={a}, b={b}")
    first = _probe(inst, n, a, b, 0, search_limit, transcript)
    if confirm and _probe(inst, n, a, b, 1, search_limit, transcript) != first:
        raise InconsistentInstance(f"both {a} and {b} are refuted as values of g({n})")
    return first


@dataclass(frozen=True)
class GComputation:
    value: int
    from_database: bool
    interval: Optional[tuple[int, int]] = None
    eliminated: tuple[int, ...] = ()


def run_compute_g(
    inst: ForcingInstance,
    n: int,
    search_limit: int,
    transcript: Optional[list] = None,
) -> GComputation:
    if n in inst.database:
        return GComputation(inst.database[n], True)
    rho0 = find_halting_extension(inst.phi, inst.sigma, n, search_limit, transcript)
    lo, hi = len(inst.sigma), len(rho0) - 1
    if lo > hi:
        raise InconsistentInstance(
            f"phi({n}) converges on {_show(rho0)} without room for g({n}) >= {lo}"
        )
    survivors = list(range(lo, hi + 1))
    eliminated = []
    while len(survivors) > 1:
        c = eliminate_pair(
            inst, n, survivors[0], survivors[1], search_limit, transcript, confirm=False
        )
        survivors.remove(c)
        eliminated.append(c)
    return GComputation(survivors[0], False, (lo, hi), tuple(eliminated))


def compute_g(
    inst: ForcingInstance,
    n: int,
    search_limit: int,
    transcript: Optional[list] = None,
) -> int:
    """g(n) from the database, or by bounding and pairwise elimination."""
    return run_compute_g(inst, n, search_limit, transcript).value


@dataclass(frozen=True)
class UseBoundCheck:
    ok: bool
    samples: int
    witness: Optional[tuple[str, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def check_lemma_1111(
    inst: ForcingInstance,
    g: GMap,
    trials: int,
    seed: int = 0,
    max_extra: Optional[int] = None,
    budget: int = 1 << 16,
) -> UseBoundCheck:
    """Sample (rho above sigma, n); wherever phi^rho(n) converges, g(n) < |rho|.

    ``trials`` counts convergent samples; at most ``20 * trials`` draws are
    made, so a functional that never converges passes vacuously.
    """
    lookup = _g_lookup(g)
    domain = len(g) if not callable(g) else None
    if domain is None and max_extra is None:
        raise ValueError("max_extra is required when g is given as a function")
    ns = domain if domain is not None else max_extra
    if max_extra is None:
        max_extra = max(lookup(k) for k in range(ns)) + 2 if ns else 2
    rng = random.Random(seed)
    sigma = tuple(inst.sigma)
    samples = 0
    for _ in range(20 * trials):
        if samples >= trials:
            break
        extra = rng.randint(0, max_extra)
        rho = sigma + tuple(rng.getrandbits(1) for _ in range(extra))
        n = rng.randrange(ns)
        if inst.phi.query(rho, n, budget) is None:
            continue
        samples += 1
        if lookup(n) >= len(rho):
            return UseBoundCheck(False, samples, (_show(rho), n))
    return UseBoundCheck(True, samples)


def check_rochester(
    inst: ForcingInstance,
    g: GMap,
    n_bound: int,
    tau_bound: int,
    ext_bound: int,
    budget: int = 1 << 16,
) -> bool:
    """Bounded form of: for all n and tau above sigma there is rho above tau
    with phi^rho(n) converging to rho(g(n))."""
    lookup = _g_lookup(g)
    sigma = tuple(inst.sigma)
    for n in range(n_bound):
        m = lookup(n)
        for tau_len in range(len(sigma), tau_bound + 1):
            for tau_tail in product((0, 1), repeat=tau_len - len(sigma)):
                tau = sigma + tau_tail
                if not _witnessed(inst.phi, tau, n, m, ext_bound, budget):
                    return False
    return True


def _witnessed(phi, tau, n, m, ext_bound, budget) -> bool:
    for length in range(len(tau), ext_bound + 1):
        for tail in product((0, 1), repeat=length - len(tau)):
            rho = tau + tail
            v = phi.query(rho, n, budget)
            if v is not None and m < len(rho) and rho[m] == v:
                return True
    return False
