"""Monomials, multicomplexes, F-vectors, and an exhaustive pure O-sequence
oracle.

Monomials of one degree are ordered revlex: write each as its variable
indices sorted descending and compare those sequences lexicographically.
So x4^2 < x4*x5 < x5^2 < x4*x6 in degree 2.
"""

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels
from .errors import BoundExceeded, InvalidArguments, NotAMulticomplex, ParseError


@dataclass(frozen=True, order=False)
class Monomial:
    """Product of variables, stored as the descending tuple of indices."""

    factors: tuple = ()

    def __post_init__(self):
        f = tuple(sorted(self.factors, reverse=True))
        if any((not isinstance(i, (int, np.integer))) or i <= 0 for i in f):
            raise ValueError(f"variable indices must be positive integers: {self.factors}")
        object.__setattr__(self, "factors", tuple(int(i) for i in f))

    @classmethod
    def of(cls, *indices) -> "Monomial":
        return cls(tuple(indices))

    @classmethod
    def from_exponents(cls, exps: dict) -> "Monomial":
        out = []
        for i, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            out += [i] * e
        return cls(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def exponents(self) -> dict:
        out = {}
        for i in self.factors:
            out[i] = out.get(i, 0) + 1
        return out

    @property
    def variables(self) -> tuple:
        return tuple(sorted(set(self.factors)))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def divides(self, other: "Monomial") -> bool:
        mine, theirs = self.exponents, other.exponents
        return all(theirs.get(i, 0) >= e for i, e in mine.items())

    def lower(self):
        """Divisors of degree one less."""
        return {Monomial(self.factors[:k] + self.factors[k + 1 :]) for k in range(self.degree)}

    def divisors(self) -> set:
        out = {self}
        frontier = {self}
        while frontier:
            nxt = set()
            for m in frontier:
                nxt |= m.lower()
            out |= nxt
            frontier = nxt
        return out

    def sort_key(self):
        """Orders by degree, then revlex within a degree."""
        return (self.degree, self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for i, e in sorted(self.exponents.items()):
            parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({self})"


ONE = Monomial()

_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    exps = {}
    for part in text.split("*"):
        m = _FACTOR.match(part.strip())
        if not m:
            raise ParseError(f"bad monomial factor {part!r}")
        i, e = int(m.group(1)), int(m.group(2) or 1)
        if i <= 0 or e <= 0:
            raise ParseError(f"bad monomial factor {part!r}")
        exps[i] = exps.get(i, 0) + e
    return Monomial.from_exponents(exps)


def x(i: int, e: int = 1) -> Monomial:
    return Monomial((i,) * e)


def monomial_revlex_compare(mu: Monomial, nu: Monomial) -> int:
    """-1, 0 or 1 as mu is revlex smaller, equal, or larger than nu."""
    if mu.degree != nu.degree:
        raise InvalidArguments(f"degrees differ: {mu} vs {nu}")
    a, b = mu.factors, nu.factors
    return (a > b) - (a < b)


def monomials_of_degree(variables: Iterable[int], k: int) -> list:
    """All degree-k monomials on the given variables, revlex ascending."""
    vs = sorted(set(variables))
    return sorted((Monomial(c) for c in combinations_with_replacement(vs, k)), key=Monomial.sort_key)


def _closed(ms) -> bool:
    if ms and ONE not in ms:
        return False
    return all(d in ms for m in ms for d in m.lower())


@dataclass(frozen=True)
class Multicomplex:
    monomials: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "monomials", frozenset(self.monomials))
        if not _closed(self.monomials):
            raise NotAMulticomplex("set is not closed under divisibility")

    def __contains__(self, m):
        return m in self.monomials

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list:
        return sorted(self.monomials, key=Monomial.sort_key)

    def maximal(self) -> list:
        """Monomials with no multiple in the set."""
        ms = self.monomials
        has_multiple = set()
        for m in ms:
            has_multiple |= m.lower()
        return sorted(ms - has_multiple, key=Monomial.sort_key)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=-1)

    def without(self, drop) -> "Multicomplex":
        return Multicomplex(self.monomials - frozenset(drop))

    def strings(self) -> list:
        return [str(m) for m in self.sorted()]


def divisor_closure(tops: Iterable[Monomial]) -> Multicomplex:
    out = set()
    for t in tops:
        if t not in out:
            out |= t.divisors()
    return Multicomplex(frozenset(out))


def is_multicomplex(s) -> bool:
    if isinstance(s, Multicomplex):
        return True
    return _closed(set(s))


def is_pure(m) -> bool:
    if not isinstance(m, Multicomplex):
        if not is_multicomplex(m):
            raise NotAMulticomplex("set is not closed under divisibility")
        m = Multicomplex(frozenset(m))
    return len({t.degree for t in m.maximal()}) <= 1


def f_vec(m) -> tuple:
    ms = m.monomials if isinstance(m, Multicomplex) else set(m)
    if not ms:
        return ()
    d = max(t.degree for t in ms)
    out = [0] * (d + 1)
    for t in ms:
        out[t.degree] += 1
    return tuple(out)


# ---------------------------------------------------------------- oracle

WITNESS = "witness"
REFUTED = "refuted"
BUDGET = "budget-exhausted"

DEFAULT_BUDGET = 20_000_000
MAX_VARIABLES = 6
MAX_TOPS = 8


class OracleResult(NamedTuple):
    status: str
    witness: object = None  # Multicomplex when status == WITNESS
    steps: int = 0
    reason: str = ""


def _check_target(F) -> tuple:
    F = tuple(int(v) for v in F)
    if not F or F[0] != 1:
        raise InvalidArguments("an F-vector must start with F_0 = 1")
    if any(v < 0 for v in F):
        raise InvalidArguments("F-vector entries must be non-negative")
    while len(F) > 1 and F[-1] == 0:
        F = F[:-1]
    if len(F) - 1 > 3:
        raise InvalidArguments("only degrees up to 3 are supported")
    return F


def pure_oseq_oracle(F, budget: int = DEFAULT_BUDGET, max_variables=MAX_VARIABLES, max_tops=MAX_TOPS) -> OracleResult:
    """Search for a pure multicomplex whose F-vector is ``F``.

    Uses exactly F_1 variables (closure forces every variable into degree 1)
    and tries size-F_d sets of degree-d tops in lexicographic order of their
    revlex-sorted lists. The first hit is returned.
    """
    F = _check_target(F)
    d = len(F) - 1
    if d == 0:
        return OracleResult(WITNESS, Multicomplex(frozenset({ONE})), 0)
    n = F[1]
    if max_variables is not None and n > max_variables:
        raise BoundExceeded(f"F_1 = {n} exceeds the variable cap {max_variables}")
    if max_tops is not None and F[d] > max_tops:
        raise BoundExceeded(f"F_{d} = {F[d]} exceeds the top cap {max_tops}")
    if any(v == 0 for v in F[1:]):
        return OracleResult(REFUTED, reason="a zero entry below the top degree")
    variables = range(1, n + 1)
    tops = monomials_of_degree(variables, d)
    lower = [m for k in range(1, d) for m in monomials_of_degree(variables, k)]
    index = {m: i for i, m in enumerate(lower)}
    width = max(1, max((len(t.divisors()) for t in tops), default=1))
    divs = np.full((len(tops), width), -1, dtype=np.int64)
    for t, top in enumerate(tops):
        ds = sorted(index[m] for m in top.divisors() if 0 < m.degree < d)
        divs[t, : len(ds)] = ds
    lower_deg = np.array([m.degree for m in lower] or [0], dtype=np.int64)
    if not lower:
        lower_deg = np.zeros(0, dtype=np.int64)
    targets = np.zeros(d, dtype=np.int64)
    for k in range(1, d):
        targets[k] = F[k]
    status, chosen, steps = kernels.search_tops(divs, lower_deg, targets, F[d], int(budget))
    if status == kernels.FOUND:
        return OracleResult(WITNESS, divisor_closure(tops[i] for i in chosen), int(steps))
    if status == kernels.REFUTED:
        return OracleResult(REFUTED, steps=int(steps), reason="no subset of tops matches")
    return OracleResult(BUDGET, steps=int(steps), reason=f"stopped after {budget} steps")
