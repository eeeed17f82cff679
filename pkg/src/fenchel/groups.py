"""Finite targets for presentation homomorphisms.

Permutations are tuples ``p`` of 0-based images; products are read left to
right (``mul(p, q)`` applies ``p`` first), matching a right action on cosets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from .errors import InvalidPeriod

Element = Tuple[int, ...]
Perm = Tuple[int, ...]


def _prime_factors(n: int) -> List[int]:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


def _rank_mod_p(vectors: Iterable[Sequence[int]], p: int, full: int) -> int:
    """Rank over F_p, stopping early once ``full`` is reached.

    Vectors are kept sparse (column -> residue); the images we feed in are
    mostly unit vectors and differences of two, so this stays cheap.
    """
    pivots = {}  # leading column -> normalized sparse row
    for v in vectors:
        row = {i: x % p for i, x in enumerate(v) if x % p}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {i: x * inv % p for i, x in row.items()}
                break
            f = row[lead]
            for i, x in piv.items():
                y = (row.get(i, 0) - f * x) % p
                if y:
                    row[i] = y
                else:
                    row.pop(i, None)
        if len(pivots) >= full:
            break
    return len(pivots)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``⊕ Z/m_i``; elements are tuples of residues."""

    moduli: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 1 for m in self.moduli):
            raise InvalidPeriod("moduli must be >= 1")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def reduce(self, x: Sequence[int]) -> Element:
        if len(x) != len(self.moduli):
            raise ValueError(f"element {tuple(x)} has wrong length for {self.moduli}")
        return tuple(a % m for a, m in zip(x, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def scale(self, n: int, x: Element) -> Element:
        return tuple(n * a % m for a, m in zip(x, self.moduli))

    def sum(self, xs: Iterable[Element]) -> Element:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def element_order(self, x: Element) -> int:
        o = 1
        for a, m in zip(x, self.moduli):
            k = m // math.gcd(a, m)
            o = o * k // math.gcd(o, k)
        return o

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic order."""
        return itertools.product(*(range(m) for m in self.moduli))

    def elements_of_order_dividing(self, n: int) -> List[Element]:
        # x_i ranges over the n-torsion of Z/m_i, i.e. multiples of m_i / gcd(n, m_i)
        axes = []
        for m in self.moduli:
            step = m // math.gcd(n, m)
            axes.append(range(0, m, step))
        return list(itertools.product(*axes))

    def generated_by(self, xs: Sequence[Element]) -> bool:
        """Whether ``xs`` generate the group (checked on ``A/pA`` for each prime)."""
        for p in sorted({q for m in self.moduli for q in _prime_factors(m)}):
            cols = [i for i, m in enumerate(self.moduli) if m % p == 0]
            vecs = ([x[i] for i in cols] for x in xs)
            if _rank_mod_p(vecs, p, len(cols)) < len(cols):
                return False
        return True


# ------------------------------------------------------------- permutations


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def product(perms: Iterable[Perm], n: int) -> Perm:
    acc = identity_perm(n)
    for p in perms:
        acc = mul(acc, p)
    return acc


def commutator(p: Perm, q: Perm) -> Perm:
    """``[p, q] = p q p^-1 q^-1`` read left to right."""
    return mul(mul(mul(p, q), inverse(p)), inverse(q))


def power(p: Perm, e: int) -> Perm:
    acc = identity_perm(len(p))
    base = p
    while e:
        if e & 1:
            acc = mul(acc, base)
        base = mul(base, base)
        e >>= 1
    return acc


def cycle_lengths(p: Perm) -> List[int]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out.append(n)
    return sorted(out)


def perm_order(p: Perm) -> int:
    o = 1
    for c in cycle_lengths(p):
        o = o * c // math.gcd(o, c)
    return o


def is_transitive(perms: Sequence[Perm], n: int) -> bool:
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for p in perms:
            j = p[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def generate_group(gens: Sequence[Perm], n: int) -> frozenset:
    """Closure of ``gens`` under multiplication (fine for small groups)."""
    ident = identity_perm(n)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


def derived_subgroup(group: frozenset, n: int) -> frozenset:
    comms = {commutator(a, b) for a in group for b in group}
    return generate_group(sorted(comms), n)


def derived_length(group: frozenset, n: int, cap: int = 16):
    """Derived length of a finite permutation group, ``None`` if not solvable."""
    length = 0
    current = group
    while len(current) > 1:
        nxt = derived_subgroup(current, n)
        if nxt == current or length >= cap:
            return None
        current = nxt
        length += 1
    return length
