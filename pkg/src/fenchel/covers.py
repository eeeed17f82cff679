"""Finite-index covers read off from finite quotients of a presentation.

A cover is described by a homomorphism from the presentation to a finite
group.  Cusp counts and periods of the corresponding subgroup come from the
cycle structure of the generators acting on cosets; the genus is then forced
by Riemann–Hurwitz.
"""
from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Sequence, Tuple

from . import groups
from .errors import BoundExceeded, MalformedHom, NegativeParameter, NonIntegralGenus, NonSurjective
from .groups import Element, FiniteAbelianGroup, Perm
from .runs import RunTuple, run_pairs
from .signature import Signature, euler_characteristic

DEFAULT_ORDER_BOUND = 512
DEFAULT_DEGREE_BOUND = 7
DEFAULT_GENERATOR_BOUND = 6
DEFAULT_SEARCH_CEILING = 2_000_000


class Kind(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"


class GeneratorLabel(NamedTuple):
    kind: Kind
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


def generators(s: Signature) -> List[GeneratorLabel]:
    counts = {Kind.ALPHA: s.genus, Kind.BETA: s.genus, Kind.GAMMA: s.cusps, Kind.DELTA: s.k}
    return [GeneratorLabel(kind, i) for kind, n in counts.items() for i in range(1, n + 1)]


# ------------------------------------------------------------------- homs


@dataclass(frozen=True)
class AbelianHom:
    source: Signature
    target: FiniteAbelianGroup
    alpha: Tuple[Element, ...] = ()
    beta: Tuple[Element, ...] = ()
    gamma: Tuple[Element, ...] = ()
    delta: Tuple[Element, ...] = ()

    def image(self, label: GeneratorLabel) -> Element:
        return getattr(self, label.kind.value)[label.index - 1]

    def images(self) -> List[Element]:
        return [*self.alpha, *self.beta, *self.gamma, *self.delta]

    def flat(self) -> Tuple[int, ...]:
        return tuple(x for e in self.images() for x in e)

    def to_dict(self) -> dict:
        return {
            "target_moduli": list(self.target.moduli),
            "images": {k.value: [list(e) for e in getattr(self, k.value)] for k in Kind},
        }

    @classmethod
    def from_dict(cls, source: Signature, data: dict) -> "AbelianHom":
        try:
            target = FiniteAbelianGroup(tuple(data["target_moduli"]))
            imgs = data.get("images", {})
            parts = {k.value: tuple(tuple(int(x) for x in e) for e in imgs.get(k.value, []))
                     for k in Kind}
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedHom(f"cannot parse abelian hom: {exc}") from None
        return cls(source, target, **parts)


@dataclass(frozen=True)
class PermHom:
    source: Signature
    degree: int
    alpha: Tuple[Perm, ...] = ()
    beta: Tuple[Perm, ...] = ()
    gamma: Tuple[Perm, ...] = ()
    delta: Tuple[Perm, ...] = ()

    def images(self) -> List[Perm]:
        return [*self.alpha, *self.beta, *self.gamma, *self.delta]

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "images": {k.value: [[x + 1 for x in p] for p in getattr(self, k.value)]
                       for k in Kind},
        }

    @classmethod
    def from_dict(cls, source: Signature, data: dict) -> "PermHom":
        try:
            degree = int(data["degree"])
            imgs = data.get("images", {})
            parts = {k.value: tuple(tuple(int(x) - 1 for x in p) for p in imgs.get(k.value, []))
                     for k in Kind}
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedHom(f"cannot parse permutation hom: {exc}") from None
        return cls(source, degree, **parts)


def _check_counts(source: Signature, parts: Sequence[Tuple]) -> None:
    expected = (source.genus, source.genus, source.cusps, source.k)
    got = tuple(len(p) for p in parts)
    if got != expected:
        raise MalformedHom(f"expected (alpha, beta, gamma, delta) counts {expected}, got {got}")


def verify_abelian_hom(h: AbelianHom) -> bool:
    """Check the relations in the abelian target.

    Raises :class:`MalformedHom` when image counts or element lengths do not
    fit the signature and target.
    """
    _check_counts(h.source, (h.alpha, h.beta, h.gamma, h.delta))
    A = h.target
    for e in h.images():
        if len(e) != len(A.moduli):
            raise MalformedHom(f"image {e} does not live in {A.moduli}")
    imgs = [A.reduce(e) for e in h.images()]
    g2 = 2 * h.source.genus
    if A.sum(imgs[g2:]) != A.zero:
        return False
    return all(A.scale(n, A.reduce(d)) == A.zero for n, d in zip(h.source.periods, h.delta))


def is_surjective(h: AbelianHom) -> bool:
    return h.target.generated_by([h.target.reduce(e) for e in h.images()])


def relation_word(h: PermHom) -> Perm:
    n = h.degree
    word = [groups.commutator(a, b) for a, b in zip(h.alpha, h.beta)]
    word += list(h.gamma) + list(h.delta)
    return groups.product(word, n)


def verify_perm_hom(h: PermHom) -> bool:
    _check_counts(h.source, (h.alpha, h.beta, h.gamma, h.delta))
    n = h.degree
    if n < 1:
        raise MalformedHom("degree must be positive")
    for p in h.images():
        if len(p) != n or sorted(p) != list(range(n)):
            raise MalformedHom(f"{p} is not a permutation of {n} points")
    if relation_word(h) != groups.identity_perm(n):
        return False
    for per, d in zip(h.source.periods, h.delta):
        if groups.power(d, per) != groups.identity_perm(n):
            return False
    return groups.is_transitive(h.images(), n)


def regular_action(h: AbelianHom) -> PermHom:
    """Translation action of the target on itself (points in lexicographic order)."""
    if not is_surjective(h):
        raise NonSurjective("images do not generate the target; the coset space is disconnected")
    A = h.target
    elems = list(A.elements())
    index = {e: i for i, e in enumerate(elems)}

    def translate(x: Element) -> Perm:
        x = A.reduce(x)
        return tuple(index[A.add(e, x)] for e in elems)

    return PermHom(
        h.source,
        len(elems),
        tuple(map(translate, h.alpha)),
        tuple(map(translate, h.beta)),
        tuple(map(translate, h.gamma)),
        tuple(map(translate, h.delta)),
    )


# ------------------------------------------------------- induced signatures


CycleType = Tuple[Tuple[int, int], ...]  # sorted (cycle length, multiplicity) pairs

MAX_PERIODS = 10 ** 12


def cycle_type(lengths: Sequence[int]) -> CycleType:
    return tuple(sorted(Counter(lengths).items()))


@dataclass(frozen=True)
class InducedSignatureResult:
    """Signature of a finite-index subgroup plus the raw cycle data behind it.

    ``period_cycles[i]`` is the cycle type of ``δ_i`` as (length, multiplicity)
    pairs, which stays small even when the index is astronomically large.
    """

    subgroup_signature: Signature
    index: int
    cusp_cycles: Tuple[int, ...]
    period_cycles: Tuple[CycleType, ...]

    def to_dict(self) -> dict:
        return {
            "signature": self.subgroup_signature.to_dict(),
            "index": self.index,
            "cusp_cycles": list(self.cusp_cycles),
            "period_cycles": [[list(p) for p in c] for c in self.period_cycles],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InducedSignatureResult":
        return cls(
            Signature.from_dict(data["signature"]),
            int(data["index"]),
            tuple(int(c) for c in data["cusp_cycles"]),
            tuple(tuple((int(a), int(b)) for a, b in c) for c in data["period_cycles"]),
        )


def riemann_hurwitz_genus(chi_source: Fraction, index: int, cusps: int, periods: Sequence[int]) -> int:
    """Solve ``2 - 2g - cusps - Σ(1 - 1/m) = index * chi_source`` for ``g``."""
    return _rh_genus(Fraction(chi_source), index, cusps,
                     sum((1 - Fraction(1, m) for m in periods), Fraction(0)))


def _rh_genus(chi_source: Fraction, index: int, cusps: int, period_defect: Fraction) -> int:
    if index < 1:
        raise NegativeParameter("index must be positive")
    two_g = 2 - cusps - period_defect - index * chi_source
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise NonIntegralGenus(
            f"Riemann–Hurwitz gives genus {two_g / 2} (index {index}, cusps {cusps})"
        )
    return two_g.numerator // 2


def _assemble(source: Signature, index: int, cusp_cycles: Sequence[int],
              period_cycles: Sequence[CycleType]) -> InducedSignatureResult:
    counts: Counter = Counter()
    for (n, ctype), times in run_pairs(source.periods, period_cycles):
        for s, count in ctype:
            if n % s:
                raise NonIntegralGenus(f"cycle of length {s} for a generator of order dividing {n}")
            if n // s > 1:
                counts[n // s] += count * times
    if sum(counts.values()) > MAX_PERIODS:
        raise BoundExceeded(f"induced signature would carry more than {MAX_PERIODS} periods")
    defect = sum((c * (1 - Fraction(1, m)) for m, c in counts.items()), Fraction(0))
    cusps = sum(cusp_cycles)
    g = _rh_genus(euler_characteristic(source), index, cusps, defect)
    if not isinstance(period_cycles, RunTuple):
        period_cycles = tuple(period_cycles)
    return InducedSignatureResult(
        Signature(g, cusps, RunTuple(sorted(counts.items()))),
        index,
        tuple(cusp_cycles),
        period_cycles,
    )


def induced_signature(source: Signature, h: PermHom) -> InducedSignatureResult:
    """Signature of the point stabilizer of a transitive permutation representation."""
    if h.source != source:
        raise MalformedHom(f"hom is defined on {h.source}, not {source}")
    cusp_cycles = [len(groups.cycle_lengths(c)) for c in h.gamma]
    period_cycles = [cycle_type(groups.cycle_lengths(d)) for d in h.delta]
    return _assemble(source, h.degree, cusp_cycles, period_cycles)


def induced_signature_abelian(source: Signature, h: AbelianHom) -> InducedSignatureResult:
    """Kernel signature from element orders: ``x`` has ``|A|/ord(x)`` cycles of length ``ord(x)``."""
    if h.source != source:
        raise MalformedHom(f"hom is defined on {h.source}, not {source}")
    if not verify_abelian_hom(h):
        raise MalformedHom("relations fail in the target")
    if not is_surjective(h):
        raise NonSurjective("images do not generate the target")
    A = h.target
    N = A.order
    cusp_cycles = [N // A.element_order(A.reduce(c)) for c in h.gamma]
    period_cycles = []
    for d in h.delta:
        o = A.element_order(A.reduce(d))
        period_cycles.append(((o, N // o),))
    return _assemble(source, N, cusp_cycles, period_cycles)


# ------------------------------------------------------------ enumeration


def iter_abelian_homs(source: Signature, target: FiniteAbelianGroup,
                      order_bound: int = DEFAULT_ORDER_BOUND,
                      search_ceiling: int = DEFAULT_SEARCH_CEILING) -> Iterator[AbelianHom]:
    """All homs, unordered (see :func:`enumerate_abelian_homs` for the sorted list)."""
    if target.order > order_bound:
        raise BoundExceeded(f"target order {target.order} exceeds bound {order_bound}")
    A = target
    g, r = source.genus, source.cusps
    all_elems = list(A.elements())
    delta_choices = [A.elements_of_order_dividing(n) for n in source.periods]
    free_count = 2 * g + max(r - 1, 0)
    size = len(all_elems) ** free_count * math.prod(len(c) for c in delta_choices)
    if size > search_ceiling:
        raise BoundExceeded(f"{size} candidate image tuples exceed the ceiling {search_ceiling}")
    for free in itertools.product(all_elems, repeat=free_count):
        ab = free[:2 * g]
        gam = free[2 * g:]
        for dels in itertools.product(*delta_choices):
            if r >= 1:
                last = A.neg(A.sum([*gam, *dels]))
                gamma = (*gam, last)
            else:
                if A.sum(dels) != A.zero:
                    continue
                gamma = ()
            yield AbelianHom(source, A, tuple(ab[:g]), tuple(ab[g:]), tuple(gamma), tuple(dels))


def enumerate_abelian_homs(source: Signature, target: FiniteAbelianGroup,
                           surjective_only: bool = False,
                           order_bound: int = DEFAULT_ORDER_BOUND,
                           search_ceiling: int = DEFAULT_SEARCH_CEILING) -> List[AbelianHom]:
    homs = iter_abelian_homs(source, target, order_bound, search_ceiling)
    if surjective_only:
        homs = (h for h in homs if is_surjective(h))
    return sorted(homs, key=AbelianHom.flat)


def enumerate_perm_homs(source: Signature, degree: int,
                        degree_bound: int = DEFAULT_DEGREE_BOUND,
                        generator_bound: int = DEFAULT_GENERATOR_BOUND,
                        search_ceiling: int = DEFAULT_SEARCH_CEILING) -> List[PermHom]:
    """All transitive permutation representations of the given degree.

    Generators are assigned in (alpha, beta, gamma, delta) order; the last one
    occurring in the long relation is solved for, so the output is
    lexicographic in the flattened image tuple.
    """
    if degree < 1:
        raise MalformedHom("degree must be positive")
    if degree > degree_bound:
        raise BoundExceeded(f"degree {degree} exceeds bound {degree_bound}")
    g, r, k = source.genus, source.cusps, source.k
    ngens = 2 * g + r + k
    if ngens > generator_bound:
        raise BoundExceeded(f"{ngens} generators exceed bound {generator_bound}")
    n = degree
    ident = groups.identity_perm(n)
    sym = list(itertools.permutations(range(n)))
    by_period = {}
    for per in set(source.periods):
        by_period[per] = [p for p in sym if per % groups.perm_order(p) == 0]

    choices = [sym] * (2 * g + r) + [by_period[p] for p in source.periods]
    solved = r + k > 0  # the last gamma/delta is determined by the long relation
    free_choices = choices[:-1] if solved else choices
    size = math.prod(len(c) for c in free_choices)
    if size > search_ceiling:
        raise BoundExceeded(f"{size} candidate tuples exceed the ceiling {search_ceiling}")

    out = []
    for free in itertools.product(*free_choices):
        if solved:
            # relation: prefix * last = 1
            prefix = [groups.commutator(free[i], free[g + i]) for i in range(g)]
            prefix += list(free[2 * g:])
            last = groups.inverse(groups.product(prefix, n))
            if k and source.periods[-1] % groups.perm_order(last):
                continue
            imgs = list(free) + [last]
        else:
            imgs = list(free)
        h = PermHom(
            source, n,
            tuple(imgs[:g]), tuple(imgs[g:2 * g]),
            tuple(imgs[2 * g:2 * g + r]), tuple(imgs[2 * g + r:]),
        )
        if not solved and relation_word(h) != ident:
            continue
        if groups.is_transitive(imgs, n):
            out.append(h)
    return out


def image_group(h: PermHom) -> frozenset:
    return groups.generate_group(h.images(), h.degree)
