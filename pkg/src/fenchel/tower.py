"""Derived towers: iterated abelianization kernels and their signatures.

The derived subgroup is open exactly when the abelianization is finite, which
for these groups means ``(g, r) = (0, 0)`` or ``(0, 1)``.  Outside that range
the tower stops with an explicit status instead of guessing.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .covers import AbelianHom, InducedSignatureResult, _assemble, induced_signature_abelian
from .errors import BoundExceeded, IdentityCover, NegativeParameter, WrongShape
from .groups import FiniteAbelianGroup, _prime_factors
from .runs import RunTuple
from .signature import (
    Signature,
    euler_characteristic,
    free_rank,
    is_hyperbolic,
    is_perfect,
    is_trivial_group,
    lcm,
    prod,
)

DEFAULT_DEPTH = 8


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def torsion_quotient_hom(s: Signature) -> AbelianHom:
    """The canonical surjection onto the torsion part of the abelianization.

    With cusps the target is ``⊕ Z/n_i``: ``δ_l`` goes to ``e_l``, the last cusp
    absorbs the long relation and everything else dies.  Without cusps the
    target ``(⊕ Z/n_i)/<(1,...,1)>`` is split prime by prime: for each ``p`` the
    index ``j`` of largest ``p``-valuation is eliminated, so ``e_j`` becomes
    ``-Σ_{i≠j} e_i`` in ``⊕_{i≠j} Z/p^{v_p(n_i)}``.
    """
    g, r, ns = s.genus, s.cusps, s.periods
    if r >= 1:
        if not ns:
            raise IdentityCover(f"{s} has no torsion in its abelianization")
        k = len(ns)
        target = FiniteAbelianGroup(ns)
        delta = tuple(tuple(int(i == l) for i in range(k)) for l in range(k))
        last = tuple(-1 % n for n in ns)
        gamma = tuple([target.zero] * (r - 1) + [last])
        zero = target.zero
        return AbelianHom(s, target, (zero,) * g, (zero,) * g, gamma, delta)

    moduli: List[int] = []
    columns: List[Tuple[int, int]] = []  # (index of the period, eliminated index)
    for p in sorted({q for n in ns for q in _prime_factors(n)}):
        vals = [_valuation(n, p) for n in ns]
        j = max(range(len(ns)), key=lambda i: (vals[i], -i))
        for i, v in enumerate(vals):
            if i != j and v > 0:
                moduli.append(p ** v)
                columns.append((i, j))
    if not moduli:
        raise IdentityCover(f"{s} has trivial torsion in its abelianization")
    target = FiniteAbelianGroup(tuple(moduli))
    delta = tuple(
        tuple((int(l == i) - int(l == j)) % m for (i, j), m in zip(columns, moduli))
        for l in range(len(ns))
    )
    zero = target.zero
    return AbelianHom(s, target, (zero,) * g, (zero,) * g, (), delta)


EXPLICIT_DIMENSION_LIMIT = 64


def torsion_quotient_dimension(s: Signature) -> int:
    """Number of cyclic factors in the target of :func:`torsion_quotient_hom`."""
    if s.cusps >= 1:
        return s.k
    counts = s.period_counts()
    dim = 0
    for p in sorted({q for n in counts for q in _prime_factors(n)}):
        dim += sum(c for n, c in counts.items() if n % p == 0) - 1
    return dim


def inertia_order_map(s: Signature) -> Dict[int, int]:
    """Order in the torsion quotient of a ``δ`` with period ``n``, keyed by ``n``."""
    counts = s.period_counts()
    if s.cusps >= 1:
        return {n: n for n in counts}
    full = lcm(counts)
    order = {}
    for n, c in counts.items():
        rest = full if c > 1 else lcm(m for m in counts if m != n)
        order[n] = math.gcd(n, rest)
    return order


def inertia_orders(s: Signature) -> List[int]:
    """Order of each ``δ_l`` in the torsion quotient, from the period counts alone."""
    order = inertia_order_map(s)
    return [order[n] for n in s.periods]


MAX_INDEX_BITS = 200_000_000


def torsion_kernel_closed_form(s: Signature) -> InducedSignatureResult:
    """Same result as the explicit hom, from element orders only.

    ``δ_l`` has order ``gcd(n_l, lcm of the others)`` without cusps (``n_l``
    with cusps); with cusps ``γ_r`` has order ``lcm(n)`` and the other cusp
    generators die.  This stays cheap when the quotient has thousands of
    cyclic factors.
    """
    ns = s.periods
    counts = s.period_counts()
    bits = sum(c * n.bit_length() for n, c in counts.items())
    if bits > MAX_INDEX_BITS:
        raise BoundExceeded(f"torsion quotient of {s} has order around 2^{bits}")
    if s.cusps >= 1:
        if not ns:
            raise IdentityCover(f"{s} has no torsion in its abelianization")
        N = prod(ns)
        cusp_cycles = [N] * (s.cusps - 1) + [N // lcm(ns)]
    else:
        N = prod(ns) // lcm(ns) if s.k > 1 else 1
        if N == 1:
            raise IdentityCover(f"{s} has trivial torsion in its abelianization")
        cusp_cycles = []
    ctypes = {n: ((o, N // o),) for n, o in inertia_order_map(s).items()}
    if isinstance(ns, RunTuple):
        period_cycles = RunTuple((ctypes[n], c) for n, c in ns.runs)
    else:
        period_cycles = [ctypes[n] for n in ns]
    return _assemble(s, N, cusp_cycles, period_cycles)


def torsion_kernel_signature(s: Signature) -> InducedSignatureResult:
    """Signature of ``ker(Δ -> Δ^ab_tor)``.

    Computed through the explicit canonical hom unless its target has more
    than ``EXPLICIT_DIMENSION_LIMIT`` cyclic factors.
    """
    if torsion_quotient_dimension(s) > EXPLICIT_DIMENSION_LIMIT:
        return torsion_kernel_closed_form(s)
    return induced_signature_abelian(s, torsion_quotient_hom(s))


def commutator_signature_01(s: Signature) -> InducedSignatureResult:
    """Closed form for the commutator subgroup when ``(g, r) = (0, 1)``.

    It is torsion-free with ``∏n/lcm`` cusps and index ``∏n``.
    """
    if (s.genus, s.cusps) != (0, 1):
        raise WrongShape(f"expected a (0,1) signature, got {s}")
    ns = s.periods
    N = prod(ns)
    cusps = N // lcm(ns)
    two_g = -euler_characteristic(s) * N + 2 - cusps
    assert two_g.denominator == 1 and two_g.numerator % 2 == 0
    return InducedSignatureResult(
        Signature(two_g.numerator // 2, cusps, ()),
        N,
        (cusps,),
        tuple(((n, N // n),) for n in ns),
    )


# ------------------------------------------------------------------- tower


class Status(enum.Enum):
    CONTINUE = "Continue"
    PERFECT = "Perfect"
    TORSION_FREE = "TorsionFreeReached"
    INFINITE_AB = "InfiniteAbelianization"


@dataclass(frozen=True)
class TowerStep:
    signature: Signature
    quotient_order: int
    status: Status
    provenance: Optional[InducedSignatureResult] = None

    def to_dict(self) -> dict:
        return {
            "signature": self.signature.to_dict(),
            "quotient_order": self.quotient_order,
            "status": self.status.value,
        }


@dataclass(frozen=True)
class Tower:
    """``steps[t-1]`` describes the stage ``Δ^(t)``.

    Each step's status says what happens next at that stage; the tower halts at
    the first non-Continue status.  When the base itself is terminal there are
    no steps and ``status`` records why.
    """

    base: Signature
    steps: Tuple[TowerStep, ...]
    status: Status

    @property
    def signatures(self) -> List[Signature]:
        return [self.base] + [st.signature for st in self.steps]

    @property
    def quotient_orders(self) -> List[int]:
        return [st.quotient_order for st in self.steps]

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "status": self.status.value,
            "steps": [st.to_dict() for st in self.steps],
        }


def stage_status(s: Signature) -> Status:
    if not s.periods and s.cusps == 0:
        return Status.TORSION_FREE
    if is_perfect(s):
        return Status.PERFECT
    if (s.genus, s.cusps) == (0, 1):
        return Status.CONTINUE
    if free_rank(s) > 0:
        return Status.INFINITE_AB
    return Status.CONTINUE


def derived_step(s: Signature) -> InducedSignatureResult:
    """Signature of the derived subgroup, assuming it is open and proper."""
    if (s.genus, s.cusps) == (0, 1):
        return commutator_signature_01(s)
    return torsion_kernel_signature(s)


def derived_tower(s: Signature, max_depth: int = DEFAULT_DEPTH) -> Tower:
    status = stage_status(s)
    steps: List[TowerStep] = []
    current = s
    while status is Status.CONTINUE and len(steps) < max_depth:
        res = derived_step(current)
        current = res.subgroup_signature
        status = stage_status(current)
        steps.append(TowerStep(current, res.index, status, res))
    return Tower(s, tuple(steps), status if not steps else steps[-1].status)


def m_derived_perfect(s: Signature, m: int) -> Optional[bool]:
    """Whether ``Δ^(m)`` is perfect; ``None`` when this calculus cannot tell.

    Non-perfect hyperbolic groups are never derived perfect, so they return
    False without building a tower.
    """
    if m < 0:
        raise NegativeParameter("m must be >= 0")
    if is_perfect(s) or is_trivial_group(s):
        return True
    if is_hyperbolic(s):
        return False
    tower = derived_tower(s, m + 1)
    for t, sg in enumerate(tower.signatures):
        status = stage_status(sg)
        if is_trivial_group(sg) or status is Status.PERFECT:
            return m >= t
        if sg in (Signature(1, 0), Signature(0, 2)):
            # Z^2 or Z: the next derived term is trivial
            return m >= t + 1
        if status is Status.CONTINUE:
            if t >= m:
                return False
            continue
        return None
    return None


def s4_fingerprint(tower: Tower) -> bool:
    """Quotient orders 2, 3, 4 ending at the trivial group."""
    return (
        tower.quotient_orders[:3] == [2, 3, 4]
        and len(tower.steps) == 3
        and is_trivial_group(tower.steps[-1].signature)
    )


def has_s4_fingerprint(s: Signature) -> bool:
    """Like ``s4_fingerprint(derived_tower(s, 4))`` but gives up at the first
    quotient order that does not match, so large towers are never built."""
    current = s
    for q in (2, 3, 4):
        if stage_status(current) is not Status.CONTINUE:
            return False
        res = derived_step(current)
        if res.index != q:
            return False
        current = res.subgroup_signature
    return is_trivial_group(current)


def _multisets(bound: int, lo: int = 2):
    yield ()
    for n in range(lo, bound + 1):
        for rest in _multisets(bound // n, n):
            yield (n,) + rest


def s4_uniqueness_scan(period_product_bound: int) -> List[Signature]:
    """All ``(0,0;{...})`` with ``∏ n ≤ bound`` whose tower has the S4 fingerprint."""
    hits = []
    for ns in _multisets(period_product_bound):
        s = Signature(0, 0, ns)
        if has_s4_fingerprint(s):
            hits.append(s)
    return sorted(hits)
