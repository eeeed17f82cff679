"""What the 3-step solvable quotient sees: hyperbolicity, affineness, torsion.

Hyperbolicity shows up as derived length 3 (with S4 as the lone elliptic
exception), affineness as the Chen-rank equation ``2Θ2 - Θ1² + Θ1 = 0`` of a
torsion-free cover, and torsion already survives in the metabelian quotient.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .covers import PermHom, verify_perm_hom
from .errors import AbelianShape, HasTorsion, PerfectInput
from .fenchel_nielsen import fn_chain
from .groups import _prime_factors, identity_perm
from .signature import (
    Signature,
    classify_nonhyperbolic,
    euler_characteristic,
    inertia_order_in_abelianization,
    is_hyperbolic,
    is_perfect,
    is_trivial_group,
)
from .tower import has_s4_fingerprint


class Shape(enum.Enum):
    FREE = "Free"
    SURFACE = "Surface"


@dataclass(frozen=True)
class ChenData:
    theta1: int
    theta2: int
    shape: Shape

    def to_dict(self) -> dict:
        return {"theta1": self.theta1, "theta2": self.theta2, "shape": self.shape.value}


def chen_ranks(s: Signature) -> ChenData:
    """First two Chen ranks of a torsion-free non-abelian signature.

    Free of rank ``n``: ``Θ2 = (n² - n)/2``.  Surface of genus ``g``
    (``n = 2g``): one less, since the single relation lives in degree 2.
    """
    if s.periods:
        raise HasTorsion(f"{s} has periods")
    if euler_characteristic(s) >= 0:
        raise AbelianShape(f"{s} is abelian (free rank <= 1 or the torus)")
    if s.cusps >= 1:
        n = 2 * s.genus + s.cusps - 1
        return ChenData(n, (n * n - n) // 2, Shape.FREE)
    n = 2 * s.genus
    return ChenData(n, (n * n - n) // 2 - 1, Shape.SURFACE)


def affineness_equation(chen: ChenData) -> bool:
    return 2 * chen.theta2 - chen.theta1 ** 2 + chen.theta1 == 0


def affine_3step_check(s: Signature) -> bool:
    """Affineness read off the Chen ranks of the canonical torsion-free cover.

    Raises :class:`AbelianShape` when that cover is abelian (non-hyperbolic
    inputs) and :class:`PerfectInput` for perfect ones.
    """
    cover = fn_chain(s).final_signature if s.periods else s
    return affineness_equation(chen_ranks(cover))


# ---------------------------------------------------- torsion in Δ^2


def heisenberg_hom(s: Signature, i: int, l: int) -> PermHom:
    """Send ``α1, β1`` to generators of the mod-``l`` Heisenberg group and ``δ_i`` to
    the inverse of their commutator (central of order ``l``), all else to 1.

    The group acts on itself by right multiplication, so the degree is ``l³``.
    Needs genus >= 1 and ``l | n_i``.
    """
    pts = [(a, b, c) for a in range(l) for b in range(l) for c in range(l)]
    index = {p: j for j, p in enumerate(pts)}

    def right_mul(h):
        a2, b2, c2 = h
        return tuple(index[((a + a2) % l, (b + b2) % l, (c + c2 + a * b2) % l)] for a, b, c in pts)

    x = right_mul((1, 0, 0))
    y = right_mul((0, 1, 0))
    z = right_mul((0, 0, l - 1))  # [x, y] = (0, 0, 1) with the left-to-right convention
    one = identity_perm(l ** 3)
    g, r = s.genus, s.cusps
    delta = [one] * s.k
    delta[i] = z
    return PermHom(s, l ** 3, (x,) + (one,) * (g - 1), (y,) + (one,) * (g - 1),
                   (one,) * r, tuple(delta))


@dataclass(frozen=True)
class TorsionCheck:
    torsion_free: bool
    witness: Optional[str] = None
    hom: Optional[PermHom] = None

    def __bool__(self) -> bool:
        return self.torsion_free

    def to_dict(self) -> dict:
        out = {"torsion_free": self.torsion_free, "witness": self.witness}
        if self.hom is not None:
            out["hom"] = self.hom.to_dict()
        return out


def metabelian_torsion_free(s: Signature) -> TorsionCheck:
    """Whether the group is torsion-free, decided inside its metabelian quotient.

    A period that survives in the abelianization is its own witness; otherwise
    (genus >= 1, no cusps) a Heisenberg quotient of order ``l³`` is built and
    checked as an explicit permutation hom.
    """
    if is_perfect(s):
        raise PerfectInput(f"{s} is perfect")
    if not s.periods:
        return TorsionCheck(True)
    for i in range(s.k):
        o = inertia_order_in_abelianization(s, i)
        if o > 1:
            return TorsionCheck(False, f"δ{i + 1} survives in Δ^ab with order {o}")
    # no cusps, periods invisible in Δ^ab: non-perfect forces genus >= 1
    assert s.genus >= 1, s
    n = s.periods[0]
    l = min(_prime_factors(n))
    h = heisenberg_hom(s, 0, l)
    assert verify_perm_hom(h)
    return TorsionCheck(False, f"Heisenberg quotient H_{l} detects δ1 of order {l}", h)


# ------------------------------------------------- hyperbolicity by length


def derived_length_upto3(s: Signature) -> int:
    """Derived length of the 3-step quotient ``Δ/Δ^(3)``.

    Trivial and perfect groups give 0, non-hyperbolic groups their exact value
    (capped at 3), non-perfect hyperbolic groups 3.
    """
    if is_trivial_group(s) or is_perfect(s):
        return 0
    if is_hyperbolic(s):
        return 3
    return min(classify_nonhyperbolic(s).derived_length, 3)


def hyperbolic_3step_check(s: Signature) -> bool:
    """Derived length 3 and not the S4 tower."""
    if is_perfect(s):
        raise PerfectInput(f"{s} is perfect")
    if derived_length_upto3(s) != 3:
        return False
    return not has_s4_fingerprint(s)
