"""Signatures of Fenchel groups and their closed-form invariants.

A signature ``(g, r; {n_1, ..., n_k})`` names the group

    < a_1, b_1, ..., a_g, b_g, c_1, ..., c_r, d_1, ..., d_k |
      prod [a_i, b_i] * prod c_j * prod d_l = 1,  d_l^{n_l} = 1 >

All quantities are exact: Euler characteristics are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (
    ClassificationGap,
    DomainError,
    EmptyInput,
    InvalidPeriod,
    NegativeParameter,
    TrivialGroupInput,
)
from .runs import RunTuple
from .smith import invariant_factors, smith_normal_form


def lcm(values: Iterable[int]) -> int:
    if isinstance(values, RunTuple):
        values = [v for v, _ in values.runs]
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def prod(values: Iterable[int]) -> int:
    # grouping equal factors keeps long period lists (thousands of 2s) cheap
    counts = values.counts() if isinstance(values, RunTuple) else Counter(values)
    return math.prod(n ** c for n, c in counts.items())


# Period lists longer than this are stored run-length encoded.
RUN_THRESHOLD = 4096


@dataclass(frozen=True, order=True)
class Signature:
    """Immutable signature; periods equal to 1 are dropped and the rest sorted."""

    genus: int
    cusps: int
    periods: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        g, r = self.genus, self.cusps
        if not isinstance(g, int) or not isinstance(r, int):
            raise NegativeParameter("genus and cusps must be integers")
        if g < 0 or r < 0:
            raise NegativeParameter(f"genus and cusps must be >= 0, got ({g}, {r})")
        ps = self.periods
        runs = ps.runs if isinstance(ps, RunTuple) else [(n, 1) for n in ps]
        counts: Counter = Counter()
        for n, c in runs:
            if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
                raise InvalidPeriod(f"periods must be positive integers, got {n!r}")
            if n != 1:
                counts[n] += c
        total = sum(counts.values())
        if total > RUN_THRESHOLD:
            normal = RunTuple(sorted(counts.items()))
        else:
            normal = tuple(n for n, c in sorted(counts.items()) for _ in range(c))
        object.__setattr__(self, "periods", normal)

    @property
    def g(self) -> int:
        return self.genus

    @property
    def r(self) -> int:
        return self.cusps

    @property
    def k(self) -> int:
        ps = self.periods
        return ps.size if isinstance(ps, RunTuple) else len(ps)

    def period_counts(self) -> Counter:
        ps = self.periods
        return ps.counts() if isinstance(ps, RunTuple) else Counter(ps)

    def __str__(self) -> str:
        ps = self.periods
        if not ps:
            inner = "∅"
        elif isinstance(ps, RunTuple):
            inner = "{" + ",".join(f"{n}×{c}" if c > 1 else str(n) for n, c in ps.runs) + "}"
        else:
            inner = "{" + ",".join(map(str, ps)) + "}"
        return f"({_int_str(self.genus)},{_int_str(self.cusps)};{inner})"

    def to_dict(self) -> dict:
        return {"g": self.genus, "r": self.cusps, "periods": list(self.periods)}

    @classmethod
    def from_dict(cls, data: dict) -> "Signature":
        return normalize_signature(data["g"], data["r"], data.get("periods", []))


def _int_str(n: int) -> str:
    if n.bit_length() > 10_000:
        return f"<{n.bit_length()}-bit integer>"
    return str(n)


def normalize_signature(g: int, r: int, periods: Sequence[int] = ()) -> Signature:
    return Signature(g, r, tuple(periods))


def sig(g: int, r: int, *periods: int) -> Signature:
    """Shorthand: ``sig(0, 0, 2, 3, 7)``."""
    return Signature(g, r, periods)


# ---------------------------------------------------------------- Euler data


class CurvatureClass(enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


def euler_characteristic(s: Signature) -> Fraction:
    defect = sum((c * (1 - Fraction(1, n)) for n, c in s.period_counts().items()), Fraction(0))
    return 2 - 2 * s.genus - s.cusps - defect


def classify_curvature(s: Signature) -> CurvatureClass:
    chi = euler_characteristic(s)
    if chi > 0:
        return CurvatureClass.ELLIPTIC
    if chi == 0:
        return CurvatureClass.PARABOLIC
    return CurvatureClass.HYPERBOLIC


def is_hyperbolic(s: Signature) -> bool:
    return euler_characteristic(s) < 0


def format_rational(q: Fraction) -> str:
    """Always ``p/q`` with ``q > 0`` (so ``-3`` is ``"-3/1"``)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


# ------------------------------------------------------------ abelianization


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        fs = self.torsion_factors
        assert all(d >= 2 for d in fs)
        assert all(b % a == 0 for a, b in zip(fs, fs[1:]))

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion_factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion_factors": list(self.torsion_factors)}


def relation_matrix(s: Signature) -> List[List[int]]:
    """Relations of the abelianized presentation.

    Columns are ordered ``a_1..a_g, b_1..b_g, c_1..c_r, d_1..d_k``; commutators
    vanish, leaving the long relation ``sum c + sum d`` and ``n_l * d_l``.
    """
    g, r, k = s.genus, s.cusps, s.k
    ncols = 2 * g + r + k
    long_rel = [0] * (2 * g) + [1] * (r + k)
    rows = [long_rel] if ncols else []
    for l, n in enumerate(s.periods):
        row = [0] * ncols
        row[2 * g + r + l] = n
        rows.append(row)
    return rows


def abelianization(s: Signature) -> AbelianInvariants:
    """Invariants of the abelianized group, via Smith normal form.

    For ``r >= 1`` the long relation eliminates one cusp generator; for
    ``r == 0`` the torsion block is ``(⊕ Z/n_i) / <(1, ..., 1)>``.
    """
    ncols = 2 * s.genus + s.cusps + s.k
    if ncols == 0:
        return AbelianInvariants(0, ())
    free, factors = invariant_factors(relation_matrix(s), ncols)
    return AbelianInvariants(free, tuple(factors))


def abelianization_map(s: Signature) -> Tuple[Tuple[int, ...], List[Tuple[int, ...]]]:
    """Explicit ``Δ -> Δ^ab ≅ ⊕ Z/d_j ⊕ Z^f``.

    Returns ``(moduli, images)`` where ``moduli`` lists the ``d_j`` (0 for a free
    coordinate, unit factors removed) and ``images[i]`` is the coordinate vector
    of the ``i``-th generator in the column order of :func:`relation_matrix`.
    """
    ncols = 2 * s.genus + s.cusps + s.k
    if ncols == 0:
        return (), []
    diag, V = smith_normal_form(relation_matrix(s), ncols)
    keep = [j for j, d in enumerate(diag) if d != 1]
    moduli = tuple(diag[j] for j in keep)
    images = []
    for i in range(ncols):
        images.append(tuple(V[i][j] % diag[j] if diag[j] else V[i][j] for j in keep))
    return moduli, images


def free_rank(s: Signature) -> int:
    """Rank of the torsion-free part of the abelianization (closed form)."""
    return 2 * s.genus + max(s.cusps - 1, 0)


def torsion_subgroup_order(s: Signature) -> int:
    ns = s.periods
    if s.cusps >= 1:
        return prod(ns)
    if len(ns) <= 1:
        return 1
    return prod(ns) // lcm(ns)


def inertia_order_in_abelianization(s: Signature, i: int) -> int:
    """Order of the image of ``d_i`` (0-based) in the abelianization.

    ``n_i`` when there are cusps; otherwise ``gcd(n_i, lcm(n_j | j != i))``,
    which is 1 for a single period.
    """
    ns = s.periods
    if s.cusps >= 1:
        return ns[i]
    return math.gcd(ns[i], _lcm_without_one(s.period_counts(), ns[i]))


def is_trivial_group(s: Signature) -> bool:
    if s.genus != 0:
        return False
    if s.cusps == 1:
        return s.k == 0
    if s.cusps == 0:
        if s.k <= 1:
            return True
        return s.k == 2 and math.gcd(*s.periods) == 1
    return False


def is_perfect(s: Signature) -> bool:
    """Perfectness from the pairwise-coprime criterion.

    The trivial group ``(0,1;∅)`` is perfect as well.
    """
    if (s.genus, s.cusps) == (0, 1):
        return s.k == 0
    if (s.genus, s.cusps) != (0, 0):
        return False
    return _pairwise_coprime(s.period_counts())


def _pairwise_coprime(counts: Counter) -> bool:
    if any(c > 1 for c in counts.values()):
        return False
    return all(math.gcd(a, b) == 1 for a, b in combinations(counts, 2))


def _lcm_without_one(counts: Counter, n: int) -> int:
    """lcm of the multiset after removing one copy of ``n``."""
    if counts[n] > 1:
        return lcm(counts)
    return lcm(m for m in counts if m != n)


def abelian_period_condition(s: Signature) -> bool:
    if s.k == 0:
        return True
    if s.k == 1:
        return False
    counts = s.period_counts()
    return all(_lcm_without_one(counts, n) % n == 0 for n in counts)


def condition_star(s: Signature) -> bool:
    if s.cusps:
        raise DomainError("condition (*) is defined for signatures without cusps")
    counts = s.period_counts()
    for n in counts:
        if _lcm_without_one(counts, n) % n == 0:
            continue
        rest = counts.copy()
        rest[n] -= 1
        rest += Counter()  # drop the zero entry
        # ∏ rest / lcm(rest) >= 2 exactly when rest is not pairwise coprime
        if not _pairwise_coprime(rest):
            continue
        return False
    return True


def is_affine(s: Signature) -> bool:
    return s.cusps >= 1


def good_presentation(s: Signature) -> Signature:
    """Replace a spindle ``(0,0;{n1,n2})`` with ``n1 != n2`` by ``(0,0;{d,d})``.

    Both present ``Z/d`` with ``d = gcd(n1, n2)``, but only the latter is an
    orbifold that admits manifold covers, which is what cover-counting needs.
    """
    if (s.genus, s.cusps) == (0, 0) and s.k == 2 and s.periods[0] != s.periods[1]:
        d = math.gcd(*s.periods)
        return Signature(0, 0, (d, d))
    return s


# -------------------------------------------------------------------- report


@dataclass(frozen=True)
class InvariantsReport:
    euler: Fraction
    curvature: CurvatureClass
    rank_tf: int
    epsilon: int
    periods: Tuple[int, ...]
    torsion_order: int
    perfect: bool

    def to_dict(self) -> dict:
        return {
            "euler": format_rational(self.euler),
            "curvature": self.curvature.value,
            "rank_tf": self.rank_tf,
            "epsilon": self.epsilon,
            "periods": list(self.periods),
            "torsion_order": self.torsion_order,
            "perfect": self.perfect,
        }


def invariants_report(s: Signature) -> InvariantsReport:
    ab = abelianization(s)
    eps = 1 if is_affine(s) else 0
    chi = euler_characteristic(s)
    rebuilt = 2 - ab.free_rank - eps - sum((1 - Fraction(1, n) for n in s.periods), Fraction(0))
    if rebuilt != chi:
        raise AssertionError(f"Euler identity broken for {s}: {rebuilt} != {chi}")
    return InvariantsReport(
        euler=chi,
        curvature=classify_curvature(s),
        rank_tf=ab.free_rank,
        epsilon=eps,
        periods=s.periods,
        torsion_order=ab.torsion_order,
        perfect=is_perfect(s),
    )


def invariants_equal(a: Signature, b: Signature) -> bool:
    """Compare (rank_tf, affineness, periods).

    Equality is necessary for an isomorphism of the groups; it is not claimed
    to be sufficient.
    """
    for s in (a, b):
        if is_trivial_group(s):
            raise TrivialGroupInput(f"{s} presents the trivial group")
    return (free_rank(a), is_affine(a), a.periods) == (free_rank(b), is_affine(b), b.periods)


# -------------------------------------------------- non-hyperbolic catalogue


@dataclass(frozen=True)
class TableRow:
    pattern: str
    group: str
    euler: str
    derived_length: str


TABLE_1: Tuple[TableRow, ...] = (
    TableRow("(0,0;∅)", "{1}", "2", "0"),
    TableRow("(0,0;{n})", "{1}", "1 + 1/n", "0"),
    TableRow("(0,0;{n1,n2})", "Z/gcd(n1,n2)Z", "1/n1 + 1/n2", "1"),
    TableRow("(0,0;{2,2,n})", "D_n", "1/n", "≤ 2"),
    TableRow("(0,0;{2,3,3})", "A_4", "1/6", "2"),
    TableRow("(0,0;{2,3,4})", "S_4", "1/12", "3"),
    TableRow("(0,0;{2,3,5})", "A_5", "1/30", "non-solvable"),
    TableRow("(0,1;∅)", "{1}", "1", "0"),
    TableRow("(0,1;{n})", "Z/nZ", "1/n", "1"),
    TableRow("(0,0;{2,3,6})", "(Z×Z)⋊Z/6Z", "0", "2"),
    TableRow("(0,0;{2,4,4})", "(Z×Z)⋊Z/4Z", "0", "2"),
    TableRow("(0,0;{3,3,3})", "(Z×Z)⋊Z/3Z", "0", "2"),
    TableRow("(0,0;{2,2,2,2})", "<a,b,c | a^2,b^2,c^2,(abc)^2>", "0", "2"),
    TableRow("(0,1;{2,2})", "Z/2Z * Z/2Z", "0", "2"),
    TableRow("(0,2;∅)", "Z", "0", "1"),
    TableRow("(1,0;∅)", "Z×Z", "0", "1"),
)

PARABOLIC_SIGNATURES: Tuple[Signature, ...] = (
    Signature(0, 0, (2, 3, 6)),
    Signature(0, 0, (2, 4, 4)),
    Signature(0, 0, (3, 3, 3)),
    Signature(0, 0, (2, 2, 2, 2)),
    Signature(0, 1, (2, 2)),
    Signature(0, 2, ()),
    Signature(1, 0, ()),
)


@dataclass(frozen=True)
class NonHyperbolicEntry:
    """A matched row of the non-hyperbolic catalogue.

    ``derived_length`` is exact for this instance (``None`` when not solvable);
    ``row.derived_length`` is the catalogue's column, e.g. ``"≤ 2"`` for D_n.
    ``order`` is ``None`` for infinite groups.
    """

    signature: Signature
    row: TableRow
    euler: Fraction
    derived_length: Optional[int]
    order: Optional[int]

    @property
    def group(self) -> str:
        return self.row.group

    def to_dict(self) -> dict:
        return {
            "signature": self.signature.to_dict(),
            "pattern": self.row.pattern,
            "group": self.row.group,
            "euler": format_rational(self.euler),
            "derived_length": self.derived_length,
            "table_derived_length": self.row.derived_length,
            "order": self.order,
        }


@dataclass(frozen=True)
class HyperbolicMarker:
    signature: Signature
    euler: Fraction

    def to_dict(self) -> dict:
        return {"signature": self.signature.to_dict(), "hyperbolic": True,
                "euler": format_rational(self.euler)}


def _match_row(s: Signature) -> Tuple[int, Optional[int], Optional[int]]:
    """Return (row index, exact derived length, order) or raise KeyError."""
    g, r, ns = s.genus, s.cusps, s.periods
    if g == 1 and r == 0 and not ns:
        return 15, 1, None
    if g != 0:
        raise KeyError(s)
    if r == 2 and not ns:
        return 14, 1, None
    if r == 1:
        if not ns:
            return 7, 0, 1
        if len(ns) == 1:
            return 8, 1, ns[0]
        if ns == (2, 2):
            return 13, 2, None
        raise KeyError(s)
    if r != 0:
        raise KeyError(s)
    if not ns:
        return 0, 0, 1
    if len(ns) == 1:
        return 1, 0, 1
    if len(ns) == 2:
        d = math.gcd(*ns)
        return 2, (1 if d > 1 else 0), d
    fixed = {
        (2, 3, 3): (4, 2, 12),
        (2, 3, 4): (5, 3, 24),
        (2, 3, 5): (6, None, 60),
        (2, 3, 6): (9, 2, None),
        (2, 4, 4): (10, 2, None),
        (3, 3, 3): (11, 2, None),
        (2, 2, 2, 2): (12, 2, None),
    }
    if ns in fixed:
        return fixed[ns]
    if len(ns) == 3 and ns[0] == ns[1] == 2:
        n = ns[2]
        return 3, (1 if n == 2 else 2), 2 * n
    raise KeyError(s)


def classify_nonhyperbolic(s: Signature) -> Union[NonHyperbolicEntry, HyperbolicMarker]:
    chi = euler_characteristic(s)
    if chi < 0:
        return HyperbolicMarker(s, chi)
    try:
        idx, dl, order = _match_row(s)
    except KeyError:
        raise ClassificationGap(f"no catalogue row matches {s} (χ = {chi})") from None
    return NonHyperbolicEntry(s, TABLE_1[idx], chi, dl, order)


# ------------------------------------------------------- numerical identities


def gcd_subset_products(periods: Sequence[int]) -> Tuple[int, int]:
    """Both sides of ``∏_{i<j} gcd(n_i, n_j) = ∏_{s<k} gcd{∏_I n : |I| = s}``."""
    ns = list(periods)
    if not ns:
        raise EmptyInput("need at least one integer")
    left = prod(math.gcd(a, b) for a, b in combinations(ns, 2))
    right = 1
    for size in range(1, len(ns)):
        right *= math.gcd(*(prod(c) for c in combinations(ns, size)))
    return left, right


def lcm_gcd_identity(periods: Sequence[int]) -> Tuple[int, int]:
    """Both sides of ``lcm(n) * gcd{∏_I n : |I| = k-1} = ∏ n``."""
    ns = list(periods)
    if not ns:
        raise EmptyInput("need at least one integer")
    g = math.gcd(*(prod(c) for c in combinations(ns, len(ns) - 1)))
    return lcm(ns) * g, prod(ns)


# ------------------------------------------------------- Deligne–Mumford curves


@dataclass(frozen=True)
class DMCurveData:
    rigidified: Signature
    generic_inertia_order: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.generic_inertia_order, int) or self.generic_inertia_order < 1:
            raise InvalidPeriod("generic inertia order must be a positive integer")


def dm_euler_characteristic(dm: DMCurveData) -> Fraction:
    return euler_characteristic(dm.rigidified) / dm.generic_inertia_order
