"""Explicit torsion-free normal covers with solvable quotient of length <= 3.

Every step is an abelian cover given by a concrete hom (or, for a torsion
kernel with a huge target, by its canonical construction), so a chain can be
re-checked from its serialized form alone (see :func:`certify_chain`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .covers import AbelianHom, InducedSignatureResult, induced_signature_abelian, is_surjective, verify_abelian_hom
from .errors import (
    BoundExceeded,
    DomainError,
    FenchelError,
    MalformedHom,
    NegativeParameter,
    NotAffine,
    PerfectInput,
    TrivialInput,
    ZeroOneObstruction,
)
from .groups import FiniteAbelianGroup, _prime_factors
from .signature import (
    Signature,
    abelian_period_condition,
    condition_star,
    euler_characteristic,
    good_presentation,
    is_hyperbolic,
    is_perfect,
    is_trivial_group,
)
from .tower import (
    EXPLICIT_DIMENSION_LIMIT,
    torsion_kernel_closed_form,
    torsion_quotient_dimension,
    torsion_quotient_hom,
)

TORSION_KERNEL = "TorsionKernel"
MOD_N = "ModN"
PRIME_CHARACTER = "PrimeCharacter"
CUSP_DOUBLING = "CuspDoubling"
KINDS = (TORSION_KERNEL, MOD_N, PRIME_CHARACTER, CUSP_DOUBLING)

DEFAULT_INDEX_LIMIT = 10 ** 6


@dataclass(frozen=True)
class CoverStep:
    """One abelian layer.

    ``params`` depends on ``kind``: ``()`` for TorsionKernel, ``(n,)`` for ModN
    and CuspDoubling, ``(l, i1, i2)`` for PrimeCharacter (indices 0-based).
    ``hom`` is omitted only for a torsion kernel whose target is too large to
    write out; the canonical hom is then implied by the kind.
    """

    kind: str
    params: Tuple[int, ...]
    source: Signature
    hom: Optional[AbelianHom]
    result: InducedSignatureResult

    @property
    def signature(self) -> Signature:
        return self.result.subgroup_signature

    def label(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.params))})" if self.params else self.kind

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "source": self.source.to_dict(),
            "hom": self.hom.to_dict() if self.hom is not None else None,
            "result": self.result.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoverStep":
        source = Signature.from_dict(data["source"])
        hom = data.get("hom")
        return cls(
            data["kind"],
            tuple(int(x) for x in data.get("params", [])),
            source,
            AbelianHom.from_dict(source, hom) if hom is not None else None,
            InducedSignatureResult.from_dict(data["result"]),
        )


@dataclass(frozen=True)
class CoverChain:
    base: Signature
    steps: Tuple[CoverStep, ...]
    total_index: int
    quotient_derived_length: int
    presentation: Optional[Signature] = None  # the signature the first hom is defined on

    def __post_init__(self) -> None:
        if self.presentation is None:
            object.__setattr__(self, "presentation", self.base)

    @property
    def final_signature(self) -> Signature:
        return self.steps[-1].signature if self.steps else self.presentation

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "presentation": self.presentation.to_dict(),
            "steps": [st.to_dict() for st in self.steps],
            "total_index": self.total_index,
            "quotient_derived_length": self.quotient_derived_length,
            "final": self.final_signature.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoverChain":
        return cls(
            Signature.from_dict(data["base"]),
            tuple(CoverStep.from_dict(st) for st in data["steps"]),
            int(data["total_index"]),
            int(data["quotient_derived_length"]),
            Signature.from_dict(data.get("presentation", data["base"])),
        )


# ------------------------------------------------------------ hom builders


def mod_n_hom(s: Signature, n: int = 2) -> AbelianHom:
    """``Δ -> (Z/n)^{2g}``: ``α_i -> e_{2i-1}``, ``β_i -> e_{2i}``, the rest to 0."""
    g = s.genus
    if g == 0:
        raise DomainError("the mod-n cover needs genus >= 1")
    A = FiniteAbelianGroup((n,) * (2 * g))

    def e(j: int):
        return tuple(int(i == j) for i in range(2 * g))

    return AbelianHom(
        s, A,
        tuple(e(2 * i) for i in range(g)),
        tuple(e(2 * i + 1) for i in range(g)),
        (A.zero,) * s.cusps,
        (A.zero,) * s.k,
    )


def prime_character_hom(s: Signature, l: int, i1: int, i2: int) -> AbelianHom:
    """``δ_{i1} -> 1``, ``δ_{i2} -> -1`` in ``Z/l``, everything else to 0."""
    A = FiniteAbelianGroup((l,))
    delta = [(0,)] * s.k
    delta[i1] = (1,)
    delta[i2] = (l - 1,)
    z = (0,)
    return AbelianHom(s, A, (z,) * s.genus, (z,) * s.genus, (z,) * s.cusps, tuple(delta))


def choose_prime_character(s: Signature) -> Tuple[int, int, int]:
    """Smallest prime dividing some ``gcd(n_i1, n_i2)``; least pair for that prime."""
    ns = s.periods
    best = None
    for i1 in range(len(ns)):
        for i2 in range(i1 + 1, len(ns)):
            d = math.gcd(ns[i1], ns[i2])
            if d > 1:
                cand = (min(_prime_factors(d)), i1, i2)
                if best is None or cand < best:
                    best = cand
    if best is None:
        raise PerfectInput(f"{s}: periods are pairwise coprime")
    # least pair for the chosen prime
    l = best[0]
    for i1 in range(len(ns)):
        for i2 in range(i1 + 1, len(ns)):
            if ns[i1] % l == 0 and ns[i2] % l == 0:
                return l, i1, i2
    raise AssertionError("unreachable")


def cusp_growth_hom(s: Signature, n: int) -> AbelianHom:
    """``Z/n`` cover of a torsion-free affine signature that multiplies cusps.

    With three or more cusps, ``γ1 -> 1`` and ``γ2 -> -1`` leave the other
    cusps unramified, giving ``2 + n(r-2)`` cusps; otherwise ``α1, β1 -> 1``
    and all cusps split completely, giving ``n r``.
    """
    A = FiniteAbelianGroup((n,))
    z = (0,)
    g, r = s.genus, s.cusps
    if s.periods:
        raise DomainError("cusp growth expects a torsion-free signature")
    if r >= 3:
        gamma = [(1 % n,), ((-1) % n,)] + [z] * (r - 2)
        return AbelianHom(s, A, (z,) * g, (z,) * g, tuple(gamma), ())
    if g >= 1:
        ab = [(1 % n,)] + [z] * (g - 1)
        return AbelianHom(s, A, tuple(ab), tuple(ab), (z,) * r, ())
    raise DomainError(f"{s} has no room for a cusp-growing character")


def hom_for(kind: str, params: Tuple[int, ...], s: Signature) -> AbelianHom:
    if kind == TORSION_KERNEL:
        return torsion_quotient_hom(s)
    if kind == MOD_N:
        return mod_n_hom(s, *params)
    if kind == PRIME_CHARACTER:
        return prime_character_hom(s, *params)
    if kind == CUSP_DOUBLING:
        return cusp_growth_hom(s, *params)
    raise MalformedHom(f"unknown step kind {kind!r}")


def make_step(kind: str, params: Tuple[int, ...], s: Signature) -> CoverStep:
    if kind == TORSION_KERNEL and torsion_quotient_dimension(s) > EXPLICIT_DIMENSION_LIMIT:
        return CoverStep(kind, (), s, None, torsion_kernel_closed_form(s))
    h = hom_for(kind, params, s)
    return CoverStep(kind, tuple(params), s, h, induced_signature_abelian(s, h))


def _chain(base: Signature, presentation: Signature, steps: List[CoverStep]) -> CoverChain:
    return CoverChain(base, tuple(steps), math.prod(st.result.index for st in steps),
                      len(steps), presentation)


# -------------------------------------------------------------- the chain


def fn_chain(s: Signature) -> CoverChain:
    """A torsion-free normal cover whose quotient is solvable of length <= 3.

    Branches, tried in order on the good presentation of ``s``:
    (a) cusps or the abelian-period condition: one torsion kernel;
    (b) genus >= 1: mod-2 cover of the genus part, then a torsion kernel;
    (c) the torsion kernel already satisfies abelian-period: two torsion kernels;
    (d) a prime character first, then torsion kernels.
    """
    if is_trivial_group(s):
        raise TrivialInput(f"{s} presents the trivial group")
    if is_perfect(s):
        raise PerfectInput(f"{s} is perfect; it has no nontrivial solvable quotient")
    p = good_presentation(s)
    if not p.periods:
        return _chain(s, p, [])

    if p.cusps >= 1 or abelian_period_condition(p):
        steps = [make_step(TORSION_KERNEL, (), p)]
    elif p.genus >= 1:
        first = make_step(MOD_N, (2,), p)
        assert abelian_period_condition(first.signature), first.signature
        steps = [first, make_step(TORSION_KERNEL, (), first.signature)]
    else:
        first = make_step(TORSION_KERNEL, (), p)
        if abelian_period_condition(first.signature):
            steps = [first, make_step(TORSION_KERNEL, (), first.signature)]
        else:
            l, i1, i2 = choose_prime_character(p)
            first = make_step(PRIME_CHARACTER, (l, i1, i2), p)
            kernel = first.signature
            if kernel.cusps == 0 and not condition_star(kernel):
                raise AssertionError(f"prime-character kernel {kernel} fails condition (*)")
            steps = [first]
            while steps[-1].signature.periods and len(steps) < 3:
                steps.append(make_step(TORSION_KERNEL, (), steps[-1].signature))
    chain = _chain(s, p, steps)
    if chain.final_signature.periods:
        raise AssertionError(f"chain for {s} did not reach a torsion-free cover")
    return chain


@dataclass
class CertificationReport:
    ok: bool
    problems: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "problems": list(self.problems)}


def certify_chain(chain: CoverChain, require_torsion_free: bool = True) -> CertificationReport:
    """Re-derive every step of ``chain`` and report what does not check out."""
    problems: List[str] = []
    if chain.presentation not in (chain.base, good_presentation(chain.base)):
        problems.append(f"presentation {chain.presentation} does not present {chain.base}")
    current = chain.presentation
    total = 1
    for t, st in enumerate(chain.steps, 1):
        tag = f"step {t} ({st.label()})"
        h = st.hom
        if st.source != current:
            problems.append(f"{tag}: step starts from {st.source}, expected {current}")
        try:
            if st.kind == TORSION_KERNEL:
                expected = torsion_kernel_closed_form(st.source)
                if expected != st.result:
                    problems.append(f"{tag}: recorded {st.result.subgroup_signature} but the "
                                    f"torsion kernel is {expected.subgroup_signature}")
            if h is None:
                if st.kind != TORSION_KERNEL or (
                        torsion_quotient_dimension(st.source) <= EXPLICIT_DIMENSION_LIMIT):
                    problems.append(f"{tag}: hom payload missing")
            elif h.source != st.source:
                problems.append(f"{tag}: hom defined on {h.source}, not {st.source}")
            elif not verify_abelian_hom(h):
                problems.append(f"{tag}: relations fail in the target")
            elif not is_surjective(h):
                problems.append(f"{tag}: hom is not surjective")
            else:
                if st.kind not in KINDS:
                    problems.append(f"{tag}: unknown kind")
                elif hom_for(st.kind, st.params, h.source) != h:
                    problems.append(f"{tag}: hom does not match its declared kind")
                again = induced_signature_abelian(h.source, h)
                if again != st.result:
                    problems.append(f"{tag}: recorded result {st.result.subgroup_signature} "
                                    f"differs from recomputed {again.subgroup_signature}")
        except (FenchelError, ValueError, TypeError) as exc:
            problems.append(f"{tag}: {type(exc).__name__}: {exc}")
        res = st.result
        chi_h = euler_characteristic(res.subgroup_signature)
        if chi_h != res.index * euler_characteristic(st.source):
            problems.append(f"{tag}: Riemann–Hurwitz fails for {res.subgroup_signature}")
        total *= res.index
        current = res.subgroup_signature
    if require_torsion_free and current.periods:
        problems.append(f"final signature {current} still has periods")
    if total != chain.total_index:
        problems.append(f"declared index {chain.total_index} but steps multiply to {total}")
    if chain.quotient_derived_length != len(chain.steps):
        problems.append(f"declared derived length {chain.quotient_derived_length} "
                        f"but the chain has {len(chain.steps)} abelian layers")
    if chain.quotient_derived_length > 3 and require_torsion_free:
        problems.append("derived length exceeds 3")
    return CertificationReport(not problems, problems)


def cusp_growth_chain(s: Signature, r0: int, index_limit: int = DEFAULT_INDEX_LIMIT) -> CoverChain:
    """Torsion-free cover with at least ``r0`` cusps.

    First the torsion kernel (for ``(0,1)`` this is the commutator subgroup),
    then, if needed, one cyclic layer of the smallest order that reaches ``r0``.
    """
    if r0 < 1:
        raise NegativeParameter("r0 must be positive")
    if s.cusps == 0:
        raise NotAffine(f"{s} has no cusps")
    if is_perfect(s):
        raise PerfectInput(f"{s} is perfect")
    if not is_hyperbolic(s):
        raise DomainError(f"{s} is not hyperbolic")
    steps: List[CoverStep] = []
    current = s
    if s.periods:
        steps.append(make_step(TORSION_KERNEL, (), s))
        current = steps[-1].signature
    if current.cusps < r0:
        r = current.cusps
        if r >= 3:
            n = max(2, -(-(r0 - 2) // (r - 2)))
        else:
            n = max(2, -(-r0 // r))
        total = math.prod(st.result.index for st in steps) * n
        if total > index_limit:
            exc = ZeroOneObstruction if (s.genus, s.cusps) == (0, 1) else BoundExceeded
            raise exc(f"reaching {r0} cusps needs index {total} > {index_limit}")
        steps.append(make_step(CUSP_DOUBLING, (n,), current))
    chain = _chain(s, s, steps)
    assert chain.final_signature.cusps >= r0
    return chain


def m_delta_upper_bound(s: Signature) -> int:
    """Upper bound for the least ``m`` with a torsion-free open normal subgroup containing ``Δ^(m)``."""
    if not s.periods:
        return 0
    if is_perfect(s):
        raise PerfectInput(f"{s} is perfect")
    return fn_chain(s).quotient_derived_length
