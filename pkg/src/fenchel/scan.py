"""Exhaustive property scans over boxes of signatures."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from .errors import BoundExceeded, ClassificationGap, FenchelError, InvalidPayload
from .fenchel_nielsen import certify_chain, fn_chain
from .signature import (
    PARABOLIC_SIGNATURES,
    Signature,
    abelian_period_condition,
    abelianization,
    classify_nonhyperbolic,
    euler_characteristic,
    inertia_order_in_abelianization,
    invariants_report,
    is_perfect,
    is_trivial_group,
    torsion_subgroup_order,
)
from .step_invariants import affineness_equation, chen_ranks, hyperbolic_3step_check
from .tower import commutator_signature_01, torsion_kernel_signature

DEFAULT_CEILING = 10 ** 6
MAX_COUNTEREXAMPLES = 10


@dataclass(frozen=True)
class ScanBounds:
    g_max: int
    r_max: int
    k_max: int
    n_max: int

    def __post_init__(self) -> None:
        if min(self.g_max, self.r_max, self.k_max) < 0 or self.n_max < 1:
            raise InvalidPayload("scan bounds must be nonnegative (n_max >= 1)")

    def count(self) -> int:
        values = max(self.n_max - 1, 0)
        multisets = sum(math.comb(values + k - 1, k) for k in range(self.k_max + 1)) if values else 1
        return (self.g_max + 1) * (self.r_max + 1) * multisets


def signatures(b: ScanBounds) -> Iterator[Signature]:
    for g in range(b.g_max + 1):
        for r in range(b.r_max + 1):
            for k in range(b.k_max + 1):
                for ns in itertools.combinations_with_replacement(range(2, b.n_max + 1), k):
                    yield Signature(g, r, ns)


# Each check returns True (pass), False (fail) or None (not applicable).


def _rh_integrality(s: Signature) -> Optional[bool]:
    results = []
    for build in (torsion_kernel_signature, commutator_signature_01):
        try:
            results.append(build(s))
        except FenchelError:
            continue
    if not results:
        return None
    for res in results:
        h = res.subgroup_signature
        if h.genus < 0 or euler_characteristic(h) != res.index * euler_characteristic(s):
            return False
    return True


def _parabolic(s: Signature) -> Optional[bool]:
    if euler_characteristic(s) != 0:
        return None
    return s in PARABOLIC_SIGNATURES


def _torsion_order(s: Signature) -> Optional[bool]:
    return abelianization(s).torsion_order == torsion_subgroup_order(s)


def _perfectness(s: Signature) -> Optional[bool]:
    return is_perfect(s) == abelianization(s).is_trivial


def _report_identity(s: Signature) -> Optional[bool]:
    try:
        invariants_report(s)
    except AssertionError:
        return False
    return True


def _fn_chain(s: Signature) -> Optional[bool]:
    if is_perfect(s) or is_trivial_group(s):
        return None
    chain = fn_chain(s)
    return bool(certify_chain(chain)) and chain.quotient_derived_length <= 3


def _classification(s: Signature) -> Optional[bool]:
    if euler_characteristic(s) < 0:
        return None
    try:
        classify_nonhyperbolic(s)
    except ClassificationGap:
        return False
    return True


def _abelian_period_order(s: Signature) -> Optional[bool]:
    if s.cusps:
        return None
    full = all(inertia_order_in_abelianization(s, i) == n for i, n in enumerate(s.periods))
    return abelian_period_condition(s) == full


def _hyperbolic_3step(s: Signature) -> Optional[bool]:
    if is_perfect(s):
        return None
    return hyperbolic_3step_check(s) == (euler_characteristic(s) < 0)


def _chen_affine(s: Signature) -> Optional[bool]:
    if s.periods or euler_characteristic(s) >= 0:
        return None
    return affineness_equation(chen_ranks(s)) == (s.cusps >= 1)


CHECKS: Dict[str, Callable[[Signature], Optional[bool]]] = {
    "rh-integrality": _rh_integrality,
    "table1-parabolic-count": _parabolic,
    "torsion-order": _torsion_order,
    "perfectness": _perfectness,
    "report-identity": _report_identity,
    "fn-chain": _fn_chain,
    "classification": _classification,
    "abelian-period-order": _abelian_period_order,
    "3step-hyperbolic": _hyperbolic_3step,
    "chen-affine": _chen_affine,
}


@dataclass
class CheckSummary:
    check: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: List[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def record(self, s: Signature, outcome: Optional[bool], detail: str = "") -> None:
        if outcome is None:
            self.skipped += 1
        elif outcome:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                ce = {"signature": s.to_dict()}
                if detail:
                    ce["detail"] = detail
                self.counterexamples.append(ce)

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "pass": self.passed,
            "fail": self.failed,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
        }
        out.update(self.extra)
        return out


def scan(bounds: ScanBounds, checks: Sequence[str], ceiling: int = DEFAULT_CEILING) -> List[CheckSummary]:
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise InvalidPayload(f"unknown checks {unknown}; known: {sorted(CHECKS)}")
    if not checks:
        return []
    total = bounds.count()
    if total > ceiling:
        raise BoundExceeded(f"{total} signatures exceed the scan ceiling {ceiling}")
    summaries = [CheckSummary(c) for c in checks]
    parabolic_seen = set()
    for s in signatures(bounds):
        for summ in summaries:
            try:
                outcome = CHECKS[summ.check](s)
                detail = ""
            except (FenchelError, AssertionError) as exc:
                outcome, detail = False, f"{type(exc).__name__}: {exc}"
            if summ.check == "table1-parabolic-count" and outcome:
                parabolic_seen.add(s)
            summ.record(s, outcome, detail)
    for summ in summaries:
        if summ.check == "table1-parabolic-count":
            summ.extra["parabolic_patterns"] = len(parabolic_seen)
    return summaries
