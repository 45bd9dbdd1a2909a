"""
Verification suites

Each suite runs a fixed matrix of cases through the oracles in homcount,
diagalg and finmodel and collects one VerificationReport per case. A
case that runs out of budget is reported as such, never as a failure.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .diagalg import DiagElement, dw_rhs, hom_oracle_lhs, lemma_dey_lhs
from .exceptions import BudgetExceededError, PreconditionError
from .finmodel import (
    BUDGET,
    FAIL,
    PASS,
    CheckEntry,
    GSet,
    VerificationReport,
    lemma_dey_check,
    lemma_deyg_check,
    verify_symmetric,
    verify_wreath,
)
from .grp import (
    Cyclic,
    FiniteGroup,
    FreeAbelian,
    GroupSpec,
    Trivial,
    cyclic_group,
    j_sequence,
    symmetric_group,
)
from .homcount import census_wreath, wreath_total_via_formula
from .qexact import format_rat

logger = logging.getLogger(__name__)

SUITE_NAMES = ("theorem1", "theorem2", "lemma-dey", "lemma-deyg")


def symmetric_sources() -> List[Tuple[GroupSpec, int]]:
    """(A, N) for the three-way identity"""
    return [(Trivial(), 5), (FreeAbelian(1), 5), (FreeAbelian(2), 5), (FreeAbelian(3), 4),
            (Cyclic(2), 5), (Cyclic(3), 5), (Cyclic(4), 5)]


def wreath_sources() -> List[GroupSpec]:
    return [Trivial(), FreeAbelian(1), FreeAbelian(2), Cyclic(2), Cyclic(3), Cyclic(4)]


def plain_sets(n: int) -> List[Tuple[int, int]]:
    """(|X|, N) for plain sets: one and two points to N = n, three points to N = 3"""
    return [(1, n), (2, n), (3, min(n, 3))]


def default_gsets() -> List[Tuple[GSet, int]]:
    """(X, N): trivial, Z/2, Z/3 and S_3 acting on up to three points"""
    z2 = cyclic_group(2)
    z3 = cyclic_group(3)
    s3 = symmetric_group(3)
    return [
        (GSet.plain(1), 3),
        (GSet.plain(2), 3),
        (GSet.plain(3), 3),
        (GSet.trivial(z2, 1), 3),
        (GSet.natural(z2), 3),
        (GSet.from_generator_images(3, z2, [(1, 0, 2)]), 2),
        (GSet.trivial(z3, 1), 3),
        (GSet.natural(z3), 2),
        (GSet.trivial(s3, 1), 3),
        (GSet.natural(s3), 2),
    ]


def muller_pairs() -> List[Tuple[GroupSpec, FiniteGroup, int]]:
    pairs = []
    for spec in (FreeAbelian(1), FreeAbelian(2), Cyclic(2)):
        for G in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
            pairs.append((spec, G, 4 if G.order == 2 else 3))
    return pairs


@dataclass(frozen=True)
class SuiteFilter:
    """Restricts a matrix: source group text, target group name, truncation cap"""
    group: Optional[str] = None
    target: Optional[str] = None
    max_order: Optional[int] = None

    def keeps(self, spec: GroupSpec, G: Optional[FiniteGroup] = None) -> bool:
        if self.group is not None and spec.to_text() != self.group:
            return False
        if self.target is not None:
            name = G.name if G is not None else "1"
            if name != self.target:
                return False
        return True

    def cap(self, n: int) -> int:
        return n if self.max_order is None else min(n, self.max_order)


@dataclass
class SuiteResult:
    name: str
    reports: List[VerificationReport] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return not self.reports

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.reports}
        if FAIL in statuses:
            return FAIL
        if BUDGET in statuses:
            return BUDGET
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json_obj(self) -> Dict[str, Any]:
        return {"suite": self.name, "status": self.status, "vacuous": self.vacuous,
                "cases": len(self.reports),
                "reports": [r.to_json_obj() for r in self.reports]}


def compare_elements(report: VerificationReport, label: str,
                     lhs: DiagElement, rhs: DiagElement) -> None:
    """One entry per weight: the largest coefficient difference in that slice"""
    for n in range(lhs.trunc + 1):
        left, right = lhs.slice(n), rhs.slice(n)
        deviation = Fraction(0)
        mismatch = None
        for mono in sorted(set(left) | set(right)):
            a, b = left.get(mono, Fraction(0)), right.get(mono, Fraction(0))
            if a != b and mismatch is None:
                mismatch = {"monomial": mono.to_text(), "lhs": format_rat(a), "rhs": format_rat(b)}
            deviation = max(deviation, abs(a - b))
        report.add(CheckEntry(label, n, PASS if not deviation else FAIL, deviation, mismatch))


def _guard(report: VerificationReport, label: str, run: Callable[[], None]) -> VerificationReport:
    try:
        run()
    except BudgetExceededError as e:
        report.budget_exhausted(label, 0, e)
    return report


def theorem1_reports(filt: SuiteFilter, budget: Optional[int]) -> List[VerificationReport]:
    reports = []
    for spec, n in symmetric_sources():
        if not filt.keeps(spec):
            continue
        trunc = filt.cap(n)
        report = VerificationReport("theorem1-symbolic", {"A": spec.to_text(), "N": str(trunc)})

        def run(spec=spec, trunc=trunc, report=report):
            rhs = dw_rhs(j_sequence(spec, max(trunc, 1), budget), "c", trunc)
            compare_elements(report, "hom oracle", hom_oracle_lhs(spec, "c", trunc, budget), rhs)
            compare_elements(report, "cycle type sum", lemma_dey_lhs(
                j_sequence(spec, max(trunc, 1), budget), "c", trunc), rhs)

        reports.append(_guard(report, "three-way identity", run))
        for points, order in plain_sets(n):
            reports.append(verify_symmetric(spec, points, filt.cap(order), budget))
    return reports


def theorem2_reports(filt: SuiteFilter, budget: Optional[int]) -> List[VerificationReport]:
    reports = []
    for X, n in default_gsets():
        for spec in wreath_sources():
            if filt.keeps(spec, X.group):
                reports.append(verify_wreath(spec, X.group, X, filt.cap(n), budget))
    for spec, G, n in muller_pairs():
        if not filt.keeps(spec, G):
            continue
        trunc = filt.cap(n)
        report = VerificationReport("muller", {"A": spec.to_text(), "G": G.name or "", "N": str(trunc)})

        def run(spec=spec, G=G, trunc=trunc, report=report):
            formula = wreath_total_via_formula(spec, G, trunc, budget)
            for k in range(trunc + 1):
                total = census_wreath(spec, G, k, budget).total
                report.compare_values("hom count", k, Fraction(total, G.order ** k * factorial(k)),
                                      formula[k])

        reports.append(_guard(report, "hom count", run))
    return reports


def lemma_dey_reports(filt: SuiteFilter, budget: Optional[int]) -> List[VerificationReport]:
    reports = []
    for spec, _ in symmetric_sources():
        if not filt.keeps(spec):
            continue
        for points in (1, 2):
            reports.append(lemma_dey_check(spec, points, filt.cap(3), budget))
    return reports


def lemma_deyg_reports(filt: SuiteFilter, budget: Optional[int]) -> List[VerificationReport]:
    reports = []
    for X, n in default_gsets():
        if X.order == 1:
            continue
        for spec in wreath_sources():
            if filt.keeps(spec, X.group):
                reports.append(lemma_deyg_check(spec, X.group, X, filt.cap(n), budget))
    return reports


SUITES: Dict[str, Callable[[SuiteFilter, Optional[int]], List[VerificationReport]]] = {
    "theorem1": theorem1_reports,
    "theorem2": theorem2_reports,
    "lemma-dey": lemma_dey_reports,
    "lemma-deyg": lemma_deyg_reports,
}


def run_suite(name: str, filt: Optional[SuiteFilter] = None,
              budget: Optional[int] = None) -> SuiteResult:
    """Run one suite, or every suite for ``all``"""
    filt = filt or SuiteFilter()
    names: Sequence[str] = SUITE_NAMES if name == "all" else (name,)
    result = SuiteResult(name)
    for suite in names:
        if suite not in SUITES:
            raise PreconditionError(f"unknown suite '{suite}'", operation="run_suite")
        for report in SUITES[suite](filt, budget):
            logger.info("%s %s: %s", report.name, report.params, report.status)
            result.reports.append(report)
    if result.vacuous:
        logger.warning("suite %s matched no cases; passing vacuously", name)
    return result
