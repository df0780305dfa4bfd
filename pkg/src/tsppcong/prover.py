"""End-to-end proofs: reduce a counting-sequence claim, verify the resulting
slice-variant claims, combine moduli, and cross-check everything against the
brute-force counting series.

The verifier needs two inputs that no algorithm here chooses for you: the
group level N and the auxiliary exponent vector r'.  They ship as data files
next to the claims they belong to (see the data directory) and enter through
InstanceHints.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .series import EtaQuotientSpec, residues_mod
from .tspp import (
    CheckReport,
    CongruenceClaim,
    NotReducibleError,
    ReductionStep,
    reduce_claim,
    slice_series,
    slice_variant_series,
    slice_variant_spec,
    tspp_series,
)
from .verification import Certificate, VerificationInstance, verify_instance

PROVED = "PROVED"
PROVED_MODULO_CITATIONS = "PROVED-MODULO-CITATIONS"
FAILED = "FAILED"
NOT_REDUCIBLE = "NOT-REDUCIBLE"


@dataclass(frozen=True)
class InstanceHints:
    """Verifier parameters that accompany a claim.

    group_level and r_prime are required; the remaining fields override the
    quantities that reduce_claim would otherwise derive, which is useful for
    driving the verifier on hand-built instances (or for breaking one on
    purpose in tests).
    """

    group_level: int
    r_prime: EtaQuotientSpec
    alpha: int | None = None
    p: int | None = None
    m: int | None = None
    t: int | None = None
    r: EtaQuotientSpec | None = None

    def __post_init__(self):
        if self.r_prime.level != self.group_level:
            raise ValueError(
                f"auxiliary vector has level {self.r_prime.level}, "
                f"expected the group level {self.group_level}"
            )


@dataclass(frozen=True)
class AssumedCongruence:
    """A congruence taken from the literature, used without reproof.

    checked_to records how far the claim was tested against the counting
    oracle; it is metadata, not evidence of proof.
    """

    claim: CongruenceClaim
    note: str
    checked_to: int


@dataclass(frozen=True)
class ProofReport:
    claim: CongruenceClaim
    reduction: tuple[ReductionStep, ...]
    certificates: tuple[Certificate, ...]
    assumed: tuple[AssumedCongruence, ...]
    verdict: str
    detail: str | None = None


def known_congruences() -> tuple[CongruenceClaim, ...]:
    """Previously published congruences for the counting sequence.

    These are regression-tested empirically and may be cited in modulus
    combinations, but they are never proved here.
    """
    return (
        CongruenceClaim("f", 10, 5, 5),
        CongruenceClaim("f", 250, 125, 25),
        CongruenceClaim("f", 8, 3, 4),
    )


def build_instance(g_claim: CongruenceClaim, hints: InstanceHints) -> VerificationInstance:
    """Assemble the verifier input for a slice-variant claim."""
    if g_claim.sequence != "gap":
        raise ValueError(f"expected a slice-variant claim, got {g_claim.sequence!r}")
    alpha = hints.alpha if hints.alpha is not None else g_claim.alpha
    p = hints.p if hints.p is not None else g_claim.p
    spec = hints.r if hints.r is not None else slice_variant_spec(alpha, p)
    m = hints.m if hints.m is not None else g_claim.step
    t = hints.t if hints.t is not None else g_claim.offset
    return VerificationInstance(
        m=m,
        M=spec.level,
        N=hints.group_level,
        t=t,
        r=spec,
        r_prime=hints.r_prime,
        u=g_claim.modulus,
    )


def prove_tspp_congruence(claim: CongruenceClaim, hints: InstanceHints) -> ProofReport:
    """Reduce a counting-sequence claim and verify every non-trivial branch.

    The verdict is PROVED exactly when each residue class is either closed by
    the vanishing support or by a VERIFIED certificate.
    """
    try:
        steps = reduce_claim(claim)
    except NotReducibleError as exc:
        return ProofReport(claim, (), (), (), NOT_REDUCIBLE, str(exc))
    certificates = []
    failures = []
    for step in steps:
        if step.g_claim is None:
            continue
        cert = verify_instance(build_instance(step.g_claim, hints))
        certificates.append(cert)
        if cert.verdict != "VERIFIED":
            failures.append(
                f"class n = 3k+{step.residue_class}: {cert.failure}"
            )
    verdict = PROVED if not failures else FAILED
    return ProofReport(
        claim,
        steps,
        tuple(certificates),
        (),
        verdict,
        "; ".join(failures) if failures else None,
    )


def combine_congruences(
    reports: Sequence[ProofReport], cited: Sequence[AssumedCongruence] = ()
) -> ProofReport:
    """Chinese-remainder combination of congruences on one progression.

    All proved inputs must concern the same (step, offset); cited inputs must
    contain that progression, i.e. their step divides the target step and the
    offsets agree modulo it.  Moduli must be pairwise coprime.  Any cited
    input downgrades the verdict to PROVED-MODULO-CITATIONS.
    """
    if not reports:
        raise ValueError("need at least one proved report to combine")
    target = reports[0].claim
    moduli: list[int] = []
    for rep in reports:
        if rep.verdict not in (PROVED, PROVED_MODULO_CITATIONS):
            raise ValueError(f"cannot combine a report with verdict {rep.verdict}")
        if (rep.claim.step, rep.claim.offset) != (target.step, target.offset):
            raise ValueError(
                f"progression mismatch: {rep.claim.describe()} vs {target.describe()}"
            )
        moduli.append(rep.claim.modulus)
    for assumed in cited:
        c = assumed.claim
        if target.step % c.step != 0 or target.offset % c.step != c.offset:
            raise ValueError(
                f"cited progression {c.describe()} does not contain {target.describe()}"
            )
        moduli.append(c.modulus)
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if gcd(moduli[i], moduli[j]) != 1:
                raise ValueError(
                    f"moduli {moduli[i]} and {moduli[j]} are not coprime"
                )
    product = 1
    for u in moduli:
        product *= u
    assumed_all = tuple(a for rep in reports for a in rep.assumed) + tuple(cited)
    verdict = PROVED if not assumed_all else PROVED_MODULO_CITATIONS
    combined = CongruenceClaim("f", target.step, target.offset, product)
    return ProofReport(
        combined,
        tuple(s for rep in reports for s in rep.reduction),
        tuple(c for rep in reports for c in rep.certificates),
        assumed_all,
        verdict,
        f"combined moduli {moduli}",
    )


def oracle_check(claim: CongruenceClaim, max_index: int) -> CheckReport:
    """Test a claim directly against the named series, expanded mod u.

    This path shares nothing with the verifier beyond the series primitives,
    which is what makes it a meaningful cross-check.
    """
    ring = residues_mod(claim.modulus)
    if claim.sequence == "f":
        series = tspp_series(max_index, ring)
    elif claim.sequence == "g":
        series = slice_series(max_index, ring)
    else:
        series = slice_variant_series(claim.alpha, claim.p, max_index, ring)
    name = f"oracle {claim.describe()}"
    checked = 0
    n = 0
    while claim.step * n + claim.offset <= max_index:
        idx = claim.step * n + claim.offset
        checked += 1
        if series[idx] != 0:
            return CheckReport(
                name,
                checked,
                False,
                idx,
                f"coefficient {idx} is {series[idx]} (mod {claim.modulus})",
            )
        n += 1
    return CheckReport(name, checked, True, None, f"indices <= {max_index}")


# ---------------------------------------------------------------------------
# regression suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    entries: tuple[SuiteEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.status != "fail" for e in self.entries)


def _entry_from_check(report: CheckReport) -> SuiteEntry:
    return SuiteEntry(
        report.name,
        "pass" if report.passed else "fail",
        report.detail if report.passed else f"violation at index {report.first_violation}: {report.detail}",
    )


def regression_suite(
    oracle_max: int = 50_000,
    exact_max: int = 5_000,
    congruence_order: int = 2_000,
    support_order: int = 10_000,
    instances=None,
) -> SuiteReport:
    """Run every standing check: support and slice identity of the counting
    series, the slice-variant congruences, oracle checks of the known and of
    the newly proved congruences, and the full verification of the shipped
    instances.  Passing instances=... substitutes the shipped instance
    documents (see documents.load_instance)."""
    from .documents import shipped_instances  # deferred: documents imports this module
    from .tspp import check_slice_identity, check_support

    entries: list[SuiteEntry] = []

    if support_order > 0:
        entries.append(_entry_from_check(check_support(support_order)))
    else:
        entries.append(SuiteEntry("support", "skip", "disabled"))

    if exact_max > 0:
        entries.append(_entry_from_check(check_slice_identity(exact_max)))
    else:
        entries.append(SuiteEntry("slice-identity", "skip", "disabled"))

    for alpha, p in ((3, 5), (1, 11), (2, 5), (1, 5), (2, 2)):
        name = f"congruence g[{alpha},{p}] = g (mod {p**alpha})"
        if congruence_order <= 0:
            entries.append(SuiteEntry(name, "skip", "disabled"))
            continue
        ring = residues_mod(p**alpha)
        variant = slice_variant_series(alpha, p, congruence_order, ring)
        plain = slice_series(congruence_order, ring)
        mismatch = next(
            (n for n in range(congruence_order + 1) if variant[n] != plain[n]), None
        )
        if mismatch is None:
            entries.append(SuiteEntry(name, "pass", f"n <= {congruence_order}"))
        else:
            entries.append(SuiteEntry(name, "fail", f"first mismatch at n = {mismatch}"))

    oracle_claims = list(known_congruences()) + [
        CongruenceClaim("f", 1250, 125, 125),
        CongruenceClaim("f", 1250, 1125, 125),
        CongruenceClaim("f", 2750, 825, 11),
        CongruenceClaim("f", 2750, 1925, 11),
        CongruenceClaim("f", 2750, 825, 55),
        CongruenceClaim("f", 2750, 1925, 55),
    ]
    for claim in oracle_claims:
        if oracle_max <= 0:
            entries.append(SuiteEntry(f"oracle {claim.describe()}", "skip", "disabled"))
            continue
        entries.append(_entry_from_check(oracle_check(claim, oracle_max)))

    docs = shipped_instances() if instances is None else instances
    proved: list[ProofReport] = []
    for doc in docs:
        name = f"proof {doc.claim.describe()}"
        report = prove_tspp_congruence(doc.claim, doc.hints)
        if report.verdict == PROVED:
            floors = sorted({c.bound_floor for c in report.certificates})
            entries.append(SuiteEntry(name, "pass", f"bound floor {floors}"))
            proved.append(report)
        else:
            entries.append(SuiteEntry(name, "fail", report.detail or report.verdict))

    cited = AssumedCongruence(
        CongruenceClaim("f", 10, 5, 5),
        "previously published congruence, assumed without reproof",
        oracle_max,
    )
    for step, offset in ((2750, 825), (2750, 1925)):
        name = f"combined f({step}n+{offset}) = 0 (mod 55)"
        base = [
            r
            for r in proved
            if (r.claim.step, r.claim.offset) == (step, offset) and r.claim.modulus == 11
        ]
        if not base:
            entries.append(SuiteEntry(name, "skip", "mod 11 proof unavailable"))
            continue
        combined = combine_congruences(base, [cited])
        ok = combined.verdict == PROVED_MODULO_CITATIONS and combined.claim.modulus == 55
        entries.append(
            SuiteEntry(name, "pass" if ok else "fail", f"verdict {combined.verdict}")
        )

    return SuiteReport(tuple(entries))
