"""Group-level structure conditions and the inclusion diagnosis report.

For an inclusion ``H <= G`` the engine checks, over a finite ball of the
ambient group:

* condition C1 -- every element outside ``H`` has at least ``threshold``
  distinct ``H``-conjugates (or provably finitely many);
* condition C2 -- some ``h`` in ``H`` keeps all products ``g_i h g_j``
  outside ``H`` for a supplied family of outside elements;
* condition C3 -- no element outside ``H`` carries a certified finite coset
  cover (a counterexample comes with its replayable certificate);
* normality -- whether every ambient generator conjugates ``H`` onto itself.

When ``H`` is abelian these are the group-side hypotheses for the
operator-algebra dichotomy between a singular and a Cartan position of the
subgroup algebra, so the report phrases its flags as evidence at an explicit
tier: "exact" when every ingredient came from an exact backend, otherwise
"ball-limited".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .certificates import QnCertificate
from .errors import GroupValidationError, IndeterminateResultError
from .groups import GroupDescriptor, GroupElement, Trit, enumerate_ball
from .certificates import certificate_from_cover
from .orbits import MembershipVerdict, qn1_membership
from .stallings import conjugate_graph, graphs_equal
from .subgroups import SubgroupSpec, double_coset_key, is_subgroup_member, subgroup_ball


# -- condition C1 -------------------------------------------------------------


@dataclass(frozen=True)
class C1Result:
    element: GroupElement
    kind: str  # "at_least" | "finite"
    count: int
    conjugates: Optional[tuple] = None

    @property
    def infinite_evidence(self) -> bool:
        return self.kind == "at_least"


def check_c1(spec: SubgroupSpec, g: GroupElement, threshold: int = 100,
             max_radius: Optional[int] = None) -> C1Result:
    """Grow the conjugate set ``{h g h^-1}`` over subgroup balls.

    ``at_least`` reports that ``threshold`` distinct conjugates were found;
    ``finite`` is returned only when the set is closed under conjugation by
    every listed generator, which decides finiteness exactly.  Requires an
    exact-equality family (distinctness must be decidable) and ``g`` outside
    the subgroup.
    """
    group = spec.group
    membership = is_subgroup_member(spec, g)
    if membership is Trit.YES:
        raise GroupValidationError("conjugacy growth is only defined outside the subgroup")
    if membership is Trit.UNKNOWN:
        raise IndeterminateResultError("membership of the base element is undecided")
    if not group.equality_is_exact():
        raise IndeterminateResultError("conjugate counting needs exact equality")
    if max_radius is None:
        max_radius = max(threshold, 8)
    moves = spec.generator_moves()
    ball_cap = spec.budgets.ball_cap
    conjugates = {group.element(g.payload)}
    ball_seen = {group.identity()}
    frontier = [group.identity()]
    for _ in range(max_radius + 1):
        grew = False
        next_frontier = []
        for h in frontier:
            for m in moves:
                nh = group.multiply(h, m)
                if nh in ball_seen:
                    continue
                if len(ball_seen) >= ball_cap:
                    raise IndeterminateResultError(
                        "conjugate search exhausted the subgroup ball cap"
                    )
                ball_seen.add(nh)
                next_frontier.append(nh)
                conj = group.multiply(group.multiply(nh, g), group.invert(nh))
                if conj not in conjugates:
                    conjugates.add(conj)
                    grew = True
                    if len(conjugates) >= threshold:
                        return C1Result(element=g, kind="at_least", count=len(conjugates))
        frontier = next_frontier
        if not grew:
            # growth stalled: run the exact closure test
            closed = all(
                group.multiply(group.multiply(s, x), group.invert(s)) in conjugates
                for s in moves
                for x in conjugates
            )
            if closed:
                return C1Result(element=g, kind="finite", count=len(conjugates),
                                conjugates=tuple(sorted(conjugates, key=group.sort_key)))
    raise IndeterminateResultError(
        f"conjugate set neither closed nor at threshold within radius {max_radius}"
    )


# -- condition C2 -------------------------------------------------------------


@dataclass(frozen=True)
class C2Result:
    kind: str  # "witness" | "not_found"
    witness: Optional[GroupElement] = None
    candidates_tested: int = 0


def check_c2(spec: SubgroupSpec, outside: Sequence[GroupElement],
             search_window: int = 3) -> C2Result:
    """Search the subgroup ball for ``h`` with every ``g_i h g_j`` outside.

    A witness is exact (each exclusion is a certified No).  ``not_found`` is
    inconclusive by design: the condition quantifies over the whole subgroup
    and a finite window cannot refute it.
    """
    group = spec.group
    for g in outside:
        verdict = is_subgroup_member(spec, g)
        if verdict is Trit.YES:
            raise GroupValidationError("outside elements must avoid the subgroup")
        if verdict is Trit.UNKNOWN:
            raise IndeterminateResultError("membership of an outside element is undecided")
    candidates = subgroup_ball(spec, search_window)
    for tested, h in enumerate(candidates, start=1):
        good = True
        for gi in outside:
            for gj in outside:
                product = group.multiply(group.multiply(gi, h), gj)
                verdict = is_subgroup_member(spec, product)
                if verdict is Trit.UNKNOWN:
                    raise IndeterminateResultError(
                        "product membership undecided during the witness search"
                    )
                if verdict is Trit.YES:
                    good = False
                    break
            if not good:
                break
        if good:
            return C2Result(kind="witness", witness=h, candidates_tested=tested)
    return C2Result(kind="not_found", candidates_tested=len(candidates))


# -- condition C3 -------------------------------------------------------------


@dataclass(frozen=True)
class C3Result:
    kind: str  # "counterexample" | "no_counterexample"
    counterexample: Optional[GroupElement] = None
    certificate: Optional[QnCertificate] = None
    unknowns: tuple = ()
    scanned: int = 0

    @property
    def exact(self) -> bool:
        return self.kind == "counterexample" or not self.unknowns


def check_c3(group: GroupDescriptor, spec: SubgroupSpec, ball_radius: int = 3,
             budget: int = 1000) -> C3Result:
    """Scan the ambient ball for a certified one-sided quasi-normalizer
    outside the subgroup.

    Returns the first counterexample in canonical order with its
    certificate.  The no-counterexample answer lists every element whose
    verdict stayed Unknown and is inconclusive whenever that list is
    nonempty.
    """
    unknowns = []
    ball = enumerate_ball(group, ball_radius)
    for g in ball:
        membership = is_subgroup_member(spec, g)
        if membership is Trit.YES:
            continue
        if membership is Trit.UNKNOWN:
            unknowns.append(g)
            continue
        try:
            verdict = qn1_membership(spec, g, budget)
        except IndeterminateResultError:
            unknowns.append(g)
            continue
        if verdict.certified_in:
            return C3Result(kind="counterexample", counterexample=g,
                            certificate=verdict.certificate, scanned=len(ball))
        if verdict.unknown:
            unknowns.append(g)
    return C3Result(kind="no_counterexample", unknowns=tuple(unknowns), scanned=len(ball))


# -- normalizer ---------------------------------------------------------------


def normalizer_test(spec: SubgroupSpec, g: GroupElement) -> Trit:
    """Whether ``g H g^-1 = H``; exact wherever a backend permits."""
    group = spec.group
    group.check_same(g)
    kind = spec.accelerator[0] if spec.accelerator else None
    if kind == "graph":
        return Trit.from_bool(
            graphs_equal(conjugate_graph(spec.accelerator[1], g.payload), spec.accelerator[1])
        )
    if kind == "subset":
        subset = spec.accelerator[1]
        table, inverse = group.table, group.inverse
        conjugated = {table[table[g.payload][h]][inverse[g.payload]] for h in subset}
        return Trit.from_bool(conjugated == set(subset))
    if kind == "shift_tail":
        # conjugation moves the tail threshold: by the shift automorphism when
        # the stable exponent is nonzero (abelianized images then differ), and
        # within the free base a free factor is its own normalizer, so the
        # normalizer of the tail subgroup is the subgroup itself
        return is_subgroup_member(spec, g)
    if kind == "product":
        left, right = spec.accelerator[1]
        a = normalizer_test(left, g.payload[0])
        b = normalizer_test(right, g.payload[1])
        if a is Trit.NO or b is Trit.NO:
            return Trit.NO
        if a is Trit.YES and b is Trit.YES:
            return Trit.YES
        return Trit.UNKNOWN
    # generator-driven check: g H g^-1 <= H and g^-1 H g <= H force equality
    g_inv = group.invert(g)
    results = []
    for h in spec.generators:
        for conj in (
            group.multiply(group.multiply(g, h), g_inv),
            group.multiply(group.multiply(g_inv, h), g),
        ):
            results.append(is_subgroup_member(spec, conj))
    if any(r is Trit.NO for r in results):
        return Trit.NO
    if all(r is Trit.YES for r in results):
        return Trit.YES
    return Trit.UNKNOWN


def normality_test(group: GroupDescriptor, spec: SubgroupSpec) -> Trit:
    """Whether the subgroup is normal: every ambient generator normalizes."""
    results = [normalizer_test(spec, g) for g in group.generators()]
    if any(r is Trit.NO for r in results):
        return Trit.NO
    if all(r is Trit.YES for r in results):
        return Trit.YES
    return Trit.UNKNOWN


# -- diagnosis ------------------------------------------------------------------


@dataclass
class DiagnosisConfig:
    radius: int = 3
    budget: int = 1000
    threshold: int = 100
    c2_window: int = 3
    c2_sample: int = 6  # outside elements fed to the witness search
    c1_sample: int = 32  # outside elements whose conjugate growth is tested
    claim_abelian: bool = False
    c1_max_radius: Optional[int] = None


@dataclass(frozen=True)
class GammaEntry:
    element: GroupElement
    in_subgroup: Trit
    verdict: Optional[MembershipVerdict]
    h1_status: Optional[str]


@dataclass
class InclusionReport:
    group_family: str
    subgroup: str
    config: DiagnosisConfig
    gamma: list = field(default_factory=list)
    h2_witnesses: list = field(default_factory=list)
    c1_results: list = field(default_factory=list)
    c1_indeterminate: list = field(default_factory=list)
    c1_holds: Optional[bool] = None
    c2: Optional[C2Result] = None
    c2_inputs: list = field(default_factory=list)
    c2_indeterminate: Optional[str] = None
    c3: Optional[C3Result] = None
    normality: Trit = Trit.UNKNOWN
    abelian_verified: Optional[bool] = None
    masa_evidence: bool = False
    singular_evidence: bool = False
    cartan_evidence: bool = False
    tier: str = "ball-limited"
    inconsistencies: list = field(default_factory=list)

    def to_dict(self) -> dict:
        fmt = None

        def render(e: GroupElement) -> str:
            return e.group.format_element(e)

        del fmt
        gamma_rows = []
        for entry in self.gamma:
            verdict = entry.verdict
            gamma_rows.append(
                {
                    "element": render(entry.element),
                    "in_subgroup": entry.in_subgroup.value,
                    "qn1_status": verdict.status if verdict else "skipped",
                    "cover_size": verdict.certificate.cover_size
                    if verdict and verdict.certificate
                    else None,
                    "h1_status": entry.h1_status,
                    "tier": verdict.evidence_tier if verdict else "exact",
                }
            )
        return {
            "inclusion": {"family": self.group_family, "subgroup": self.subgroup},
            "config": {
                "radius": self.config.radius,
                "budget": self.config.budget,
                "threshold": self.config.threshold,
            },
            "gamma_ball": gamma_rows,
            "h2_witnesses": [render(e) for e in self.h2_witnesses],
            "c1": {
                "holds_on_ball": self.c1_holds,
                "results": [
                    {"element": render(r.element), "kind": r.kind, "count": r.count}
                    for r in self.c1_results
                ],
                "indeterminate": [render(e) for e in self.c1_indeterminate],
                "tier": "exact" if not self.c1_indeterminate else "ball-limited",
            },
            "c2": {
                "kind": self.c2.kind if self.c2 else self.c2_indeterminate,
                "witness": render(self.c2.witness) if self.c2 and self.c2.witness else None,
                "inputs": [render(e) for e in self.c2_inputs],
                "tier": "exact" if self.c2 and self.c2.kind == "witness" else "ball-limited",
            },
            "c3": {
                "kind": self.c3.kind,
                "counterexample": render(self.c3.counterexample)
                if self.c3.counterexample
                else None,
                "cover_size": self.c3.certificate.cover_size if self.c3.certificate else None,
                "unknowns": [render(e) for e in self.c3.unknowns],
                "tier": "exact" if self.c3.exact else "ball-limited",
            },
            "normality": {
                "verdict": self.normality.value,
                "tier": "exact" if self.normality is not Trit.UNKNOWN else "ball-limited",
            },
            "abelian_verified": self.abelian_verified,
            "diagnosis": {
                "masa_evidence": self.masa_evidence,
                "singular_evidence": self.singular_evidence,
                "cartan_evidence": self.cartan_evidence,
                "tier": self.tier,
            },
            "inconsistencies": list(self.inconsistencies),
        }


def _shared_verdict(spec: SubgroupSpec, g: GroupElement,
                    cached: Optional[MembershipVerdict], budget: int) -> Optional[MembershipVerdict]:
    """Verdict for ``g`` from a cached verdict of a double-coset mate."""
    if cached is None:
        return None
    if cached.certified_in:
        cert = certificate_from_cover(spec, g, list(cached.certificate.cover))
        return MembershipVerdict(status=cached.status, certificate=cert, budget=budget,
                                 orbit_explored=cached.orbit_explored)
    return MembershipVerdict(status=cached.status, reason=cached.reason, budget=budget,
                             orbit_explored=cached.orbit_explored)


def _c3_from_verdicts(ball, memberships, verdicts) -> C3Result:
    """C3 scan over precomputed ball verdicts (same semantics as check_c3)."""
    unknowns = []
    for g in ball:
        membership = memberships[g]
        if membership is Trit.YES:
            continue
        if membership is Trit.UNKNOWN:
            unknowns.append(g)
            continue
        verdict = verdicts[g]
        if verdict is None or verdict.unknown:
            unknowns.append(g)
            continue
        if verdict.certified_in:
            return C3Result(kind="counterexample", counterexample=g,
                            certificate=verdict.certificate, scanned=len(ball))
    return C3Result(kind="no_counterexample", unknowns=tuple(unknowns), scanned=len(ball))


def verify_abelian(spec: SubgroupSpec) -> Optional[bool]:
    """Pairwise commutation of the generators; None when undecided."""
    group = spec.group
    gens = spec.generators
    decided = True
    for i, x in enumerate(gens):
        for y in gens[i + 1 :]:
            verdict = group.elements_equal(group.multiply(x, y), group.multiply(y, x))
            if verdict is Trit.NO:
                return False
            if verdict is Trit.UNKNOWN:
                decided = False
    return True if decided else None


def diagnose_inclusion(group: GroupDescriptor, spec: SubgroupSpec,
                       config: Optional[DiagnosisConfig] = None) -> InclusionReport:
    """Assemble ball verdicts, the three conditions, normality and the
    evidence flags for one inclusion."""
    config = config or DiagnosisConfig()
    report = InclusionReport(
        group_family=group.family, subgroup=spec.describe(), config=config
    )
    abelian = verify_abelian(spec)
    if config.claim_abelian and abelian is False:
        raise GroupValidationError("subgroup was claimed abelian but generators do not commute")
    report.abelian_verified = abelian

    ball = enumerate_ball(group, config.radius)
    verdicts: dict[GroupElement, Optional[MembershipVerdict]] = {}
    memberships: dict[GroupElement, Trit] = {}
    # elements of one double coset share their orbit, so verdicts are cached
    shared: dict = {}
    for g in ball:
        memberships[g] = is_subgroup_member(spec, g)
        key = double_coset_key(spec, g)
        if key is not None and key in shared:
            verdicts[g] = _shared_verdict(spec, g, shared[key], config.budget)
            continue
        try:
            verdict = qn1_membership(spec, g, config.budget)
        except IndeterminateResultError:
            verdict = None
        verdicts[g] = verdict
        if key is not None:
            shared[key] = verdict

    for g in ball:
        verdict = verdicts[g]
        h1_status = None
        inverse = group.invert(g)
        if verdict is not None and inverse in verdicts and verdicts[inverse] is not None:
            forward, backward = verdict, verdicts[inverse]
            if forward.certified_in and backward.certified_in:
                h1_status = "certified_in"
            elif forward.certified_out or backward.certified_out:
                h1_status = "certified_out"
            else:
                h1_status = "unknown"
        report.gamma.append(
            GammaEntry(element=g, in_subgroup=memberships[g], verdict=verdict, h1_status=h1_status)
        )
        if verdict is not None and verdict.certified_in:
            report.h2_witnesses.append(g)

    outsiders = [g for g in ball if memberships[g] is Trit.NO]
    for g in outsiders[: config.c1_sample]:
        try:
            report.c1_results.append(
                check_c1(spec, g, config.threshold, config.c1_max_radius)
            )
        except IndeterminateResultError:
            report.c1_indeterminate.append(g)
    if outsiders:
        if report.c1_results and all(r.infinite_evidence for r in report.c1_results) \
                and not report.c1_indeterminate:
            report.c1_holds = True
        elif any(r.kind == "finite" for r in report.c1_results):
            report.c1_holds = False

    report.c2_inputs = [g for g in enumerate_ball(group, min(config.radius, 2))
                        if memberships.get(g) is Trit.NO][: config.c2_sample]
    if report.c2_inputs:
        try:
            report.c2 = check_c2(spec, report.c2_inputs, config.c2_window)
        except IndeterminateResultError as err:
            report.c2_indeterminate = str(err)
    else:
        report.c2 = C2Result(kind="witness", witness=group.identity(), candidates_tested=0)

    report.c3 = _c3_from_verdicts(ball, memberships, verdicts)
    report.normality = normality_test(group, spec)

    c3_clean = report.c3.kind == "no_counterexample" and report.c3.exact
    if abelian and report.c1_holds:
        report.masa_evidence = True
        if c3_clean:
            report.singular_evidence = True
        if report.normality is Trit.YES:
            report.cartan_evidence = True

    if report.singular_evidence and report.cartan_evidence:
        report.inconsistencies.append(
            "normal subgroup together with an empty certified cover scan"
        )
        report.singular_evidence = False
    if report.normality is Trit.YES and outsiders and report.c3.kind == "no_counterexample" \
            and report.c3.exact:
        report.inconsistencies.append(
            "exact normality forces coset covers for ball elements outside the subgroup"
        )

    exact = (
        all(m is not Trit.UNKNOWN for m in memberships.values())
        and all(v is not None and not v.unknown for v in verdicts.values())
        and not report.c1_indeterminate
        and report.c3.exact
        and report.normality is not Trit.UNKNOWN
    )
    report.tier = "exact" if exact else "ball-limited"
    return report
