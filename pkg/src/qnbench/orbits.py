"""Coset-orbit enumeration and certified one-sided quasi-normalizer verdicts.

The coset orbit of ``g`` under a subgroup ``H`` is ``{h g H : h in H}``; it
is finite exactly when ``H g`` is covered by finitely many left cosets, i.e.
when ``g`` is a one-sided quasi-normalizer of ``H``.  A breadth-first search
over the orbit either closes (yielding a replayable certificate) or exhausts
its budget.  On free groups the search is cross-checked against the exact
intersection-index backend; the two must agree whenever either terminates.

Negative verdicts are only issued by exact backends.  Budget exhaustion in
families without such a backend is reported as Unknown, never as a
refutation, and raising the budget can only turn Unknown into a certified
answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .certificates import CosetIndex, QnCertificate, certificate_from_cover
from .errors import GroupValidationError
from .groups import FiniteTableGroup, FreeGroupDescriptor, GroupElement
from .stallings import free_qn1_decide
from .subgroups import SubgroupSpec

CERTIFIED_IN = "certified_in"
CERTIFIED_OUT = "certified_out"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class CosetOrbit:
    subgroup: SubgroupSpec
    element: GroupElement
    representatives: tuple
    closed: bool
    explored: int

    @property
    def size(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class MembershipVerdict:
    status: str
    certificate: Optional[QnCertificate] = None
    inverse_certificate: Optional[QnCertificate] = None
    reason: Optional[str] = None
    budget: Optional[int] = None
    orbit_explored: Optional[int] = None

    @property
    def certified_in(self) -> bool:
        return self.status == CERTIFIED_IN

    @property
    def certified_out(self) -> bool:
        return self.status == CERTIFIED_OUT

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN

    @property
    def evidence_tier(self) -> str:
        return "exact" if self.status in (CERTIFIED_IN, CERTIFIED_OUT) else "ball-limited"


def orbit_bfs(spec: SubgroupSpec, g: GroupElement, budget: int) -> CosetOrbit:
    """Enumerate the coset orbit, storing at most ``budget`` distinct cosets.

    Deterministic: representatives appear in discovery order, with generator
    moves tried in the listed order followed by their inverses.  Raises
    IndeterminateResultError when a coset comparison comes back Unknown.
    """
    if budget < 1:
        raise GroupValidationError("budget must be at least 1")
    group = spec.group
    group.check_same(g)
    index = CosetIndex(spec)
    index.add(group.element(g.payload))
    moves = spec.generator_moves()
    queue = [0]
    closed = True
    explored = 1
    while queue:
        at = queue.pop(0)
        rep = index.reps[at]
        stop = False
        for m in moves:
            candidate = group.multiply(m, rep)
            if index.find(candidate) is None:
                if len(index.reps) >= budget:
                    closed = False
                    explored = len(index.reps) + 1
                    stop = True
                    break
                queue.append(index.add(candidate))
        if stop:
            break
    if closed:
        explored = len(index.reps)
    return CosetOrbit(
        subgroup=spec,
        element=g,
        representatives=tuple(index.reps),
        closed=closed,
        explored=explored,
    )


def _free_backend(spec: SubgroupSpec):
    if isinstance(spec.group, FreeGroupDescriptor) and spec.accelerator and spec.accelerator[0] == "graph":
        return spec.accelerator[1]
    return None


def qn1_membership(spec: SubgroupSpec, g: GroupElement, budget: int = 1000) -> MembershipVerdict:
    """Certified three-valued membership of ``g`` in the one-sided
    quasi-normalizer semigroup of the subgroup.

    A closed orbit yields a replay-validated certificate whose cover is the
    orbit representative list.  Exact refutations come from the free-group
    intersection index; finite table groups always certify.
    """
    graph = _free_backend(spec)
    if graph is not None:
        # the exact index backend decides first; the orbit then only runs to
        # its known closure, and the two are cross-checked
        kind, k = free_qn1_decide(graph, g.payload)
        if kind == "out":
            return MembershipVerdict(
                status=CERTIFIED_OUT,
                reason="free-group intersection has infinite index",
                budget=budget,
            )
        full = orbit_bfs(spec, g, k)
        if not full.closed or full.size != k:
            raise GroupValidationError(
                f"orbit backend disagreement: orbit {full.size, full.closed} vs index {k}"
            )
        cert = certificate_from_cover(spec, g, list(full.representatives))
        return MembershipVerdict(status=CERTIFIED_IN, certificate=cert, budget=budget,
                                 orbit_explored=full.explored)
    orbit = orbit_bfs(spec, g, budget)
    if orbit.closed:
        cert = certificate_from_cover(spec, g, list(orbit.representatives))
        return MembershipVerdict(status=CERTIFIED_IN, certificate=cert, budget=budget,
                                 orbit_explored=orbit.explored)
    if isinstance(spec.group, FiniteTableGroup):
        # orbits in a finite group always close once the budget allows
        full = orbit_bfs(spec, g, spec.group.order)
        cert = certificate_from_cover(spec, g, list(full.representatives))
        return MembershipVerdict(status=CERTIFIED_IN, certificate=cert, budget=budget,
                                 orbit_explored=full.explored)
    return MembershipVerdict(status=UNKNOWN, budget=budget, orbit_explored=orbit.explored)


def h1_membership(spec: SubgroupSpec, g: GroupElement, budget: int = 1000) -> MembershipVerdict:
    """Two-sided variant: certified when both ``g`` and ``g^-1`` certify.

    One exact refutation on either side refutes; otherwise the verdict stays
    Unknown.
    """
    forward = qn1_membership(spec, g, budget)
    backward = qn1_membership(spec, spec.group.invert(g), budget)
    if forward.certified_in and backward.certified_in:
        return MembershipVerdict(
            status=CERTIFIED_IN,
            certificate=forward.certificate,
            inverse_certificate=backward.certificate,
            budget=budget,
            orbit_explored=forward.orbit_explored,
        )
    if forward.certified_out or backward.certified_out:
        side = forward if forward.certified_out else backward
        return MembershipVerdict(
            status=CERTIFIED_OUT,
            reason=side.reason,
            budget=budget,
            orbit_explored=side.orbit_explored,
        )
    explored = max(forward.orbit_explored or 0, backward.orbit_explored or 0)
    return MembershipVerdict(status=UNKNOWN, budget=budget, orbit_explored=explored)


def product_verdict(v1: MembershipVerdict, v2: MembershipVerdict,
                    product_group=None, product_spec=None) -> MembershipVerdict:
    """Combine componentwise verdicts over a product subgroup.

    Componentwise certificates compose; a single exact refutation refutes the
    pair because the cover condition projects onto each factor.
    """
    from .certificates import product_compose

    if v1.certified_in and v2.certified_in:
        cert = product_compose(v1.certificate, v2.certificate, product_group, product_spec)
        return MembershipVerdict(status=CERTIFIED_IN, certificate=cert)
    if v1.certified_out or v2.certified_out:
        side = v1 if v1.certified_out else v2
        return MembershipVerdict(
            status=CERTIFIED_OUT,
            reason=f"component refutation: {side.reason}",
        )
    return MembershipVerdict(status=UNKNOWN)
