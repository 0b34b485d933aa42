"""Group factorisation predicates, the staged homogeneous-factorisation
search, wreath projections, and the arithmetic table auditor.

The search follows the staged shape: enumerate candidate subgroup classes
above the per-prime bound |H|_p^2 >= |G|_p, keep equal-order pairs, run
the order-product test |G| |H meet K| = |H| |K| against a transversal of
conjugates, and finish with the abstract isomorphism test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .numth import factorize, p_part, ppd_set
from .permgroup import GroupHandle, Permutation, pointwise_stabilizer
from .subgroups import (
    ElementTable,
    are_isomorphic,
    enumerate_classes,
    intersection,
)

__all__ = [
    "is_factorisation",
    "is_homogeneous_pair",
    "SearchOptions",
    "FactorisationReport",
    "Witness",
    "search_homogeneous",
    "lemma_min_order",
    "wreath_projections",
    "audit_table_row",
    "AuditVerdict",
]


def is_factorisation(g: GroupHandle, h: GroupHandle, k: GroupHandle) -> bool:
    """True iff g = h k, by the order-product formula."""
    if not (h.is_subgroup_of(g) and k.is_subgroup_of(g)):
        raise PreconditionError("factors must be subgroups")
    meet = intersection(h, k)
    return g.order() * meet.order() == h.order() * k.order()


def is_homogeneous_pair(g: GroupHandle, h: GroupHandle, k: GroupHandle,
                        require_conjugate: bool = False) -> bool:
    """g = h k with h and k proper and abstractly isomorphic (conjugate in
    g when the flag is set)."""
    if h.order() >= g.order() or k.order() >= g.order():
        return False
    if h.order() != k.order():
        return False
    if not is_factorisation(g, h, k):
        return False
    if require_conjugate:
        from .subgroups import is_conjugate_subgroup

        if is_conjugate_subgroup(g, h, k) is None:
            return False
    return are_isomorphic(h, k)


def lemma_min_order(order: int) -> int:
    """prod p^ceil(e_p / 2) over |G| = prod p^e_p: any factor of a
    homogeneous factorisation has at least this order."""
    out = 1
    for p, e in factorize(order).items():
        out *= p ** ((e + 1) // 2)
    return out


@dataclass
class SearchOptions:
    min_order: int = 1
    require_conjugate: bool = False
    order_divisor: int = 1  # each factor order must be divisible by this


@dataclass
class Witness:
    h_generators: list
    k_generators: list
    meet_order: int
    h_order: int
    conjugate_pair: bool

    def to_record(self):
        return {
            "h_generators": self.h_generators,
            "k_generators": self.k_generators,
            "order": self.h_order,
            "meet_order": self.meet_order,
            "conjugate_pair": self.conjugate_pair,
        }


@dataclass
class FactorisationReport:
    group: str
    group_order: int
    min_order: int
    options: SearchOptions
    stage_counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    certified: bool = False
    reason: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "group": self.group,
                "group_order": self.group_order,
                "min_order": self.min_order,
                "require_conjugate": self.options.require_conjugate,
                "order_divisor": self.options.order_divisor,
                "stage_counts": self.stage_counts,
                "witnesses": [w.to_record() for w in self.witnesses],
                "certified": self.certified,
                "reason": self.reason,
            },
            indent=2,
        )


def search_homogeneous(g: GroupHandle, options: SearchOptions | None = None) -> FactorisationReport:
    """All homogeneous factorisations of g up to conjugacy of the class
    pair.  An empty certified report is a completed non-existence check;
    a NON-CERTIFIED report only says the best-effort pool found nothing.
    """
    options = options or SearchOptions()
    n = g.order()
    floor = lemma_min_order(n)
    min_order = max(floor, options.min_order, options.order_divisor)
    report = FactorisationReport(
        group=g.name or f"degree-{g.degree} group",
        group_order=n,
        min_order=min_order,
        options=options,
    )
    try:
        collection = enumerate_classes(g, min_order)
    except ResourceLimitError as exc:
        report.certified = False
        report.reason = f"enumeration outside envelope: {exc}"
        report.stage_counts = {"lis": 0, "lis2": 0, "lis3": 0, "lis4": 0}
        return report
    report.certified = collection.certified
    if not collection.certified:
        report.reason = "subgroup pool is best-effort only"

    fac = factorize(n)
    candidates = []
    for cls in collection.classes:
        if cls.order >= n:
            continue
        if options.order_divisor > 1 and cls.order % options.order_divisor:
            continue
        if all(p_part(cls.order, p).value ** 2 >= p**e for p, e in fac.items()):
            candidates.append(cls)

    pairs = []
    for i, a in enumerate(candidates):
        for b in candidates[i:]:
            pairs.append((a, b))
    report.stage_counts["lis"] = len(pairs)

    pairs2 = [(a, b) for a, b in pairs if a.order == b.order]
    report.stage_counts["lis2"] = len(pairs2)

    pairs3 = []
    for a, b in pairs2:
        found = _product_test(g, a, b, collection.strategy)
        if found is not None:
            pairs3.append((a, b, found))
    report.stage_counts["lis3"] = len(pairs3)

    for a, b, (k_handle, meet_order, conj) in pairs3:
        if options.require_conjugate and not conj:
            continue
        if are_isomorphic(a.representative, k_handle):
            report.witnesses.append(
                Witness(
                    h_generators=[p.to_cycle_string() for p in a.representative.generators],
                    k_generators=[p.to_cycle_string() for p in k_handle.generators],
                    meet_order=meet_order,
                    h_order=a.order,
                    conjugate_pair=conj,
                )
            )
    report.stage_counts["lis4"] = len(report.witnesses)
    return report


def _product_test(g, cls_a, cls_b, strategy):
    """Find a conjugate K of cls_b's representative with g = H K for
    H = cls_a's representative; returns (K handle, meet order, same-class)
    or None."""
    n = g.order()
    want = cls_a.order * cls_b.order // n if (cls_a.order * cls_b.order) % n == 0 else None
    if want is None or want == 0:
        return None
    if cls_a.table is not None:
        table = cls_a.table
        h_members = set(cls_a.members)
        start = np.array(sorted(cls_b.members), dtype=np.int32)
        seen = {start.tobytes()}
        queue = [start]
        while queue:
            arr = queue.pop()
            meet = sum(1 for x in arr.tolist() if x in h_members)
            if meet * n == cls_a.order * cls_b.order:
                k_handle = table.subgroup_handle(frozenset(int(x) for x in arr))
                return k_handle, meet, cls_a is cls_b
            for gid in table.gen_ids:
                new = table.conjugate_set(arr, gid)
                key = new.tobytes()
                if key not in seen:
                    seen.add(key)
                    queue.append(new)
        return None
    # pool strategy: single representative test only (best effort)
    h = cls_a.representative
    k = cls_b.representative
    try:
        meet = intersection(h, k)
    except ResourceLimitError:
        return None
    if n * meet.order() == h.order() * k.order():
        return k, meet.order(), False
    return None


# ---------------------------------------------------------------------------
# wreath projections

def wreath_projections(w: GroupHandle, h: GroupHandle):
    """(block-permutation image of h, projections of h meet base to each
    component).  Needs wreath provenance on w."""
    info = w.provenance.get("wreath")
    if info is None:
        raise PreconditionError("handle does not carry wreath provenance")
    if not h.is_subgroup_of(w):
        raise PreconditionError("h must be a subgroup of the wreath product")
    k = info["k"]
    d = info["block_size"]

    def block_perm(perm: Permutation):
        out = []
        for b in range(k):
            img = int(perm.images[b * d]) // d
            out.append(img)
        return out

    pi_image = GroupHandle(k, [Permutation(block_perm(gen)) for gen in h.generators],
                           name="pi(h)")

    # kernel of the block action as a pointwise stabilizer in an auxiliary
    # action on points + blocks
    total = w.degree
    aux_gens = []
    for gen in h.generators:
        aux = list(gen.images) + [total + b for b in block_perm(gen)]
        aux_gens.append(Permutation(aux))
    aux_handle = GroupHandle(total + k, aux_gens)
    kernel_aux = pointwise_stabilizer(aux_handle, list(range(total, total + k)))
    kernel_gens = [Permutation(gen.images[:total]) for gen in kernel_aux.generators]

    phi_images = []
    for b in range(k):
        gens_b = []
        for gen in kernel_gens:
            gens_b.append(Permutation([int(gen.images[b * d + p]) - b * d for p in range(d)]))
        phi_images.append(GroupHandle(d, gens_b, name=f"phi_{b}(h meet base)"))
    return pi_image, phi_images


# ---------------------------------------------------------------------------
# table auditor

@dataclass
class CheckResult:
    name: str
    status: str  # PASS / FAIL / VACUOUS
    detail: str


@dataclass
class AuditVerdict:
    row_id: str
    socle: str
    instantiation: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    def to_record(self):
        return {
            "row": self.row_id,
            "socle": self.socle,
            "instantiation": self.instantiation,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail}
                for c in self.checks
            ],
        }


def _side_product(side):
    out = 1
    for _name, order in side:
        out *= order
    return out


def audit_table_row(instance) -> AuditVerdict:
    """Arithmetic audit of one catalogue row (see tables.py for the row
    schema).  Necessary conditions only: primitive-prime-divisor
    bookkeeping plus order divisibility against maximal-overgroup bounds
    where the row supplies them.
    """
    checks = []
    p, e = instance.ppd
    primes = ppd_set(p, e)
    if primes:
        checks.append(CheckResult("ppd-nonempty", "PASS", f"ppd({p},{e}) = {sorted(primes)}"))
    else:
        checks.append(CheckResult("ppd-nonempty", "FAIL", f"ppd({p},{e}) is empty"))
        return AuditVerdict(instance.row_id, instance.socle_name, instance.describe(), checks)
    r = min(primes)

    if instance.overgroups is not None:
        xo, yo = instance.overgroups
        if (xo * yo) % instance.socle_order == 0:
            checks.append(
                CheckResult("overgroup-divisibility", "PASS",
                            f"|X| |Y| / |L| = {xo * yo // instance.socle_order}")
            )
        else:
            checks.append(
                CheckResult("overgroup-divisibility", "FAIL",
                            f"{instance.socle_order} does not divide {xo} * {yo}")
            )

    mode = instance.mode
    for label_a, side_a in instance.a_options:
        for label_b, side_b in instance.b_options:
            tag = f"[{label_a} | {label_b}]"
            pa = _side_product(side_a)
            pb = _side_product(side_b)
            if mode == "table1":
                if side_a:
                    status = "PASS" if pa % r == 0 else "FAIL"
                    checks.append(CheckResult(f"r-divides-A {tag}", status, f"r = {r}, |A-side| = {pa}"))
                else:
                    checks.append(CheckResult(f"r-divides-A {tag}", "VACUOUS", "no insoluble factor on A"))
                status = "PASS" if pb % r else "FAIL"
                checks.append(CheckResult(f"r-avoids-B {tag}", status, f"r = {r}, |B-side| = {pb}"))
                if instance.overgroups is not None:
                    status = "PASS" if instance.overgroups[1] % r else "FAIL"
                    checks.append(CheckResult(f"r-avoids-Y {tag}", status, f"|Y| = {instance.overgroups[1]}"))
            elif mode == "table2":
                ok = pa % r == 0 and pb % r == 0
                checks.append(
                    CheckResult(f"r-divides-both {tag}", "PASS" if ok else "FAIL",
                                f"r = {r}, sides {pa}, {pb}")
                )
            elif mode == "table3":
                if not side_a and not side_b:
                    checks.append(CheckResult(f"r-divides-one {tag}", "VACUOUS", "both sides soluble"))
                else:
                    hit_a = side_a and pa % r == 0
                    hit_b = side_b and pb % r == 0
                    if hit_a or hit_b:
                        checks.append(CheckResult(f"r-divides-one {tag}", "PASS", f"r = {r}"))
                    elif not side_a or not side_b:
                        checks.append(
                            CheckResult(f"r-divides-one {tag}", "VACUOUS",
                                        "r may sit in a soluble factor")
                        )
                    else:
                        checks.append(CheckResult(f"r-divides-one {tag}", "FAIL", f"r = {r} divides neither side"))
                    if instance.dim >= 7:
                        carrier = side_a if hit_a else (side_b if hit_b else [])
                        got = any(order % r == 0 for _n, order in carrier)
                        checks.append(
                            CheckResult(f"r-in-A-factor {tag}", "PASS" if got else "FAIL",
                                        f"dimension {instance.dim} >= 7 requires an insoluble factor of order divisible by {r}")
                        )
                names_a = {nm for nm, _o in side_a}
                names_b = {nm for nm, _o in side_b}
                overlap = names_a & names_b
                if overlap and not instance.disjoint_exempt:
                    checks.append(CheckResult(f"disjoint {tag}", "FAIL", f"shared factors {sorted(overlap)}"))
                else:
                    checks.append(CheckResult(f"disjoint {tag}", "PASS", "factor sets disjoint" if not overlap else "exempt row"))
            elif mode == "table4":
                if side_a:
                    bad = [nm for nm, order in side_a if order % r]
                    checks.append(
                        CheckResult(f"r-in-every-A-factor {tag}", "PASS" if not bad else "FAIL",
                                    f"r = {r}" + (f", missing from {bad}" if bad else ""))
                    )
                names_a = {nm for nm, _o in side_a}
                names_b = {nm for nm, _o in side_b}
                overlap = names_a & names_b
                if overlap and not instance.disjoint_exempt:
                    checks.append(CheckResult(f"disjoint {tag}", "FAIL", f"shared factors {sorted(overlap)}"))
                else:
                    checks.append(CheckResult(f"disjoint {tag}", "PASS", "ok"))
            else:
                raise PreconditionError(f"unknown audit mode {mode!r}")
    return AuditVerdict(instance.row_id, instance.socle_name, instance.describe(), checks)
