"""Coset digraphs, s-arc-transitivity bounds, and orbital self-pairedness.

A coset digraph is built from (G, H, g) with g outside H and g^-1 outside
the double coset HgH; vertices are right cosets of H, and Hx -> Hy is an
arc iff y x^-1 lies in HgH.  The group acts by right multiplication, so
the digraph is arc-transitive by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, ResourceLimitError
from .numth import factorize, p_part
from .permgroup import (
    ActionMap,
    GroupHandle,
    Permutation,
    coset_action,
    pointwise_stabilizer,
    transporter,
)

__all__ = [
    "CosetDigraph",
    "LoopArcError",
    "SymmetricArcError",
    "coset_digraph",
    "valency",
    "max_s_by_criterion",
    "max_s_by_orbits",
    "count_s_arcs",
    "normal_subgroup_obstruction",
    "is_self_paired",
    "self_paired_scan",
    "valency_p_part_check",
    "OrbitalInfo",
]

ARC_COUNT_CAP = 1_000_000


class LoopArcError(ValueError):
    """The connecting element lies in H, so the relation would have loops."""


class SymmetricArcError(ValueError):
    """g^-1 lies in HgH: the relation is symmetric, a graph not a digraph."""


@dataclass
class CosetDigraph:
    group: GroupHandle
    subgroup: GroupHandle
    connecting: Permutation
    action: ActionMap
    image: GroupHandle
    base_neighborhood: list
    out_neighbors: list = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.action.degree

    def vertex_stabilizer_order(self) -> int:
        return self.image.order() // self.vertex_count


def coset_digraph(g: GroupHandle, h: GroupHandle, connecting: Permutation,
                  index_cap=100_000) -> CosetDigraph:
    """Construct Cos(g, h, connecting); validates the digraph axioms."""
    if not h.is_subgroup_of(g):
        raise PreconditionError("h must be a subgroup of g")
    if h.order() >= g.order():
        raise PreconditionError("h must be proper")
    if not g.contains(connecting):
        raise PreconditionError("connecting element must lie in g")
    if h.contains(connecting):
        raise LoopArcError("connecting element lies in h")
    act = coset_action(g, h, index_cap=index_cap)
    image = act.image_handle()
    pi_g = act.image_of(connecting)
    pi_ginv = act.image_of(connecting.inverse())
    h_images = [act.image_of(gen) for gen in h.generators]
    h_image_handle = GroupHandle(act.degree, h_images)
    p1 = int(pi_g.images[0])
    neighborhood = h_image_handle.orbit(p1)
    p2 = int(pi_ginv.images[0])
    if p2 in neighborhood:
        raise SymmetricArcError("g^-1 lies in HgH; the relation is symmetric")

    # out-neighbours of every vertex, via transversal images in the
    # coset action
    n = act.degree
    out = [None] * n
    out[0] = sorted(neighborhood)
    trans: list = [None] * n
    trans[0] = Permutation.identity(n)
    frontier = [0]
    gens = image.generators
    while frontier:
        nxt = []
        for v in frontier:
            for gen in gens:
                w = int(gen.images[v])
                if trans[w] is None:
                    trans[w] = trans[v] * gen
                    nxt.append(w)
        frontier = nxt
    for v in range(n):
        tv = trans[v]
        out[v] = sorted(int(tv.images[x]) for x in neighborhood)
    return CosetDigraph(
        group=g,
        subgroup=h,
        connecting=connecting,
        action=act,
        image=image,
        base_neighborhood=sorted(neighborhood),
        out_neighbors=out,
    )


def valency(d: CosetDigraph) -> int:
    """|H : H meet H^g| = constant out-degree."""
    return len(d.base_neighborhood)


def _base_arc_points(d: CosetDigraph, length: int) -> list[int]:
    pts = [0]
    pi_g = d.action.image_of(d.connecting)
    cur = 0
    for _ in range(length):
        cur = int(pi_g.images[cur])
        pts.append(cur)
    return pts


def max_s_by_criterion(d: CosetDigraph, cap: int = 4, acting: GroupHandle | None = None) -> int:
    """Largest s <= cap certified by the stabilizer-factorisation
    criterion along the base arc v_0 -> v_1 -> ... (v_j is the coset of
    g^j).  The criterion at level i asks that the stabilizer of
    (v_1..v_i) equal the product of the stabilizers of (v_0..v_i) and
    (v_1..v_{i+1})."""
    group = acting or d.image
    pts = _base_arc_points(d, cap + 1)
    s = 1
    while s < cap:
        i = s
        a = pointwise_stabilizer(group, pts[1 : i + 1]).order()
        b = pointwise_stabilizer(group, pts[0 : i + 1]).order()
        c = pointwise_stabilizer(group, pts[1 : i + 2]).order()
        e = pointwise_stabilizer(group, pts[0 : i + 2]).order()
        if a * e == b * c:
            s += 1
        else:
            break
    return s


def count_s_arcs(d: CosetDigraph, s: int, cap: int = ARC_COUNT_CAP) -> int:
    """Number of s-arcs (directed walks along arcs), by the out-degree
    recursion."""
    counts = [1] * d.vertex_count
    for _ in range(s):
        new = [0] * d.vertex_count
        for v, nbrs in enumerate(d.out_neighbors):
            c = 0
            for w in nbrs:
                c += counts[w]
            new[v] = c
        counts = new
        if sum(counts) > cap:
            raise ResourceLimitError(f"s-arc count exceeds cap {cap}")
    return sum(counts)


def max_s_by_orbits(d: CosetDigraph, cap: int = 4, acting: GroupHandle | None = None,
                    count_cap: int = ARC_COUNT_CAP) -> int:
    """Largest s <= cap with the orbit of the base s-arc equal to the
    whole s-arc set; the independent oracle for max_s_by_criterion."""
    group = acting or d.image
    pts = _base_arc_points(d, cap)
    n = group.order()
    best = 0
    for s in range(1, cap + 1):
        total = count_s_arcs(d, s, cap=count_cap)
        stab = pointwise_stabilizer(group, pts[: s + 1]).order()
        if n // stab == total:
            best = s
        else:
            break
    return best


def is_self_paired(g: GroupHandle, u: int, v: int):
    """(flag, witness): whether some element swaps the ordered pair."""
    if u == v:
        raise PreconditionError("need distinct points")
    w = transporter(g, (u, v), (v, u))
    return (w is not None), w


@dataclass
class OrbitalInfo:
    base_point: int
    representative: int
    length: int
    self_paired: bool


def self_paired_scan(g: GroupHandle, cap_degree: int = 5_000) -> list[OrbitalInfo]:
    """Tag every non-diagonal orbital of a transitive group as self-paired
    or not; orbitals are orbits of the point stabilizer."""
    if not g.is_transitive():
        raise PreconditionError("scan needs a transitive group")
    if g.degree > cap_degree:
        raise ResourceLimitError(f"degree {g.degree} exceeds cap {cap_degree}")
    stab = pointwise_stabilizer(g, [0])
    out = []
    for orb in stab.orbits():
        rep = orb[0]
        if rep == 0 and len(orb) == 1:
            continue
        flag, _ = is_self_paired(g, 0, rep)
        out.append(OrbitalInfo(0, rep, len(orb), flag))
    return out


def valency_p_part_check(d: CosetDigraph, s: int):
    """Necessary condition for s-arc-transitivity: for every prime p
    dividing |G_v|, the p-part of |G_v| is at least (valency p-part)^s.
    Any FAIL certifies the digraph is not s-arc-transitive."""
    if s < 1:
        raise PreconditionError("s >= 1")
    gv = d.vertex_stabilizer_order()
    gamma = valency(d)
    verdicts = {}
    for p in sorted(factorize(gv)):
        need = p_part(gamma, p).value ** s
        have = p_part(gv, p).value
        verdicts[p] = {"gv_p": have, "gamma_p_pow_s": need, "ok": have >= need}
    return verdicts


def normal_subgroup_obstruction(d: CosetDigraph, cap: int = 2_000) -> bool:
    """True iff the connecting element normalises no proper nontrivial
    normal subgroup of the vertex stabilizer (a necessary condition for
    arc-transitive digraphs on connected components).  Implemented for
    |G_v| <= cap only."""
    from .subgroups import enumerate_classes

    h = d.subgroup
    if h.order() > cap:
        raise ResourceLimitError(f"vertex stabilizer order {h.order()} exceeds {cap}")
    conn = d.connecting
    for cls in enumerate_classes(h).classes:
        n = cls.representative
        if n.order() in (1, h.order()):
            continue
        if cls.class_size != 1:
            continue  # not normal in h
        conj = n.conjugate(conn)
        if conj.order() == n.order() and conj.is_subgroup_of(n):
            return False
    return True
