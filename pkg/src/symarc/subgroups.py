"""Exhaustive subgroup enumeration for small groups, intersections, and
isomorphism testing.

The workhorse is an element table: every group element is enumerated once
and given an integer id, after which subgroups are frozensets of ids and
conjugation is a precomputed permutation of ids.  Two independent
enumeration strategies are implemented:

* a join-closure fixpoint over prime-power cyclic subgroups (provably
  complete, used for orders <= 2000 and as the cross-check oracle), and
* a cyclic-extension ladder above the perfect subgroups (complete given
  complete seeds; seeds are read off the full lattice of the perfect
  residual, so certification needs that residual to be small).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from hashlib import blake2b

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .numth import factorize, is_prime
from .permgroup import GroupHandle, Permutation, perfect_residual

__all__ = [
    "ElementTable",
    "SubgroupClass",
    "subgroup_classes",
    "enumerate_classes",
    "intersection",
    "are_isomorphic",
    "is_conjugate_subgroup",
]

TABLE_CAP = 20_000
NAIVE_CAP = 2_000
ISO_CAP = 10_000
POOL_INDEX_CAP = 200


class ElementTable:
    """Complete element enumeration of a moderate permutation group."""

    def __init__(self, handle: GroupHandle, cap=TABLE_CAP):
        n = handle.order()
        if n > cap:
            raise ResourceLimitError(
                f"group order {n} exceeds the element table cap {cap}",
                advice="use the bounded-index strategy or a smaller group",
            )
        self.handle = handle
        deg = handle.degree
        gen_rows = [np.asarray(g.images, dtype=np.int32) for g in handle.generators]
        ident = np.arange(deg, dtype=np.int32)
        rows = [ident]
        index = {ident.tobytes(): 0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                base = rows[i]
                for g in gen_rows:
                    new = g[base]
                    key = new.tobytes()
                    if key not in index:
                        index[key] = len(rows)
                        rows.append(new)
                        nxt.append(len(rows) - 1)
            frontier = nxt
        if len(rows) != n:
            raise AssertionError("element enumeration mismatch")
        self.rows = np.array(rows, dtype=np.int32)
        self.index = index
        self.n = n
        self.degree = deg
        inv = np.empty(n, dtype=np.int32)
        for i in range(n):
            inv[i] = index[_invert_row(self.rows[i]).tobytes()]
        self.inv = inv
        self.gen_ids = [index[g.tobytes()] for g in gen_rows]
        self._conj_cache: dict[int, np.ndarray] = {}
        self._orders: np.ndarray | None = None
        self._table2d: np.ndarray | None = None
        self._table_list: list | None = None
        self._row_keys: np.ndarray | None = None
        self._row_perm: np.ndarray | None = None

    def _batch_ids(self, mats: np.ndarray) -> np.ndarray:
        """Vectorised id lookup of a stack of image rows."""
        if self._row_keys is None:
            keys = np.ascontiguousarray(self.rows).view(
                np.dtype((np.void, self.rows.shape[1] * 4))
            ).ravel()
            perm = np.argsort(keys)
            self._row_keys = keys[perm]
            self._row_perm = perm.astype(np.int32)
        view = np.ascontiguousarray(mats).view(
            np.dtype((np.void, mats.shape[1] * 4))
        ).ravel()
        pos = np.searchsorted(self._row_keys, view)
        return self._row_perm[pos]

    @property
    def table2d(self) -> np.ndarray | None:
        """Full Cayley table on ids when the group is small enough."""
        if self._table2d is None and self.n <= 4096:
            out = np.empty((self.n, self.n), dtype=np.int32)
            for j in range(self.n):
                out[:, j] = self._batch_ids(self.rows[j][self.rows])
            self._table2d = out
        return self._table2d

    @property
    def table_list(self) -> list | None:
        """Cayley table as nested lists: fastest for scalar-heavy loops."""
        if self._table_list is None and self.table2d is not None:
            self._table_list = self.table2d.tolist()
        return self._table_list

    def mult(self, i: int, j: int) -> int:
        if self._table_list is not None:
            return self._table_list[i][j]
        if self._table2d is not None:
            return int(self._table2d[i, j])
        return self.index[self.rows[j][self.rows[i]].tobytes()]

    def power(self, i: int, e: int) -> int:
        out = 0
        base = i
        while e:
            if e & 1:
                out = self.mult(out, base)
            base = self.mult(base, base)
            e >>= 1
        return out

    def element_order(self, i: int) -> int:
        return int(self.orders[i])

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            out = np.empty(self.n, dtype=np.int64)
            for i in range(self.n):
                out[i] = Permutation._raw(self.rows[i]).order()
            self._orders = out
        return self._orders

    def perm(self, i: int) -> Permutation:
        return Permutation._raw(self.rows[i])

    def id_of(self, perm: Permutation) -> int:
        key = np.asarray(perm.images, dtype=np.int32).tobytes()
        got = self.index.get(key)
        if got is None:
            raise PreconditionError("permutation is not in the group")
        return got

    def conj_perm(self, g: int) -> np.ndarray:
        """The permutation of ids induced by conjugation x -> g^-1 x g."""
        got = self._conj_cache.get(g)
        if got is not None:
            return got
        grow = self.rows[g]
        ginv = self.rows[self.inv[g]]
        conj = grow[self.rows[:, ginv]]
        out = self._batch_ids(conj)
        if len(self._conj_cache) > 64:
            self._conj_cache.clear()
        self._conj_cache[g] = out
        return out

    def closure(self, gen_ids) -> frozenset:
        gen_ids = [int(g) for g in gen_ids if g != 0]
        if not gen_ids:
            return frozenset([0])
        tl = self.table_list
        if tl is not None:
            seen = {0}
            add = seen.add
            frontier = [0]
            while frontier:
                nxt = []
                for i in frontier:
                    row = tl[i]
                    for g in gen_ids:
                        j = row[g]
                        if j not in seen:
                            add(j)
                            nxt.append(j)
                frontier = nxt
            return frozenset(seen)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                for g in gen_ids:
                    j = self.mult(i, g)
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return frozenset(seen)

    def subgroup_handle(self, members, name=None) -> GroupHandle:
        """GroupHandle with a short generating set for a member set."""
        gens: list[int] = []
        have = {0}
        for i in sorted(members):
            if i in have:
                continue
            gens.append(i)
            have = self.closure(gens)
            if len(have) == len(members):
                break
        return self.handle.subgroup([self.perm(i) for i in gens], name=name)

    def derived_members(self, members) -> frozenset:
        """Derived subgroup of a member set, in ids."""
        ms = sorted(members)
        table = self.table2d
        comms = set()
        if table is not None:
            arr = np.array(ms, dtype=np.int32)
            iarr = self.inv[arr]
            for a, ia in zip(arr, iarr):
                ab = table[a, arr]
                iab = table[ia, iarr]
                comms.update(table[iab, ab].tolist())
        else:
            for a in ms:
                ia = int(self.inv[a])
                for b in ms:
                    c = self.mult(self.mult(ia, int(self.inv[b])), self.mult(a, b))
                    comms.add(c)
        return self.closure(comms)

    def is_perfect(self, members) -> bool:
        return self.derived_members(members) == frozenset(members)

    def conjugate_set(self, members_arr: np.ndarray, g: int) -> np.ndarray:
        out = self.conj_perm(g)[members_arr]
        out.sort()
        return out


def _invert_row(arr):
    inv = np.empty_like(arr)
    inv[arr] = np.arange(len(arr), dtype=arr.dtype)
    return inv


def _digest(arr: np.ndarray) -> bytes:
    return blake2b(arr.tobytes(), digest_size=16).digest()


# ---------------------------------------------------------------------------
# complete join-closure enumeration (the oracle, and orders <= NAIVE_CAP)

def all_subgroups(table: ElementTable, members=None) -> list[frozenset]:
    """Every subgroup of the member set, by join-closure over prime-power
    cyclic subgroups iterated to a fixpoint.  Complete but only feasible
    for a couple of thousand elements."""
    if members is None:
        members = range(table.n)
    members = sorted(members)
    if len(members) > NAIVE_CAP:
        raise ResourceLimitError(
            f"join-closure enumeration capped at {NAIVE_CAP} elements"
        )
    cyclic = {}
    for i in members:
        o = table.element_order(i)
        fac = factorize(o) if o > 1 else {}
        if len(fac) != 1:
            continue
        sub = frozenset(table.power(i, k) for k in range(o))
        cyclic.setdefault(sub, i)
    seeds = [(sub, gen) for sub, gen in sorted(cyclic.items(), key=lambda kv: sorted(kv[0]))]
    subs: dict[frozenset, tuple] = {frozenset([0]): ()}
    for sub, gen in seeds:
        subs.setdefault(sub, (gen,))
    tried = set()
    work = list(subs.items())
    while work:
        current, gens = work.pop()
        for sub, sgen in seeds:
            if sub <= current:
                continue
            key = (current, sgen)
            if key in tried:
                continue
            tried.add(key)
            joined = table.closure(list(gens) + [sgen])
            if joined not in subs:
                newgens = tuple(gens) + (sgen,)
                subs[joined] = newgens
                work.append((joined, newgens))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# conjugacy machinery on subgroup sets

def _class_orbit(table: ElementTable, members: frozenset, want_normalizer=False):
    """Conjugation orbit of a subgroup: (canonical rep array, class size,
    digest dict, normalizer member set or None).

    The normalizer comes from Schreier generators of the orbit, so both
    facts cost a single breadth-first sweep.
    """
    start = np.array(sorted(members), dtype=np.int32)
    d0 = _digest(start)
    trans = {d0: 0}
    order = [(start, d0)]
    queue = [(start, 0)]
    best = start
    best_key = start.tobytes()
    while queue:
        arr, t = queue.pop()
        for g in table.gen_ids:
            new = table.conjugate_set(arr, g)
            dg = _digest(new)
            if dg not in trans:
                tt = table.mult(t, g)
                trans[dg] = tt
                order.append((new, dg))
                queue.append((new, tt))
                key = new.tobytes()
                if key < best_key:
                    best_key = key
                    best = new
    normalizer = None
    if want_normalizer:
        sgens = set()
        for arr, dg in order:
            t = trans[dg]
            for g in table.gen_ids:
                img = _digest(table.conjugate_set(arr, g))
                s = table.mult(table.mult(t, g), int(table.inv[trans[img]]))
                if s:
                    sgens.add(s)
        normalizer = table.closure(sgens)
    return best, len(trans), trans, normalizer


# ---------------------------------------------------------------------------
# cyclic-extension ladder

def _perfect_seed_classes(table: ElementTable):
    """Classes of perfect subgroups, read off the full lattice of the
    perfect residual."""
    residual = perfect_residual(table.handle)
    r_order = residual.order()
    if r_order > NAIVE_CAP:
        raise ResourceLimitError(
            f"perfect residual of order {r_order} is too large to seed the ladder",
            advice="only groups with a small perfect residual are certified",
        )
    if r_order == 1:
        return [frozenset([0])]
    r_members = sorted(table.id_of(p) for p in residual.elements())
    seeds = [frozenset([0])]
    for sub in all_subgroups(table, r_members):
        if len(sub) > 1 and table.is_perfect(sub):
            seeds.append(sub)
    return seeds


def _ladder_classes(table: ElementTable):
    """All subgroup classes by prime cyclic extensions above perfect seeds."""
    classes = []  # (rep frozenset, class_size)
    digest_to_class: dict[bytes, int] = {}

    def register(members: frozenset):
        arr = np.array(sorted(members), dtype=np.int32)
        if _digest(arr) in digest_to_class:
            return None
        rep, size, seen, normalizer = _class_orbit(table, members, want_normalizer=True)
        cid = len(classes)
        classes.append((frozenset(int(x) for x in rep), size))
        for dg in seen:
            digest_to_class[dg] = cid
        return normalizer

    heap = []
    counter = 0
    for seed in _perfect_seed_classes(table):
        normalizer = register(seed)
        if normalizer is not None:
            heapq.heappush(heap, (len(seed), counter, seed, normalizer))
            counter += 1

    while heap:
        _, _, k_members, normalizer = heapq.heappop(heap)
        k_size = len(k_members)
        covered = set(k_members)
        for x in sorted(normalizer):
            if x in covered:
                continue
            # order p of the coset xK in N/K, walking powers
            p = 1
            y = x
            while y not in k_members:
                y = table.mult(y, x)
                p += 1
            if not is_prime(p):
                # skip the whole coset Kx: it generates the same extension
                covered.update(table.mult(m, x) for m in k_members)
                continue
            new = set(k_members)
            cos = x
            for _ in range(p - 1):
                new.update(table.mult(m, cos) for m in k_members)
                cos = table.mult(cos, x)
            if len(new) != p * k_size:
                raise AssertionError("bad cyclic extension")
            # every element of new - K generates the same prime extension
            covered.update(new)
            new = frozenset(new)
            norm_new = register(new)
            if norm_new is not None:
                heapq.heappush(heap, (len(new), counter, new, norm_new))
                counter += 1
    return classes


# ---------------------------------------------------------------------------
# public surface

@dataclass
class SubgroupClass:
    representative: GroupHandle
    class_size: int
    order: int
    members: frozenset = None  # element ids in the parent table
    table: ElementTable = None

    def to_record(self):
        return {
            "order": self.order,
            "class_size": self.class_size,
            "generators": [g.to_cycle_string() for g in self.representative.generators],
        }


@dataclass
class ClassCollection:
    group: GroupHandle
    classes: list
    certified: bool
    strategy: str
    min_order: int


def enumerate_classes(g: GroupHandle, min_order: int = 1, table: ElementTable | None = None,
                      pool_extra=None) -> ClassCollection:
    """Subgroup conjugacy classes of order >= min_order.

    Strategy ladder: complete element-table enumeration when the group
    (and its perfect residual) fits, otherwise a bounded-index best-effort
    pool that is never marked certified.  The full certified lattice is
    cached on the handle, so repeated calls only re-filter.
    """
    n = g.order()
    if n <= TABLE_CAP:
        cached = getattr(g, "_subgroup_cache", None)
        if cached is None:
            table = table or ElementTable(g)
            raw = _ladder_classes(table)
            cached = []
            for members, size in raw:
                cached.append(
                    SubgroupClass(
                        representative=table.subgroup_handle(members),
                        class_size=size,
                        order=len(members),
                        members=members,
                        table=table,
                    )
                )
            cached.sort(key=lambda c: (c.order, c.class_size, sorted(c.members)))
            g._subgroup_cache = cached
        classes = [c for c in cached if c.order >= min_order]
        return ClassCollection(g, classes, certified=True, strategy="ladder", min_order=min_order)
    index_bound = n // max(min_order, 1)
    if index_bound <= POOL_INDEX_CAP:
        classes = _pool_classes(g, min_order, pool_extra)
        return ClassCollection(g, classes, certified=False, strategy="pool", min_order=min_order)
    raise ResourceLimitError(
        f"group order {n} with index bound {index_bound} is outside every "
        f"enumeration envelope (table cap {TABLE_CAP}, pool index cap {POOL_INDEX_CAP})",
        advice="searches at this size run best-effort only; raise min_order",
    )


def subgroup_classes(g: GroupHandle, min_order: int = 1) -> list:
    """Spec surface: the list of classes; raises beyond the envelope."""
    return enumerate_classes(g, min_order).classes


def _pool_classes(g: GroupHandle, min_order: int, pool_extra=None) -> list:
    """Best-effort large-subgroup candidates: stabilizers, wreath
    substructures and closure under a round of intersections.  Not
    certified complete."""
    from .permgroup import pointwise_stabilizer

    seen: dict[tuple, GroupHandle] = {}

    def add(handle):
        if handle.order() < max(min_order, 2):
            return
        key = (handle.order(), tuple(sorted(len(o) for o in handle.orbits())))
        seen.setdefault(key + (len(seen),), handle)

    add(g)
    for pt in sorted({o[0] for o in g.orbits()}):
        add(pointwise_stabilizer(g, [pt]))
    info = g.provenance.get("wreath")
    if info is not None:
        from .groups import base_and_top

        base, blocks = base_and_top(g)
        add(base)
        comp = info["component"]
        k = info["k"]
        d = info["block_size"]
        try:
            comp_classes = enumerate_classes(comp).classes
        except ResourceLimitError:
            comp_classes = []
        for cls in comp_classes:
            # uniform products S x S x ... x S inside the base group
            gens = []
            for b in range(k):
                for gen in cls.representative.generators:
                    images = list(range(g.degree))
                    for p in range(d):
                        images[b * d + p] = b * d + int(gen.images[p])
                    gens.append(Permutation(images))
            add(g.subgroup(gens))
    if pool_extra:
        for h in pool_extra:
            add(h)
    handles = list(seen.values())
    out = []
    for h in handles:
        out.append(SubgroupClass(representative=h, class_size=0, order=h.order()))
    out.sort(key=lambda c: -c.order)
    return out


# ---------------------------------------------------------------------------
# intersection / conjugacy / isomorphism

def intersection(h: GroupHandle, k: GroupHandle, cap=100_000) -> GroupHandle:
    """Exact intersection of two subgroups of a common symmetric group."""
    if h.degree != k.degree:
        raise PreconditionError("intersection needs a common degree")
    small, big = (h, k) if h.order() <= k.order() else (k, h)
    if small.order() > cap:
        raise ResourceLimitError(
            f"intersection by element scan capped at {cap}",
        )
    members = [p for p in small.elements(cap=cap) if big.contains(p)]
    gens: list[Permutation] = []
    current = small.subgroup([])
    for p in members:
        if not current.contains(p):
            gens.append(p)
            current = small.subgroup(gens)
            if current.order() == len(members):
                break
    return current


def _fingerprint(table: ElementTable):
    hist: dict[int, int] = {}
    for i in range(table.n):
        o = table.element_order(i)
        hist[o] = hist.get(o, 0) + 1
    # center = fixed points of every generator conjugation
    center = 0
    fixed = np.ones(table.n, dtype=bool)
    for gid in table.gen_ids:
        fixed &= table.conj_perm(gid) == np.arange(table.n, dtype=np.int32)
    center = int(fixed.sum())
    # derived series orders
    series = []
    cur = frozenset(range(table.n))
    while True:
        nxt = table.derived_members(cur)
        if nxt == cur:
            break
        series.append(len(nxt))
        cur = nxt
        if len(cur) == 1:
            break
    return (table.n, tuple(sorted(hist.items())), center, tuple(series))


def _element_classes(table: ElementTable):
    """Conjugacy classes of elements: array of class ids plus sizes."""
    cls = -np.ones(table.n, dtype=np.int64)
    sizes = []
    for i in range(table.n):
        if cls[i] >= 0:
            continue
        cid = len(sizes)
        orbit = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for x in frontier:
                for gid in table.gen_ids:
                    y = int(table.conj_perm(gid)[x])
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        for x in orbit:
            cls[x] = cid
        sizes.append(len(orbit))
    return cls, sizes


def _generating_sequence(table: ElementTable):
    gens: list[int] = []
    have = frozenset([0])
    for i in range(1, table.n):
        if i in have:
            continue
        gens.append(i)
        have = table.closure(gens)
        if len(have) == table.n:
            break
    return gens


def are_isomorphic(a: GroupHandle, b: GroupHandle, cap=ISO_CAP) -> bool:
    """Abstract isomorphism test: invariant fingerprint, then a
    generator-mapping backtrack with multiplication-table verification."""
    if a.order() != b.order():
        return False
    if a.order() > cap or b.order() > cap:
        raise ResourceLimitError(f"isomorphism test capped at order {cap}")
    ta = ElementTable(a, cap=cap)
    tb = ElementTable(b, cap=cap)
    if _fingerprint(ta) != _fingerprint(tb):
        return False
    if ta.n == 1:
        return True
    cls_a, sizes_a = _element_classes(ta)
    cls_b, sizes_b = _element_classes(tb)
    gens = _generating_sequence(ta)

    def invariant_a(i):
        return (ta.element_order(i), sizes_a[int(cls_a[i])])

    def invariant_b(i):
        return (tb.element_order(i), sizes_b[int(cls_b[i])])

    by_inv: dict[tuple, list[int]] = {}
    for i in range(tb.n):
        by_inv.setdefault(invariant_b(i), []).append(i)

    def verify(images) -> bool:
        # grow the pairing (x, phi x); any clash kills the candidate
        pair = {0: 0}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for x, y in frontier:
                for gx, gy in zip(gens, images):
                    px = ta.mult(x, gx)
                    py = tb.mult(y, gy)
                    got = pair.get(px)
                    if got is None:
                        pair[px] = py
                        nxt.append((px, py))
                    elif got != py:
                        return False
            frontier = nxt
        if len(pair) != ta.n:
            return False
        return len(set(pair.values())) == ta.n

    def backtrack(idx, images):
        if idx == len(gens):
            return verify(images)
        want = invariant_a(gens[idx])
        for cand in by_inv.get(want, []):
            ok = True
            # cheap relation pruning against already-chosen images
            for j in range(idx):
                x = ta.mult(gens[j], gens[idx])
                y = tb.mult(images[j], cand)
                if ta.element_order(x) != tb.element_order(y):
                    ok = False
                    break
            if ok and backtrack(idx + 1, images + [cand]):
                return True
        return False

    return backtrack(0, [])


def is_conjugate_subgroup(g: GroupHandle, h: GroupHandle, k: GroupHandle,
                          table: ElementTable | None = None) -> Permutation | None:
    """Some x in g with h^x = k, or None."""
    if not (h.is_subgroup_of(g) and k.is_subgroup_of(g)):
        raise PreconditionError("h and k must be subgroups of g")
    if h.order() != k.order():
        return None
    table = table or ElementTable(g)
    hm = np.array(sorted(table.id_of(p) for p in h.elements()), dtype=np.int32)
    km = np.array(sorted(table.id_of(p) for p in k.elements()), dtype=np.int32)
    target = km.tobytes()
    if hm.tobytes() == target:
        return Permutation.identity(g.degree)
    seen = {hm.tobytes(): 0}
    queue = [(hm, 0)]
    while queue:
        arr, t = queue.pop()
        for gid in table.gen_ids:
            new = table.conjugate_set(arr, gid)
            key = new.tobytes()
            if key not in seen:
                tt = table.mult(t, gid)
                if key == target:
                    return table.perm(tt)
                seen[key] = tt
                queue.append((new, tt))
    return None
