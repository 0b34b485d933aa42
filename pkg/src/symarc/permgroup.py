"""Permutation groups: stabilizer chains, orbits, actions, transporters.

Permutations act on the right: ``pt ** g`` is ``g.images[pt]`` and the
product ``g * h`` means "g then h".  The stabilizer-chain construction is
the deterministic Schreier-Sims algorithm, optionally preceded by a
seeded product-replacement pre-pass on large degrees; runs are
bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from random import Random

import numpy as np

from .errors import PreconditionError, ResourceLimitError

__all__ = [
    "Permutation",
    "GroupHandle",
    "ActionMap",
    "PrimitivityReport",
    "coset_action",
    "pointwise_stabilizer",
    "transporter",
    "is_primitive",
    "perfect_residual",
    "soluble_radical",
]

DEFAULT_SEED = 0x5EED_BA5E_D15E_A5E5
_ELEMENT_SCAN_CAP = 20_000
_COSET_INDEX_CAP = 1_000_000


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a then b."""
    return b[a]


def _invert(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


class Permutation:
    """Immutable permutation of {0..degree-1} stored as an image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("images must be a flat sequence")
        check = np.sort(arr)
        if len(arr) and not np.array_equal(check, np.arange(len(arr), dtype=np.int32)):
            raise ValueError("not a permutation")
        arr.setflags(write=False)
        self.images = arr
        self._hash = hash(arr.tobytes())

    @classmethod
    def _raw(cls, arr: np.ndarray) -> "Permutation":
        self = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        arr.setflags(write=False)
        self.images = arr
        self._hash = hash(arr.tobytes())
        return self

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation._raw(np.arange(degree, dtype=np.int32))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, pt: int) -> int:
        return int(self.images[pt])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._raw(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation._raw(_invert(self.images))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        out = np.arange(self.degree, dtype=np.int32)
        base = self.images
        while n:
            if n & 1:
                out = _compose(out, base)
            base = _compose(base, base)
            n >>= 1
        return Permutation._raw(out)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree, dtype=np.int32)))

    def order(self) -> int:
        from math import lcm

        out = 1
        for c in self.cycles(all_cycles=True):
            out = lcm(out, len(c))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return self._hash

    def cycles(self, all_cycles=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            pt = int(self.images[start])
            while pt != start:
                seen[pt] = True
                cyc.append(pt)
                pt = int(self.images[pt])
            if len(cyc) > 1 or all_cycles:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()!r})"

    def to_cycle_string(self) -> str:
        """Disjoint cycles with 1-based points, e.g. "(1,2,3)(4,5)"."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    @staticmethod
    def from_cycle_string(text: str, degree: int | None = None) -> "Permutation":
        text = text.strip()
        if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\)\s*)*|\(\)", text):
            raise ValueError(f"bad cycle string {text!r}")
        cycles = []
        maxpt = 0
        for grp in re.findall(r"\(([^()]*)\)", text):
            if not grp.strip():
                continue
            pts = [int(tok) - 1 for tok in grp.split(",")]
            if min(pts) < 0:
                raise ValueError("points are 1-based")
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle {grp!r}")
            maxpt = max(maxpt, max(pts) + 1)
            cycles.append(pts)
        n = degree if degree is not None else maxpt
        if maxpt > n:
            raise ValueError("cycle exceeds requested degree")
        arr = np.arange(n, dtype=np.int32)
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                arr[pt] = cyc[(i + 1) % len(cyc)]
        return Permutation(arr)


class _Level:
    __slots__ = ("beta", "orbit")

    def __init__(self, beta):
        self.beta = beta
        self.orbit = {beta: None}  # pt -> (gen, inv_gen, parent), root -> None


class StabilizerChain:
    """Base and strong generating set, built deterministically.

    Strong generators are kept in one list with the depth of the base
    prefix each one fixes; the level-i orbit uses every generator of
    depth >= i.  Construction follows the classical bottom-up Sims
    verification: whenever a Schreier generator of level i fails to sift
    through the completed lower levels, its residue is adjoined and
    verification restarts at the residue's level.
    """

    def __init__(self, generators, degree, base_hint=(), seed=DEFAULT_SEED):
        self.degree = degree
        self.levels: list[_Level] = [_Level(b) for b in base_hint]
        self._gens: list[tuple[np.ndarray, np.ndarray, int]] = []  # (g, g^-1, depth)
        self._ident = np.arange(degree, dtype=np.int32)
        todo = [np.asarray(g.images, dtype=np.int32) for g in generators]
        if degree > 200 and todo:
            todo = todo + self._random_prepass(todo, seed)
        for g in todo:
            self._adjoin(g)
        i = len(self.levels) - 1
        while i >= 0:
            stop = self._verify_level(i)
            if stop is None:
                i -= 1
            else:
                i = stop
        self._order = 1
        for level in self.levels:
            self._order *= len(level.orbit)

    def _random_prepass(self, gens, seed):
        rng = Random(seed)
        pool = list(gens) * 2
        out = []
        for _ in range(12):
            i = rng.randrange(len(pool))
            j = rng.randrange(len(pool))
            pool[i] = _compose(pool[i], pool[j])
            if not np.array_equal(pool[i], self._ident):
                out.append(pool[i])
        return out

    def _depth_of(self, g) -> int:
        d = 0
        while d < len(self.levels) and g[self.levels[d].beta] == self.levels[d].beta:
            d += 1
        return d

    def _adjoin(self, g) -> int:
        """Register a non-identity strong generator; returns its depth."""
        if np.array_equal(g, self._ident):
            return -1
        d = self._depth_of(g)
        if d == len(self.levels):
            moved = int(np.nonzero(g != self._ident)[0][0])
            self.levels.append(_Level(moved))
        self._gens.append((g, _invert(g), d))
        for j in range(d + 1):
            self._extend_orbit(j)
        return d

    def _level_gens(self, i):
        return [(g, ginv) for g, ginv, d in self._gens if d >= i]

    def _extend_orbit(self, i):
        level = self.levels[i]
        gens = self._level_gens(i)
        frontier = list(level.orbit)
        while frontier:
            nxt = []
            for pt in frontier:
                for g, ginv in gens:
                    img = int(g[pt])
                    if img not in level.orbit:
                        level.orbit[img] = (g, ginv, pt)
                        nxt.append(img)
            frontier = nxt

    def _verify_level(self, i):
        """Sift all Schreier generators of level i through deeper levels.

        Returns None if complete, else the level at which a residue was
        adjoined (verification must restart there).
        """
        self._extend_orbit(i)
        level = self.levels[i]
        gens = self._level_gens(i)
        for pt in list(level.orbit):
            u = self._transversal(i, pt)
            for g, _ in gens:
                img = int(g[pt])
                sg = _compose(_compose(u, g), self._transversal_inv(i, img))
                residue, stop = self._sift_partial(sg, i + 1)
                if residue is not None:
                    d = self._adjoin(residue)
                    return d
        return None

    def _sift_partial(self, g, start):
        cur = g
        for j in range(start, len(self.levels)):
            level = self.levels[j]
            pt = int(cur[level.beta])
            if pt == level.beta:
                continue
            if pt not in level.orbit:
                return cur, j
            cur = _compose(cur, self._transversal_inv(j, pt))
        if np.array_equal(cur, self._ident):
            return None, len(self.levels)
        return cur, len(self.levels)

    def _transversal(self, i, pt) -> np.ndarray:
        """u with beta^u = pt."""
        level = self.levels[i]
        arr = None
        word = []
        while pt != level.beta:
            g, ginv, parent = level.orbit[pt]
            word.append(g)
            pt = parent
        for g in reversed(word):
            arr = g if arr is None else _compose(arr, g)
        return arr if arr is not None else self._ident

    def _transversal_inv(self, i, pt) -> np.ndarray:
        level = self.levels[i]
        arr = None
        while pt != level.beta:
            g, ginv, parent = level.orbit[pt]
            arr = ginv if arr is None else _compose(arr, ginv)
            pt = parent
        return arr if arr is not None else self._ident

    @property
    def order(self) -> int:
        return self._order

    def base(self):
        return [level.beta for level in self.levels]

    def sift(self, arr: np.ndarray):
        """Returns (residue, depth); residue is the identity iff arr is a member."""
        cur = np.asarray(arr, dtype=np.int32)
        for i, level in enumerate(self.levels):
            pt = int(cur[level.beta])
            if pt == level.beta:
                continue
            if pt not in level.orbit:
                return cur, i
            cur = _compose(cur, self._transversal_inv(i, pt))
        return cur, len(self.levels)

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        residue, _ = self.sift(perm.images)
        return bool(np.array_equal(residue, np.arange(self.degree, dtype=np.int32)))

    def strong_generators_below(self, k: int):
        """Generators of the pointwise stabilizer of the first k base points."""
        return [g for g, _inv, d in self._gens if d >= k]

    def random_element(self, rng: Random) -> np.ndarray:
        arr = np.arange(self.degree, dtype=np.int32)
        for i, level in enumerate(self.levels):
            pts = sorted(level.orbit)
            pt = pts[rng.randrange(len(pts))]
            arr = _compose(self._transversal(i, pt), arr)
        return arr

    def iter_elements(self):
        """All elements, depth-first over transversals; caller guards size."""
        ident = np.arange(self.degree, dtype=np.int32)

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for pt in sorted(self.levels[i].orbit):
                u = self._transversal(i, pt)
                yield from rec(i - 1, _compose(acc, u) if acc is not None else u)

        if not self.levels:
            yield ident
            return
        for arr in rec(len(self.levels) - 1, None):
            yield arr if arr is not None else ident


class GroupHandle:
    """A permutation group given by generators, with a lazily built chain.

    The handle is mutable only in the sense that the chain is created on
    first use; afterwards everything is read-only.
    """

    def __init__(self, degree, generators, name=None, provenance=None, seed=None):
        if seed is None:
            seed = DEFAULT_SEED
        self.degree = degree
        self.generators = []
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity():
                self.generators.append(g)
        self.name = name
        self.provenance = dict(provenance) if provenance else {}
        self.seed = seed
        self._chain = None
        self._hinted = {}

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree, seed=self.seed)
        return self._chain

    def chain_with_base(self, base_hint) -> StabilizerChain:
        key = tuple(base_hint)
        got = self._hinted.get(key)
        if got is None:
            got = StabilizerChain(self.generators, self.degree, base_hint=key, seed=self.seed)
            if len(self._hinted) > 32:
                self._hinted.clear()
            self._hinted[key] = got
        return got

    def order(self) -> int:
        return self.chain.order

    def contains(self, perm: Permutation) -> bool:
        return self.chain.contains(perm)

    def is_subgroup_of(self, other: "GroupHandle") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_trivial(self) -> bool:
        return not self.generators

    def orbit(self, pt: int) -> list[int]:
        seen = {pt}
        frontier = [pt]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    img = int(g.images[p])
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            orb = self.orbit(min(left))
            out.append(orb)
            left -= set(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def subgroup(self, generators, name=None) -> "GroupHandle":
        return GroupHandle(self.degree, generators, name=name, seed=self.seed)

    def random_element(self, rng: Random) -> Permutation:
        return Permutation._raw(self.chain.random_element(rng))

    def elements(self, cap=_ELEMENT_SCAN_CAP) -> list[Permutation]:
        n = self.order()
        if n > cap:
            raise ResourceLimitError(
                f"group order {n} exceeds the element scan cap {cap}",
                advice="raise the cap explicitly if this size is intended",
            )
        return [Permutation._raw(a) for a in self.chain.iter_elements()]

    def conjugate(self, g: Permutation) -> "GroupHandle":
        ginv = g.inverse()
        return GroupHandle(self.degree, [ginv * h * g for h in self.generators], seed=self.seed)

    def restricted_to(self, points) -> "GroupHandle":
        """Action on an invariant point set, renumbered by sorted position."""
        points = sorted(points)
        pos = {p: i for i, p in enumerate(points)}
        gens = []
        for g in self.generators:
            try:
                gens.append(Permutation([pos[int(g.images[p])] for p in points]))
            except KeyError:
                raise PreconditionError("point set is not invariant") from None
        return GroupHandle(len(points), gens, seed=self.seed)

    def to_text(self) -> str:
        return "\n".join(g.to_cycle_string() for g in self.generators) or "()"

    @staticmethod
    def from_text(text: str, degree: int) -> "GroupHandle":
        gens = []
        for line in text.strip().splitlines():
            line = line.strip()
            if line:
                gens.append(Permutation.from_cycle_string(line, degree))
        return GroupHandle(degree, gens)

    def __repr__(self):
        label = self.name or f"degree {self.degree}, {len(self.generators)} gens"
        return f"GroupHandle({label})"


def pointwise_stabilizer(g: GroupHandle, points) -> GroupHandle:
    """Stabilizer of a point tuple, by base change."""
    pts = tuple(points)
    for p in pts:
        if not 0 <= p < g.degree:
            raise PreconditionError("point outside the domain")
    chain = g.chain_with_base(pts)
    gens = [Permutation._raw(a) for a in chain.strong_generators_below(len(pts))]
    return g.subgroup(gens)


def transporter(g: GroupHandle, a, b) -> Permutation | None:
    """Some element mapping the tuple a to the tuple b pointwise, or None."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise PreconditionError("tuples must have equal length")
    if not a:
        return Permutation.identity(g.degree)
    chain = g.chain_with_base(a)
    targets = list(b)
    acc = None
    for i in range(len(a)):
        level = chain.levels[i]
        want = targets[i]
        if want not in level.orbit:
            return None
        u = chain._transversal(i, want)
        uinv = chain._transversal_inv(i, want)
        for j in range(i + 1, len(a)):
            targets[j] = int(uinv[targets[j]])
        acc = u if acc is None else _compose(u, acc)
    return Permutation._raw(acc if acc is not None else np.arange(g.degree, dtype=np.int32))


@dataclass
class ActionMap:
    """Homomorphism data for an induced action on a new point set."""

    source: GroupHandle
    degree: int
    gen_images: list
    labels: list = field(default_factory=list, repr=False)
    _mapper: object = field(default=None, repr=False)

    def image_handle(self) -> GroupHandle:
        return GroupHandle(self.degree, self.gen_images, seed=self.source.seed)

    def image_of(self, perm: Permutation) -> Permutation:
        """Image of an arbitrary source-group element."""
        if self._mapper is None:
            raise PreconditionError("this action cannot map non-generators")
        return self._mapper(perm)


def coset_action(g: GroupHandle, h: GroupHandle, index_cap=_COSET_INDEX_CAP) -> ActionMap:
    """Right-multiplication action of g on the right cosets of h.

    Point 0 is the coset h itself.  Each coset is identified by its unique
    representative minimising the images of h's base points, so the
    enumeration is canonical and independent of generator order.
    """
    if not h.is_subgroup_of(g):
        raise PreconditionError("h is not a subgroup of g")
    index = g.order() // h.order()
    if index > index_cap:
        raise ResourceLimitError(
            f"coset index {index} exceeds cap {index_cap}",
            advice="raise index_cap",
        )
    hchain = h.chain
    ident = np.arange(g.degree, dtype=np.int32)

    def canonical(arr):
        # the unique element of h*arr minimising base-point images in order
        cur = arr
        for i, level in enumerate(hchain.levels):
            best = min(level.orbit, key=lambda p: int(cur[p]))
            if best != level.beta:
                cur = _compose(hchain._transversal(i, best), cur)
        return cur

    rep0 = canonical(ident)
    index_of = {rep0.tobytes(): 0}
    reps = [rep0]
    gen_arrays = [np.asarray(p.images, dtype=np.int32) for p in g.generators]
    images = [[] for _ in gen_arrays]
    pos = 0
    while pos < len(reps):
        rep = reps[pos]
        for gi, garr in enumerate(gen_arrays):
            canon = canonical(_compose(rep, garr))
            key = canon.tobytes()
            j = index_of.get(key)
            if j is None:
                j = len(reps)
                if j >= index_cap:
                    raise ResourceLimitError("coset enumeration exceeded cap")
                index_of[key] = j
                reps.append(canon)
            images[gi].append(j)
        pos += 1
    n = len(reps)
    if n != index:
        raise AssertionError("coset enumeration mismatch")
    gen_images = [Permutation(img) for img in images]

    def mapper(perm: Permutation) -> Permutation:
        arr = np.asarray(perm.images, dtype=np.int32)
        out = [index_of[canonical(_compose(rep, arr)).tobytes()] for rep in reps]
        return Permutation(out)

    return ActionMap(
        source=g, degree=n, gen_images=gen_images,
        labels=[Permutation._raw(r) for r in reps], _mapper=mapper,
    )


@dataclass
class PrimitivityReport:
    primitive: bool
    blocks: list | None = None


def is_primitive(g: GroupHandle) -> PrimitivityReport:
    """Primitivity test with a minimal block system as witness."""
    if not g.is_transitive():
        raise PreconditionError("primitivity is defined for transitive groups")
    n = g.degree
    if n == 1:
        return PrimitivityReport(True)
    best = None
    for beta in range(1, n):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx
                return True
            return False

        union(0, beta)
        queue = [(0, beta)]
        while queue:
            x, y = queue.pop()
            for gen in g.generators:
                a, b = int(gen.images[x]), int(gen.images[y])
                if find(a) != find(b):
                    union(a, b)
                    queue.append((a, b))
        classes = {}
        for p in range(n):
            classes.setdefault(find(p), []).append(p)
        blocks = sorted(classes.values(), key=lambda blk: blk[0])
        size = len(blocks[0])
        if 1 < size < n:
            if best is None or size < len(best[0]):
                best = blocks
    if best is None:
        return PrimitivityReport(True)
    return PrimitivityReport(False, best)


def normal_closure(g: GroupHandle, seeds) -> GroupHandle:
    """Smallest normal subgroup of g containing the seed permutations."""
    gens: list[Permutation] = []
    closure = g.subgroup([])
    queue = [s for s in seeds if not s.is_identity()]
    while queue:
        s = queue.pop()
        if closure.contains(s):
            continue
        gens.append(s)
        closure = g.subgroup(gens)
        for c in g.generators:
            queue.append(c.inverse() * s * c)
    return closure


def derived_subgroup(g: GroupHandle) -> GroupHandle:
    comms = []
    for i, a in enumerate(g.generators):
        for b in g.generators[i + 1 :]:
            comms.append(a.inverse() * b.inverse() * a * b)
    return normal_closure(g, comms)


def derived_series(g: GroupHandle) -> list[GroupHandle]:
    series = [g]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            break
        series.append(nxt)
        if nxt.is_trivial():
            break
    return series


def is_soluble(g: GroupHandle) -> bool:
    return derived_series(g)[-1].is_trivial()


def perfect_residual(g: GroupHandle) -> GroupHandle:
    """Limit of the derived series: smallest normal subgroup with soluble
    quotient."""
    return derived_series(g)[-1]


def soluble_radical(g: GroupHandle, cap=_ELEMENT_SCAN_CAP) -> GroupHandle:
    """Largest soluble normal subgroup, by accumulating normal closures of
    prime-order elements whose closure is soluble."""
    n = g.order()
    if n > cap:
        raise ResourceLimitError(
            f"soluble_radical is implemented for order <= {cap}",
            advice="the scan needs every prime-order element",
        )
    radical_gens: list[Permutation] = []
    radical = g.subgroup([])
    for el in g.elements(cap=cap):
        if el.is_identity():
            continue
        o = el.order()
        # reduce to prime order
        p = min(k for k in range(2, o + 1) if o % k == 0)
        x = el ** (o // p)
        if x.is_identity() or radical.contains(x):
            continue
        nc = normal_closure(g, [x])
        if is_soluble(nc):
            radical_gens.extend(nc.generators)
            radical = g.subgroup(radical_gens)
    return radical
