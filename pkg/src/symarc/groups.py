"""Constructors for named permutation groups and exact classical order formulas.

Matrix groups are turned into permutation groups through their action on
nonzero or projective vectors of the natural module; every constructor
is deterministic, so identical specs give identical generator lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .errors import PreconditionError
from .linalg import (
    GF,
    Field,
    FqMatrix,
    minus_type_symmetric,
    preserves_form,
    reflection,
    sp_generators,
    standard_symplectic,
)
from .permgroup import GroupHandle, Permutation

__all__ = [
    "GroupSpec",
    "Sym",
    "Alt",
    "Cyc",
    "Dih",
    "Metacyclic",
    "Sp",
    "PSp",
    "GOminus",
    "PSL2",
    "PGL2",
    "DirectProduct",
    "Wreath",
    "ClassicalOrder",
    "construct",
    "classical_order",
    "base_and_top",
    "tensor_embed",
    "vector_action",
    "projective_action",
    "cn2_d8",
    "sp4_flag_group",
    "c4_tensor_stabilizer",
    "format_group_spec",
]

DEGREE_CAP = 10_000


# ---------------------------------------------------------------------------
# spec expression tree

class GroupSpec:
    pass


@dataclass(frozen=True)
class Sym(GroupSpec):
    n: int


@dataclass(frozen=True)
class Alt(GroupSpec):
    n: int


@dataclass(frozen=True)
class Cyc(GroupSpec):
    n: int


@dataclass(frozen=True)
class Dih(GroupSpec):
    n: int


@dataclass(frozen=True)
class Metacyclic(GroupSpec):
    n: int
    r: int
    m: int


@dataclass(frozen=True)
class Sp(GroupSpec):
    dim: int
    q: int


@dataclass(frozen=True)
class PSp(GroupSpec):
    dim: int
    q: int


@dataclass(frozen=True)
class GOminus(GroupSpec):
    dim: int
    q: int


@dataclass(frozen=True)
class PSL2(GroupSpec):
    q: int


@dataclass(frozen=True)
class PGL2(GroupSpec):
    q: int


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Wreath(GroupSpec):
    inner: GroupSpec
    k: int


def format_group_spec(spec: GroupSpec) -> str:
    if isinstance(spec, Sym):
        return f"S({spec.n})"
    if isinstance(spec, Alt):
        return f"A({spec.n})"
    if isinstance(spec, Cyc):
        return f"C({spec.n})"
    if isinstance(spec, Dih):
        return f"D({spec.n})"
    if isinstance(spec, Metacyclic):
        return f"MC({spec.n},{spec.r},{spec.m})"
    if isinstance(spec, Sp):
        return f"Sp({spec.dim},{spec.q})"
    if isinstance(spec, PSp):
        return f"PSp({spec.dim},{spec.q})"
    if isinstance(spec, GOminus):
        return f"GO-({spec.dim},{spec.q})"
    if isinstance(spec, PSL2):
        return f"PSL2({spec.q})"
    if isinstance(spec, PGL2):
        return f"PGL2({spec.q})"
    if isinstance(spec, Wreath):
        return f"wr({format_group_spec(spec.inner)},{spec.k})"
    if isinstance(spec, DirectProduct):
        return "x(" + ",".join(format_group_spec(p) for p in spec.parts) + ")"
    raise PreconditionError(f"unknown spec {spec!r}")


# ---------------------------------------------------------------------------
# vector encodings and matrix-to-permutation conversion

def _vec_to_index(vec, q):
    idx = 0
    for c in reversed(vec):
        idx = idx * q + c
    return idx


def _index_to_vec(idx, q, dim):
    out = []
    for _ in range(dim):
        out.append(idx % q)
        idx //= q
    return tuple(out)


def _projective_rep(vec, field: Field):
    for c in vec:
        if c:
            if c == 1:
                return vec
            inv = field.inv(c)
            return tuple(field.mul(inv, a) for a in vec)
    raise ValueError("zero vector has no projective representative")


def vector_action(mats, field: Field, dim: int, cap=DEGREE_CAP) -> GroupHandle:
    """Permutation action of matrices on the q^dim - 1 nonzero row vectors."""
    q = field.q
    npts = q**dim - 1
    if npts > cap:
        raise PreconditionError(f"degree {npts} exceeds cap {cap}")
    gens = []
    for mat in mats:
        images = [0] * npts
        for i in range(npts):
            vec = _index_to_vec(i + 1, q, dim)
            images[i] = _vec_to_index(mat.apply(vec), q) - 1
        gens.append(Permutation(images))
    return GroupHandle(npts, gens)


def projective_action(mats, field: Field, dim: int, cap=DEGREE_CAP) -> GroupHandle:
    """Permutation action on projective points (1-spaces) of F^dim."""
    q = field.q
    reps = []
    seen = set()
    for i in range(1, q**dim):
        vec = _index_to_vec(i, q, dim)
        rep = _projective_rep(vec, field)
        key = _vec_to_index(rep, q)
        if key not in seen:
            seen.add(key)
            reps.append(rep)
    if len(reps) > cap:
        raise PreconditionError(f"degree {len(reps)} exceeds cap {cap}")
    pos = {_vec_to_index(r, q): i for i, r in enumerate(reps)}
    gens = []
    for mat in mats:
        images = [pos[_vec_to_index(_projective_rep(mat.apply(r), field), q)] for r in reps]
        gens.append(Permutation(images))
    handle = GroupHandle(len(reps), gens)
    handle.provenance["projective_points"] = reps
    return handle


# ---------------------------------------------------------------------------
# individual constructors

def _sym_gens(n):
    if n <= 1:
        return []
    if n == 2:
        return [Permutation([1, 0])]
    return [
        Permutation([1, 0] + list(range(2, n))),
        Permutation(list(range(1, n)) + [0]),
    ]


def _construct_sym(n):
    return GroupHandle(max(n, 1), _sym_gens(n), name=f"S{n}")


def _construct_alt(n):
    if n <= 2:
        return GroupHandle(max(n, 1), [], name=f"A{n}")
    gens = [Permutation([1, 2, 0] + list(range(3, n)))]
    if n > 3:
        if n % 2:
            gens.append(Permutation([0] * 0 + list(range(1, n)) + [0]))
        else:
            gens.append(Permutation([0] + list(range(2, n)) + [1]))
    return GroupHandle(n, gens, name=f"A{n}")


def _construct_cyc(n):
    return GroupHandle(n, [Permutation([(x + 1) % n for x in range(n)])], name=f"C{n}")


def _construct_dih(n):
    if n < 3:
        raise PreconditionError("dihedral constructor needs n >= 3")
    rot = Permutation([(x + 1) % n for x in range(n)])
    ref = Permutation([(-x) % n for x in range(n)])
    return GroupHandle(n, [rot, ref], name=f"D{n}")


def _construct_metacyclic(n, r, m):
    if n < 2 or gcd(r, n) != 1:
        raise PreconditionError("metacyclic parameters need gcd(r, n) = 1 and n >= 2")
    order = 1
    x = r % n
    while x != 1:
        x = x * r % n
        order += 1
        if order > m:
            break
    if order != m or pow(r, m, n) != 1:
        raise PreconditionError(f"r = {r} must have multiplicative order {m} mod {n}")
    add = Permutation([(x + 1) % n for x in range(n)])
    mul = Permutation([x * r % n for x in range(n)])
    return GroupHandle(n, [add, mul], name=f"MC({n},{r},{m})")


def _construct_sp(dim, q, cap):
    if dim % 2 or dim < 2:
        raise PreconditionError("Sp needs even dimension >= 2")
    field = GF(q)
    mats = sp_generators(dim // 2, field)
    return vector_action(mats, field, dim, cap=cap)


def _construct_psp(dim, q, cap):
    if dim % 2 or dim < 2:
        raise PreconditionError("PSp needs even dimension >= 2")
    field = GF(q)
    mats = sp_generators(dim // 2, field)
    return projective_action(mats, field, dim, cap=cap)


def _go_minus_matrices(dim, q):
    """Reflection generators for the full minus-type orthogonal group,
    collected until the order formula is met."""
    if dim % 2 or dim < 4:
        raise PreconditionError("GO- constructor needs even dimension >= 4")
    field = GF(q)
    if field.p == 2:
        raise PreconditionError("GO- constructor is for odd q")
    m = dim // 2
    space = minus_type_symmetric(m, field)
    target = classical_order("GO-", dim, q).value
    mats = []
    handle = None
    for i in range(1, q**dim):
        vec = _index_to_vec(i, q, dim)
        if space.form(vec, vec) == 0:
            continue
        mats.append(reflection(space, vec))
        if len(mats) >= 2:
            handle = vector_action(mats, field, dim)
            if handle.order() == target:
                return space, mats
    raise ArithmeticError("reflections did not reach the expected order")


def _construct_go_minus(dim, q, cap):
    field = GF(q)
    space, mats = _go_minus_matrices(dim, q)
    handle = vector_action(mats, field, dim, cap=cap)
    handle.provenance["form_space"] = space
    handle.provenance["matrices"] = mats
    return handle


def _psl2_maps(q, squares_only):
    field = GF(q)
    inf = q
    pts = list(range(q + 1))

    def to_perm(fn):
        return Permutation([fn(z) for z in pts])

    t = to_perm(lambda z: field.add(z, 1) if z != inf else inf)
    w = field.primitive_element()
    a = field.mul(w, w) if squares_only else w
    mul = to_perm(lambda z: field.mul(a, z) if z != inf else inf)

    def inv_map(z):
        if z == inf:
            return 0
        if z == 0:
            return inf
        return field.neg(field.inv(z))

    i = to_perm(inv_map)
    return [t, mul, i]


def _construct_psl2(q):
    if q < 4:
        if q < 2:
            raise PreconditionError("PSL2 needs a prime power q >= 2")
    return GroupHandle(q + 1, _psl2_maps(q, squares_only=True), name=f"PSL2({q})")


def _construct_pgl2(q):
    return GroupHandle(q + 1, _psl2_maps(q, squares_only=False), name=f"PGL2({q})")


def _direct_product(handles):
    total = sum(h.degree for h in handles)
    gens = []
    offset = 0
    for h in handles:
        for g in h.generators:
            images = list(range(total))
            for p in range(h.degree):
                images[offset + p] = offset + int(g.images[p])
            gens.append(Permutation(images))
        offset += h.degree
    out = GroupHandle(total, gens)
    out.provenance["direct_factors"] = [(h, h.degree) for h in handles]
    return out


def _construct_wreath(inner: GroupHandle, k: int, cap):
    d = inner.degree
    total = d * k
    if total > cap:
        raise PreconditionError(f"degree {total} exceeds cap {cap}")
    gens = []
    for g in inner.generators:
        images = list(range(total))
        for p in range(d):
            images[p] = int(g.images[p])
        gens.append(Permutation(images))
    # top group S_k permuting the blocks
    for top in _sym_gens(k):
        images = [0] * total
        for b in range(k):
            nb = int(top.images[b])
            for p in range(d):
                images[b * d + p] = nb * d + p
        gens.append(Permutation(images))
    out = GroupHandle(total, gens)
    out.provenance["wreath"] = {
        "component": inner,
        "k": k,
        "block_size": d,
        "blocks": [list(range(b * d, (b + 1) * d)) for b in range(k)],
    }
    return out


def construct(spec: GroupSpec, cap=DEGREE_CAP) -> GroupHandle:
    """Build the permutation group described by a spec tree."""
    if isinstance(spec, Sym):
        return _construct_sym(spec.n)
    if isinstance(spec, Alt):
        return _construct_alt(spec.n)
    if isinstance(spec, Cyc):
        return _construct_cyc(spec.n)
    if isinstance(spec, Dih):
        return _construct_dih(spec.n)
    if isinstance(spec, Metacyclic):
        return _construct_metacyclic(spec.n, spec.r, spec.m)
    if isinstance(spec, Sp):
        return _construct_sp(spec.dim, spec.q, cap)
    if isinstance(spec, PSp):
        return _construct_psp(spec.dim, spec.q, cap)
    if isinstance(spec, GOminus):
        return _construct_go_minus(spec.dim, spec.q, cap)
    if isinstance(spec, PSL2):
        return _construct_psl2(spec.q)
    if isinstance(spec, PGL2):
        return _construct_pgl2(spec.q)
    if isinstance(spec, DirectProduct):
        return _direct_product([construct(p, cap) for p in spec.parts])
    if isinstance(spec, Wreath):
        return _construct_wreath(construct(spec.inner, cap), spec.k, cap)
    raise PreconditionError(f"unknown group spec {spec!r}")


def base_and_top(w: GroupHandle):
    """Base group and defining block partition of a wreath-built handle."""
    info = w.provenance.get("wreath")
    if info is None:
        raise PreconditionError("handle does not carry wreath provenance")
    inner = info["component"]
    k = info["k"]
    d = info["block_size"]
    total = w.degree
    gens = []
    for b in range(k):
        for g in inner.generators:
            images = list(range(total))
            for p in range(d):
                images[b * d + p] = b * d + int(g.images[p])
            gens.append(Permutation(images))
    base = GroupHandle(total, gens, name="wreath base")
    return base, info["blocks"]


# ---------------------------------------------------------------------------
# exact classical orders

@dataclass(frozen=True)
class ClassicalOrder:
    family: str
    n: int
    q: int
    value: int


def _prod(vals):
    out = 1
    for v in vals:
        out *= v
    return out


def classical_order(family: str, n: int, q: int) -> ClassicalOrder:
    """Exact order of a classical (or small exceptional) group.

    n is the natural matrix dimension; for Sz/G2/2G2/F4 it is ignored.
    """
    d2 = gcd(2, q - 1)

    def gl():
        return _prod(q**n - q**i for i in range(n))

    def sp():
        m = n // 2
        return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))

    def gu():
        return q ** (n * (n - 1) // 2) * _prod(q**i - (-1) ** i for i in range(1, n + 1))

    def ortho_even(eps):
        m = n // 2
        return q ** (m * (m - 1)) * (q**m - eps) * _prod(
            q ** (2 * i) - 1 for i in range(1, m)
        )

    def ortho_odd():
        m = (n - 1) // 2
        return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))

    fam = family
    if fam == "GL":
        v = gl()
    elif fam == "SL":
        v = gl() // (q - 1)
    elif fam in ("PSL", "PSL2"):
        nn = 2 if fam == "PSL2" else n
        v = _prod(q**nn - q**i for i in range(nn)) // (q - 1) // gcd(nn, q - 1)
    elif fam == "PGL":
        v = gl() // (q - 1)
    elif fam == "Sp":
        v = sp()
    elif fam == "PSp":
        v = sp() // d2
    elif fam == "GU":
        v = gu()
    elif fam == "SU":
        v = gu() // (q + 1)
    elif fam == "PSU":
        v = gu() // (q + 1) // gcd(n, q + 1)
    elif fam in ("GO+", "GO-"):
        eps = 1 if fam.endswith("+") else -1
        v = 2 * ortho_even(eps) if q % 2 else 2 * ortho_even(eps)
    elif fam in ("SO+", "SO-"):
        eps = 1 if fam.endswith("+") else -1
        v = ortho_even(eps) if q % 2 else 2 * ortho_even(eps)
    elif fam in ("Omega+", "Omega-"):
        eps = 1 if fam.endswith("+") else -1
        v = ortho_even(eps) // d2
    elif fam in ("POmega+", "POmega-"):
        eps = 1 if fam.endswith("+") else -1
        v = ortho_even(eps) // gcd(4, q ** (n // 2) - eps)
    elif fam == "GO":
        v = 2 * ortho_odd() if q % 2 else sp()
    elif fam == "SO":
        v = ortho_odd()
    elif fam in ("Omega", "POmega"):
        v = ortho_odd() // d2
    elif fam == "Sz":
        v = q**2 * (q**2 + 1) * (q - 1)
    elif fam == "G2":
        v = q**6 * (q**6 - 1) * (q**2 - 1)
    elif fam == "2G2":
        v = q**3 * (q**3 + 1) * (q - 1)
    elif fam == "F4":
        v = q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1)
    elif fam == "Alt":
        v = factorial(n) // 2 if n > 2 else 1
    elif fam == "Sym":
        v = factorial(n)
    else:
        raise PreconditionError(f"unknown classical family {family!r}")
    return ClassicalOrder(family, n, q, v)


# ---------------------------------------------------------------------------
# tensor embeddings and the dimension-8 decomposition stabilizer

def tensor_embed(a_mats, a_dim, b_mats, b_dim, field: Field, cap=DEGREE_CAP) -> GroupHandle:
    """Projective permutation image of <g (x) 1, 1 (x) h>."""
    ia = FqMatrix.identity(field, a_dim)
    ib = FqMatrix.identity(field, b_dim)
    mats = [g.kron(ib) for g in a_mats] + [ia.kron(h) for h in b_mats]
    return projective_action(mats, field, a_dim * b_dim, cap=cap)


def _similitude_minus_one(space, field):
    """A matrix scaling the symmetric Gram by -1, block by block."""
    dim = space.dim
    g = space.gram
    rows = [[0] * dim for _ in range(dim)]
    i = 0
    while i < dim:
        if g.rows[i][i] == 0:
            # hyperbolic block [[0,1],[1,0]]: diag(1, -1) works
            rows[i][i] = 1
            rows[i + 1][i + 1] = field.neg(1)
        else:
            # anisotropic diagonal block diag(a, b): brute-force a 2x2 c
            block = FqMatrix(field, [[g.rows[i][i], 0], [0, g.rows[i + 1][i + 1]]])
            want = block.neg()
            found = None
            q = field.q
            for code in range(q**4):
                c = code
                entries = []
                for _ in range(4):
                    entries.append(c % q)
                    c //= q
                cand = FqMatrix(field, [entries[:2], entries[2:]])
                if cand * block * cand.transpose() == want:
                    found = cand
                    break
            if found is None:
                raise ArithmeticError("no similitude with multiplier -1 on this block")
            rows[i][i], rows[i][i + 1] = found.rows[0]
            rows[i + 1][i], rows[i + 1][i + 1] = found.rows[1]
        i += 2
    mat = FqMatrix(field, rows)
    if not (mat * space.gram * mat.transpose() == space.gram.neg()):
        raise AssertionError("similitude construction failed")
    return mat


def c4_tensor_stabilizer(q: int = 3, compress=True) -> GroupHandle:
    """The stabilizer of a (2 x 4)-dimensional tensor decomposition inside
    the projective symplectic group in dimension 8: the central product of
    the small symplectic and the full minus-type orthogonal group,
    extended by the simultaneous multiplier-(-1) similitude pair.

    Order is validated against 2 |PSp_2(q)| |PGO_4^-(q)| before returning.
    """
    field = GF(q)
    if field.p == 2:
        raise PreconditionError("odd q only")
    u_space = standard_symplectic(1, field)
    w_space, go_mats = _go_minus_matrices(4, q)
    sp_mats = sp_generators(1, field)

    delta_u = FqMatrix(field, [[1, 0], [0, field.neg(1)]])
    if not (delta_u * u_space.gram * delta_u.transpose() == u_space.gram.neg()):
        raise AssertionError("symplectic similitude failed")
    delta_w = _similitude_minus_one(w_space, field)

    big = standard_symplectic(4, field)  # only for the form check below
    mats = [g.kron(FqMatrix.identity(field, 4)) for g in sp_mats]
    mats += [FqMatrix.identity(field, 2).kron(h) for h in go_mats]
    mats.append(delta_u.kron(delta_w))

    # the tensor form B1 (x) B2 is alternating and nondegenerate; all the
    # generators preserve it exactly
    gram = u_space.gram.kron(w_space.gram)
    from .linalg import FormedSpace, KIND_ALTERNATING

    tensor_space = FormedSpace(field, 8, gram, KIND_ALTERNATING)
    for mat in mats:
        if not preserves_form(tensor_space, mat):
            raise AssertionError("tensor generator breaks the form")

    handle = projective_action(mats, field, 8, cap=DEGREE_CAP)
    expected = 2 * classical_order("PSp", 2, q).value * (
        classical_order("GO-", 4, q).value // 2
    )
    if compress:
        handle = faithful_orbit_restriction(handle)
    if handle.order() != expected:
        raise AssertionError(
            f"decomposition stabilizer order {handle.order()} != {expected}"
        )
    handle.name = f"(PSp2({q}) x PGO4-({q})).2"
    return handle


def faithful_orbit_restriction(handle: GroupHandle) -> GroupHandle:
    """Restrict to a union of orbits on which the action stays faithful,
    smallest orbits first."""
    full = handle.order()
    orbits = sorted(handle.orbits(), key=lambda o: (len(o), o[0]))
    chosen: list[int] = []
    for orb in orbits:
        chosen.extend(orb)
        restricted = handle.restricted_to(chosen)
        if restricted.order() == full:
            return restricted
    raise AssertionError("no faithful restriction found")


# ---------------------------------------------------------------------------
# the normaliser family C_n^2 : D_8 and the rank-2 flag geometry

def cn2_d8(n: int) -> GroupHandle:
    """C_n^2 : D_8 on n^2 points, with the dihedral part acting by
    (x, y) -> (-y, x) and (x, y) -> (y, x) on translation indices."""
    if n < 3:
        raise PreconditionError("need n >= 3")
    pts = [(x, y) for x in range(n) for y in range(n)]
    pos = {pt: i for i, pt in enumerate(pts)}

    def perm(fn):
        return Permutation([pos[fn(x, y)] for x, y in pts])

    t1 = perm(lambda x, y: ((x + 1) % n, y))
    t2 = perm(lambda x, y: (x, (y + 1) % n))
    b = perm(lambda x, y: ((-y) % n, x))
    c = perm(lambda x, y: (y, x))
    out = GroupHandle(n * n, [t1, t2, b, c], name=f"C{n}^2:D8")
    if out.order() != 8 * n * n:
        raise AssertionError("unexpected order for the D8 normaliser family")
    return out


def _isotropic_lines(space, field):
    """Totally isotropic 2-subspaces of a 4-dim symplectic space, as
    frozensets of projective point indices."""
    from .linalg import Subspace

    q = field.q
    reps = []
    seen = set()
    for i in range(1, q**4):
        vec = _index_to_vec(i, q, 4)
        rep = _projective_rep(vec, field)
        key = _vec_to_index(rep, q)
        if key not in seen:
            seen.add(key)
            reps.append(rep)
    pos = {r: i for i, r in enumerate(reps)}
    lines = set()
    for i, u in enumerate(reps):
        for v in reps[i + 1 :]:
            if space.form(u, v) != 0:
                continue
            sub = Subspace(space, [u, v])
            pts = frozenset(
                pos[_projective_rep(w, field)]
                for w in sub.vectors()
                if any(w)
            )
            lines.add(pts)
    return reps, sorted(lines, key=sorted)


def sp4_flag_group(q: int = 2, with_duality: bool = True) -> GroupHandle:
    """Action of the 4-dimensional symplectic group on point-line flags of
    its rank-2 polar geometry, optionally extended by a duality (q even).
    """
    field = GF(q)
    space = standard_symplectic(2, field)
    reps, lines = _isotropic_lines(space, field)
    pos = {r: i for i, r in enumerate(reps)}
    flags = sorted(
        (p, li) for li, line in enumerate(lines) for p in sorted(line)
    )
    fpos = {f: i for i, f in enumerate(flags)}

    mats = sp_generators(2, field)
    gens = []
    line_index = {line: i for i, line in enumerate(lines)}
    for mat in mats:
        pt_img = [pos[_projective_rep(mat.apply(r), field)] for r in reps]
        ln_img = [line_index[frozenset(pt_img[p] for p in line)] for line in lines]
        gens.append(Permutation([fpos[(pt_img[p], ln_img[li])] for p, li in flags]))

    if with_duality:
        if field.p != 2:
            raise PreconditionError("the duality exists for even q only")
        delta = _find_duality(len(reps), lines)
        pt_to_line, line_to_pt = delta
        gens.append(
            Permutation([fpos[(line_to_pt[li], pt_to_line[p])] for p, li in flags])
        )
    return GroupHandle(len(flags), gens, name=f"Sp4({q}) flags" + ("+duality" if with_duality else ""))


def _find_duality(npoints, lines):
    """Backtracking search for an incidence-preserving swap of points and
    lines in the rank-2 geometry; deterministic first solution."""
    nlines = len(lines)
    point_lines = [[] for _ in range(npoints)]
    for li, line in enumerate(lines):
        for p in line:
            point_lines[p].append(li)
    line_pts = [sorted(line) for line in lines]

    pt_to_line = [-1] * npoints
    line_to_pt = [-1] * nlines
    used_lines = [False] * nlines
    used_pts = [False] * npoints

    def consistent(p, li):
        # incidence p in L  <=>  delta(L) in delta(p) must stay checkable:
        # for every already-mapped line M containing p, require
        # line_to_pt[M] in lines[li]; and for every mapped point x on the
        # image constraints the other direction
        for m in point_lines[p]:
            ip = line_to_pt[m]
            if ip != -1 and ip not in lines[li]:
                return False
        for x in line_pts[li]:
            # x will need pt_to_line[x] to contain ... checked when x maps
            pass
        return True

    def assign_line(li_src, p_img):
        # mapping line li_src -> point p_img
        for x in line_pts[li_src]:
            lm = pt_to_line[x]
            if lm != -1 and p_img not in lines[lm]:
                return False
        return True

    def backtrack(p):
        if p == npoints:
            # map remaining lines
            return all(line_to_pt[li] != -1 for li in range(nlines))
        for li in range(nlines):
            if used_lines[li] or not consistent(p, li):
                continue
            pt_to_line[p] = li
            used_lines[li] = True
            # propagate: any line all of whose points are mapped determines
            # its image point as the meet of the image lines; we instead
            # map lines greedily: a line m maps to a point y iff y lies on
            # exactly the images of m's points; try forced assignments
            forced = []
            ok = True
            for m in point_lines[p]:
                if line_to_pt[m] != -1:
                    continue
                if all(pt_to_line[x] != -1 for x in line_pts[m]):
                    cands = set(lines[pt_to_line[line_pts[m][0]]])
                    for x in line_pts[m][1:]:
                        cands &= lines[pt_to_line[x]]
                    cands = [y for y in cands if not used_pts[y]]
                    if len(cands) != 1:
                        ok = False
                        break
                    y = cands[0]
                    if not assign_line(m, y):
                        ok = False
                        break
                    line_to_pt[m] = y
                    used_pts[y] = True
                    forced.append((m, y))
            if ok and backtrack(p + 1):
                return True
            for m, y in forced:
                line_to_pt[m] = -1
                used_pts[y] = False
            pt_to_line[p] = -1
            used_lines[li] = False
        return False

    if not backtrack(0):
        raise ArithmeticError("no duality found")
    return pt_to_line, line_to_pt
