"""Finite fields GF(p^f), exact matrices, subspaces and bilinear-form geometry.

Vectors are rows; the form attached to a FormedSpace is evaluated as
B(x, y) = x G y^T for the Gram matrix G.  Field elements are encoded as
integers in [0, q) whose base-p digits are the polynomial coefficients
in the residue ring F_p[t]/(modulus).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError
from .numth import is_prime

__all__ = [
    "Field",
    "GF",
    "FqMatrix",
    "FormedSpace",
    "Subspace",
    "PairProfile",
    "standard_symplectic",
    "minus_type_symmetric",
    "perp",
    "radical",
    "symplectic_basis",
    "hyperbolic_complement",
    "pair_profile",
    "sp_generators",
    "reflection",
]

# Lexicographically smallest monic irreducible polynomials, ascending
# coefficients without the leading 1, indexed by (p, f).  Pinned here so
# field arithmetic is stable even if the search below ever changes.
_IRREDUCIBLE = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (2, 7): (1, 1, 0, 0, 0, 0, 0),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0),
    (3, 2): (1, 0),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 0),
    (3, 5): (1, 2, 0, 0, 0),
    (3, 6): (2, 2, 1, 0, 2, 0),
    (5, 2): (2, 0),
    (5, 3): (1, 1, 0),
    (7, 2): (3, 0),
    (7, 3): (2, 0, 0),
    (11, 2): (7, 0),
    (13, 2): (2, 0),
}

_FIELD_ORDER_CAP = 3**10


def _poly_is_irreducible(coeffs, p):
    """Irreducibility of a monic polynomial over GF(p) by root/gcd-free
    brute force: test divisibility by every monic polynomial of degree
    <= deg/2.  Only used on tiny inputs."""
    f = len(coeffs)

    def poly_mod(a, b):
        a = list(a)
        db = len(b) - 1
        while len(a) - 1 >= db and any(a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) - 1 < db:
                break
            shift = len(a) - 1 - db
            factor = a[-1] * pow(b[-1], -1, p) % p
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - factor * c) % p
        while a and a[-1] == 0:
            a.pop()
        return a

    full = list(coeffs) + [1]
    for d in range(1, f // 2 + 1):
        for idx in range(p**d):
            div = []
            k = idx
            for _ in range(d):
                div.append(k % p)
                k //= p
            div.append(1)
            if not poly_mod(full, div):
                return False
    return True


def _find_modulus(p, f):
    if f == 1:
        return ()
    if (p, f) in _IRREDUCIBLE:
        return _IRREDUCIBLE[(p, f)]
    for idx in range(p**f):
        coeffs = []
        k = idx
        for _ in range(f):
            coeffs.append(k % p)
            k //= p
        if _poly_is_irreducible(tuple(coeffs), p):
            return tuple(coeffs)
    raise ArithmeticError("no irreducible polynomial found")


class Field:
    """GF(p^f) with tabulated arithmetic.

    Elements are plain ints in [0, q).  The prime subfield embeds as
    0..p-1; the class is hashable and fields of equal (p, f) compare
    equal (the modulus is deterministic).
    """

    def __init__(self, q: int):
        p, f = _split_prime_power(q)
        if q > _FIELD_ORDER_CAP:
            raise PreconditionError(f"field order {q} beyond supported cap {_FIELD_ORDER_CAP}")
        self.p = p
        self.f = f
        self.q = q
        self.modulus = _find_modulus(p, f)
        self._mul = None
        self._inv = None
        if q <= 2048:
            self._build_tables()

    def _poly_mul(self, a: int, b: int) -> int:
        p, f = self.p, self.f
        da = [(a // p**i) % p for i in range(f)]
        db = [(b // p**i) % p for i in range(f)]
        prod = [0] * (2 * f - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce modulo the monic modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(self.modulus):
                    prod[k - f + i] = (prod[k - f + i] - c * m) % p
        return sum(c * p**i for i, c in enumerate(prod[:f]))

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._poly_mul(a, b) if self.f > 1 else a * b % self.p
                mul[a][b] = v
                mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._mul = mul
        self._inv = inv

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.f):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.f == 1:
            return -a % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.f):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._poly_mul(a, b) if self.f > 1 else a * b % self.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        if self._inv is not None:
            return self._inv[a]
        return self.power(a, self.q - 2)

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def primitive_element(self) -> int:
        for a in range(1, self.q):
            seen = {1}
            x = a
            while x != 1:
                seen.add(x)
                x = self.mul(x, a)
            if len(seen) == self.q - 1:
                return a
        raise ArithmeticError("no generator found")

    def elements(self):
        return range(self.q)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.power(a, (self.q - 1) // 2) == 1

    def smallest_nonsquare(self) -> int:
        if self.p == 2:
            raise PreconditionError("every element is a square in characteristic 2")
        for a in range(2, self.q):
            if not self.is_square(a):
                return a
        raise ArithmeticError("unreachable")

    def __eq__(self, other):
        return isinstance(other, Field) and self.q == other.q

    def __hash__(self):
        return hash(("Field", self.q))

    def __repr__(self):
        return f"Field({self.q})"


def _split_prime_power(q):
    if q < 2:
        raise PreconditionError("field order must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1 or not is_prime(p):
                raise PreconditionError(f"{q} is not a prime power")
            return p, f
    raise PreconditionError(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    return Field(q)


class FqMatrix:
    """Immutable matrix over a Field; rows is a tuple of row tuples."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(field, n):
        return FqMatrix(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(field, m, n):
        return FqMatrix(field, [[0] * n for _ in range(m)])

    def __eq__(self, other):
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def __repr__(self):
        return f"FqMatrix(GF({self.field.q}), {list(map(list, self.rows))})"

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        F = self.field
        out = []
        for row in self.rows:
            new = [0] * other.ncols
            for k, a in enumerate(row):
                if a:
                    orow = other.rows[k]
                    for j, b in enumerate(orow):
                        if b:
                            new[j] = F.add(new[j], F.mul(a, b))
            out.append(new)
        return FqMatrix(F, out)

    def transpose(self):
        return FqMatrix(self.field, list(zip(*self.rows))) if self.rows else self

    def scale(self, c):
        F = self.field
        return FqMatrix(F, [[F.mul(c, a) for a in row] for row in self.rows])

    def neg(self):
        F = self.field
        return FqMatrix(F, [[F.neg(a) for a in row] for row in self.rows])

    def augment_rows(self, other):
        return FqMatrix(self.field, self.rows + other.rows)

    def apply(self, vec):
        """Row vector times matrix."""
        F = self.field
        out = [0] * self.ncols
        for a, row in zip(vec, self.rows):
            if a:
                for j, b in enumerate(row):
                    if b:
                        out[j] = F.add(out[j], F.mul(a, b))
        return tuple(out)

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, a) for a in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return FqMatrix(F, rows), pivots

    def rank(self):
        _, pivots = self.rref()
        return len(pivots)

    def row_space_basis(self):
        reduced, pivots = self.rref()
        return FqMatrix(self.field, reduced.rows[: len(pivots)])

    def left_nullspace_of_columns(self):
        """Basis of {x : x * self = 0} as matrix rows."""
        F = self.field
        reduced, pivots = self.transpose().rref()
        # solutions of self^T y^T = 0 read off the rref of self^T
        n = self.nrows
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for j in free:
            v = [0] * n
            v[j] = 1
            for i, pc in enumerate(pivots):
                v[pc] = F.neg(reduced.rows[i][j])
            basis.append(v)
        return FqMatrix(F, basis) if basis else FqMatrix(F, [])

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("not square")
        F = self.field
        n = self.nrows
        aug = FqMatrix(F, [list(r) + [1 if i == j else 0 for j in range(n)]
                           for i, r in enumerate(self.rows)])
        reduced, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return FqMatrix(F, [row[n:] for row in reduced.rows])

    def kron(self, other):
        """Kronecker product, same field."""
        F = self.field
        out = []
        for arow in self.rows:
            for brow in other.rows:
                out.append([F.mul(a, b) for a in arow for b in brow])
        return FqMatrix(F, out)


KIND_ALTERNATING = "alternating"
KIND_SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class FormedSpace:
    """Ambient vector space with a fixed bilinear form."""

    field: Field
    dim: int
    gram: FqMatrix
    kind: str

    def __post_init__(self):
        F = self.field
        g = self.gram
        if g.nrows != self.dim or g.ncols != self.dim:
            raise ValueError("gram dimension mismatch")
        if self.kind == KIND_ALTERNATING:
            for i in range(self.dim):
                if g.rows[i][i] != 0:
                    raise ValueError("alternating gram must have zero diagonal")
                for j in range(self.dim):
                    if g.rows[i][j] != F.neg(g.rows[j][i]):
                        raise ValueError("alternating gram must be antisymmetric")
        elif self.kind == KIND_SYMMETRIC:
            for i in range(self.dim):
                for j in range(self.dim):
                    if g.rows[i][j] != g.rows[j][i]:
                        raise ValueError("symmetric gram must be symmetric")
        else:
            raise ValueError(f"unknown form kind {self.kind!r}")

    def form(self, x, y):
        F = self.field
        out = 0
        for a, row in zip(x, self.gram.rows):
            if a:
                for b, g in zip(y, row):
                    if b and g:
                        out = F.add(out, F.mul(a, F.mul(b, g)))
        return out

    def is_nondegenerate(self):
        return self.gram.rank() == self.dim

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.dim))


def standard_symplectic(n: int, field: Field) -> FormedSpace:
    """Dimension-2n alternating space pairing e_i with f_i.

    Basis order is e_1..e_n, f_1..f_n; Gram(e_i, f_i) = 1 and
    Gram(f_i, e_i) = -1 (equal in characteristic 2).
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    dim = 2 * n
    g = [[0] * dim for _ in range(dim)]
    for i in range(n):
        g[i][n + i] = 1
        g[n + i][i] = field.neg(1)
    return FormedSpace(field, dim, FqMatrix(field, g), KIND_ALTERNATING)


def minus_type_symmetric(m: int, field: Field) -> FormedSpace:
    """Symmetric form of minus type in dimension 2m, q odd.

    Built as m-1 hyperbolic planes plus the anisotropic plane with Gram
    diag(1, -delta) for the smallest nonsquare delta.
    """
    if field.p == 2:
        raise PreconditionError("q odd only")
    if m < 1:
        raise PreconditionError("need m >= 1")
    dim = 2 * m
    g = [[0] * dim for _ in range(dim)]
    for i in range(m - 1):
        g[2 * i][2 * i + 1] = 1
        g[2 * i + 1][2 * i] = 1
    delta = field.smallest_nonsquare()
    g[dim - 2][dim - 2] = 1
    g[dim - 1][dim - 1] = field.neg(delta)
    return FormedSpace(field, dim, FqMatrix(field, g), KIND_SYMMETRIC)


class Subspace:
    """Row space in reduced echelon form; the echelon basis is canonical,
    so equality and hashing are representation equality."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: FormedSpace, rows):
        self.ambient = ambient
        mat = rows if isinstance(rows, FqMatrix) else FqMatrix(ambient.field, rows)
        if mat.nrows and mat.ncols != ambient.dim:
            raise ValueError("vector length does not match ambient dimension")
        self.basis = mat.row_space_basis() if mat.nrows else FqMatrix(ambient.field, [])

    @property
    def dim(self):
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient.dim, self.ambient.kind, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient.dim})"

    def vectors(self):
        """All vectors of the subspace (q^dim of them), deterministic order."""
        F = self.ambient.field
        vecs = [tuple([0] * self.ambient.dim)]
        for row in self.basis.rows:
            new = []
            for c in range(1, F.q):
                scaled = tuple(F.mul(c, a) for a in row)
                for v in vecs:
                    new.append(tuple(F.add(a, b) for a, b in zip(v, scaled)))
            vecs.extend(new)
        return vecs

    def contains(self, vec):
        stacked = self.basis.augment_rows(FqMatrix(self.ambient.field, [vec]))
        return stacked.rank() == self.dim

    def sum(self, other):
        self._check_same_ambient(other)
        return Subspace(self.ambient, self.basis.augment_rows(other.basis))

    def intersection(self, other):
        self._check_same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient, [])
        stacked = self.basis.augment_rows(other.basis)
        combos = stacked.left_nullspace_of_columns()
        # a combo (a | b) with a*B1 + b*B2 = 0 yields the vector a*B1
        k = self.dim
        rows = [_lincomb(self.ambient.field, combo[:k], self.basis) for combo in combos.rows]
        return Subspace(self.ambient, rows)

    def image(self, mat: FqMatrix):
        """Image subspace under a linear map given as a matrix acting on rows."""
        if self.dim == 0:
            return Subspace(self.ambient, [])
        return Subspace(self.ambient, self.basis * mat)

    def restricted_gram(self):
        b = self.basis
        return b * self.ambient.gram * b.transpose()

    def to_text(self):
        return "\n".join(" ".join(str(a) for a in row) for row in self.basis.rows)

    @staticmethod
    def from_text(ambient: FormedSpace, text: str) -> "Subspace":
        rows = []
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            entries = [int(tok) for tok in line.split()]
            for a in entries:
                if not 0 <= a < ambient.field.q:
                    raise ValueError(f"entry {a} outside [0, {ambient.field.q})")
            rows.append(entries)
        return Subspace(ambient, rows)

    def _check_same_ambient(self, other):
        if self.ambient != other.ambient:
            raise PreconditionError("subspaces live in different ambient spaces")


def _lincomb(field, coeffs, basis: FqMatrix):
    out = [0] * basis.ncols
    for c, row in zip(coeffs, basis.rows):
        if c:
            for j, b in enumerate(row):
                if b:
                    out[j] = field.add(out[j], field.mul(c, b))
    return out


def perp(w: Subspace) -> Subspace:
    """Orthogonal complement with respect to the ambient form."""
    amb = w.ambient
    if not amb.is_nondegenerate():
        raise PreconditionError("perp is unsupported on a degenerate ambient space")
    if w.dim == 0:
        return Subspace(amb, FqMatrix.identity(amb.field, amb.dim).rows)
    constraints = amb.gram * w.basis.transpose()
    return Subspace(amb, constraints.left_nullspace_of_columns())


def radical(w: Subspace) -> Subspace:
    """Radical of the restricted form: w intersect w-perp, computed
    directly from the restricted Gram matrix so degenerate ambients are
    also fine."""
    if w.dim == 0:
        return w
    gram_w = w.restricted_gram()
    null = gram_w.left_nullspace_of_columns()
    rows = [_lincomb(w.ambient.field, combo, w.basis) for combo in null.rows]
    return Subspace(w.ambient, rows)


def symplectic_basis(w: Subspace):
    """Hyperbolic pairs (u_i, w_i) spanning w with B(u_i, w_j) = delta_ij.

    Requires the restriction of the alternating form to w to be
    nondegenerate (hence dim even).
    """
    amb = w.ambient
    if amb.kind != KIND_ALTERNATING:
        raise PreconditionError("symplectic_basis needs an alternating form")
    if w.dim % 2 == 1 or radical(w).dim != 0:
        raise PreconditionError("restriction must be nondegenerate of even dimension")
    F = amb.field
    remaining = [list(r) for r in w.basis.rows]
    pairs = []
    while remaining:
        u = remaining[0]
        partner = next(v for v in remaining[1:] if amb.form(u, v) != 0)
        c = F.inv(amb.form(u, partner))
        v = [F.mul(c, a) for a in partner]
        pairs.append((tuple(u), tuple(v)))
        new = []
        for x in remaining[1:]:
            if x is partner:
                continue
            bu = amb.form(x, v)
            bv = amb.form(x, u)
            # subtract the projection onto <u, v>
            adj = list(x)
            for j in range(len(adj)):
                adj[j] = F.add(adj[j], F.neg(F.mul(bu, u[j])))
                adj[j] = F.add(adj[j], F.mul(bv, v[j]))
            if any(adj):
                new.append(adj)
        # re-echelonise to keep vectors independent
        remaining = [list(r) for r in FqMatrix(F, new).row_space_basis().rows] if new else []
    return pairs


def hyperbolic_complement(w0: Subspace) -> Subspace:
    """A totally isotropic partner U0 with U0 + W0 a perpendicular sum of
    hyperbolic lines <u_i, w_i>."""
    amb = w0.ambient
    if not amb.is_nondegenerate():
        raise PreconditionError("ambient must be nondegenerate")
    if radical(w0).dim != w0.dim:
        raise PreconditionError("W0 must be totally isotropic")
    if w0.dim == 0:
        return Subspace(amb, [])
    F = amb.field
    ws = [list(r) for r in w0.basis.rows]
    ell = len(ws)
    us = []
    # pick dual vectors: B(w_j, u_i) = delta_ji, then clean u_i pairings
    pairing = w0.basis * amb.gram  # row j = w_j * G; B(w_j, x) = row_j . x
    for i in range(ell):
        target = [0] * ell
        target[i] = 1
        u = _solve_right(pairing, target)
        us.append(list(u))
    for i in range(ell):
        for j in range(i):
            c = amb.form(us[i], us[j])
            if c:
                # B(u_i - c*w_j... , u_j): subtract c * w_j scaled so the
                # hyperbolic pairing with w_j cancels the defect
                for k in range(len(us[i])):
                    us[i][k] = F.sub(us[i][k], F.mul(c, ws[j][k]))
    u0 = Subspace(amb, us)
    assert radical(u0).dim == u0.dim and u0.dim == ell
    return u0


def _solve_right(mat: FqMatrix, target):
    """One solution x (column) of mat . x = target, via rref."""
    F = mat.field
    aug = FqMatrix(F, [list(row) + [t] for row, t in zip(mat.rows, target)])
    reduced, pivots = aug.rref()
    if mat.ncols in pivots:
        raise ValueError("inconsistent system")
    x = [0] * mat.ncols
    for i, pc in enumerate(pivots):
        x[pc] = reduced.rows[i][-1]
    return tuple(x)


@dataclass(frozen=True)
class SectionProfile:
    dim: int
    rank: int
    radical_dim: int


@dataclass(frozen=True)
class PairProfile:
    """Isometry invariants of an ordered pair of subspaces."""

    dim_w1: int
    dim_w2: int
    dim_meet: int
    meet: SectionProfile
    w1_meet_w2perp: SectionProfile
    w2_meet_w1perp: SectionProfile


def _section_profile(sub: Subspace) -> SectionProfile:
    gram = sub.restricted_gram()
    return SectionProfile(sub.dim, gram.rank(), radical(sub).dim)


def pair_profile(w1: Subspace, w2: Subspace) -> PairProfile:
    if w1.ambient != w2.ambient:
        raise PreconditionError("pair_profile needs a common ambient space")
    meet = w1.intersection(w2)
    a = w1.intersection(perp(w2))
    b = w2.intersection(perp(w1))
    return PairProfile(
        dim_w1=w1.dim,
        dim_w2=w2.dim,
        dim_meet=meet.dim,
        meet=_section_profile(meet),
        w1_meet_w2perp=_section_profile(a),
        w2_meet_w1perp=_section_profile(b),
    )


def _transvection(space: FormedSpace, v, coeff=1):
    """x -> x + coeff * B(x, v) v as a matrix."""
    F = space.field
    n = space.dim
    rows = []
    for i in range(n):
        x = space.basis_vector(i)
        b = F.mul(coeff, space.form(x, v))
        row = list(x)
        if b:
            for j in range(n):
                row[j] = F.add(row[j], F.mul(b, v[j]))
        rows.append(row)
    return FqMatrix(F, rows)


def preserves_form(space: FormedSpace, mat: FqMatrix) -> bool:
    return mat * space.gram * mat.transpose() == space.gram


def sp_generators(n: int, field: Field):
    """A short generating list for Sp_2n(q) on the standard space.

    Every matrix satisfies M G M^T = G exactly; generation of the full
    group is exercised by the order checks in the test suite.
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    space = standard_symplectic(n, field)
    F = field
    dim = 2 * n
    gens = []

    e1 = space.basis_vector(0)
    gens.append(_transvection(space, e1))

    if n >= 2:
        # mixing transvection in direction e_1 + f_2
        v = list(e1)
        v[n + 1] = 1
        gens.append(_transvection(space, tuple(v)))

    if F.q > 3:
        w = F.primitive_element()
        rows = [list(space.basis_vector(i)) for i in range(dim)]
        rows[0] = [F.mul(w, a) for a in rows[0]]
        rows[n] = [F.mul(F.inv(w), a) for a in rows[n]]
        gens.append(FqMatrix(F, rows))

    # long cycle e_1 -> e_2 -> ... -> e_n -> f_1 -> ... -> f_n -> -e_1;
    # its n-th power maps e_1 to f_1, making a second plane transvection
    # redundant
    rows = [[0] * dim for _ in range(dim)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
        rows[n + i][n + i + 1] = 1
    rows[n - 1][n] = 1
    neg1 = F.neg(1)
    rows[dim - 1][0] = neg1
    cyc = FqMatrix(F, rows)
    gens.append(cyc)

    for g in gens:
        if not preserves_form(space, g):
            raise AssertionError("generator does not preserve the form")
    return gens


def reflection(space: FormedSpace, v) -> FqMatrix:
    """Orthogonal reflection in a nonsingular vector (q odd, symmetric form)."""
    if space.kind != KIND_SYMMETRIC or space.field.p == 2:
        raise PreconditionError("reflections need a symmetric form in odd characteristic")
    F = space.field
    bvv = space.form(v, v)
    if bvv == 0:
        raise PreconditionError("reflection vector must be nonsingular")
    c = F.mul(2 % F.p, F.inv(bvv))
    n = space.dim
    rows = []
    for i in range(n):
        x = space.basis_vector(i)
        b = F.mul(c, space.form(x, v))
        row = list(x)
        for j in range(n):
            row[j] = F.sub(row[j], F.mul(b, v[j]))
        rows.append(row)
    mat = FqMatrix(F, rows)
    if not preserves_form(space, mat):
        raise AssertionError("reflection failed to preserve the form")
    return mat
