"""Matrices over Q(zeta_m) and finite matrix groups generated by closure.

The standard generator catalog covers the matrices used by the bundled case
studies at an odd prime p (conductor p^level) and at p = 2 (conductor 8):

  A       diagonal of successive p-th root powers diag(1, z, ..., z^(p-1))
  B       the cyclic shift permutation matrix (1 2 ... p)
  D       quadratic-exponent diagonal diag(z^-(i-1)^2)
  sigma   multiplication-by-k permutation i -> k(i-1)+1, sign-corrected to det 1
  tau     negation involution (2,p)(3,p-1)..., fixing 1
  F       diag(z8, z8^-1), the extra diagonal normalizer generator at p = 2
  H       rotation by pi/4 (entries 1/sqrt2), the second p = 2 generator
  zetaI   the scalar matrix z * I

Groups are built by breadth-first closure with a hard element cap; exceeding
the cap raises, it never truncates silently.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .cyclo import CycNum, ConductorMismatch, euler_phi
from .fingroup import FiniteGroup

DEFAULT_CAP = 2_000_000


class CapExceeded(RuntimeError):
    """Closure grew past the configured element cap."""


class CycMatrix:
    """Square matrix over Q(zeta_m), immutable and hashable."""

    __slots__ = ("dim", "m", "rows", "_hash")

    def __init__(self, dim: int, m: int, rows):
        self.dim = dim
        self.m = m
        self.rows = tuple(tuple(r) for r in rows)
        assert len(self.rows) == dim and all(len(r) == dim for r in self.rows)
        self._hash = None

    @staticmethod
    def identity(dim: int, m: int) -> "CycMatrix":
        one, zero = CycNum.one(m), CycNum.zero(m)
        return CycMatrix(dim, m, [[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @staticmethod
    def from_rows(m: int, rows) -> "CycMatrix":
        return CycMatrix(len(rows), m, rows)

    def __mul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.m != other.m:
            raise ConductorMismatch("matrix conductors differ: %d vs %d" % (self.m, other.m))
        assert self.dim == other.dim
        n = self.dim
        zero = CycNum.zero(self.m)
        out = []
        for i in range(n):
            acc = [zero] * n
            for k, x in enumerate(self.rows[i]):
                if x.is_zero:
                    continue
                brow = other.rows[k]
                for j in range(n):
                    y = brow[j]
                    if not y.is_zero:
                        acc[j] = acc[j] + x * y
            out.append(acc)
        return CycMatrix(n, self.m, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.m == other.m and self.rows == other.rows

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dim, self.m, self.rows))
            self._hash = h
        return h

    def scalar_mul(self, c: CycNum) -> "CycMatrix":
        return CycMatrix(self.dim, self.m, [[c * x for x in row] for row in self.rows])

    def conj_transpose(self) -> "CycMatrix":
        n = self.dim
        return CycMatrix(n, self.m, [[self.rows[j][i].conjugate() for j in range(n)] for i in range(n)])

    def transpose(self) -> "CycMatrix":
        n = self.dim
        return CycMatrix(n, self.m, [[self.rows[j][i] for j in range(n)] for i in range(n)])

    def trace(self) -> CycNum:
        t = CycNum.zero(self.m)
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def det(self) -> CycNum:
        # subset dynamic program over column sets, zero entries skipped
        n = self.dim
        prev = {0: CycNum.one(self.m)}
        for i in range(n):
            cur: dict[int, CycNum] = {}
            row = self.rows[i]
            for used, val in prev.items():
                for j in range(n):
                    bit = 1 << j
                    if used & bit or row[j].is_zero:
                        continue
                    term = val * row[j]
                    # sign: number of used columns above j
                    if bin(used >> (j + 1)).count("1") & 1:
                        term = -term
                    key = used | bit
                    if key in cur:
                        cur[key] = cur[key] + term
                    else:
                        cur[key] = term
            prev = cur
        full = (1 << n) - 1
        return prev.get(full, CycNum.zero(self.m))

    def is_identity(self) -> bool:
        return self == CycMatrix.identity(self.dim, self.m)

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        for i in range(self.dim):
            for j in range(self.dim):
                if i == j:
                    if self.rows[i][j] != d:
                        return False
                elif not self.rows[i][j].is_zero:
                    return False
        return True

    def is_unitary(self) -> bool:
        return (self * self.conj_transpose()).is_identity()

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j].is_zero for i in range(self.dim) for j in range(self.dim) if i != j
        )

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and every column."""
        seen_cols = set()
        for row in self.rows:
            nz = [j for j, x in enumerate(row) if not x.is_zero]
            if len(nz) != 1:
                return False
            seen_cols.add(nz[0])
        return len(seen_cols) == self.dim

    def permutation_part(self):
        """For a monomial matrix, the map i -> j with entry (i, j) nonzero."""
        perm = []
        for row in self.rows:
            nz = [j for j, x in enumerate(row) if not x.is_zero]
            if len(nz) != 1:
                return None
            perm.append(nz[0])
        if len(set(perm)) != self.dim:
            return None
        return tuple(perm)

    def __pow__(self, n: int) -> "CycMatrix":
        if n < 0:
            raise ValueError("negative matrix powers unsupported; use group inverse")
        result = CycMatrix.identity(self.dim, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def lift(self, m2: int) -> "CycMatrix":
        return CycMatrix(self.dim, m2, [[x.lift(m2) for x in row] for row in self.rows])

    def __repr__(self) -> str:
        body = "; ".join(", ".join(repr(x) for x in row) for row in self.rows)
        return "CycMatrix(%d, m=%d, [%s])" % (self.dim, self.m, body)


# -- standard generator catalog -------------------------------------------


def _zeta_p(p: int, m: int) -> CycNum:
    assert m % p == 0
    return CycNum.zeta(m, m // p)


def legendre_symbol(k: int, p: int) -> int:
    s = pow(k % p, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


def std_matrix(p: int, which: str, k: int | None = None, conductor: int | None = None,
               det_one: bool = False) -> CycMatrix:
    """Standard generator matrices for the case studies at the prime p.

    det_one applies at p = 2 only and replaces A, B by i*A, i*B.
    sigma is returned sign-corrected so its determinant is 1 for every k.
    """
    if p == 2:
        m = conductor if conductor is not None else 8
        if m % 8 != 0:
            raise ValueError("p = 2 requires a conductor divisible by 8")
    else:
        m = conductor if conductor is not None else p
        if m % p != 0:
            raise ValueError("conductor %d not divisible by p = %d" % (m, p))
    zero, one = CycNum.zero(m), CycNum.one(m)
    z = _zeta_p(p, m)

    if which == "A":
        rows = [[z ** (i) if i == j else zero for j in range(p)] for i in range(p)]
        mat = CycMatrix(p, m, rows)
        if p == 2 and det_one:
            mat = mat.scalar_mul(CycNum.zeta(m, m // 4))
        return mat
    if which == "B":
        rows = [[one if j == (i + 1) % p else zero for j in range(p)] for i in range(p)]
        mat = CycMatrix(p, m, rows)
        if p == 2 and det_one:
            mat = mat.scalar_mul(CycNum.zeta(m, m // 4))
        return mat
    if which == "zetaI":
        return CycMatrix.identity(p, m).scalar_mul(z)
    if which == "D":
        if p == 2:
            raise ValueError("D is defined for odd p only")
        rows = [[z ** (-((i) ** 2) % p) if i == j else zero for j in range(p)] for i in range(p)]
        return CycMatrix(p, m, rows)
    if which == "sigma":
        if p == 2:
            raise ValueError("sigma is defined for odd p only")
        if k is None or not 1 <= k <= p - 1:
            raise ValueError("sigma requires 1 <= k <= p-1")
        # row i (0-based) maps to column k*i mod p
        rows = [[one if j == (k * i) % p else zero for j in range(p)] for i in range(p)]
        mat = CycMatrix(p, m, rows)
        if legendre_symbol(k, p) == -1:
            mat = mat.scalar_mul(-one)
        return mat
    if which == "tau":
        if p == 2:
            raise ValueError("tau is defined for odd p only")
        rows = [[one if j == (-i) % p else zero for j in range(p)] for i in range(p)]
        return CycMatrix(p, m, rows)
    if which == "F":
        if p != 2:
            raise ValueError("F exists at p = 2 only")
        z8 = CycNum.zeta(m, m // 8)
        return CycMatrix(2, m, [[z8, zero], [zero, z8 ** 7]])
    if which == "H":
        if p != 2:
            raise ValueError("H exists at p = 2 only")
        z8 = CycNum.zeta(m, m // 8)
        inv_sqrt2 = (z8 + z8 ** 7) * CycNum.rational(m, Fraction(1, 2))
        return CycMatrix(2, m, [[inv_sqrt2, -inv_sqrt2], [inv_sqrt2, inv_sqrt2]])
    raise ValueError("unknown standard matrix %r" % which)


def minus_identity(p: int, conductor: int | None = None) -> CycMatrix:
    m = conductor if conductor is not None else (8 if p == 2 else p)
    one = CycNum.one(m)
    return CycMatrix.identity(p, m).scalar_mul(-one)


# -- closure ----------------------------------------------------------------


def closure(gens, cap: int | None = None, expected: int | None = None) -> "MatrixGroup":
    """Breadth-first multiplicative closure of the generators.

    Element numbering is by discovery order with the identity first, which
    makes it deterministic for a fixed generator order.  If expected is given
    the cap defaults to twice it; a closure passing the cap raises CapExceeded.
    """
    gens = list(gens)
    assert gens, "need at least one generator"
    dim, m = gens[0].dim, gens[0].m
    for g in gens:
        if g.dim != dim or g.m != m:
            raise ConductorMismatch("generators disagree in dim or conductor")
    if cap is None:
        cap = 2 * expected if expected is not None else DEFAULT_CAP
    ident = CycMatrix.identity(dim, m)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(
                            "closure exceeded cap %d (dim %d, conductor %d)" % (cap, dim, m)
                        )
        frontier = new
    gen_idx = [index[g] for g in gens]
    return MatrixGroup(dim, m, elements, index, gen_idx)


class MatrixGroup(FiniteGroup):
    """A finite group of CycMatrix elements indexed by discovery order."""

    def __init__(self, dim: int, m: int, elements, index, generator_indices):
        self.dim = dim
        self.m = m
        self.elements = list(elements)
        self.index = dict(index)
        self.generator_indices = list(generator_indices)
        self.identity = self.index[CycMatrix.identity(dim, m)]
        self._mult_cache: dict[tuple[int, int], int] = {}
        self._inv_cache: dict[int, int] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        key = (i, j)
        v = self._mult_cache.get(key)
        if v is None:
            prod = self.elements[i] * self.elements[j]
            v = self.index.get(prod)
            assert v is not None, "product escaped the group; closure was incomplete"
            self._mult_cache[key] = v
        return v

    def inv(self, i: int) -> int:
        v = self._inv_cache.get(i)
        if v is None:
            cand = self.index.get(self.elements[i].conj_transpose())
            if cand is not None and self.mult(i, cand) == self.identity:
                v = cand
            else:
                v = next(j for j in range(self.order) if self.mult(i, j) == self.identity)
            self._inv_cache[i] = v
        return v

    def label(self, i: int) -> str:
        return "g%d" % i

    def contains_matrix(self, mat: CycMatrix) -> bool:
        return mat in self.index

    def element_order(self, i: int) -> int:
        n, j = 1, i
        while j != self.identity:
            j = self.mult(j, i)
            n += 1
        return n

    def to_json_dict(self) -> dict:
        from . import SCHEMA_VERSION

        def num_entry(x: CycNum):
            return [[f.numerator, f.denominator] for f in x.coeffs]

        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "matrix_group",
            "dim": self.dim,
            "conductor": self.m,
            "elements": [
                [num_entry(x) for row in mat.rows for x in row] for mat in self.elements
            ],
            "generators": list(self.generator_indices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @staticmethod
    def from_json_dict(data: dict) -> "MatrixGroup":
        dim, m = data["dim"], data["conductor"]
        phi = euler_phi(m)
        elements = []
        for flat in data["elements"]:
            assert len(flat) == dim * dim
            rows = []
            for i in range(dim):
                row = []
                for j in range(dim):
                    pairs = flat[i * dim + j]
                    assert len(pairs) == phi
                    row.append(CycNum.from_coeffs(m, [Fraction(a, b) for a, b in pairs]))
                rows.append(row)
            elements.append(CycMatrix(dim, m, rows))
        index = {mat: i for i, mat in enumerate(elements)}
        assert len(index) == len(elements), "duplicate elements in serialized group"
        return MatrixGroup(dim, m, elements, index, list(data["generators"]))


# -- predicates over groups -------------------------------------------------


def center_indices(G: MatrixGroup) -> list[int]:
    gens = G.generator_indices
    out = []
    for i in range(G.order):
        if all(G.mult(i, g) == G.mult(g, i) for g in gens):
            out.append(i)
    return out


def scalar_indices(G: MatrixGroup) -> list[int]:
    return [i for i in range(G.order) if G.elements[i].is_scalar()]


def derived_subgroup_indices(G: MatrixGroup) -> list[int]:
    """Derived subgroup: close generator commutators under conjugation by
    generators (enough, since g^-1 is a positive power of g), then take the
    subgroup the conjugation-closed set generates."""
    gens = G.generator_indices
    orbit: set[int] = set()
    stack = []
    for a in gens:
        for b in gens:
            c = G.mult(G.mult(a, b), G.mult(G.inv(a), G.inv(b)))
            if c not in orbit:
                orbit.add(c)
                stack.append(c)
    while stack:
        x = stack.pop()
        for g in gens:
            y = G.mult(G.mult(g, x), G.inv(g))
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    seeds = sorted(orbit)
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = G.mult(x, s)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(members)


def group_report(G: MatrixGroup) -> dict:
    dets = {repr(G.elements[i].det()) for i in G.generator_indices}
    return {
        "order": G.order,
        "dim": G.dim,
        "conductor": G.m,
        "generator_dets": sorted(dets),
        "all_unitary": all(G.elements[i].is_unitary() for i in G.generator_indices),
        "center_order": len(center_indices(G)),
        "derived_order": len(derived_subgroup_indices(G)),
    }


# -- torus truncation membership -------------------------------------------


def min_level(p: int) -> int:
    # the finite 2-group catalog needs fourth roots of unity on the diagonal
    return 2 if p == 2 else 1


def in_truncated_torus_extension(mat: CycMatrix, p: int, level: int, det_one: bool = True) -> bool:
    """Membership in S_level = T_level<B>: monomial, shift permutation part,
    diagonal part p^level-torsion, and (det_one side) determinant 1."""
    perm = mat.permutation_part()
    if perm is None:
        return False
    shift = perm[0]
    if any(perm[i] != (i + shift) % p for i in range(p)):
        return False
    # strip the shift: diag = mat * B^(p - shift)
    b = std_matrix(p, "B", conductor=mat.m)
    diag = mat * (b ** ((p - shift) % p))
    if not diag.is_diagonal():
        return False
    torsion = p ** level
    one = CycNum.one(mat.m)
    for i in range(p):
        if diag.rows[i][i] ** torsion != one:
            return False
    if det_one and mat.det() != one:
        return False
    return True


def torus_extension_generators(p: int, level: int, det_one: bool = True,
                               conductor: int | None = None) -> list[CycMatrix]:
    """Generator matrices of S_level: diagonal p^level-torsion generators
    (difference form on the det-one side) followed by the shift matrix."""
    m = conductor if conductor is not None else (max(8, 2 ** level) if p == 2 else p ** level)
    torsion = p ** level
    assert m % torsion == 0, "conductor %d lacks p^level torsion" % m
    zt = CycNum.zeta(m, m // torsion)
    gens = []
    if det_one:
        for r in range(p - 1):
            rows = [
                [
                    (zt if i == r else (zt ** (torsion - 1) if i == r + 1 else CycNum.one(m)))
                    if i == j
                    else CycNum.zero(m)
                    for j in range(p)
                ]
                for i in range(p)
            ]
            gens.append(CycMatrix(p, m, rows))
    else:
        for r in range(p):
            rows = [
                [
                    (zt if i == r else CycNum.one(m)) if i == j else CycNum.zero(m)
                    for j in range(p)
                ]
                for i in range(p)
            ]
            gens.append(CycMatrix(p, m, rows))
    gens.append(std_matrix(p, "B", conductor=m, det_one=(p == 2 and det_one)))
    return gens


def torus_extension_group(p: int, level: int, det_one: bool = True,
                          conductor: int | None = None, cap: int = 20000) -> MatrixGroup:
    """Explicit S_level as a matrix group; only sensible at desk scale."""
    size = p ** (level * (p - 1) + 1) if det_one else p ** (level * p + 1)
    if size > cap:
        raise CapExceeded("torus extension of order %d exceeds cap %d" % (size, cap))
    gens = torus_extension_generators(p, level, det_one, conductor)
    return closure(gens, expected=size)
