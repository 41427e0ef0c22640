"""Finite groups on element indices: subgroup machinery, extensions, recognition.

A group object only needs the protocol
    order : int        identity : int
    mult(i, j) -> int  inv(i) -> int     label(i) -> str
and everything here works on top of it: normalizers and centralizers by
direct scan, conjugacy, quotients, certified generator homomorphisms,
isomorphism search by generator-image backtracking, short-exact-sequence
verification with exhaustive complement search, and structure recognition
against natively built reference groups (2x2 matrix groups over F_p,
symmetric and cyclic groups).
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field


class FiniteGroup:
    """Protocol base with shared helpers; subclasses provide mult/inv."""

    order: int
    identity: int

    def mult(self, i: int, j: int) -> int:
        raise NotImplementedError

    def inv(self, i: int) -> int:
        raise NotImplementedError

    def label(self, i: int) -> str:
        return "g%d" % i

    def element_order(self, i: int) -> int:
        n, j = 1, i
        while j != self.identity:
            j = self.mult(j, i)
            n += 1
        return n

    def conjugate(self, g: int, x: int) -> int:
        return self.mult(self.mult(g, x), self.inv(g))

    def commutator(self, a: int, b: int) -> int:
        return self.mult(self.mult(a, b), self.mult(self.inv(a), self.inv(b)))

    def orders_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for i in range(self.order):
            o = self.element_order(i)
            hist[o] = hist.get(o, 0) + 1
        return hist

    def exponent(self) -> int:
        e = 1
        for i in range(self.order):
            o = self.element_order(i)
            e = e * o // math.gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        n = self.order
        for i in range(n):
            for j in range(i + 1, n):
                if self.mult(i, j) != self.mult(j, i):
                    return False
        return True


class TableGroup(FiniteGroup):
    """Group given by an explicit multiplication table."""

    def __init__(self, table, labels=None):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        assert all(len(row) == self.order for row in self.table)
        self.labels = list(labels) if labels else ["g%d" % i for i in range(self.order)]
        ident = None
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                ident = e
                break
        assert ident is not None, "no identity in table"
        self.identity = ident
        self._inv = [None] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] == self.identity:
                    self._inv[i] = j
                    break
        assert all(v is not None for v in self._inv), "table has non-invertible element"

    def mult(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self._inv[i]

    def label(self, i):
        return self.labels[i]


class PermGroup(FiniteGroup):
    """Group of permutation tuples; product a*b acts as x -> a[b[x]]."""

    def __init__(self, perms, labels=None):
        self.perms = [tuple(p) for p in perms]
        self.order = len(self.perms)
        self.degree = len(self.perms[0]) if self.perms else 0
        self.index = {p: i for i, p in enumerate(self.perms)}
        assert len(self.index) == self.order, "duplicate permutations"
        ident = tuple(range(self.degree))
        assert ident in self.index, "identity permutation missing"
        self.identity = self.index[ident]
        self.labels = list(labels) if labels else None

    def mult(self, i, j):
        a, b = self.perms[i], self.perms[j]
        return self.index[tuple(a[b[x]] for x in range(self.degree))]

    def inv(self, i):
        p = self.perms[i]
        q = [0] * self.degree
        for x, y in enumerate(p):
            q[y] = x
        return self.index[tuple(q)]

    def label(self, i):
        if self.labels:
            return self.labels[i]
        return "p%d" % i


def perm_closure(perms, cap: int = 2_000_000) -> PermGroup:
    """BFS closure of permutation generators (identity first)."""
    degree = len(perms[0])
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    gen_list = [tuple(p) for p in perms]
    while frontier:
        new = []
        for x in frontier:
            for g in gen_list:
                y = tuple(x[g[t]] for t in range(degree))
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > cap:
                        raise RuntimeError("permutation closure exceeded cap %d" % cap)
        frontier = new
    return PermGroup(elements)


class SemidirectGroup(FiniteGroup):
    """N x| H with H acting on N through explicit index permutations.

    action[h] must be the permutation of N-indices for H's element h, and
    h -> action[h] a homomorphism for PermGroup-style composition
    (action[h1*h2] = action[h1] after action[h2]).  Element (n, h) is
    encoded as n * H.order + h.
    """

    def __init__(self, N: FiniteGroup, H: FiniteGroup, action):
        self.N = N
        self.H = H
        self.action = [tuple(a) for a in action]
        assert len(self.action) == H.order
        assert all(len(a) == N.order for a in self.action)
        self.order = N.order * H.order
        self.identity = N.identity * H.order + H.identity

    def encode(self, n: int, h: int) -> int:
        return n * self.H.order + h

    def decode(self, i: int) -> tuple[int, int]:
        return divmod(i, self.H.order)

    def mult(self, i, j):
        n1, h1 = self.decode(i)
        n2, h2 = self.decode(j)
        n = self.N.mult(n1, self.action[h1][n2])
        h = self.H.mult(h1, h2)
        return self.encode(n, h)

    def inv(self, i):
        n, h = self.decode(i)
        hi = self.H.inv(h)
        return self.encode(self.action[hi][self.N.inv(n)], hi)

    def label(self, i):
        n, h = self.decode(i)
        return "(%s,%s)" % (self.N.label(n), self.H.label(h))


# -- subgroup machinery -----------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False)
    members: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members


def generated_subgroup(G: FiniteGroup, gens) -> tuple[int, ...]:
    """Sorted member indices of <gens>, by BFS closure."""
    members = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mult(x, g)
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(members))


def generated_subgroup_capped(G: FiniteGroup, gens, cap: int):
    """Like generated_subgroup but returns None once the size passes cap."""
    members = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mult(x, g)
                if y not in members:
                    if len(members) >= cap:
                        return None
                    members.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(members))


def subgroup(G: FiniteGroup, gens) -> Subgroup:
    return Subgroup(G, generated_subgroup(G, gens))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def conjugate_members(G: FiniteGroup, g: int, members) -> tuple[int, ...]:
    gi = G.inv(g)
    return tuple(sorted(G.mult(G.mult(g, x), gi) for x in members))


def subgroup_generators(G: FiniteGroup, members) -> list[int]:
    """A small generating set for a subgroup given by its member indices."""
    total = len(set(members))
    gens: list[int] = []
    have = {G.identity}
    for x in members:
        if x in have:
            continue
        gens.append(x)
        have = set(generated_subgroup(G, gens))
        if len(have) == total:
            break
    return gens


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    # g normalizes H iff it conjugates a generating set into H: conjugation
    # is injective, so the image is a subgroup of H of full size
    hset = set(H.members)
    hgens = subgroup_generators(G, H.members) or [G.identity]
    out = []
    for g in range(G.order):
        gi = G.inv(g)
        if all(G.mult(G.mult(g, x), gi) in hset for x in hgens):
            out.append(g)
    return Subgroup(G, tuple(out))


def centralizer(G: FiniteGroup, members) -> Subgroup:
    out = []
    for g in range(G.order):
        if all(G.mult(g, x) == G.mult(x, g) for x in members):
            out.append(g)
    return Subgroup(G, tuple(out))


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, range(G.order))


def center_of_subgroup(G: FiniteGroup, H: Subgroup) -> tuple[int, ...]:
    return tuple(
        x for x in H.members if all(G.mult(x, y) == G.mult(y, x) for y in H.members)
    )


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    hset = set(H.members)
    hgens = subgroup_generators(G, H.members)
    for g in range(G.order):
        gi = G.inv(g)
        for x in hgens:
            if G.mult(G.mult(g, x), gi) not in hset:
                return False
    return True


def are_conjugate(G: FiniteGroup, H1: Subgroup, H2: Subgroup):
    """First g in index order with g H1 g^-1 = H2, else None."""
    if H1.order != H2.order:
        return None
    target = tuple(sorted(H2.members))
    for g in range(G.order):
        if conjugate_members(G, g, H1.members) == target:
            return g
    return None


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    seen = [False] * G.order
    classes = []
    for i in range(G.order):
        if seen[i]:
            continue
        orbit = {i}
        stack = [i]
        while stack:
            x = stack.pop()
            for g in range(G.order):
                y = G.conjugate(g, x)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        cls = sorted(orbit)
        for x in cls:
            seen[x] = True
        classes.append(cls)
    return classes


def normal_closure(G: FiniteGroup, gens, seed) -> tuple[int, ...]:
    """Smallest subgroup containing seed that conjugation by the given
    generators of G leaves invariant (= the normal closure when gens
    generate G)."""
    orbit = set(seed)
    stack = list(seed)
    while stack:
        x = stack.pop()
        for g in gens:
            y = G.conjugate(g, x)
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return generated_subgroup(G, sorted(orbit))


def derived_subgroup(G: FiniteGroup, gens=None) -> tuple[int, ...]:
    gens = list(gens) if gens is not None else list(range(G.order))
    seed = set()
    for a in gens:
        for b in gens:
            seed.add(G.commutator(a, b))
    return normal_closure(G, gens, sorted(seed))


def all_subgroups(G: FiniteGroup, cap: int = 100000) -> list[tuple[int, ...]]:
    """Every subgroup, by closing single-generator extensions to a fixpoint."""
    triv = (G.identity,)
    known = {triv}
    queue = [triv]
    while queue:
        h = queue.pop()
        hset = set(h)
        for x in range(G.order):
            if x in hset:
                continue
            k = generated_subgroup(G, list(h) + [x])
            if k not in known:
                known.add(k)
                queue.append(k)
                if len(known) > cap:
                    raise RuntimeError("subgroup enumeration exceeded cap %d" % cap)
    return sorted(known, key=lambda t: (len(t), t))


def left_cosets(G: FiniteGroup, members) -> tuple[list[int], list[int]]:
    """Returns (coset_of, reps); reps[c] is the least element of coset c and
    cosets are numbered by first appearance in index order."""
    coset_of = [-1] * G.order
    reps = []
    for i in range(G.order):
        if coset_of[i] != -1:
            continue
        c = len(reps)
        reps.append(i)
        for n in members:
            coset_of[G.mult(i, n)] = c
    return coset_of, reps


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[TableGroup, list[int]]:
    assert is_normal(G, N), "quotient requires a normal subgroup"
    coset_of, reps = left_cosets(G, N.members)
    q = len(reps)
    table = [[coset_of[G.mult(reps[a], reps[b])] for b in range(q)] for a in range(q)]
    labels = [G.label(r) + "N" for r in reps]
    return TableGroup(table, labels), coset_of


def subgroup_as_group(G: FiniteGroup, members) -> TableGroup:
    members = list(members)
    pos = {m: i for i, m in enumerate(members)}
    table = [[pos[G.mult(a, b)] for b in members] for a in members]
    return TableGroup(table, [G.label(m) for m in members])


# -- homomorphisms ----------------------------------------------------------


@dataclass
class GroupMap:
    src: FiniteGroup
    dst: FiniteGroup
    images: list[int]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.src.order == len(self.images)

    def check_multiplicative(self, pairs=None, seed: int = 11) -> bool:
        n = self.src.order
        if pairs is None:
            it = ((a, b) for a in range(n) for b in range(n))
        else:
            rng = random.Random(seed)
            it = ((rng.randrange(n), rng.randrange(n)) for _ in range(pairs))
        for a, b in it:
            if self.images[self.src.mult(a, b)] != self.dst.mult(self.images[a], self.images[b]):
                return False
        return True


def propagate_hom(G: FiniteGroup, H: FiniteGroup, gen_idx, img_idx):
    """BFS-extend gen -> img over <gens>; dict of images or None on conflict.

    Enforces f(x*g) = f(x)*f(g) for every reached x and every generator g,
    which by induction on word length makes a returned map a certified
    homomorphism on the generated subgroup.
    """
    images = {G.identity: H.identity}
    frontier = [G.identity]
    pairs = list(zip(gen_idx, img_idx))
    while frontier:
        new = []
        for x in frontier:
            fx = images[x]
            for g, fg in pairs:
                y = G.mult(x, g)
                fy = H.mult(fx, fg)
                old = images.get(y)
                if old is None:
                    images[y] = fy
                    new.append(y)
                elif old != fy:
                    return None
        frontier = new
    return images


def hom_by_generators(G: FiniteGroup, H: FiniteGroup, gen_idx, img_idx):
    """Certified homomorphism G -> H from generator images, or None."""
    images = propagate_hom(G, H, gen_idx, img_idx)
    if images is None:
        return None
    if len(images) != G.order:
        raise ValueError("generators do not generate the source group")
    return GroupMap(G, H, [images[i] for i in range(G.order)])


def greedy_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    members = {G.identity}
    while len(members) < G.order:
        nxt = next(i for i in range(G.order) if i not in members)
        gens.append(nxt)
        members = set(generated_subgroup(G, gens))
    return gens


def isomorphism(G: FiniteGroup, H: FiniteGroup):
    """Generator-image backtracking with element-order pruning."""
    if G.order != H.order:
        return None
    if G.orders_histogram() != H.orders_histogram():
        return None
    gens = greedy_generators(G)
    if not gens:
        return GroupMap(G, H, [H.identity])
    h_orders: dict[int, list[int]] = {}
    for i in range(H.order):
        h_orders.setdefault(H.element_order(i), []).append(i)
    gen_orders = [G.element_order(g) for g in gens]

    def attempt(depth: int, chosen: list[int]):
        images = propagate_hom(G, H, gens[:depth], chosen)
        if images is None:
            return None
        if len(set(images.values())) != len(images):
            return None
        if depth == len(gens):
            assert len(images) == G.order
            return GroupMap(G, H, [images[i] for i in range(G.order)])
        for cand in h_orders.get(gen_orders[depth], []):
            res = attempt(depth + 1, chosen + [cand])
            if res is not None:
                return res
        return None

    got = attempt(0, [])
    if got is not None and got.is_bijective():
        return got
    return None


def isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return isomorphism(G, H) is not None


# -- automorphisms ----------------------------------------------------------


def automorphism_perms_backtracking(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms by generator-image backtracking; for small groups."""
    gens = greedy_generators(G)
    if not gens:
        return [(G.identity,)]
    by_order: dict[int, list[int]] = {}
    for i in range(G.order):
        by_order.setdefault(G.element_order(i), []).append(i)
    gen_orders = [G.element_order(g) for g in gens]
    found = []

    def attempt(depth: int, chosen: list[int]):
        images = propagate_hom(G, G, gens[:depth], chosen)
        if images is None or len(set(images.values())) != len(images):
            return
        if depth == len(gens):
            found.append(tuple(images[i] for i in range(G.order)))
            return
        for cand in by_order.get(gen_orders[depth], []):
            attempt(depth + 1, chosen + [cand])

    attempt(0, [])
    return found


def automorphism_group(G: FiniteGroup) -> PermGroup:
    """The full automorphism group as permutations of G's index set.

    Extraspecial exponent-p groups take the generator-pair scan; everything
    else uses backtracking, practical for groups up to a few dozen elements.
    """
    from . import extraspecial

    tag = recognize(G)
    if tag.startswith("extraspecial(") and tag.endswith("exp p)"):
        p = next(q for q in (3, 5, 7) if q ** 3 == G.order)
        return extraspecial.aut_group_via_coordinates(G, p)
    return PermGroup(sorted(automorphism_perms_backtracking(G)))


# -- short exact sequences --------------------------------------------------


@dataclass
class SesReport:
    is_normal: bool
    quotient_group: TableGroup | None
    projection: list[int] | None
    quotient_iso: GroupMap | None
    complement: tuple[int, ...] | None
    lift_order_profiles: list[dict[int, int]]
    tuples_checked: int
    exhausted: bool

    @property
    def split(self) -> bool | None:
        if self.complement is not None:
            return True
        return False if self.exhausted else None


def sesverify(G: FiniteGroup, N: Subgroup, Q_expected: FiniteGroup | None = None,
              hint_lifts=None) -> SesReport:
    """Verify 1 -> N -> G -> Q -> 1: normality, quotient recognition, and a
    complement search over all lifts of a quotient generating tuple.

    Any complement contains a lift of each quotient generator with matching
    element order, so enumerating those lift tuples is exhaustive: complement
    None with exhausted True is a genuine non-splitting certificate.
    hint_lifts, when given, are tried before the search.
    """
    if not is_normal(G, N):
        return SesReport(False, None, None, None, None, [], 0, True)
    Q, proj = quotient(G, N)
    iso = isomorphism(Q, Q_expected) if Q_expected is not None else None
    qgens = greedy_generators(Q)
    cosets: dict[int, list[int]] = {}
    for i in range(G.order):
        cosets.setdefault(proj[i], []).append(i)
    profiles = []
    cand_lists = []
    for qg in qgens:
        need = Q.element_order(qg)
        pool = cosets[qg]
        prof: dict[int, int] = {}
        for x in pool:
            o = G.element_order(x)
            prof[o] = prof.get(o, 0) + 1
        profiles.append(prof)
        cand_lists.append([x for x in pool if G.element_order(x) == need])

    nset = set(N.members)

    def try_tuple(lifts):
        got = generated_subgroup_capped(G, lifts, Q.order + 1)
        if got is None or len(got) != Q.order:
            return None
        inter = [x for x in got if x in nset]
        if inter != [G.identity]:
            return None
        return got

    checked = 0
    if hint_lifts:
        checked += 1
        got = try_tuple(list(hint_lifts))
        if got is not None:
            return SesReport(True, Q, proj, iso, got, profiles, checked, False)

    def rec(depth: int, chosen: list[int]):
        nonlocal checked
        if depth == len(qgens):
            checked += 1
            return try_tuple(chosen)
        for cand in cand_lists[depth]:
            res = rec(depth + 1, chosen + [cand])
            if res is not None:
                return res
        return None

    comp = rec(0, [])
    return SesReport(True, Q, proj, iso, comp, profiles, checked, comp is None)


# -- reference groups -------------------------------------------------------


def cyclic_group(n: int) -> TableGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return TableGroup(table, ["r%d" % i for i in range(n)])


def symmetric_group(n: int) -> PermGroup:
    import itertools

    perms = sorted(itertools.permutations(range(n)))
    return PermGroup(perms)


def mat2_elements(p: int, kind: str) -> list[tuple[int, int, int, int]]:
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    det = (a * d - b * c) % p
                    if det == 0:
                        continue
                    if kind in ("SL", "USL") and det != 1:
                        continue
                    if kind in ("USL", "UGL") and c != 0:
                        continue
                    out.append((a, b, c, d))
    return sorted(out)


class Mat2Group(FiniteGroup):
    """2x2 matrices over F_p: GL, SL, or their upper-triangular subgroups."""

    def __init__(self, p: int, kind: str):
        assert kind in ("GL", "SL", "USL", "UGL")
        self.p = p
        self.kind = kind
        self.elements = mat2_elements(p, kind)
        self.order = len(self.elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.identity = self.index[(1, 0, 0, 1)]

    def mult(self, i, j):
        p = self.p
        a1, b1, c1, d1 = self.elements[i]
        a2, b2, c2, d2 = self.elements[j]
        return self.index[
            (
                (a1 * a2 + b1 * c2) % p,
                (a1 * b2 + b1 * d2) % p,
                (c1 * a2 + d1 * c2) % p,
                (c1 * b2 + d1 * d2) % p,
            )
        ]

    def inv(self, i):
        p = self.p
        a, b, c, d = self.elements[i]
        det = (a * d - b * c) % p
        di = pow(det, -1, p)
        return self.index[((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)]

    def label(self, i):
        return "[[%d,%d],[%d,%d]]" % self.elements[i]


_mat2_cache: dict[tuple[int, str], Mat2Group] = {}


def mat2_group(p: int, kind: str) -> Mat2Group:
    key = (p, kind)
    if key not in _mat2_cache:
        _mat2_cache[key] = Mat2Group(p, kind)
    return _mat2_cache[key]


def smallest_primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise ValueError("no primitive root mod %d" % p)


# -- recognition ------------------------------------------------------------


def abelian_factor_orders(G: FiniteGroup) -> list[int]:
    """Primary cyclic factor orders of an abelian group, sorted ascending.

    For each prime q, the number of elements of order dividing q^k is
    q**(number of parts of the q-partition cut at k), so successive count
    ratios give the conjugate partition and from it the factor orders.
    """
    n = G.order
    orders = [G.element_order(x) for x in range(n)]
    factors: list[int] = []
    rest = n
    q = 2
    primes = []
    while rest > 1:
        if rest % q == 0:
            primes.append(q)
            while rest % q == 0:
                rest //= q
        q += 1
    for q in primes:
        qpow = [o for o in orders if _is_power_of(o, q)]
        parts_ge = []
        prev = 1
        k = 1
        while prev < len(qpow):
            ck = sum(1 for o in qpow if o <= q ** k)
            ratio = ck // prev
            m = 0
            while ratio > 1:
                ratio //= q
                m += 1
            parts_ge.append(m)
            prev = ck
            k += 1
        width = parts_ge[0] if parts_ge else 0
        for j in range(1, width + 1):
            lam = sum(1 for m in parts_ge if m >= j)
            factors.append(q ** lam)
    return sorted(factors)


def _is_power_of(o: int, q: int) -> bool:
    while o % q == 0:
        o //= q
    return o == 1


def recognize(G: FiniteGroup) -> str:
    n = G.order
    if n == 1:
        return "trivial"
    hist = G.orders_histogram()
    if hist.get(n, 0) > 0:
        return "C%d" % n
    if G.is_abelian():
        return "x".join("C%d" % f for f in abelian_factor_orders(G))
    # 2-power order with a unique involution and noncyclic: generalized quaternion
    if n & (n - 1) == 0 and hist.get(2, 0) == 1 and n >= 8:
        return "Q%d" % n
    if n == 48 and hist.get(2, 0) == 1:
        zc = center(G)
        if zc.order == 2:
            Q, _ = quotient(G, zc)
            if isomorphic(Q, symmetric_group(4)):
                return "O48"
    for p in (3, 5, 7):
        if n == p ** 3:
            zc = center(G)
            if zc.order == p and not G.is_abelian():
                e = G.exponent()
                return "extraspecial(%d^3, exp %s)" % (p, "p" if e == p else "p^2")
    for p in (2, 3, 5, 7):
        for kind, name in (("SL", "SL2(F%d)"), ("GL", "GL2(F%d)"),
                           ("USL", "U(SL2(F%d))"), ("UGL", "U(GL2(F%d))")):
            ref = mat2_group(p, kind)
            if ref.order == n and isomorphic(G, ref):
                return name % p
    if n % 2 == 0 and n >= 8:
        rotors = [r for r in range(n) if G.element_order(r) == n // 2]
        for r in rotors:
            rot = set(generated_subgroup(G, [r]))
            for s in range(n):
                if G.element_order(s) == 2 and s not in rot and G.conjugate(s, r) == G.inv(r):
                    return "D%d" % n
            break
    for k in (3, 4, 5):
        if n == math.factorial(k) and isomorphic(G, symmetric_group(k)):
            return "S%d" % k
    return "unknown(order %d)" % n


# -- serialization ----------------------------------------------------------


def group_to_json_dict(G: FiniteGroup, prime: int | None = None) -> dict:
    from . import SCHEMA_VERSION

    n = G.order
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "group_table",
        "order": n,
        "mult": [G.mult(i, j) for i in range(n) for j in range(n)],
        "labels": [G.label(i) for i in range(n)],
    }
    if prime is not None:
        data["prime"] = prime
    return data


def group_to_json(G: FiniteGroup, prime: int | None = None) -> str:
    return json.dumps(group_to_json_dict(G, prime), sort_keys=True, separators=(",", ":")) + "\n"


def group_from_json_dict(data: dict) -> tuple[TableGroup, int | None]:
    if data.get("kind") != "group_table":
        raise ValueError("not a group_table document")
    n = data["order"]
    flat = data["mult"]
    if len(flat) != n * n:
        raise ValueError("mult table has %d entries, expected %d" % (len(flat), n * n))
    table = [flat[i * n:(i + 1) * n] for i in range(n)]
    labels = data.get("labels")
    return TableGroup(table, labels), data.get("prime")


# -- invariant helpers ------------------------------------------------------


def class_equation(G: FiniteGroup) -> list[int]:
    return sorted(len(c) for c in conjugacy_classes(G))


def spot_check_associativity(G: FiniteGroup, trials: int = 200, seed: int = 5) -> bool:
    rng = random.Random(seed)
    n = G.order
    for _ in range(trials):
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if G.mult(G.mult(a, b), c) != G.mult(a, G.mult(b, c)):
            return False
    return True
