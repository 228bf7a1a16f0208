"""Small finite groups given by complete multiplication tables.

Elements of a group of order n are the integers 0..n-1, with a
distinguished identity index.  Groups compare equal structurally (same
order, identity and table), so independently built copies of the same
group share cached derived data: inverse tables, generating sets,
subgroup lattices, conjugacy classes and Moebius values.

Everything is immutable after construction and all operations are pure,
so objects are safe to share across threads; cache insertion is guarded
by a module lock.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

from .errors import (
    NotAGroupError,
    NotContainedError,
    OrderBoundError,
    ParseError,
    ResourceBoundError,
)

MAX_GROUP_ORDER = 255
DEFAULT_SUBGROUP_CAP = 20000

_LOCK = threading.Lock()
_LATTICE_CACHE = {}


class Group:
    """A finite group as an order x order multiplication table.

    The axioms (identity, two-sided inverses, associativity) are verified
    on construction.  Associativity is checked on a generating set, which
    is equivalent to the full check: if a(bc) = (ab)c holds for all
    generators a and arbitrary b, c, it propagates to all products.
    """

    def __init__(self, mul, identity=0, label="?", factors=None):
        self.mul_table = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.mul_table)
        self.identity = int(identity)
        self.label = str(label)
        if self.order == 0:
            raise NotAGroupError("empty multiplication table")
        if self.order > MAX_GROUP_ORDER:
            raise OrderBoundError(
                f"group order {self.order} exceeds bound {MAX_GROUP_ORDER}")
        self._validate_shape()
        self.inv_table = self._build_inverses()
        self.generators = self._find_generators()
        self._validate_associativity()
        # factors records how the group was assembled by direct_product;
        # an atomic group is its own single factor.
        self.factors = tuple(factors) if factors is not None else (self,)
        self._hash = hash((self.order, self.identity, self.mul_table))
        self._is_abelian = None

    # -- construction-time checks -----------------------------------------

    def _validate_shape(self):
        n = self.order
        if not (0 <= self.identity < n):
            raise NotAGroupError("identity index out of range")
        for row in self.mul_table:
            if len(row) != n:
                raise NotAGroupError("multiplication table is not square")
            for x in row:
                if not (0 <= x < n):
                    raise NotAGroupError("table entry out of range")
        e = self.identity
        for a in range(n):
            if self.mul_table[e][a] != a or self.mul_table[a][e] != a:
                raise NotAGroupError("identity does not act trivially")

    def _build_inverses(self):
        n = self.order
        e = self.identity
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul_table[a][b] == e and self.mul_table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NotAGroupError(f"element {a} has no two-sided inverse")
        return tuple(inv)

    def _closure_under(self, gens):
        reached = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = self.mul_table[a][s]
                    if b not in reached:
                        reached.add(b)
                        nxt.append(b)
            frontier = nxt
        return reached

    def _find_generators(self):
        gens = []
        reached = {self.identity}
        while len(reached) < self.order:
            cand = min(x for x in range(self.order) if x not in reached)
            gens.append(cand)
            reached = self._closure_under(gens)
        return tuple(gens)

    def _validate_associativity(self):
        n = self.order
        mul = self.mul_table
        for s in self.generators:
            row_s = mul[s]
            for b in range(n):
                sb = row_s[b]
                row_b = mul[b]
                row_sb = mul[sb]
                for c in range(n):
                    if row_sb[c] != row_s[row_b[c]]:
                        raise NotAGroupError("multiplication is not associative")

    # -- basic queries ------------------------------------------------------

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        return self.inv_table[a]

    def conj(self, g, x):
        """g * x * g**-1."""
        return self.mul_table[self.mul_table[g][x]][self.inv_table[g]]

    def elements(self):
        return range(self.order)

    def element_order(self, a):
        k = 1
        x = a
        while x != self.identity:
            x = self.mul_table[x][a]
            k += 1
        return k

    @property
    def is_abelian(self):
        if self._is_abelian is None:
            t = self.mul_table
            n = self.order
            self._is_abelian = all(
                t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))
        return self._is_abelian

    # -- product-factor bookkeeping ------------------------------------------

    @property
    def flat_factors(self):
        """Atomic factor list, flattening nested direct products."""
        if self.factors == (self,):
            return (self,)
        out = []
        for f in self.factors:
            out.extend(f.flat_factors)
        return tuple(out)

    def decode(self, x):
        """Row-major coordinates of x over flat_factors."""
        orders = [f.order for f in self.flat_factors]
        coords = []
        for n in reversed(orders):
            x, r = divmod(x, n)
            coords.append(r)
        return tuple(reversed(coords))

    def encode(self, coords):
        x = 0
        for f, c in zip(self.flat_factors, coords):
            x = x * f.order + c
        return x

    # -- structural identity ---------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Group):
            return NotImplemented
        return (self.order == other.order and self.identity == other.identity
                and self.mul_table == other.mul_table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Group({self.label}, order={self.order})"


class Subgroup:
    """A subgroup of a parent group, stored as a sorted member tuple."""

    def __init__(self, parent: Group, members):
        self.parent = parent
        self.members = tuple(sorted(set(int(x) for x in members)))
        self.mask = 0
        for x in self.members:
            self.mask |= 1 << x
        self._check()
        self._as_group = None
        self._generators = None

    def _check(self):
        g = self.parent
        if not self.members:
            raise NotAGroupError("subgroup cannot be empty")
        for x in self.members:
            if not (0 <= x < g.order):
                raise NotContainedError(f"element {x} outside parent group")
        if g.identity not in set(self.members):
            raise NotAGroupError("subgroup lacks the identity")
        mset = set(self.members)
        for a in self.members:
            if g.inv_table[a] not in mset:
                raise NotAGroupError("subgroup not closed under inverse")
            for b in self.members:
                if g.mul_table[a][b] not in mset:
                    raise NotAGroupError("subgroup not closed under product")

    @property
    def order(self):
        return len(self.members)

    def index(self):
        return self.parent.order // self.order

    def contains(self, x):
        return bool(self.mask >> x & 1)

    def leq(self, other: "Subgroup"):
        return (self.parent == other.parent
                and self.mask & other.mask == self.mask)

    def conjugate_by(self, g):
        p = self.parent
        return Subgroup(p, (p.conj(g, x) for x in self.members))

    def generators_local(self):
        """Small generating set, as indices into ``members``."""
        if self._generators is None:
            self._generators = self.as_group().generators
        return self._generators

    def generators_parent(self):
        return tuple(self.members[i] for i in self.generators_local())

    def as_group(self):
        """The subgroup as a standalone Group; element i is members[i]."""
        if self._as_group is None:
            pos = {x: i for i, x in enumerate(self.members)}
            table = [[pos[self.parent.mul_table[a][b]] for b in self.members]
                     for a in self.members]
            self._as_group = Group(
                table,
                identity=pos[self.parent.identity],
                label=f"sub{self.order}<{self.parent.label}",
            )
        return self._as_group

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash((self.parent, self.members))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.label})"


def subgroup_closure(g: Group, gens) -> Subgroup:
    """Smallest subgroup of g containing the given elements."""
    members = {g.identity} | {int(x) for x in gens}
    queue = list(members)
    while queue:
        a = queue.pop()
        for b in list(members):
            for c in (g.mul_table[a][b], g.mul_table[b][a]):
                if c not in members:
                    members.add(c)
                    queue.append(c)
    return Subgroup(g, members)


def trivial_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, [g.identity])


def full_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, range(g.order))


# ---------------------------------------------------------------------------
# Subgroup lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups: canonical label and members."""

    label: str
    rep_index: int
    member_indices: tuple


class SubgroupLattice:
    """All subgroups of a group, conjugacy classes and Moebius values.

    Subgroups are sorted by (order, member tuple); class representatives
    are the minimal members of their class under the same order, so the
    listing is byte-identical across runs.
    """

    def __init__(self, group, subgroups, classes, class_of, moebius_map):
        self.group = group
        self.subgroups = subgroups
        self.classes = classes
        self.class_of = class_of
        self._moebius = moebius_map
        self._index_of = {s.members: i for i, s in enumerate(subgroups)}
        self._label_to_class = {c.label: i for i, c in enumerate(classes)}

    @property
    def class_count(self):
        return len(self.classes)

    def labels(self):
        return [c.label for c in self.classes]

    def class_rep(self, ci) -> Subgroup:
        return self.subgroups[self.classes[ci].rep_index]

    def class_index_of_label(self, label):
        from .errors import BadLabelError
        try:
            return self._label_to_class[label]
        except KeyError:
            raise BadLabelError(
                f"unknown subgroup class label {label!r} for {self.group.label}")

    def subgroup_index(self, members) -> int:
        key = tuple(sorted(members))
        try:
            return self._index_of[key]
        except KeyError:
            raise NotContainedError("not a subgroup of this lattice")

    def class_index_of_subgroup(self, sub: Subgroup) -> int:
        return self.class_of[self.subgroup_index(sub.members)]

    def class_label_of_subgroup(self, sub: Subgroup) -> str:
        return self.classes[self.class_index_of_subgroup(sub)].label

    def leq(self, i, j):
        return self.subgroups[i].mask & self.subgroups[j].mask == self.subgroups[i].mask

    def moebius_by_index(self, ki, hi):
        if (ki, hi) not in self._moebius:
            raise NotContainedError("moebius(K,H) requires K <= H")
        return self._moebius[(ki, hi)]


def subgroup_lattice(g: Group, cap: int | None = None) -> SubgroupLattice:
    """Enumerate all subgroups of g with conjugacy classes and Moebius values.

    Enumeration runs a breadth-first closure over generator sets seeded
    from the cyclic subgroups, deduplicating by sorted member sets.
    """
    cap = DEFAULT_SUBGROUP_CAP if cap is None else cap
    with _LOCK:
        cached = _LATTICE_CACHE.get(g)
    if cached is not None:
        return cached

    # seed: all cyclic subgroups
    cyclics = []
    seen = set()
    for x in g.elements():
        members = {g.identity}
        y = x
        while y != g.identity:
            members.add(y)
            y = g.mul_table[y][x]
        key = tuple(sorted(members))
        if key not in seen:
            seen.add(key)
            cyclics.append(frozenset(members))

    known = set(cyclics)
    known.add(frozenset({g.identity}))
    queue = list(known)
    while queue:
        h = queue.pop()
        for c in cyclics:
            if c <= h:
                continue
            k = frozenset(subgroup_closure(g, h | c).members)
            if k not in known:
                known.add(k)
                if len(known) > cap:
                    raise ResourceBoundError(
                        f"more than {cap} subgroups in {g.label}")
                queue.append(k)

    subs = sorted(known, key=lambda s: (len(s), tuple(sorted(s))))
    subgroups = tuple(Subgroup(g, s) for s in subs)
    index_of = {s.members: i for i, s in enumerate(subgroups)}

    # conjugacy classes via the conjugation action on the subgroup list
    class_id = list(range(len(subgroups)))

    def find(i):
        while class_id[i] != i:
            class_id[i] = class_id[class_id[i]]
            i = class_id[i]
        return i

    for i, s in enumerate(subgroups):
        for x in g.elements():
            j = index_of[tuple(sorted(g.conj(x, m) for m in s.members))]
            ri, rj = find(i), find(j)
            if ri != rj:
                class_id[max(ri, rj)] = min(ri, rj)

    buckets = {}
    for i in range(len(subgroups)):
        buckets.setdefault(find(i), []).append(i)
    raw_classes = sorted(
        buckets.values(),
        key=lambda idxs: (subgroups[idxs[0]].order, subgroups[min(idxs)].members),
    )
    classes = []
    rank_within_order = {}
    class_of = [0] * len(subgroups)
    for idxs in raw_classes:
        rep = min(idxs)
        order = subgroups[rep].order
        rank = rank_within_order.get(order, 0) + 1
        rank_within_order[order] = rank
        label = f"{order}#{rank}"
        ci = len(classes)
        classes.append(SubgroupClass(label, rep, tuple(sorted(idxs))))
        for i in idxs:
            class_of[i] = ci

    moebius_map = _moebius_all_pairs(subgroups)
    lat = SubgroupLattice(g, subgroups, tuple(classes), tuple(class_of),
                          moebius_map)
    with _LOCK:
        return _LATTICE_CACHE.setdefault(g, lat)


def _moebius_all_pairs(subgroups):
    """Moebius values of the subgroup poset for every pair K <= H."""
    n = len(subgroups)
    up = [[] for _ in range(n)]  # up[k]: indices of supergroups of k, by size
    for k in range(n):
        mk = subgroups[k].mask
        for h in range(n):
            if mk & subgroups[h].mask == mk:
                up[k].append(h)
    moebius = {}
    for k in range(n):
        sups = sorted(up[k], key=lambda i: (subgroups[i].order, i))
        for h in sups:
            if h == k:
                moebius[(k, k)] = 1
                continue
            mh = subgroups[h].mask
            acc = 0
            for l in sups:
                if l == h:
                    continue
                ml = subgroups[l].mask
                if ml & mh == ml:
                    acc += moebius[(k, l)]
            moebius[(k, h)] = -acc
    return moebius


def moebius(lat: SubgroupLattice, k: Subgroup, h: Subgroup) -> int:
    """Moebius function of the subgroup poset at K <= H."""
    if not k.leq(h):
        raise NotContainedError("moebius(K,H) requires K <= H")
    ki = lat.subgroup_index(k.members)
    hi = lat.subgroup_index(h.members)
    return lat.moebius_by_index(ki, hi)


# ---------------------------------------------------------------------------
# Normalizers, centralizers, conjugacy of elements and subgroups
# ---------------------------------------------------------------------------

def normalizer(g: Group, h: Subgroup) -> Subgroup:
    if h.parent != g:
        raise NotContainedError("subgroup of a different group")
    mset = set(h.members)
    members = [x for x in g.elements()
               if all(g.conj(x, m) in mset for m in h.members)]
    return Subgroup(g, members)


def centralizer_of_subgroup(g: Group, h: Subgroup) -> Subgroup:
    if h.parent != g:
        raise NotContainedError("subgroup of a different group")
    members = [x for x in g.elements()
               if all(g.mul_table[x][m] == g.mul_table[m][x] for m in h.members)]
    return Subgroup(g, members)


def centralizer_of_element(g: Group, x: int) -> Subgroup:
    if not (0 <= x < g.order):
        raise NotContainedError(f"element {x} outside group")
    members = [y for y in g.elements()
               if g.mul_table[x][y] == g.mul_table[y][x]]
    return Subgroup(g, members)


def element_classes(g: Group):
    """Conjugacy classes of elements: (representative, class, centralizer)."""
    seen = [False] * g.order
    out = []
    for x in g.elements():
        if seen[x]:
            continue
        cls = sorted({g.conj(y, x) for y in g.elements()})
        for c in cls:
            seen[c] = True
        out.append((x, tuple(cls), centralizer_of_element(g, x)))
    return out


def subgroups_conjugate(g: Group, a: Subgroup, b: Subgroup) -> bool:
    """Whether two subgroups of g are conjugate (brute force with pruning)."""
    if a.parent != g or b.parent != g:
        raise NotContainedError("subgroups of a different group")
    if a.order != b.order:
        return False
    if a.members == b.members:
        return True
    fa = sorted(g.element_order(x) for x in a.members)
    fb = sorted(g.element_order(x) for x in b.members)
    if fa != fb:
        return False
    target = b.mask
    for x in g.elements():
        mask = 0
        for m in a.members:
            mask |= 1 << g.conj(x, m)
        if mask == target:
            return True
    return False


def subgroup_conjugacy_fingerprint(g: Group, s: Subgroup):
    return (s.order, tuple(sorted(g.element_order(x) for x in s.members)))


# ---------------------------------------------------------------------------
# Direct products and diagonals
# ---------------------------------------------------------------------------

def direct_product(g: Group, h: Group) -> Group:
    """Componentwise product; (a, b) is element a*|h| + b (row-major)."""
    n = g.order * h.order
    if n > MAX_GROUP_ORDER:
        raise OrderBoundError(
            f"direct product order {n} exceeds bound {MAX_GROUP_ORDER}")
    nh = h.order
    table = [[0] * n for _ in range(n)]
    for a1 in g.elements():
        for b1 in h.elements():
            i = a1 * nh + b1
            row = table[i]
            grow = g.mul_table[a1]
            hrow = h.mul_table[b1]
            for a2 in g.elements():
                ga = grow[a2]
                base = ga * nh
                for b2 in h.elements():
                    row[a2 * nh + b2] = base + hrow[b2]
    return Group(
        table,
        identity=g.identity * nh + h.identity,
        label=f"prod({g.label},{h.label})",
        factors=(g, h),
    )


def squared(g: Group) -> Group:
    return direct_product(g, g)


def cubed(g: Group) -> Group:
    return direct_product(squared(g), g)


def diagonal_subgroup(g: Group, product: Group | None = None) -> Subgroup:
    """The diagonal {(x, x)} inside g x g."""
    gg = product if product is not None else squared(g)
    if gg.order != g.order * g.order:
        raise NotContainedError("product group has the wrong order")
    n = g.order
    return Subgroup(gg, (x * n + x for x in g.elements()))


# ---------------------------------------------------------------------------
# Group-spec grammar
# ---------------------------------------------------------------------------

def _cyclic(n: int) -> Group:
    if n < 1:
        raise ParseError("cyclic order must be >= 1")
    return Group([[(a + b) % n for b in range(n)] for a in range(n)],
                 identity=0, label=f"C{n}")


def _dihedral(n: int) -> Group:
    """Dihedral group of order n (so D8 is the symmetry group of a square)."""
    if n < 4 or n % 2 != 0:
        raise ParseError("dihedral order must be even and >= 4")
    m = n // 2
    # element i + m*j is r^i s^j; s r s = r^-1
    def mul(a, b):
        i1, j1 = a % m, a // m
        i2, j2 = b % m, b // m
        i = (i1 + (i2 if j1 == 0 else -i2)) % m
        return i + m * ((j1 + j2) % 2)
    return Group([[mul(a, b) for b in range(n)] for a in range(n)],
                 identity=0, label=f"D{n}")


def _symmetric(n: int) -> Group:
    if not (1 <= n <= 5):
        raise ParseError("symmetric degree must be between 1 and 5")
    perms = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[pos[tuple(p[q[x]] for x in range(n))] for q in perms]
             for p in perms]
    return Group(table, identity=pos[tuple(range(n))], label=f"S{n}")


_Q8_SYMBOL_MUL = {
    # (symbol, symbol) -> (sign, symbol) for 1, i, j, k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _quaternion() -> Group:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k (in that index order)."""
    def mul(a, b):
        sa, xa = (1 if a % 2 == 0 else -1), a // 2
        sb, xb = (1 if b % 2 == 0 else -1), b // 2
        s, x = _Q8_SYMBOL_MUL[(xa, xb)]
        s *= sa * sb
        return 2 * x + (0 if s == 1 else 1)
    return Group([[mul(a, b) for b in range(8)] for a in range(8)],
                 identity=0, label="Q8")


def _parse_cycles(text: str):
    """Parse one generator in cycle notation, e.g. ``(1 2 3)(4 5)``."""
    cycles = []
    i = 0
    text = text.strip()
    if not text:
        raise ParseError("empty permutation")
    while i < len(text):
        if text[i] != "(":
            raise ParseError(f"expected '(' in cycle notation: {text!r}")
        j = text.index(")", i) if ")" in text[i:] else -1
        if j < 0:
            raise ParseError(f"unbalanced parenthesis in {text!r}")
        body = text[i + 1:j].replace(",", " ").split()
        if not body:
            raise ParseError(f"empty cycle in {text!r}")
        pts = []
        for tok in body:
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(f"cycle points must be positive integers: {tok!r}")
            pts.append(int(tok))
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point in cycle {text!r}")
        cycles.append(tuple(pts))
        i = j + 1
        while i < len(text) and text[i] in " \t":
            i += 1
    flat = [p for c in cycles for p in c]
    if len(set(flat)) != len(flat):
        raise ParseError(f"cycles are not disjoint in {text!r}")
    return cycles


def _perm_group(gen_texts):
    """Closure of permutation generators; elements sorted lexicographically."""
    gen_cycles = [_parse_cycles(t) for t in gen_texts]
    points = sorted({p for cycles in gen_cycles for c in cycles for p in c})
    if not points:
        raise ParseError("permutation spec mentions no points")
    pos = {p: i for i, p in enumerate(points)}
    k = len(points)

    gens = []
    for cycles in gen_cycles:
        perm = list(range(k))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                perm[pos[a]] = pos[b]
        gens.append(tuple(perm))

    ident = tuple(range(k))
    members = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[x]] for x in range(k))
                if r not in members:
                    members.add(r)
                    if len(members) > MAX_GROUP_ORDER:
                        raise OrderBoundError(
                            f"permutation group exceeds order {MAX_GROUP_ORDER}")
                    nxt.append(r)
        frontier = nxt
    elems = sorted(members)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in elems]
             for p in elems]

    canon_gens = ";".join(_render_cycles(c) for c in gen_cycles)
    return Group(table, identity=index[ident], label=f"perm:{canon_gens}")


def _render_cycles(cycles):
    norm = []
    for c in cycles:
        i = c.index(min(c))
        norm.append(c[i:] + c[:i])
    norm.sort(key=lambda c: c[0])
    return "".join("(" + " ".join(str(p) for p in c) + ")" for c in norm)


def _split_product_args(body: str):
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ParseError(f"prod(...) needs two comma-separated specs: {body!r}")


def build_group(spec: str, max_order: int | None = None) -> Group:
    """Build a group from the spec grammar.

    Grammar: ``C<n>`` | ``D<n>`` (order n, n even >= 4) | ``S<n>`` (degree
    n <= 5) | ``Q8`` | ``perm:<cycles>;<cycles>;...`` |
    ``prod(<spec>,<spec>)``.
    """
    g = _build_spec(spec.strip())
    bound = MAX_GROUP_ORDER if max_order is None else min(max_order, MAX_GROUP_ORDER)
    if g.order > bound:
        raise OrderBoundError(
            f"group {g.label} has order {g.order} > bound {bound}")
    return g


def _build_spec(s: str) -> Group:
    if not s:
        raise ParseError("empty group spec")
    if s == "Q8":
        return _quaternion()
    if s.startswith("perm:"):
        parts = [p for p in s[len("perm:"):].split(";")]
        if not parts or not all(p.strip() for p in parts):
            raise ParseError(f"bad permutation spec {s!r}")
        return _perm_group(parts)
    if s.startswith("prod(") and s.endswith(")"):
        left, right = _split_product_args(s[len("prod("):-1])
        return direct_product(_build_spec(left.strip()), _build_spec(right.strip()))
    head, body = s[0], s[1:]
    if head in "CDS" and body.isdigit():
        n = int(body)
        if head == "C":
            if n > MAX_GROUP_ORDER:
                raise OrderBoundError(f"C{n} exceeds order bound")
            return _cyclic(n)
        if head == "D":
            if n > MAX_GROUP_ORDER:
                raise OrderBoundError(f"D{n} exceeds order bound")
            return _dihedral(n)
        return _symmetric(n)
    raise ParseError(f"cannot parse group spec {s!r}")
