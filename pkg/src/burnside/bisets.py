"""Concrete bisets and the diagonal product calculus.

An (H, G)-biset is carried as a set with an action of the product group
H x G, the right action being encoded through inverses:
(h, g).x = h x g^-1.  Composition and the diagonal products are then
plain orbit/quotient computations on carriers, which keeps every
identity checkable against explicit decompositions.

Product groups carry an ordered factor list; the diagonal operations
take explicit factor indices and an explicit output layout, because the
result of merging a shared factor genuinely depends on where that factor
sits in the output product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .algebra import BurnsideElement, transitive_of_class
from .errors import (
    FactorMismatchError,
    GroupMismatchError,
    NotAnIsomorphismError,
    NotAProductGroupError,
    NotContainedError,
    RingMismatchError,
)
from .groups import (
    Group,
    Subgroup,
    _cyclic,
    diagonal_subgroup,
    direct_product,
    squared,
    subgroup_lattice,
)
from .gsets import GSet, conjugation_gset, induce, restrict
from .rings import ZZ

_TRIVIAL = _cyclic(1)


def trivial_group() -> Group:
    return _TRIVIAL


@dataclass(frozen=True)
class Biset:
    """An (left, right)-biset carried as a GSet over left x right."""

    left: Group
    right: Group
    carrier: GSet

    def __post_init__(self):
        expected = self.left.order * self.right.order
        if self.carrier.group.order != expected:
            raise GroupMismatchError("carrier group must be left x right")

    @property
    def size(self):
        return self.carrier.size


def _pair_index(left: Group, right: Group, a: int, b: int) -> int:
    return a * right.order + b


def elementary_induction(g: Group, h: Subgroup) -> Biset:
    """The (G, H)-biset G for h <= g: (a, b).x = a x b^-1."""
    if h.parent != g:
        raise NotContainedError("subgroup of a different group")
    hg = h.as_group()
    p = direct_product(g, hg)
    n = g.order
    action = []
    for w in p.elements():
        a, bl = divmod(w, hg.order)
        binv = g.inv_table[h.members[bl]]
        action.append([g.mul_table[g.mul_table[a][x]][binv] for x in range(n)])
    return Biset(g, hg, GSet(p, action))


def elementary_restriction(g: Group, h: Subgroup) -> Biset:
    """The (H, G)-biset G for h <= g: (a, b).x = a x b^-1 via the inclusion."""
    if h.parent != g:
        raise NotContainedError("subgroup of a different group")
    hg = h.as_group()
    p = direct_product(hg, g)
    n = g.order
    action = []
    for w in p.elements():
        al, b = divmod(w, g.order)
        ap = h.members[al]
        binv = g.inv_table[b]
        action.append([g.mul_table[g.mul_table[ap][x]][binv] for x in range(n)])
    return Biset(hg, g, GSet(p, action))


def elementary_iso(src: Group, dst: Group, mapping) -> Biset:
    """The (dst, src)-biset src along a verified isomorphism src -> dst."""
    mapping = tuple(int(x) for x in mapping)
    if len(mapping) != src.order or sorted(mapping) != list(range(dst.order)):
        raise NotAnIsomorphismError("map is not a bijection onto dst")
    for a in src.elements():
        for b in src.elements():
            if mapping[src.mul_table[a][b]] != dst.mul_table[mapping[a]][mapping[b]]:
                raise NotAnIsomorphismError("map is not a homomorphism")
    inverse = [0] * dst.order
    for x, y in enumerate(mapping):
        inverse[y] = x
    p = direct_product(dst, src)
    n = src.order
    action = []
    for w in p.elements():
        a, b = divmod(w, src.order)
        ai = inverse[a]
        binv = src.inv_table[b]
        action.append([src.mul_table[src.mul_table[ai][x]][binv] for x in range(n)])
    return Biset(dst, src, GSet(p, action))


def identity_biset(g: Group) -> Biset:
    return elementary_iso(g, g, list(g.elements()))


def compose(u: Biset, v: Biset) -> Biset:
    """Quotient of u x v by the middle group: (x.g, y) ~ (x, g.y)."""
    if u.right != v.left:
        raise GroupMismatchError("middle groups differ")
    mid = u.right
    nu, nv = u.size, v.size
    total = nu * nv
    parent = list(range(total))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for gmid in mid.generators:
        # x.g = (e_left, g^-1).x on u; g.y = (g, e_right).y on v
        xu = u.carrier.action[_pair_index(u.left, mid, u.left.identity,
                                          mid.inv_table[gmid])]
        yv = v.carrier.action[_pair_index(mid, v.right, gmid,
                                          v.right.identity)]
        for x in range(nu):
            xg = xu[x]
            base_xg = xg * nv
            base_x = x * nv
            for y in range(nv):
                union(base_xg + y, base_x + yv[y])

    reps = sorted({find(i) for i in range(total)})
    cls = {r: i for i, r in enumerate(reps)}
    p = direct_product(u.left, v.right)
    action = []
    for w in p.elements():
        h, k = divmod(w, v.right.order)
        hu = u.carrier.action[_pair_index(u.left, mid, h, mid.identity)]
        kv = v.carrier.action[_pair_index(mid, v.right, mid.identity, k)]
        row = []
        for r in reps:
            x, y = divmod(r, nv)
            row.append(cls[find(hu[x] * nv + kv[y])])
        action.append(row)
    return Biset(u.left, v.right, GSet(p, action))


def gset_as_biset(x: GSet) -> Biset:
    """Read a G-set as a (G, 1)-biset."""
    p = direct_product(x.group, _TRIVIAL)
    return Biset(x.group, _TRIVIAL, x.rehomed(p))


def biset_as_gset(u: Biset) -> GSet:
    """Collapse an (H, 1)-biset back to an H-set."""
    if u.right.order != 1:
        raise GroupMismatchError("only (H, 1)-bisets collapse to G-sets")
    return u.carrier.rehomed(u.left)


def apply_biset(u: Biset, a: BurnsideElement) -> BurnsideElement:
    """Functorial action: linear extension of X -> decompose(u o X)."""
    if u.right != a.group:
        raise GroupMismatchError("biset right group must match the element")
    ring = a.ring
    out = BurnsideElement.zero(u.left, ring)
    for ci, coeff in a.coeffs.items():
        x = transitive_of_class(a.group, ci)
        w = biset_as_gset(compose(u, gset_as_biset(x)))
        out = out.add(BurnsideElement.from_gset(w, ring).scale(coeff))
    return out


def external_product(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Bilinear extension of [A/P] x [B/Q] -> [(AxB)/(PxQ)]."""
    if a.ring != b.ring:
        raise RingMismatchError("external product needs one coefficient ring")
    ring = a.ring
    ga, gb = a.group, b.group
    p = direct_product(ga, gb)
    lat_a = subgroup_lattice(ga)
    lat_b = subgroup_lattice(gb)
    lat_p = subgroup_lattice(p)
    coeffs = {}
    for ci, ca in a.coeffs.items():
        pa = lat_a.class_rep(ci)
        for cj, cb in b.coeffs.items():
            qb = lat_b.class_rep(cj)
            members = [x * gb.order + y for x in pa.members for y in qb.members]
            target = lat_p.class_of[lat_p.subgroup_index(members)]
            val = ring.mul(ca, cb)
            coeffs[target] = ring.add(coeffs.get(target, ring.zero), val)
    return BurnsideElement(p, ring, coeffs)


# ---------------------------------------------------------------------------
# Diagonal products over a shared factor
# ---------------------------------------------------------------------------

def product_of(factors) -> Group:
    factors = list(factors)
    if not factors:
        return _TRIVIAL
    return reduce(direct_product, factors)


def default_layout(x: GSet, y: GSet, ix: int, iy: int):
    """Normal-form layout: a-factors, then b-factors, then the shared one."""
    la = [("a", i) for i in range(len(x.group.flat_factors)) if i != ix]
    lb = [("b", j) for j in range(len(y.group.flat_factors)) if j != iy]
    return la + lb + ["shared"]


def diagonal_merge_gsets(x: GSet, y: GSet, ix: int, iy: int, layout=None) -> GSet:
    """Cartesian product of carriers with the shared factor acting diagonally.

    ``ix``/``iy`` pick the shared factor inside each product group;
    ``layout`` lists the output factor order as ("a", i) / ("b", j)
    tokens plus one "shared" token.
    """
    fa = x.group.flat_factors
    fb = y.group.flat_factors
    if not (0 <= ix < len(fa)) or not (0 <= iy < len(fb)):
        raise FactorMismatchError("factor index out of range")
    if fa[ix] != fb[iy]:
        raise FactorMismatchError("shared factors have different structure")
    if layout is None:
        layout = default_layout(x, y, ix, iy)
    used_a = {t[1] for t in layout if isinstance(t, tuple) and t[0] == "a"}
    used_b = {t[1] for t in layout if isinstance(t, tuple) and t[0] == "b"}
    if (used_a != {i for i in range(len(fa)) if i != ix}
            or used_b != {j for j in range(len(fb)) if j != iy}
            or layout.count("shared") != 1):
        raise FactorMismatchError("layout must cover all non-shared factors once")

    out_factors = []
    for token in layout:
        if token == "shared":
            out_factors.append(fa[ix])
        elif token[0] == "a":
            out_factors.append(fa[token[1]])
        else:
            out_factors.append(fb[token[1]])
    p = product_of(out_factors)

    ny = y.size
    action = []
    for w in p.elements():
        coords = p.decode(w)
        ca = [0] * len(fa)
        cb = [0] * len(fb)
        for c, token in zip(coords, layout):
            if token == "shared":
                ca[ix] = c
                cb[iy] = c
            elif token[0] == "a":
                ca[token[1]] = c
            else:
                cb[token[1]] = c
        xa = x.action[x.group.encode(ca)]
        yb = y.action[y.group.encode(cb)]
        action.append([xa[pt] * ny + yb[q] for pt in x.points() for q in y.points()])
    return GSet(p, action)


def diagonal_product(a: BurnsideElement, b: BurnsideElement,
                     ia: int, ib: int, layout=None) -> BurnsideElement:
    """Linear extension of the diagonal merge to algebra elements."""
    if a.ring != b.ring:
        raise RingMismatchError("diagonal product needs one coefficient ring")
    ring = a.ring
    out = None
    for ci, ca in a.coeffs.items():
        x = transitive_of_class(a.group, ci)
        for cj, cb in b.coeffs.items():
            y = transitive_of_class(b.group, cj)
            merged = diagonal_merge_gsets(x, y, ia, ib, layout)
            term = BurnsideElement.from_gset(merged, ring).scale(ring.mul(ca, cb))
            out = term if out is None else out.add(term)
    if out is None:
        raise FactorMismatchError("diagonal product of zero elements is ambiguous")
    return out


def permutation_of_factors(g: Group, perm):
    """Group iso data for reordering flat factors: new group + element map."""
    factors = g.flat_factors
    if sorted(perm) != list(range(len(factors))):
        raise FactorMismatchError("perm must permute the factor indices")
    new_factors = [factors[i] for i in perm]
    p = product_of(new_factors)
    mapping = [0] * g.order
    for w in p.elements():
        coords = p.decode(w)
        old = [0] * len(factors)
        for pos, c in zip(perm, coords):
            old[pos] = c
        mapping[w] = g.encode(old)
    return p, mapping


def permute_factors_gset(x: GSet, perm) -> GSet:
    """The same points, acted through the factor-permutation isomorphism."""
    p, mapping = permutation_of_factors(x.group, perm)
    action = [x.action[mapping[w]] for w in p.elements()]
    return GSet(p, action, validate=False)


def permute_factors_element(a: BurnsideElement, perm) -> BurnsideElement:
    """Transport an element along a factor permutation of its group."""
    p, mapping = permutation_of_factors(a.group, perm)
    inverse = [0] * len(mapping)
    for w, old in enumerate(mapping):
        inverse[old] = w
    lat_old = subgroup_lattice(a.group)
    lat_new = subgroup_lattice(p)
    coeffs = {}
    for ci, c in a.coeffs.items():
        rep = lat_old.class_rep(ci)
        members = [inverse[m] for m in rep.members]
        target = lat_new.class_of[lat_new.subgroup_index(members)]
        if target in coeffs:
            coeffs[target] = a.ring.add(coeffs[target], c)
        else:
            coeffs[target] = c
    return BurnsideElement(p, a.ring, coeffs)


# ---------------------------------------------------------------------------
# Conjugation class and the diagonal induction/restriction pair
# ---------------------------------------------------------------------------

def gamma(g: Group, ring=ZZ) -> BurnsideElement:
    """The class of g acting on itself by conjugation.

    Its decomposition is one orbit [G/C_G(x)] per conjugacy class of
    elements, and its marks are the centralizer orders.
    """
    return BurnsideElement.from_gset(conjugation_gset(g), ring)


def _diagonal_of(gg: Group) -> tuple[Group, Subgroup]:
    if len(gg.factors) != 2 or gg.factors[0] != gg.factors[1]:
        raise NotAProductGroupError(
            "operation needs a group recorded as a product G x G")
    g = gg.factors[0]
    return g, diagonal_subgroup(g, gg)


def diagonal_induce(a: BurnsideElement, gg: Group | None = None) -> BurnsideElement:
    """Induce along the diagonal G = Delta(G) <= G x G; [G/L] -> [GG/Delta(L)]."""
    g = a.group
    gg = gg if gg is not None else squared(g)
    delta = diagonal_subgroup(g, gg)
    dg = delta.as_group()
    ring = a.ring
    out = BurnsideElement.zero(gg, ring)
    for ci, coeff in a.coeffs.items():
        x = transitive_of_class(g, ci).rehomed(dg)
        ind = induce(x, delta, gg)
        out = out.add(BurnsideElement.from_gset(ind, ring).scale(coeff))
    return out


def diagonal_restrict(a: BurnsideElement) -> BurnsideElement:
    """Restrict along Delta(G) = G inside a recorded product G x G."""
    g, delta = _diagonal_of(a.group)
    ring = a.ring
    out = BurnsideElement.zero(g, ring)
    for ci, coeff in a.coeffs.items():
        x = transitive_of_class(a.group, ci)
        res = restrict(x, delta).rehomed(g)
        out = out.add(BurnsideElement.from_gset(res, ring).scale(coeff))
    return out
