"""The Burnside algebra of a group over a coefficient ring.

Elements are coefficient vectors over the subgroup-class basis [G/H].
Multiplication uses structure constants obtained once per group by
decomposing explicit products of transitive G-sets, so it is exact over
any coefficient ring, including Z and Z/m where the marks matrix is not
invertible.  Marks, the table of marks, the primitive idempotents (for
invertible group order) and unit testing with ghost pullback live here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GroupMismatchError,
    InternalInconsistencyError,
    NotInvertibleError,
    RingMismatchError,
)
from .groups import Group, normalizer, subgroup_lattice
from .gsets import GSet, decompose, fixed_points, product, transitive
from .rings import QQ, Matrix, ModularRing, RationalRing, solve_linear, Solution

_LOCK = threading.Lock()
_MARKS_CACHE = {}
_SC_CACHE = {}
_TRANSITIVE_CACHE = {}


def transitive_of_class(g: Group, ci: int) -> GSet:
    """The transitive G-set G/H for the lattice class with index ci (cached).

    The result is re-homed onto the requested group object, since the
    cache identifies groups structurally but callers may rely on factor
    metadata that equal groups need not share.
    """
    with _LOCK:
        cache = _TRANSITIVE_CACHE.setdefault(g, {})
    if ci not in cache:
        lat = subgroup_lattice(g)
        cache[ci] = transitive(g, lat.class_rep(ci))
    got = cache[ci]
    return got if got.group is g else got.rehomed(g)


@dataclass(frozen=True)
class MarksTable:
    """Integer matrix with rows the transitive sets [G/H], columns the
    subgroup classes K, and entry the fixed-point count |(G/H)^K|."""

    group: Group
    labels: tuple
    matrix: tuple

    def entry(self, row_label, col_label):
        i = self.labels.index(row_label)
        j = self.labels.index(col_label)
        return self.matrix[i][j]


def table_of_marks(g: Group) -> MarksTable:
    with _LOCK:
        cached = _MARKS_CACHE.get(g)
    if cached is not None:
        return cached
    lat = subgroup_lattice(g)
    n = lat.class_count
    sets = [transitive_of_class(g, i) for i in range(n)]
    matrix = tuple(
        tuple(fixed_points(sets[i], lat.class_rep(j)) for j in range(n))
        for i in range(n)
    )
    table = MarksTable(g, tuple(lat.labels()), matrix)
    with _LOCK:
        return _MARKS_CACHE.setdefault(g, table)


def structure_constants(g: Group, i: int, j: int) -> dict:
    """Coefficients of [G/H_i] * [G/H_j] on the class basis (cached)."""
    a, b = (i, j) if i <= j else (j, i)
    with _LOCK:
        cache = _SC_CACHE.setdefault(g, {})
    if (a, b) not in cache:
        lat = subgroup_lattice(g)
        prod = product(transitive_of_class(g, a), transitive_of_class(g, b))
        counts = {}
        for label, mult in decompose(prod).multiplicities().items():
            counts[lat.class_index_of_label(label)] = mult
        cache[(a, b)] = counts
    return cache[(a, b)]


class BurnsideElement:
    """An element of the Burnside algebra: class index -> coefficient.

    Zero coefficients are dropped on construction, so equal elements have
    equal coefficient dictionaries.
    """

    __slots__ = ("group", "ring", "coeffs")

    def __init__(self, group: Group, ring, coeffs: dict):
        self.group = group
        self.ring = ring
        clean = {}
        for k in sorted(coeffs):
            v = coeffs[k]
            if not ring.is_zero(v):
                clean[k] = v
        self.coeffs = clean

    @classmethod
    def zero(cls, group, ring):
        return cls(group, ring, {})

    @classmethod
    def basis(cls, group, ring, ci):
        return cls(group, ring, {ci: ring.one})

    @classmethod
    def from_label_coeffs(cls, group, ring, by_label: dict):
        lat = subgroup_lattice(group)
        return cls(group, ring, {
            lat.class_index_of_label(lbl): ring.from_int(v) if isinstance(v, int) else v
            for lbl, v in by_label.items()
        })

    @classmethod
    def from_gset(cls, x: GSet, ring):
        lat = subgroup_lattice(x.group)
        coeffs = {}
        for label, mult in decompose(x).multiplicities().items():
            coeffs[lat.class_index_of_label(label)] = ring.from_int(mult)
        return cls(x.group, ring, coeffs)

    def _compat(self, other):
        if self.group != other.group:
            raise GroupMismatchError("elements over different groups")
        if self.ring != other.ring:
            raise RingMismatchError("elements over different rings")

    def add(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = self.ring.add(out.get(k, self.ring.zero), v)
        return BurnsideElement(self.group, self.ring, out)

    def sub(self, other):
        return self.add(other.scale(self.ring.from_int(-1)))

    def scale(self, r):
        return BurnsideElement(
            self.group, self.ring,
            {k: self.ring.mul(r, v) for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return (self.group == other.group and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, self.ring,
                     tuple(sorted((k, str(v)) for k, v in self.coeffs.items()))))

    def is_zero(self):
        return not self.coeffs

    def to_json_dict(self):
        lat = subgroup_lattice(self.group)
        return {
            "group": self.group.label,
            "ring": self.ring.spec,
            "coeffs": {lat.classes[k].label: self.ring.to_str(v)
                       for k, v in sorted(self.coeffs.items())},
        }

    def render(self):
        if not self.coeffs:
            return "0"
        lat = subgroup_lattice(self.group)
        terms = []
        for k, v in sorted(self.coeffs.items()):
            terms.append(f"{self.ring.to_str(v)}*[G/{lat.classes[k].label}]")
        return " + ".join(terms)

    def __repr__(self):
        return f"BurnsideElement({self.group.label}; {self.ring.spec}; {self.render()})"


def identity_element(g: Group, ring) -> BurnsideElement:
    """[G/G], the multiplicative identity."""
    lat = subgroup_lattice(g)
    return BurnsideElement.basis(g, ring, lat.class_count - 1)


def multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Bilinear extension of the product of transitive G-sets."""
    a._compat(b)
    ring = a.ring
    out = {}
    for i, ca in a.coeffs.items():
        for j, cb in b.coeffs.items():
            c = ring.mul(ca, cb)
            for l, mult in structure_constants(a.group, i, j).items():
                out[l] = ring.add(out.get(l, ring.zero),
                                  ring.mul(c, ring.from_int(mult)))
    return BurnsideElement(a.group, ring, out)


def mark(a: BurnsideElement, label: str):
    """The mark of a at a subgroup class: the fixed-point count homomorphism."""
    lat = subgroup_lattice(a.group)
    j = lat.class_index_of_label(label)
    tom = table_of_marks(a.group)
    acc = a.ring.zero
    for k, v in a.coeffs.items():
        acc = a.ring.add(acc, a.ring.mul(v, a.ring.from_int(tom.matrix[k][j])))
    return acc


def marks_vector(a: BurnsideElement):
    """All marks of a, in class order."""
    tom = table_of_marks(a.group)
    n = len(tom.labels)
    ring = a.ring
    out = [ring.zero] * n
    for k, v in a.coeffs.items():
        row = tom.matrix[k]
        for j in range(n):
            if row[j]:
                out[j] = ring.add(out[j], ring.mul(v, ring.from_int(row[j])))
    return out


def idempotent(g: Group, label: str, ring) -> BurnsideElement:
    """The primitive idempotent attached to a subgroup class.

    Gluck/Yoshida formula: e_H = |N_G(H)|^-1 * sum over K <= H of
    |K| mu(K, H) [G/K].  Requires |G| to be a unit in the ring; the
    division is done by the ring inverse of |N_G(H)|.
    """
    if not ring.is_unit(ring.from_int(g.order)):
        raise NotInvertibleError(
            f"|G| = {g.order} is not a unit in {ring.spec}")
    lat = subgroup_lattice(g)
    hi_class = lat.class_index_of_label(label)
    rep = lat.class_rep(hi_class)
    rep_idx = lat.subgroup_index(rep.members)
    nrm = normalizer(g, rep).order
    # integer numerators per class, then one ring division by |N_G(H)|
    numerators = {}
    for ki, sub in enumerate(lat.subgroups):
        if lat.leq(ki, rep_idx):
            mu = lat.moebius_by_index(ki, rep_idx)
            ci = lat.class_of[ki]
            numerators[ci] = numerators.get(ci, 0) + sub.order * mu
    inv_n = ring.inv(ring.from_int(nrm))
    coeffs = {ci: ring.mul(ring.from_int(num), inv_n)
              for ci, num in numerators.items() if num != 0}
    return BurnsideElement(g, ring, coeffs)


def idempotent_system(g: Group, ring):
    """All primitive idempotents, in class order."""
    lat = subgroup_lattice(g)
    return [idempotent(g, c.label, ring) for c in lat.classes]


@dataclass(frozen=True)
class NotInvertible:
    """Failure outcome of invert(); stage explains which step broke."""

    stage: str
    detail: str

    def to_json_dict(self):
        return {"invertible": False, "stage": self.stage, "detail": self.detail}


def invert(a: BurnsideElement):
    """Invert a, or explain why it is not a unit.

    The candidate inverse is read off the ghost side: every mark must be
    a unit, the entrywise-inverted mark vector is pulled back through the
    marks matrix, and the result must multiply back to [G/G].  For Z/m
    the pullback may have several preimages; the kernel coset of the
    marks matrix is searched for one that passes the product check, and
    that search is exhaustive, so a NotInvertible outcome is definitive.
    """
    g = a.group
    ring = a.ring
    lat = subgroup_lattice(g)
    tom = table_of_marks(g)
    n = lat.class_count
    ms = marks_vector(a)
    for j in range(n):
        if not ring.is_unit(ms[j]):
            return NotInvertible(
                "non_unit_mark",
                f"mark at {lat.classes[j].label} is {ring.to_str(ms[j])}")
    ghost = [ring.inv(m) for m in ms]
    one = identity_element(g, ring)

    # pull the inverted ghost vector back through the marks matrix:
    # find x with marks(x) = ghost, i.e. M^T x = ghost.
    mt = [[tom.matrix[k][j] for k in range(n)] for j in range(n)]
    if isinstance(ring, ModularRing):
        res = solve_linear(Matrix.from_rows(ring, mt), ghost)
        if not isinstance(res, Solution):
            return NotInvertible("non_integral_pullback",
                                 "inverted marks have no preimage mod m")
        cand = BurnsideElement(g, ring, dict(enumerate(res.particular)))
        if multiply(a, cand) == one:
            return cand
        # adjust within the ghost-kernel coset: a * (x0 + sum t_i k_i) = 1
        kernel = res.kernel
        prods = [multiply(a, BurnsideElement(g, ring, dict(enumerate(k))))
                 for k in kernel]
        rhs_elem = one.sub(multiply(a, cand))
        rows = []
        rhs = []
        for ci in range(n):
            rows.append([p.coeffs.get(ci, ring.zero) for p in prods])
            rhs.append(rhs_elem.coeffs.get(ci, ring.zero))
        if kernel:
            adj = solve_linear(Matrix.from_rows(ring, rows), rhs)
            if isinstance(adj, Solution):
                out = dict(enumerate(res.particular))
                for t, k in zip(adj.particular, kernel):
                    for idx, kv in enumerate(k):
                        out[idx] = ring.add(out.get(idx, ring.zero),
                                            ring.mul(t, kv))
                cand = BurnsideElement(g, ring, out)
                if multiply(a, cand) != one:
                    raise InternalInconsistencyError("adjusted inverse fails")
                return cand
        return NotInvertible("product_check",
                             "no preimage of the inverted marks is an inverse")

    # Z and Q: the marks matrix is injective, so the pullback is unique.
    res = solve_linear(Matrix.from_rows(QQ, mt),
                       [Fraction(x) for x in ghost])
    if not isinstance(res, Solution):
        raise InternalInconsistencyError("marks matrix is not invertible over Q")
    if isinstance(ring, RationalRing):
        cand = BurnsideElement(g, ring, dict(enumerate(res.particular)))
    else:
        if any(f.denominator != 1 for f in res.particular):
            return NotInvertible("non_integral_pullback",
                                 "ghost inverse does not pull back integrally")
        cand = BurnsideElement(
            g, ring, {i: int(f) for i, f in enumerate(res.particular)})
    if multiply(a, cand) != one:
        raise InternalInconsistencyError("ghost pullback fails the product check")
    return cand
