"""Separability verdicts, commutant computation and derivation spaces.

Three decision procedures, each with a constructive certificate:

* ``ring_separability``: the Burnside algebra over R is separable exactly
  when |G| is a unit in R.  A positive verdict carries a Casimir element
  built from the primitive idempotents; a negative verdict carries an
  unsolvability certificate for the full Casimir linear system.
* ``functor_separability``: the shifted Burnside functor attached to G is
  separable exactly when |G| is a unit; the witness is an inverse of the
  conjugation class, and the idempotent-built inverse must agree with the
  ghost-pullback inverse.
* ``derivation_space``: the module of derivations of the Burnside algebra
  (equal to first Hochschild cohomology, since inner derivations vanish
  for a commutative algebra acting on itself), solved as the kernel of
  the Leibniz constraints through the structure constants.

The commutant computation pins down which elements over G x G commute
with the identity biset under the two one-sided diagonal products; the
solutions are exactly the span of the diagonal classes [GG/Delta(L)].
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    BurnsideElement,
    NotInvertible,
    identity_element,
    idempotent_system,
    invert,
    multiply,
    structure_constants,
    transitive_of_class,
)
from .bisets import gamma
from .errors import (
    GroupMismatchError,
    InternalInconsistencyError,
    NotInvertibleError,
    ResourceBoundError,
    RingMismatchError,
)
from .groups import (
    Group,
    centralizer_of_subgroup,
    cubed,
    squared,
    subgroup_conjugacy_fingerprint,
    subgroup_lattice,
    subgroups_conjugate,
)
from .gsets import induce_along, orbits, stabilizer
from .rings import Matrix, Solution, solve_linear


# ---------------------------------------------------------------------------
# Tensor square of the Burnside algebra
# ---------------------------------------------------------------------------

class TensorElement:
    """An element of RB(G) (x) RB(G): a class x class coefficient matrix."""

    __slots__ = ("group", "ring", "matrix")

    def __init__(self, group: Group, ring, matrix):
        self.group = group
        self.ring = ring
        n = subgroup_lattice(group).class_count
        rows = tuple(tuple(row) for row in matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GroupMismatchError("tensor matrix must be classes x classes")
        self.matrix = rows

    @classmethod
    def zero(cls, group, ring):
        n = subgroup_lattice(group).class_count
        return cls(group, ring, [[ring.zero] * n for _ in range(n)])

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.group == other.group and self.ring == other.ring
                and self.matrix == other.matrix)

    def to_json_dict(self):
        lat = subgroup_lattice(self.group)
        return {
            "group": self.group.label,
            "ring": self.ring.spec,
            "labels": lat.labels(),
            "matrix": [[self.ring.to_str(x) for x in row] for row in self.matrix],
        }

    def __repr__(self):
        return f"TensorElement({self.group.label}; {self.ring.spec})"


def mult_matrix(a: BurnsideElement):
    """Matrix of multiplication by a on the class basis: column j holds a*[G/H_j]."""
    g, ring = a.group, a.ring
    n = subgroup_lattice(g).class_count
    m = [[ring.zero] * n for _ in range(n)]
    for j in range(n):
        for i, c in a.coeffs.items():
            for l, mult in structure_constants(g, i, j).items():
                m[l][j] = ring.add(m[l][j], ring.mul(c, ring.from_int(mult)))
    return m


def tensor_act_left(x: BurnsideElement, u: TensorElement) -> TensorElement:
    """Multiply the left tensor factor by x."""
    if x.group != u.group:
        raise GroupMismatchError("tensor action over a different group")
    if x.ring != u.ring:
        raise RingMismatchError("tensor action over a different ring")
    ring = u.ring
    lm = mult_matrix(x)
    n = len(u.matrix)
    out = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            c = lm[i][k]
            if ring.is_zero(c):
                continue
            row = u.matrix[k]
            for j in range(n):
                out[i][j] = ring.add(out[i][j], ring.mul(c, row[j]))
    return TensorElement(u.group, ring, out)


def tensor_act_right(u: TensorElement, x: BurnsideElement) -> TensorElement:
    """Multiply the right tensor factor by x."""
    if x.group != u.group:
        raise GroupMismatchError("tensor action over a different group")
    if x.ring != u.ring:
        raise RingMismatchError("tensor action over a different ring")
    ring = u.ring
    lm = mult_matrix(x)
    n = len(u.matrix)
    out = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        urow = u.matrix[i]
        for k in range(n):
            c = urow[k]
            if ring.is_zero(c):
                continue
            for j in range(n):
                out[i][j] = ring.add(out[i][j], ring.mul(c, lm[j][k]))
    return TensorElement(u.group, ring, out)


def tensor_mu(u: TensorElement) -> BurnsideElement:
    """The product map: sum of u[H][K] * [G/H]*[G/K]."""
    g, ring = u.group, u.ring
    out = {}
    n = len(u.matrix)
    for i in range(n):
        for j in range(n):
            c = u.matrix[i][j]
            if ring.is_zero(c):
                continue
            for l, mult in structure_constants(g, i, j).items():
                out[l] = ring.add(out.get(l, ring.zero),
                                  ring.mul(c, ring.from_int(mult)))
    return BurnsideElement(g, ring, out)


def casimir_from_idempotents(g: Group, ring) -> TensorElement:
    """The separability element: sum over classes of e_H (x) e_H."""
    if not ring.is_unit(ring.from_int(g.order)):
        raise NotInvertibleError(f"|G| = {g.order} is not a unit in {ring.spec}")
    idems = idempotent_system(g, ring)
    n = len(idems)
    out = [[ring.zero] * n for _ in range(n)]
    for e in idems:
        for i, ci in e.coeffs.items():
            for j, cj in e.coeffs.items():
                out[i][j] = ring.add(out[i][j], ring.mul(ci, cj))
    return TensorElement(g, ring, out)


def verify_casimir(u: TensorElement) -> bool:
    """Centrality on every basis element plus mu(u) = [G/G]."""
    g, ring = u.group, u.ring
    n = subgroup_lattice(g).class_count
    for i in range(n):
        x = BurnsideElement.basis(g, ring, i)
        if tensor_act_left(x, u) != tensor_act_right(u, x):
            return False
    return tensor_mu(u) == identity_element(g, ring)


# ---------------------------------------------------------------------------
# Ring separability with certificates
# ---------------------------------------------------------------------------

@dataclass
class SeparabilityVerdict:
    separable: bool
    witness: TensorElement | None = None
    obstruction: dict | None = None

    def to_json_dict(self, claim, group, ring):
        out = {
            "claim": claim,
            "group": group.label,
            "ring": ring.spec,
            "separable": self.separable,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out


def casimir_linear_system(g: Group, ring):
    """Constraint matrix for Casimir elements: centrality rows, then mu rows.

    Unknowns are the n*n tensor coefficients u[k][j], vectorised row-major.
    """
    lat = subgroup_lattice(g)
    n = lat.class_count
    rows = []
    rhs = []
    for a in range(n):
        # integer multiplication matrix of the basis element a
        la = [[0] * n for _ in range(n)]
        for j in range(n):
            for l, mult in structure_constants(g, a, j).items():
                la[l][j] = mult
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[k * n + j] += la[i][k]
                    row[i * n + k] -= la[j][k]
                rows.append(row)
                rhs.append(0)
    top = n - 1  # class of G itself
    for b in range(n):
        row = [0] * (n * n)
        for h in range(n):
            for k in range(n):
                row[h * n + k] += structure_constants(g, h, k).get(b, 0)
        rows.append(row)
        rhs.append(1 if b == top else 0)
    matrix = Matrix.from_rows(ring, rows)
    return matrix, [ring.from_int(x) for x in rhs]


def ring_separability(g: Group, ring) -> SeparabilityVerdict:
    """Separability of the Burnside algebra over the coefficient ring.

    Holds exactly when |G| is a unit; negative verdicts are backed by an
    unsolvability certificate for the full Casimir constraint system.
    """
    if ring.is_unit(ring.from_int(g.order)):
        witness = casimir_from_idempotents(g, ring)
        if not verify_casimir(witness):
            raise InternalInconsistencyError(
                "idempotent Casimir element failed verification")
        return SeparabilityVerdict(True, witness=witness)
    matrix, rhs = casimir_linear_system(g, ring)
    res = solve_linear(matrix, rhs)
    if isinstance(res, Solution):
        raise InternalInconsistencyError(
            "Casimir system is solvable although |G| is not a unit")
    obstruction = {
        "kind": "linear_obstruction",
        "non_unit_order": {"order": g.order, "ring": ring.spec},
        "certificate": res.certificate,
    }
    return SeparabilityVerdict(False, obstruction=obstruction)


# ---------------------------------------------------------------------------
# Functor separability via the conjugation class
# ---------------------------------------------------------------------------

@dataclass
class FunctorVerdict:
    separable: bool
    gamma: BurnsideElement
    gamma_inverse: BurnsideElement | None = None
    obstruction: dict | None = None

    def to_json_dict(self, group, ring):
        out = {
            "claim": "functor-separable",
            "group": group.label,
            "ring": ring.spec,
            "separable": self.separable,
            "gamma": self.gamma.to_json_dict(),
        }
        if self.gamma_inverse is not None:
            out["witness"] = self.gamma_inverse.to_json_dict()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out


def functor_separability(g: Group, ring) -> FunctorVerdict:
    """Separability of the Burnside functor shifted by g.

    Decided by invertibility of the conjugation class; when |G| is a
    unit, the explicit inverse sum over |C_G(H)|^-1 e_H must agree with
    the ghost-pullback inverse.
    """
    gam = gamma(g, ring)
    res = invert(gam)
    unit_order = ring.is_unit(ring.from_int(g.order))
    if isinstance(res, NotInvertible):
        if unit_order:
            raise InternalInconsistencyError(
                "|G| is a unit but the conjugation class is not invertible")
        return FunctorVerdict(False, gam, obstruction=res.to_json_dict())
    if not unit_order:
        raise InternalInconsistencyError(
            "conjugation class invertible although |G| is not a unit")
    lat = subgroup_lattice(g)
    idems = idempotent_system(g, ring)
    alpha = BurnsideElement.zero(g, ring)
    for ci in range(lat.class_count):
        c_order = centralizer_of_subgroup(g, lat.class_rep(ci)).order
        alpha = alpha.add(idems[ci].scale(ring.inv(ring.from_int(c_order))))
    if multiply(gam, alpha) != identity_element(g, ring):
        raise InternalInconsistencyError("centralizer inverse fails gamma * alpha = 1")
    if alpha != res:
        raise InternalInconsistencyError(
            "idempotent inverse disagrees with ghost pullback")
    return FunctorVerdict(True, gam, gamma_inverse=alpha)


# ---------------------------------------------------------------------------
# The commutant inside RB(G x G)
# ---------------------------------------------------------------------------

@dataclass
class CommutantResult:
    solutions: list
    matches_diagonal_span: bool
    diagonal_class_indices: list
    dimension: int | None


def _embed_delta_g(g: Group):
    """Images in G^3 of the map (a, b) -> (a, a, b) on G x G."""
    n = g.order
    return [a * n * n + a * n + b for a in g.elements() for b in g.elements()]


def _embed_d13(g: Group):
    """Images in G^3 of the map (c, d) -> (d, c, d) on G x G.

    This is the identification under which the right one-sided diagonal
    product of a GG-set with the identity biset becomes an induction.
    """
    n = g.order
    return [d * n * n + c * n + d for c in g.elements() for d in g.elements()]


def commutant_basis(g: Group, ring, max_base_order: int = 6) -> CommutantResult:
    """Solve the two-sided diagonal condition over the basis of RB(G x G).

    The single witness is the identity biset of G; for m over G x G the
    condition reads Ind along {(a,a,b)} equals Ind along {(a,b,a)} inside
    G^3.  Both inductions of each basis class are transitive, so the
    constraint matrix only needs the G^3-conjugacy classes of the induced
    stabilizers.  The solution set is compared against the span of the
    diagonal classes [GG/Delta(L)].
    """
    if g.order > max_base_order:
        raise ResourceBoundError(
            f"commutant computation capped at base order {max_base_order}")
    gg = squared(g)
    ggg = cubed(g)
    lat_gg = subgroup_lattice(gg)
    n = lat_gg.class_count

    psi1 = _embed_delta_g(g)
    psi2 = _embed_d13(g)

    stabs = []  # stabilizers of both inductions, per basis class
    for ci in range(n):
        x = transitive_of_class(gg, ci)
        for psi in (psi1, psi2):
            ind = induce_along(x, psi, ggg)
            orbs = orbits(ind)
            if len(orbs) != 1:
                raise InternalInconsistencyError(
                    "induction of a transitive set must be transitive")
            stabs.append(stabilizer(ind, orbs[0][0]))

    # cluster all stabilizers by conjugacy in G^3 (fingerprint pruned)
    reps = []
    cls_of = []
    for s in stabs:
        fp = subgroup_conjugacy_fingerprint(ggg, s)
        found = None
        for ri, (rfp, rsub) in enumerate(reps):
            if rfp == fp and subgroups_conjugate(ggg, s, rsub):
                found = ri
                break
        if found is None:
            reps.append((fp, s))
            found = len(reps) - 1
        cls_of.append(found)

    rows = [[0] * n for _ in range(len(reps))]
    for ci in range(n):
        rows[cls_of[2 * ci]][ci] += 1
        rows[cls_of[2 * ci + 1]][ci] -= 1

    res = solve_linear(Matrix.from_rows(ring, rows), [ring.zero] * len(reps))
    if not isinstance(res, Solution):
        raise InternalInconsistencyError("homogeneous system reported unsolvable")
    solutions = [BurnsideElement(gg, ring, dict(enumerate(vec)))
                 for vec in res.kernel]

    # the diagonal classes Delta(L) for L over the base lattice
    lat_g = subgroup_lattice(g)
    diag_classes = []
    for cj in range(lat_g.class_count):
        rep = lat_g.class_rep(cj)
        members = [x * g.order + x for x in rep.members]
        diag_classes.append(lat_gg.class_of[lat_gg.subgroup_index(members)])
    diag_set = set(diag_classes)

    supported = all(set(sol.coeffs) <= diag_set for sol in solutions)
    each_diag_solves = all(
        cls_of[2 * dc] == cls_of[2 * dc + 1] for dc in diag_classes)
    matches = supported and each_diag_solves

    from .rings import RationalRing
    dimension = len(res.kernel) if isinstance(ring, RationalRing) else None
    return CommutantResult(solutions, matches, diag_classes, dimension)


# ---------------------------------------------------------------------------
# Derivations / first Hochschild cohomology
# ---------------------------------------------------------------------------

@dataclass
class DerivationSpace:
    """Spanning set of the derivations d: RB(G) -> RB(G).

    Each entry is a class x class matrix: row H holds the coefficients of
    d([G/H]).  Over Q the list is a basis; over Z and Z/m it spans.
    Inner derivations vanish (commutative algebra, symmetric bimodule),
    so this module is the first Hochschild cohomology itself.
    """

    group: Group
    ring: object
    basis: list

    def is_zero(self):
        return not self.basis

    def matrices_json(self):
        lat = subgroup_lattice(self.group)
        labels = lat.labels()
        out = []
        for m in self.basis:
            out.append({labels[i]: {labels[j]: self.ring.to_str(m[i][j])
                                    for j in range(len(labels))
                                    if not self.ring.is_zero(m[i][j])}
                        for i in range(len(labels))})
        return out


def leibniz_system(g: Group, ring):
    """Homogeneous constraints d(x_i x_j) = d(x_i) x_j + x_i d(x_j).

    Unknowns are the n*n matrix entries d[h][b], vectorised row-major.
    """
    lat = subgroup_lattice(g)
    n = lat.class_count
    rows = []
    for i in range(n):
        for j in range(i, n):
            cij = structure_constants(g, i, j)
            for b in range(n):
                row = [0] * (n * n)
                for l, c in cij.items():
                    row[l * n + b] += c
                for k in range(n):
                    row[i * n + k] -= structure_constants(g, k, j).get(b, 0)
                    row[j * n + k] -= structure_constants(g, i, k).get(b, 0)
                rows.append(row)
    return Matrix.from_rows(ring, rows)


def derivation_space(g: Group, ring) -> DerivationSpace:
    """All derivations of the Burnside algebra over the ring."""
    lat = subgroup_lattice(g)
    n = lat.class_count
    matrix = leibniz_system(g, ring)
    res = solve_linear(matrix, [ring.zero] * matrix.rows)
    if not isinstance(res, Solution):
        raise InternalInconsistencyError("homogeneous system reported unsolvable")
    basis = []
    for vec in res.kernel:
        m = tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n))
        if any(not ring.is_zero(x) for row in m for x in row):
            basis.append(m)
    return DerivationSpace(g, ring, basis)


def satisfies_leibniz(g: Group, ring, matrix) -> bool:
    """Check d(x_i x_j) = d(x_i) x_j + x_i d(x_j) on all basis pairs."""
    lat = subgroup_lattice(g)
    n = lat.class_count

    def d_of(i):
        return BurnsideElement(g, ring, dict(enumerate(matrix[i])))

    for i in range(n):
        xi = BurnsideElement.basis(g, ring, i)
        for j in range(i, n):
            xj = BurnsideElement.basis(g, ring, j)
            lhs = BurnsideElement.zero(g, ring)
            for l, c in structure_constants(g, i, j).items():
                lhs = lhs.add(d_of(l).scale(ring.from_int(c)))
            rhs = multiply(d_of(i), xj).add(multiply(xi, d_of(j)))
            if lhs != rhs:
                return False
    return True
