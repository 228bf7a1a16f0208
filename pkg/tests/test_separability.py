from fractions import Fraction
from math import gcd

import pytest

from burnside.algebra import (
    BurnsideElement,
    identity_element,
    idempotent_system,
    invert,
    multiply,
)
from burnside.errors import NotInvertibleError, ResourceBoundError
from burnside.groups import build_group, squared, subgroup_lattice
from burnside.gsets import induce_along, iso_equal
from burnside.rings import QQ, ZZ, Solution, Zmod, solve_linear
from burnside.separability import (
    TensorElement,
    _embed_d13,
    _embed_delta_g,
    casimir_from_idempotents,
    casimir_linear_system,
    commutant_basis,
    derivation_space,
    functor_separability,
    leibniz_system,
    ring_separability,
    satisfies_leibniz,
    tensor_act_left,
    tensor_act_right,
    tensor_mu,
    verify_casimir,
)

from burnside.bisets import product_of


def _tensor_basis(g, ring, i, j):
    n = subgroup_lattice(g).class_count
    m = [[ring.zero] * n for _ in range(n)]
    m[i][j] = ring.one
    return TensorElement(g, ring, m)


def test_tensor_identity_acts_trivially():
    c2 = build_group("C2")
    u = _tensor_basis(c2, ZZ, 0, 1)
    one = identity_element(c2, ZZ)
    assert tensor_act_left(one, u) == u
    assert tensor_act_right(u, one) == u


def test_tensor_left_action_example():
    # [C2/1] * ([C2/1] (x) [C2/C2]) = 2 [C2/1] (x) [C2/C2]
    c2 = build_group("C2")
    free = BurnsideElement.basis(c2, ZZ, 0)
    u = _tensor_basis(c2, ZZ, 0, 1)
    got = tensor_act_left(free, u)
    assert got.matrix == ((0, 2), (0, 0))
    # on the right factor: [C2/C2] * [C2/1] = [C2/1]
    got_r = tensor_act_right(u, free)
    assert got_r.matrix == ((1, 0), (0, 0))


def test_tensor_free_action_s3():
    # [G/1] . ([G/H] (x) y) = |G:H| [G/1] (x) y
    s3 = build_group("S3")
    lat = subgroup_lattice(s3)
    free = BurnsideElement.basis(s3, ZZ, 0)
    for hi in range(lat.class_count):
        h = lat.class_rep(hi)
        u = _tensor_basis(s3, ZZ, hi, 2)
        got = tensor_act_left(free, u)
        expect = [[0] * lat.class_count for _ in range(lat.class_count)]
        expect[0][2] = s3.order // h.order
        assert got.matrix == tuple(tuple(r) for r in expect)


def test_tensor_mu_examples():
    c2 = build_group("C2")
    assert tensor_mu(_tensor_basis(c2, ZZ, 1, 1)) == identity_element(c2, ZZ)
    assert tensor_mu(_tensor_basis(c2, ZZ, 0, 0)) == \
        BurnsideElement.basis(c2, ZZ, 0).scale(2)


@pytest.mark.parametrize("spec", ["C1", "C2", "C3", "S3", "D8"])
def test_mu_of_idempotent_square_sum(spec):
    g = build_group(spec)
    u = casimir_from_idempotents(g, QQ)
    assert tensor_mu(u) == identity_element(g, QQ)


def test_casimir_c1():
    c1 = build_group("C1")
    u = casimir_from_idempotents(c1, ZZ)
    assert u.matrix == ((1,),)
    assert verify_casimir(u)


def test_casimir_c2_expansions():
    c2 = build_group("C2")
    # e_1 = (1/2)[C2/1], e_C2 = [C2/C2] - (1/2)[C2/1]; u = sum of e (x) e
    u = casimir_from_idempotents(c2, QQ)
    assert u.matrix == ((Fraction(1, 2), Fraction(-1, 2)),
                        (Fraction(-1, 2), Fraction(1)))
    u3 = casimir_from_idempotents(c2, Zmod(3))
    assert u3.matrix == ((2, 1), (1, 1))
    assert verify_casimir(u)
    assert verify_casimir(u3)


def test_casimir_requires_unit_order():
    with pytest.raises(NotInvertibleError):
        casimir_from_idempotents(build_group("C2"), ZZ)


def test_verify_casimir_rejects_identity_tensor():
    # [G/G] (x) [G/G] has mu = [G/G] but fails centrality at x = [C2/1]:
    # left gives [C2/1] (x) [C2/C2], right gives [C2/C2] (x) [C2/1]
    c2 = build_group("C2")
    u = _tensor_basis(c2, ZZ, 1, 1)
    x = BurnsideElement.basis(c2, ZZ, 0)
    left = tensor_act_left(x, u)
    right = tensor_act_right(u, x)
    assert left.matrix == ((0, 1), (0, 0))
    assert right.matrix == ((0, 0), (1, 0))
    assert not verify_casimir(u)


def test_verify_casimir_s3_over_q():
    assert verify_casimir(casimir_from_idempotents(build_group("S3"), QQ))


def test_ring_separability_c2():
    c2 = build_group("C2")
    v = ring_separability(c2, ZZ)
    assert not v.separable
    assert v.obstruction["kind"] == "linear_obstruction"
    assert v.obstruction["non_unit_order"] == {"order": 2, "ring": "Z"}
    assert v.obstruction["certificate"]["kind"] == "invariant_factor"

    v3 = ring_separability(c2, Zmod(3))
    assert v3.separable
    assert verify_casimir(v3.witness)

    v1 = ring_separability(build_group("C1"), ZZ)
    assert v1.separable
    assert v1.witness.matrix == ((1,),)


def test_ring_separability_grid():
    for spec in ("C2", "C3", "S3"):
        g = build_group(spec)
        rings = [ZZ, QQ] + [Zmod(m) for m in range(2, 13)]
        for ring in rings:
            v = ring_separability(g, ring)
            assert v.separable == ring.is_unit(ring.from_int(g.order))
            if v.separable:
                assert verify_casimir(v.witness)
            else:
                cert = v.obstruction["certificate"]
                assert cert["kind"] in ("invariant_factor", "lifted_congruence",
                                        "rank_mismatch")


def test_casimir_system_has_solutions_when_order_is_unit():
    # the idempotent witness satisfies the assembled linear system
    g = build_group("C3")
    ring = Zmod(5)
    matrix, rhs = casimir_linear_system(g, ring)
    res = solve_linear(matrix, rhs)
    assert isinstance(res, Solution)
    u = casimir_from_idempotents(g, ring)
    n = subgroup_lattice(g).class_count
    flat = [u.matrix[i][j] for i in range(n) for j in range(n)]
    for row, b in zip(matrix.entries, rhs):
        acc = ring.zero
        for c, x in zip(row, flat):
            acc = ring.add(acc, ring.mul(c, x))
        assert acc == b


def test_functor_separability_examples():
    s3 = build_group("S3")
    v = functor_separability(s3, QQ)
    assert v.separable
    assert multiply(v.gamma, v.gamma_inverse) == identity_element(s3, QQ)

    c2 = build_group("C2")
    vz = functor_separability(c2, ZZ)
    assert not vz.separable
    assert vz.obstruction["stage"] == "non_unit_mark"
    assert "2" in vz.obstruction["detail"]

    v3 = functor_separability(c2, Zmod(3))
    assert v3.separable
    assert v3.gamma_inverse.coeffs == {1: 2}  # 2[C2/C2], self-inverse mod 3


def test_functor_separability_grid():
    for spec in ("C2", "C3", "S3"):
        g = build_group(spec)
        for ring in [ZZ, QQ] + [Zmod(m) for m in range(2, 13)]:
            v = functor_separability(g, ring)
            assert v.separable == ring.is_unit(ring.from_int(g.order))
            if v.separable:
                assert multiply(v.gamma, v.gamma_inverse) == \
                    identity_element(g, ring)
                assert invert(v.gamma) == v.gamma_inverse


def test_commutant_c1():
    c1 = build_group("C1")
    res = commutant_basis(c1, QQ)
    assert res.dimension == 1
    assert res.matches_diagonal_span
    gg = res.solutions[0].group
    assert subgroup_lattice(gg).class_count == 1


@pytest.mark.parametrize("spec,expected_dim", [("C2", 2), ("C3", 2), ("S3", 4)])
def test_commutant_dimension_over_q(spec, expected_dim):
    g = build_group(spec)
    res = commutant_basis(g, QQ)
    assert res.dimension == expected_dim
    assert res.dimension == subgroup_lattice(g).class_count
    assert res.matches_diagonal_span
    diag = set(res.diagonal_class_indices)
    for sol in res.solutions:
        assert set(sol.coeffs) <= diag


@pytest.mark.parametrize("spec", ["C2", "C3"])
def test_commutant_sufficiency_by_explicit_sets(spec):
    # each diagonal class [GG/Delta(L)] literally induces to the same
    # G^3-set on both sides
    g = build_group(spec)
    gg = squared(g)
    ggg = product_of([g, g, g])
    lat_g = subgroup_lattice(g)
    lat_gg = subgroup_lattice(gg)
    n = g.order
    for cj in range(lat_g.class_count):
        rep = lat_g.class_rep(cj)
        members = [x * n + x for x in rep.members]
        ci = lat_gg.class_of[lat_gg.subgroup_index(members)]
        from burnside.algebra import transitive_of_class
        x = transitive_of_class(gg, ci)
        left = induce_along(x, _embed_delta_g(g), ggg)
        right = induce_along(x, _embed_d13(g), ggg)
        assert iso_equal(left, right)


def test_commutant_over_z_and_modular():
    g = build_group("C2")
    for ring in (ZZ, Zmod(2), Zmod(6)):
        res = commutant_basis(g, ring)
        assert res.matches_diagonal_span
        diag = set(res.diagonal_class_indices)
        for sol in res.solutions:
            assert set(sol.coeffs) <= diag


def test_commutant_resource_bound():
    with pytest.raises(ResourceBoundError):
        commutant_basis(build_group("D8"), QQ)


def test_derivation_space_zero_cases():
    for spec, ring in [("S3", ZZ), ("C4", ZZ), ("C2", ZZ), ("C3", Zmod(5))]:
        d = derivation_space(build_group(spec), ring)
        assert d.is_zero()


def test_derivation_space_modular_nonzero():
    c2 = build_group("C2")
    d2 = derivation_space(c2, Zmod(2))
    assert not d2.is_zero()
    assert ((1, 0), (0, 0)) in d2.basis  # d([C2/1]) = [C2/1], d([C2/C2]) = 0
    for m in d2.basis:
        assert satisfies_leibniz(c2, Zmod(2), m)

    c3 = build_group("C3")
    d3 = derivation_space(c3, Zmod(3))
    assert not d3.is_zero()
    for m in d3.basis:
        assert satisfies_leibniz(c3, Zmod(3), m)


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "S3", "prod(C2,C2)"])
def test_derivations_satisfy_leibniz(spec):
    g = build_group(spec)
    for ring in (Zmod(2), Zmod(3), Zmod(4), Zmod(6)):
        for m in derivation_space(g, ring).basis:
            assert satisfies_leibniz(g, ring, m)


def test_derivations_kill_scaled_idempotents_without_torsion():
    # v_H = |G| e_H has integer coefficients and d(v_H) = 0 whenever the
    # ring has no |G|-torsion
    for spec in ("C2", "C3", "S3"):
        g = build_group(spec)
        idems = idempotent_system(g, QQ)
        vs = []
        for e in idems:
            coeffs = {}
            for k, v in e.coeffs.items():
                scaled = v * g.order
                assert scaled.denominator == 1
                coeffs[k] = int(scaled)
            vs.append(coeffs)
        for m_mod in (5, 7, 11):
            if gcd(m_mod, g.order) != 1:
                continue
            ring = Zmod(m_mod)
            n = subgroup_lattice(g).class_count
            for dmat in derivation_space(g, ring).basis:
                for coeffs in vs:
                    image = [ring.zero] * n
                    for k, v in coeffs.items():
                        for j in range(n):
                            image[j] = ring.add(
                                image[j],
                                ring.mul(ring.from_int(v), dmat[k][j]))
                    assert all(ring.is_zero(x) for x in image)


def test_leibniz_system_shape():
    g = build_group("S3")
    m = leibniz_system(g, ZZ)
    n = subgroup_lattice(g).class_count
    assert m.cols == n * n
