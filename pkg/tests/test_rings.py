import random

import pytest

from burnside.errors import DimensionMismatchError, NotInvertibleError, ParseError
from burnside.rings import (
    QQ,
    ZZ,
    Matrix,
    NoSolution,
    Solution,
    Zmod,
    is_unit,
    ring_from_spec,
    smith_normal_form,
    solve_linear,
)

from helpers import bareiss_det, enumerate_modular_solutions, mat_mul, span_closure_mod


def test_ring_from_spec():
    assert ring_from_spec("Z") is ZZ
    assert ring_from_spec("Q") is QQ
    assert ring_from_spec("Z/6") == Zmod(6)
    for bad in ("", "Z/", "Z/1", "Z/x", "R", "GF(4)"):
        with pytest.raises(ParseError):
            ring_from_spec(bad)


def test_is_unit():
    assert not is_unit(2, ZZ)
    assert is_unit(-1, ZZ)
    assert is_unit(2, Zmod(3))
    assert not is_unit(2, Zmod(4))
    assert not is_unit(QQ.zero, QQ)
    assert is_unit(QQ.from_int(7), QQ)


def test_modular_normalisation():
    r = Zmod(5)
    assert r.from_int(-3) == 2
    assert r.add(4, 4) == 3
    assert r.inv(2) == 3
    with pytest.raises(NotInvertibleError):
        Zmod(4).inv(2)


def test_snf_identity_and_zero():
    ident = Matrix.from_rows(ZZ, [[1, 0], [0, 1]])
    s = smith_normal_form(ident)
    assert s.diagonal() == [1, 1]
    zero = Matrix.from_rows(ZZ, [[0, 0], [0, 0]])
    assert smith_normal_form(zero).diagonal() == [0, 0]


def test_snf_diag_2_3():
    s = smith_normal_form(Matrix.from_rows(ZZ, [[2, 0], [0, 3]]))
    assert s.diagonal() == [1, 6]


def test_snf_properties_random():
    rng = random.Random(20240817)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        s = smith_normal_form(Matrix.from_rows(ZZ, a))
        u = [list(r) for r in s.u]
        v = [list(r) for r in s.v]
        prod = mat_mul(mat_mul(u, a), v)
        assert prod == [list(r) for r in s.s]
        diag = s.diagonal()
        for x, y in zip(diag, diag[1:]):
            if x != 0:
                assert y % x == 0
            else:
                assert y == 0
        assert abs(bareiss_det(u)) == 1
        assert abs(bareiss_det(v)) == 1


def test_snf_modular_records_lift():
    s = smith_normal_form(Matrix.from_rows(Zmod(4), [[2, 0], [0, 6]]))
    assert s.lifted is not None
    assert s.lifted.ring is ZZ
    # reduced form is the lift mod 4
    assert s.s == tuple(tuple(x % 4 for x in row) for row in s.lifted.s)


def test_snf_rejects_rationals():
    with pytest.raises(DimensionMismatchError):
        smith_normal_form(Matrix.from_rows(QQ, [[1]]))


def test_solve_examples_from_small_systems():
    # 2x = 1 has no integer solution
    res = solve_linear(Matrix.from_rows(ZZ, [[2]]), [1])
    assert isinstance(res, NoSolution)
    assert res.certificate["kind"] == "invariant_factor"

    # 2x = 1 mod 3: x = 2, no kernel
    res = solve_linear(Matrix.from_rows(Zmod(3), [[2]]), [1])
    assert isinstance(res, Solution)
    assert res.particular == [2]
    assert res.kernel == []

    # 2x = 0 mod 4: kernel spanned by 2
    res = solve_linear(Matrix.from_rows(Zmod(4), [[2]]), [0])
    assert isinstance(res, Solution)
    assert res.particular == [0]
    assert res.kernel == [[2]]


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        solve_linear(Matrix.from_rows(ZZ, [[1, 2]]), [1, 2])


def test_solve_rational_properties():
    rng = random.Random(7)
    for _ in range(30):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randint(-5, 5) for _ in range(cols)]
        b = [sum(r * v for r, v in zip(row, x)) for row in a]
        res = solve_linear(Matrix.from_rows(QQ, a), b)
        assert isinstance(res, Solution)
        assert [sum(r * v for r, v in zip(row, res.particular)) for row in a] == b
        for k in res.kernel:
            assert all(sum(r * v for r, v in zip(row, k)) == 0 for row in a)


def test_solve_integer_properties():
    rng = random.Random(99)
    for _ in range(30):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randint(-4, 4) for _ in range(cols)]
        b = [sum(r * v for r, v in zip(row, x)) for row in a]
        res = solve_linear(Matrix.from_rows(ZZ, a), b)
        assert isinstance(res, Solution)
        assert [sum(r * v for r, v in zip(row, res.particular)) for row in a] == b
        for k in res.kernel:
            assert all(sum(r * v for r, v in zip(row, k)) == 0 for row in a)


def test_solve_modular_matches_enumeration():
    rng = random.Random(20240818)
    for trial in range(100):
        if trial < 60:
            m = rng.randint(2, 12)
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
        else:
            # deeper eliminations at small moduli
            m = rng.choice([2, 3, 4])
            rows = rng.randint(3, 5)
            cols = 4
        a = [[rng.randint(0, m - 1) for _ in range(cols)] for _ in range(rows)]
        b = [rng.randint(0, m - 1) for _ in range(rows)]
        expected = enumerate_modular_solutions(a, b, m)
        res = solve_linear(Matrix.from_rows(Zmod(m), a), b)
        if not expected:
            assert isinstance(res, NoSolution)
            assert res.certificate["kind"] == "lifted_congruence"
            continue
        assert isinstance(res, Solution)
        span = span_closure_mod(res.kernel, m, cols)
        got = {tuple((p + s) % m for p, s in zip(res.particular, off))
               for off in span}
        assert got == expected


def test_modular_diagonalization_properties():
    from math import gcd

    from burnside.rings import _diagonalize_mod

    rng = random.Random(424242)
    for _ in range(50):
        m = rng.randint(2, 12)
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        a = [[rng.randint(0, m - 1) for _ in range(cols)] for _ in range(rows)]
        u, s, v = _diagonalize_mod(a, m)
        prod = [[x % m for x in row] for row in mat_mul(mat_mul(u, a), v)]
        assert prod == s
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert s[i][j] == 0
        assert gcd(bareiss_det([list(r) for r in u]) % m, m) == 1
        assert gcd(bareiss_det([list(r) for r in v]) % m, m) == 1
