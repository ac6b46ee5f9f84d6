import numpy as np
import pytest

from agwinv.errors import CoefficientsNotInBaseField, ParseError, Singular
from agwinv.field import get_field
from agwinv.linearized import (
    LinearizedPoly,
    Tower,
    associated_gcd_check,
    format_linearized,
    kernel_elements,
    linearized_inverse,
    linearized_matrix,
    mat_mul,
    parse_linearized,
)

F9 = get_field(3, 2)
T9 = Tower(F9)


def lin(tower, coeffs):
    return LinearizedPoly(tower, coeffs)


def test_matrix_examples():
    assert (linearized_matrix(T9, LinearizedPoly.identity(T9)) == np.eye(2)).all()
    # Frobenius on the basis (1, t): t^3 = -t
    assert linearized_matrix(T9, lin(T9, [0, 1])).tolist() == [[1, 0], [0, 2]]
    assert (linearized_matrix(T9, lin(T9, [0, 0])) == 0).all()


def test_inverse_examples():
    assert linearized_inverse(T9, LinearizedPoly.identity(T9)) == LinearizedPoly.identity(T9)
    two_frob = lin(T9, [0, 2])
    assert linearized_inverse(T9, two_frob) == two_frob
    t16 = Tower(get_field(2, 4), 1)
    frob = lin(t16, [0, 1])
    assert linearized_inverse(t16, frob) == lin(t16, [0, 0, 0, 1])
    with pytest.raises(Singular):
        linearized_inverse(T9, lin(T9, [F9.neg(1), 1]))


def test_gcd_examples():
    assert associated_gcd_check(T9, lin(T9, [F9.neg(1), 1]))
    assert not associated_gcd_check(T9, LinearizedPoly.identity(T9))
    t4 = Tower(get_field(2, 2))
    assert associated_gcd_check(t4, lin(t4, [1, 1]))
    with pytest.raises(CoefficientsNotInBaseField):
        associated_gcd_check(T9, lin(T9, [F9.t, 0]))


TOWERS = [(3, 2, 1), (2, 3, 1), (2, 4, 1), (2, 4, 2), (5, 2, 1), (3, 3, 1), (2, 6, 2), (2, 6, 3)]


@pytest.mark.parametrize("p,N,k", TOWERS)
def test_linearity_and_homomorphism(p, N, k, rng):
    tw = Tower(get_field(p, N), k)
    ctx = tw.ctx
    for _ in range(5):
        A = lin(tw, rng.integers(0, ctx.q, tw.n))
        B = lin(tw, rng.integers(0, ctx.q, tw.n))
        xs = rng.integers(0, ctx.q, 10)
        ys = rng.integers(0, ctx.q, 10)
        al = int(rng.choice(tw.base))
        lhs = A(ctx.add(ctx.mul(xs, al), ys))
        assert (lhs == ctx.add(ctx.mul(A(xs), al), A(ys))).all()
        # composition <-> matrix product
        AB = A.compose(B)
        assert (AB.values() == A(B.values())).all()
        M = mat_mul(ctx, linearized_matrix(tw, A), linearized_matrix(tw, B))
        assert (M == linearized_matrix(tw, AB)).all()


@pytest.mark.parametrize("p,N,k", TOWERS)
def test_inverse_round_trip(p, N, k, rng):
    tw = Tower(get_field(p, N), k)
    ctx = tw.ctx
    done = 0
    while done < 5:
        L1 = lin(tw, rng.integers(0, ctx.q, tw.n))
        bijective = np.unique(L1.values()).size == ctx.q
        try:
            M = linearized_inverse(tw, L1)
        except Singular:
            assert not bijective
            continue
        assert bijective
        assert (M(L1.values()) == ctx.elements()).all()
        done += 1


def test_gcd_matches_kernel(rng):
    # gcd != 1 exactly when L has a nonzero root, for F_q-coefficient L
    for p, N, k in TOWERS:
        tw = Tower(get_field(p, N), k)
        for _ in range(10):
            L = lin(tw, tw.base[rng.integers(0, tw.base.size, tw.n)])
            has_root = kernel_elements(tw, L).size > 1
            assert associated_gcd_check(tw, L) == has_root


def test_to_poly_and_literal():
    L = lin(T9, [2, 1])
    assert str(L.to_poly()) == "x^3+[2,0]*x"
    assert (L.to_poly().values() == L.values()).all()
    assert format_linearized(L) == "L:[[2,0],[1,0]]"
    assert parse_linearized(T9, "L:[2,1]") == L
    assert parse_linearized(T9, format_linearized(L)) == L
    for bad in ("[2,1]", "L:[1,2,3]", "L:2", "L:[x]"):
        with pytest.raises(ParseError):
            parse_linearized(T9, bad)


def test_tower_coords():
    tw = Tower(get_field(2, 4), 2)
    assert tw.q == 4 and tw.n == 2 and tw.base.size == 4
    for x in range(16):
        assert tw.from_coords(tw.coords(x)) == x
    with pytest.raises(ValueError):
        Tower(get_field(2, 4), 3)
