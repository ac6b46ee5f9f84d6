import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agwinv.errors import DomainNotTotal, ParseError
from agwinv.field import get_field, parse_field_spec
from agwinv.pointmap import PointMap
from agwinv.poly import (
    Poly,
    format_poly,
    interpolate_points,
    interpolate_subgroup,
    lagrange_interpolate,
    parse_poly,
    poly_eval,
    poly_normalize,
    with_value_at_zero,
)

F5 = get_field(5)
F7 = get_field(7)
F9 = get_field(3, 2)


def _naive_lagrange(ctx, table) -> Poly:
    """Sum of F(a) * prod_{b != a} (x - b)/(a - b), expanded and normalized."""
    total = Poly.zero(ctx)
    xs = list(range(ctx.q))
    for a in xs:
        if table[a] == 0:
            continue
        basis = Poly.const(ctx, 1)
        denom = 1
        for b in xs:
            if b != a:
                basis = basis * Poly(ctx, [ctx.neg(b), 1])
                denom = ctx.mul(denom, ctx.sub(a, b))
        total = total + basis.scale(ctx.div(int(table[a]), denom))
    return total.normalize()


def _value_table_loop(f: Poly):
    ctx = f.ctx
    out = []
    for x in range(ctx.q):
        acc, xp = 0, 1
        for c in f.coeffs.tolist():
            acc = ctx.add(acc, ctx.mul(c, xp))
            xp = ctx.mul(xp, x)
        out.append(acc)
    return np.array(out)


def test_eval_examples():
    assert poly_eval(F5, parse_poly(F5, "x^3+1"), 2) == 4
    assert poly_eval(F7, parse_poly(F7, "x^4+3*x"), 2) == 1
    x = Poly.x(F9)
    assert all(poly_eval(F9, x, a) == a for a in range(9))


def test_normalize_examples():
    assert poly_normalize(F5, parse_poly(F5, "x^9")) == Poly.x(F5)
    assert poly_normalize(F5, parse_poly(F5, "x^4+x^8")) == parse_poly(F5, "2*x^4")
    assert poly_normalize(F5, Poly.const(F5, 3)) == Poly.const(F5, 3)
    # x^q-1 stays, it is not the constant 1
    assert poly_normalize(F5, parse_poly(F5, "x^4")).degree == 4


def test_interpolate_examples():
    xs = F5.elements()
    assert lagrange_interpolate(F5, PointMap(xs, xs)) == Poly.x(F5)
    assert lagrange_interpolate(F5, PointMap(xs, F5.pow(xs, 3))) == parse_poly(F5, "x^3")
    assert lagrange_interpolate(F5, np.zeros(5, dtype=np.int64)).is_zero()
    with pytest.raises(DomainNotTotal):
        lagrange_interpolate(F5, PointMap([0, 1, 2], [0, 1, 2]))


@pytest.mark.parametrize("spec", ["2", "3", "4", "5", "7", "8", "9", "16", "25", "27"])
def test_interpolation_matches_naive_lagrange(spec, rng):
    ctx = parse_field_spec(spec)
    for _ in range(5):
        table = rng.integers(0, ctx.q, ctx.q)
        assert lagrange_interpolate(ctx, table) == _naive_lagrange(ctx, table)


@pytest.mark.parametrize("spec", ["5", "8", "9", "13", "16", "27", "32", "49", "64", "81", "125", "128"])
def test_normalize_preserves_values(spec, rng):
    ctx = parse_field_spec(spec)
    for _ in range(4):
        f = Poly(ctx, rng.integers(0, ctx.q, 3 * ctx.q))
        g = f.normalize()
        assert g.degree < ctx.q
        assert (g.values() == f.values()).all()
        assert lagrange_interpolate(ctx, f.values()) == g


def test_horner_matches_loop(rng):
    for spec in ("7", "9", "16", "25"):
        ctx = parse_field_spec(spec)
        f = Poly(ctx, rng.integers(0, ctx.q, 12))
        assert (f.values() == _value_table_loop(f)).all()
        assert all(f(int(a)) == f.values()[a] for a in range(ctx.q))


def test_subgroup_interpolation(rng):
    for spec, s in (("13", 3), ("16", 5), ("25", 4), ("9", 2), ("7", 6)):
        ctx = parse_field_spec(spec)
        ell = (ctx.q - 1) // s
        mu = ctx.exp_table[(s * np.arange(ell)) % (ctx.q - 1)]
        vals = rng.integers(0, ctx.q, ell)
        K = interpolate_subgroup(ctx, s, vals)
        assert K.degree < ell
        assert (K(mu) == vals).all()


def test_newton_interpolation(rng):
    pts = [1, 3, 5, 7]
    f = interpolate_points(F9, pts, [2, 0, 4, 8])
    assert [f(p) for p in pts] == [2, 0, 4, 8]
    with pytest.raises(ValueError):
        interpolate_points(F9, [1, 1], [0, 0])


def test_with_value_at_zero():
    f = parse_poly(F7, "x+1")
    g = with_value_at_zero(f, 5)
    assert g(0) == 5
    assert all(g(a) == f(a) for a in range(1, 7))


def test_arithmetic(rng):
    ctx = F9
    for _ in range(20):
        a = Poly(ctx, rng.integers(0, 9, 6))
        b = Poly(ctx, rng.integers(0, 9, 4))
        if b.is_zero():
            continue
        qq, r = a.divmod(b)
        assert qq * b + r == a
        assert r.degree < b.degree
        assert ((a * b).values() == ctx.mul(a.values(), b.values())).all()
        assert ((a - b).values() == ctx.sub(a.values(), b.values())).all()
        assert (a.compose(b).values() == a(b.values())).all()
        g = a.gcd(b)
        if not g.is_zero():
            assert (a % g).is_zero() and (b % g).is_zero()


def test_pow_and_substitute():
    f = parse_poly(F7, "x+3")
    assert f.pow(3, reduce=False) == f * f * f
    assert f.substitute_power(3) == parse_poly(F7, "x^3+3")
    assert f.shift(2) == parse_poly(F7, "x^3+3*x^2")


def test_literal_grammar():
    assert str(parse_poly(F7, "x^4 + 3*x")) == "x^4+3*x"
    assert parse_poly(F7, "-x") == parse_poly(F7, "6*x")
    assert parse_poly(F7, "10") == Poly.const(F7, 3)
    assert parse_poly(F7, "x - 1 + x^2") == Poly(F7, [6, 1, 1])
    f = parse_poly(F9, "[0,1]*x^2+[2,1]")
    assert format_poly(f) == "[0,1]*x^2+[2,1]"
    assert parse_poly(F9, format_poly(f)) == f
    assert format_poly(Poly.zero(F9)) == "0"


@pytest.mark.parametrize("bad,pos", [("x^", 1), ("3**x", 0), ("x+", 2), ("[1,2,3]*x", 0), ("y", 0)])
def test_literal_errors_carry_position(bad, pos):
    with pytest.raises(ParseError) as e:
        parse_poly(F9, bad)
    assert e.value.position == pos


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=0, max_size=12))
def test_format_parse_roundtrip(coeffs):
    f = Poly(F9, coeffs)
    assert parse_poly(F9, format_poly(f)) == f


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 24), min_size=25, max_size=25))
def test_interpolation_left_inverse(table):
    ctx = get_field(5, 2)
    f = lagrange_interpolate(ctx, np.array(table))
    assert f.values().tolist() == table
