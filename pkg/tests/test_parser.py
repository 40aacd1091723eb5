import numpy as np
import pytest

from mixedpoly import MixedPolynomial, ParseError, format_polynomial, parse
from mixedpoly.parser import SourceExpr

from oracles import EX1, EX2, random_poly


def test_example1_terms():
    f = parse(EX1)
    assert f.n == 2
    assert f.terms == {((1, 1), (0, 0)): 1, ((0, 0), (2, 2)): 1}


def test_example2_terms():
    f = parse(EX2)
    assert f.terms == {
        ((1, 0), (0, 0)): 1,
        ((0, 1), (0, 0)): 1,
        ((0, 0), (2, 0)): 1,
        ((0, 0), (0, 2)): 1,
    }


def test_zero():
    assert parse("0").is_zero
    assert format_polynomial(parse("0")) == "0"


def test_complex_literals():
    assert parse("i").terms == {((0,), (0,)): 1j}
    assert parse("2i*z1").terms == {((1,), (0,)): 2j}
    assert parse("(3+2i)*zb1").terms == {((0,), (1,)): 3 + 2j}
    assert parse("1.5e1 * z1").terms == {((1,), (0,)): 15}


def test_conj_expands():
    assert parse("conj(z1)") == parse("zb1")
    assert parse("conj((1+i)*z1*zb2)") == parse("(1-i)*zb1*z2")


def test_precedence_and_associativity():
    assert parse("2*z1^2") == parse("2*(z1*z1)")
    assert parse("z1 - z2 - z1", 2) == parse("-z2", 2)
    assert parse("-z1^2") == -parse("z1^2")
    assert parse("(z1+1)^2") == parse("z1^2 + 2*z1 + 1")
    assert parse("z1^2^2") == parse("z1^4")


def test_declared_n():
    assert parse(SourceExpr("z1", 3)).n == 3
    assert parse("z1", 2).n == 2
    with pytest.raises(ParseError):
        parse("z3", 2)


@pytest.mark.parametrize(
    "text",
    ["(", "", "   ", "2z1", "2 z1", "z1^-1", "z1^1.5", "z0", "zz1", "z1 +", "conj z1", "z1)", "w1", "3 4"],
)
def test_positioned_errors(text):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert 0 <= err.value.offset <= len(text.encode("utf-8"))


def test_error_offset_points_at_problem():
    with pytest.raises(ParseError) as err:
        parse("z1 + 2z2")
    assert err.value.offset == 6  # the unexpected variable right after the number
    with pytest.raises(ParseError) as err:
        parse("(")
    assert err.value.offset == 1 and err.value.expected


def test_byte_offsets_with_unicode():
    with pytest.raises(ParseError) as err:
        parse("z1 + é")
    assert err.value.offset == 5


def test_format_canonical():
    assert format_polynomial(parse(EX1)) == "z1*z2 + zb1^2*zb2^2"
    assert format_polynomial(parse("zb1^2*zb2^2 + z1*z2")) == "z1*z2 + zb1^2*zb2^2"


def test_format_round_trip_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, int(rng.integers(1, 7)), 4)
        if rng.uniform() < 0.3:
            f = f + complex(rng.normal(), rng.normal())
        assert parse(format_polynomial(f), n) == f


def test_format_special_coefficients():
    f = MixedPolynomial(1, {((1,), (0,)): -1, ((0,), (1,)): 1j, ((0,), (0,)): -2.5 - 0.125j})
    assert parse(format_polynomial(f)) == f
