import pytest

from errors import OutOfRange, SchemaError
from numerals import (
    Add,
    ElN,
    Eq,
    GcdEq,
    Lit,
    Lt,
    Mul,
    NDvd,
    NPrm,
    PMod,
    Pow,
    Prm,
    Statement,
    evaluate,
    is_numeral,
    is_prime,
    render,
    render_statement,
    split_numeral,
    statement_holds,
    to_numeral,
)

# --- terms ---


def test_literal_range():
    assert Lit(0).v == 0 and Lit(10).v == 10
    with pytest.raises(OutOfRange):
        Lit(11)
    with pytest.raises(OutOfRange):
        Lit(-1)


def test_ints_coerce_to_literals():
    assert Add(1, 2) == Add(Lit(1), Lit(2))
    assert Eq(3, Add(1, 2)).args == (Lit(3), Add(Lit(1), Lit(2)))


def test_statement_heads_are_closed():
    with pytest.raises(SchemaError):
        Statement("le", (Lit(1), Lit(2)))
    with pytest.raises(SchemaError):
        Statement("eq", (Lit(1),))


def test_evaluate():
    assert evaluate(Add(Mul(4, 1), 1)) == 5
    assert evaluate(Add(Mul(4, Add(Mul(4, 1), 3)), 2)) == 30
    assert evaluate(Mul(5, 6)) == 30
    assert evaluate(Pow(5, 3)) == 125


def test_evaluate_refuses_huge_powers():
    tower = Pow(2, Mul(to_numeral(4001), Mul(to_numeral(4001), to_numeral(4001))))
    with pytest.raises(OutOfRange):
        evaluate(tower)
    with pytest.raises(OutOfRange):
        statement_holds(Eq(tower, 3))
    with pytest.raises(OutOfRange):
        statement_holds(PMod(2, to_numeral(1 << 20), 0, 0))
    assert evaluate(Pow(1, to_numeral(1 << 20))) == 1
    assert evaluate(Pow(2, to_numeral(1 << 16))) == 1 << (1 << 16)


# --- numerals ---


def test_to_numeral_examples():
    assert to_numeral(13) == Add(Mul(4, 3), 1)
    assert to_numeral(11) == Add(Mul(4, 2), 3)
    assert to_numeral(2) == Lit(2)
    assert to_numeral(30) == Add(Mul(4, Add(Mul(4, 1), 3)), 2)


def test_to_numeral_rejects_negative():
    with pytest.raises(OutOfRange):
        to_numeral(-1)


def test_to_numeral_cache_is_bounded():
    assert to_numeral.cache_info().maxsize is not None


def test_numeral_round_trip_small():
    for k in range(4**8):
        t = to_numeral(k)
        assert evaluate(t) == k
        assert is_numeral(t)


@pytest.mark.slow
def test_numeral_round_trip_full():
    build = to_numeral.__wrapped__
    for k in range(4**12 + 1):
        assert evaluate(build(k)) == k


def test_canonical_numerals():
    assert is_numeral(Add(Mul(4, 2), 3))
    assert not is_numeral(Lit(4))
    assert not is_numeral(Add(Mul(4, 0), 2))
    assert not is_numeral(Add(Mul(4, 1), 4))
    assert not is_numeral(Mul(5, 6))


def test_extended_numerals():
    assert is_numeral(Lit(6), "extended")
    assert is_numeral(Add(Mul(4, 6), 1), "extended")
    assert is_numeral(Add(Mul(4, Add(Mul(4, 10), 0)), 3), "extended")
    assert is_numeral(Mul(4, Lit(2)), "extended")
    assert not is_numeral(Add(Mul(4, 1), 5), "extended")
    assert not is_numeral(Add(Mul(4, 0), 1), "extended")
    with pytest.raises(ValueError):
        is_numeral(Lit(1), "loose")


def test_split_numeral():
    assert split_numeral(to_numeral(13)) == (Lit(3), Lit(1))
    assert split_numeral(Lit(3)) is None


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(4001) and not is_prime(4003 * 3)


# --- statements ---


def test_statement_holds():
    assert statement_holds(Lt(3, to_numeral(13)))
    assert statement_holds(Prm(Add(Mul(4, 2), 3)))
    assert statement_holds(NDvd(3, to_numeral(11)))
    assert not statement_holds(NDvd(3, to_numeral(12)))
    assert statement_holds(NPrm(to_numeral(25)))
    assert statement_holds(GcdEq(to_numeral(12), 8, 4))
    assert statement_holds(PMod(3, 2, 2, 7))
    assert not statement_holds(PMod(3, 2, 3, 7))
    assert not statement_holds(ElN(0))
    assert not statement_holds(Eq(3, Add(1, 1)))


def test_render():
    t = Add(Mul(4, Add(Mul(4, 1), 3)), 2)
    assert render(t) == "4*(4*1+3)+2"
    assert render(Mul(Add(1, 2), 3)) == "(1+2)*3"
    assert render(Add(1, Add(2, 3))) == "1+(2+3)"
    assert render(to_numeral(4001), numerals_as_int=True) == "4001"
    assert render_statement(Eq(t, Mul(5, 6))) == "4*(4*1+3)+2 = 5*6"
    assert render_statement(Prm(to_numeral(11)), numerals_as_int=True) == "prime 11"
