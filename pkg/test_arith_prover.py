import pytest

from arith_prover import (
    basic_eq,
    numeralize,
    promote,
    prove_add,
    prove_eq,
    prove_lt,
    prove_ma,
    prove_mac,
    prove_mem_c,
    prove_mem_n,
    prove_mem_n0,
    prove_mul,
    prove_succ,
)
from checker import audit_semantics, check, check_root
from errors import NotTrue, OutOfDomain, OutOfRange, ZeroValue
from metrics import dedup_steps, distinct_nodes, occurrences, raw_steps, rule_histogram, step_growth
from numerals import Add, ElN, ElN0, Eq, Lit, Lt, Mul, Pow, to_numeral
from proof import node, walk


def assert_valid(pf, goal=None):
    result = check(pf) if goal is None else check_root(pf, goal)
    assert result.ok, result
    assert audit_semantics(pf).ok


def labels(pf):
    return [cur.rule for _, cur in walk(pf)]


def operand(rng, digits):
    return int(rng.integers(0, 4**digits))


# --- closure ---


def test_golden_tree():
    goal = ElN0(Mul(2, Add(Mul(4, 1), 1)))
    pf = prove_mem_n0(goal.args[0])
    assert pf.stmt == goal
    assert labels(pf) == ["nn0mulcli", "2nn0", "decclc", "1nn0", "1nn0"]
    assert_valid(pf, goal)


def test_mem_n0_literals():
    assert labels(prove_mem_n0(Lit(0))) == ["0nn0"]
    assert labels(prove_mem_n0(Lit(7))) == ["nnnn0i", "7nn"]


def test_mem_n():
    pf = prove_mem_n(Add(Mul(4, 1), 2))
    assert labels(pf) == ["decnnclc", "1nn0", "2nn"]
    assert labels(prove_mem_n(Mul(4, Lit(2)))) == ["decnncl", "2nn"]
    with pytest.raises(ZeroValue):
        prove_mem_n(Lit(0))


def test_mem_n_trailing_zero_strategies():
    t = to_numeral(8)
    via_dec0u = prove_mem_n(t)
    direct = prove_mem_n(t, via_dec0u=False)
    assert via_dec0u.rule == "eqeltri"
    assert direct.rule == "decnncl2"
    assert_valid(via_dec0u, ElN(t))
    assert_valid(direct, ElN(t))


def test_mem_n_generic_term():
    t = Mul(5, 6)
    assert_valid(prove_mem_n(t), ElN(t))
    with pytest.raises(OutOfDomain):
        prove_mem_n(Pow(2, 3))


def test_mem_c():
    assert labels(prove_mem_c(Lit(3))) == ["nn0cni", "3nn0"]
    assert_valid(prove_mem_c(to_numeral(13)))
    assert_valid(prove_mem_c(Mul(5, 6)))


# --- basic facts ---


def test_basic_fact_examples():
    assert "3t2e6" in labels(basic_eq(Mul(3, 2)))
    assert "addid2i" in labels(basic_eq(Add(0, 7)))
    assert labels(basic_eq(Add(9, 1))) == ["df-10"]
    with pytest.raises(OutOfRange):
        basic_eq(Add(6, 5))


def test_basic_fact_bound():
    goals = [Add(x, y) for x in range(11) for y in range(11) if x + y <= 10]
    goals += [Mul(x, y) for x in range(11) for y in range(11) if x * y <= 10]
    for t in goals:
        pf = basic_eq(t)
        assert pf.rhs == t
        assert raw_steps(pf) <= 10, t
        assert_valid(pf)


def test_promote():
    a, b, pf = promote(Lit(3))
    assert (a, b, pf.rule) == (Lit(0), Lit(3), "dec0h")
    a, b, pf = promote(Add(Mul(4, 2), 1))
    assert (a, b, pf.rule) == (Lit(2), Lit(1), "eqid")
    a, b, pf = promote(Lit(0))
    assert (a, b, pf.rule) == (Lit(0), Lit(0), "dec0h")


# --- ordering ---


def test_lt_examples():
    pf = prove_lt(Lit(3), to_numeral(13))
    assert pf.rule == "declti"
    assert_valid(pf, Lt(3, to_numeral(13)))
    pf = prove_lt(to_numeral(8), to_numeral(9))
    assert pf.rule == "declt"
    assert_valid(pf)
    pf = prove_lt(to_numeral(6), to_numeral(13))
    assert pf.rule == "decltc"
    assert Lt(1, 3) in [h.stmt for h in pf.hyps]
    assert_valid(pf)


def test_lt_non_numerals():
    goal = Lt(Mul(2, 3), Add(Lit(9), 1))
    assert_valid(prove_lt(*goal.args), goal)
    with pytest.raises(NotTrue):
        prove_lt(to_numeral(9), to_numeral(9))


def test_lt_small_pairs_exhaustive():
    for n in range(1, 65):
        for m in range(n):
            assert check(prove_lt(to_numeral(m), to_numeral(n))).ok


def test_lt_random_pairs(rng, suite_size):
    for _ in range(suite_size):
        m, n = sorted(operand(rng, 6) for _ in range(2))
        if m == n:
            continue
        assert_valid(prove_lt(to_numeral(m), to_numeral(n)), Lt(to_numeral(m), to_numeral(n)))


@pytest.mark.slow
def test_lt_all_pairs():
    top = 4**6
    for n in range(1, top + 1):
        y = to_numeral(n)
        for m in range(n):
            assert check(prove_lt(to_numeral(m), y), reuse_shared=True).ok


# --- successor ---


def test_succ_examples():
    n = Add(Mul(4, 1), 3)
    pf = prove_succ(n)
    assert pf.rule == "decsucc2"
    assert pf.stmt == Eq(Add(Mul(4, 2), 0), Add(n, 1))
    assert_valid(pf)
    assert labels(prove_succ(Lit(2))) == ["df-3"]


def test_succ_with_alias():
    n = to_numeral(5)
    alias = node("dec5", Eq(n, Lit(5)))
    pf = prove_succ(n, alias)
    assert_valid(pf, Eq(to_numeral(6), Add(5, 1)))


def test_succ_carries():
    for k in [3, 15, 63, 255, 4000, 4**9 - 1]:
        assert_valid(prove_succ(to_numeral(k)), Eq(to_numeral(k + 1), Add(to_numeral(k), 1)))


# --- addition ---


def test_add_examples():
    pf = prove_add(Lit(2), Lit(2))
    assert pf.stmt == Eq(Add(Mul(4, 1), 0), Add(2, 2))
    assert pf.rule == "decaddc"
    assert_valid(pf)

    six, five = to_numeral(6), to_numeral(5)
    pf = prove_add(six, five, node("dec6", Eq(six, Lit(6))), node("dec5", Eq(five, Lit(5))))
    assert_valid(pf, Eq(Add(Mul(4, 2), 3), Add(6, 5)))

    assert_valid(prove_add(Lit(1), Lit(2)), Eq(3, Add(1, 2)))


def test_add_random(rng, suite_size):
    for _ in range(suite_size):
        x, y = operand(rng, 10), operand(rng, 10)
        m, n = to_numeral(x), to_numeral(y)
        assert_valid(prove_add(m, n), Eq(to_numeral(x + y), Add(m, n)))


@pytest.mark.slow
def test_add_suite_full(rng):
    for _ in range(10000):
        x, y = operand(rng, 10), operand(rng, 10)
        m, n = to_numeral(x), to_numeral(y)
        pf = prove_add(m, n)
        assert check_root(pf, Eq(to_numeral(x + y), Add(m, n)), reuse_shared=True).ok
        assert audit_semantics(pf).ok


# --- multiplication ---


def test_mac_and_ma():
    m, n = to_numeral(13), to_numeral(7)
    assert_valid(prove_mac(m, Lit(3), n), Eq(to_numeral(46), Add(Mul(m, 3), n)))
    p = to_numeral(29)
    assert_valid(prove_ma(m, p, n), Eq(to_numeral(13 * 29 + 7), Add(Mul(m, p), n)))
    assert_valid(prove_ma(m, Lit(2), n), Eq(to_numeral(33), Add(Mul(m, 2), n)))
    with pytest.raises(OutOfDomain):
        prove_mac(m, Lit(5), n)


def test_mul_examples():
    five, six = to_numeral(5), to_numeral(6)
    pf = prove_mul(five, six, node("dec5", Eq(five, Lit(5))), node("dec6", Eq(six, Lit(6))))
    assert_valid(pf, Eq(Add(Mul(4, Add(Mul(4, 1), 3)), 2), Mul(5, 6)))

    t = to_numeral(13)
    assert_valid(prove_mul(t, t), Eq(to_numeral(169), Mul(t, t)))

    seven = to_numeral(7)
    pf = prove_mul(seven, Lit(0))
    assert pf.stmt == Eq(0, Mul(seven, 0))
    assert "mul01i" in labels(pf)
    assert_valid(pf)


def test_mul_random(rng, suite_size):
    for _ in range(suite_size):
        x, y = operand(rng, 10), operand(rng, 10)
        m, n = to_numeral(x), to_numeral(y)
        assert_valid(prove_mul(m, n), Eq(to_numeral(x * y), Mul(m, n)))


@pytest.mark.slow
def test_mul_suite_full(rng):
    for _ in range(10000):
        x, y = operand(rng, 10), operand(rng, 10)
        m, n = to_numeral(x), to_numeral(y)
        pf = prove_mul(m, n)
        assert check_root(pf, Eq(to_numeral(x * y), Mul(m, n)), reuse_shared=True).ok
        assert audit_semantics(pf).ok


# --- equality ---


def test_eq_examples():
    x = Add(Mul(4, Add(Mul(4, 1), 3)), 2)
    y = Mul(5, 6)
    assert_valid(prove_eq(x, y), Eq(x, y))
    assert labels(prove_eq(Lit(3), Lit(3))) == ["eqid"]
    pf = prove_eq(Add(1, 2), Mul(3, 1))
    assert pf.rule == "eqtr3i"
    assert_valid(pf, Eq(Add(1, 2), Mul(3, 1)))
    with pytest.raises(NotTrue):
        prove_eq(Add(1, 1), Lit(3))


def test_numeralize_mixed_terms():
    t = Add(Mul(Lit(10), Add(7, 9)), Mul(to_numeral(100), 6))
    pf = numeralize(t)
    assert_valid(pf, Eq(to_numeral(760), t))


# --- growth ---


def test_dedup_never_exceeds_raw(rng):
    pf = prove_mul(to_numeral(operand(rng, 8)), to_numeral(operand(rng, 8)))
    assert dedup_steps(pf) <= raw_steps(pf)


def test_rule_histogram_counts_every_use(rng):
    pf = prove_mul(to_numeral(operand(rng, 8)), to_numeral(operand(rng, 8)))
    assert rule_histogram(pf).sum() == raw_steps(pf)
    assert rule_histogram(pf, per_use=False).sum() == len(distinct_nodes(pf))
    assert occurrences(pf)[id(pf)] == 1
    counts = rule_histogram(pf)
    assert list(counts) == sorted(counts, reverse=True)


@pytest.mark.slow
def test_step_growth():
    table = step_growth((8, 16, 32), samples=100, seed=1)
    ratios = table.dropna().set_index(["op", "digits"])["ratio"]
    for digits in (16, 32):
        assert 1.5 <= ratios[("add", digits)] <= 2.8
        assert 3.0 <= ratios[("mul", digits)] <= 5.5
