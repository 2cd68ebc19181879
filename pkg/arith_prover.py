"""
Arithmetic proof synthesis
Closure, ordering, successor, addition and multiplication over base-4 numerals.

Each prover works backwards from the goal down to basic facts about the literals 0-10.
Operations taking "aliases" receive a proof of Eq(numeral, alias) and prove the
result about the alias, so extended leaves such as the literal 6 can stand in for
their numeral 4*1+2.
"""

import logging
import sys
from functools import lru_cache
from typing import Optional, Tuple

from config import RECURSION_LIMIT
from errors import NotTrue, OutOfDomain, OutOfRange, ZeroValue
from numerals import (
    Add,
    ElC,
    ElN,
    ElN0,
    Eq,
    Lit,
    Lt,
    Mul,
    Pow,
    Term,
    evaluate,
    horner,
    is_numeral,
    split_numeral,
    to_numeral,
)
from proof import ProofNode, node

logger = logging.getLogger(__name__)

# long multiplications nest a few hundred rule applications deep
sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))

ZERO, ONE, FOUR = Lit(0), Lit(1), Lit(4)
CACHE_SIZE = 1 << 16


# equality plumbing

def eqid(t: Term) -> ProofNode:
    return node("eqid", Eq(t, t))


def is_refl(pf: ProofNode) -> bool:
    return pf.rule == "eqid"


def symm(pf: ProofNode) -> ProofNode:
    x, y = pf.stmt.args
    return node("eqcomi", Eq(y, x), pf)


def trans(p1: ProofNode, p2: ProofNode) -> ProofNode:
    """Eq(a,b), Eq(b,c) -> Eq(a,c), skipping reflexive links"""
    if is_refl(p1):
        return p2
    if is_refl(p2):
        return p1
    return node("eqtri", Eq(p1.lhs, p2.rhs), p1, p2)


def _alias(pf: Optional[ProofNode], t: Term) -> ProofNode:
    if pf is None:
        return eqid(t)
    if pf.stmt.head != "eq" or pf.lhs != t:
        raise ValueError(f"alias proof must prove an equality about {t}")
    return pf


# closure

@lru_cache(maxsize=CACHE_SIZE)
def prove_mem_n0(t: Term) -> ProofNode:
    """Proof of ElN0(t) for a term built from literals, sums and products"""
    goal = ElN0(t)
    match t:
        case Lit(v) if v <= 4:
            return node(f"{v}nn0", goal)
        case Lit():
            return node("nnnn0i", goal, prove_mem_n(t))
        case Add(Mul(Lit(4), prefix), digit):
            return node("decclc", goal, prove_mem_n0(prefix), prove_mem_n0(digit))
        case Mul(x, y):
            return node("nn0mulcli", goal, prove_mem_n0(x), prove_mem_n0(y))
        case Add(x, y):
            return node("nn0addcli", goal, prove_mem_n0(x), prove_mem_n0(y))
    raise OutOfDomain(f"no closure proof for {t}")


@lru_cache(maxsize=CACHE_SIZE)
def prove_mem_n(t: Term, via_dec0u: bool = True) -> ProofNode:
    """
    Proof of ElN(t) for a term of positive value

    A trailing zero digit 4*a+0 goes through dec0u and eqeltri by default,
    or straight through decnncl2 when via_dec0u is False.
    """
    if isinstance(t, Pow):
        raise OutOfDomain(f"no closure proof for {t}")
    if evaluate(t) == 0:
        raise ZeroValue(f"{t} is zero")
    goal = ElN(t)
    match t:
        case Lit(v):
            return node(f"{v}nn", goal)
        case Add(Mul(Lit(4), prefix), Lit(0)):
            if not via_dec0u:
                return node("decnncl2", goal, prove_mem_n(prefix, via_dec0u))
            times4 = Mul(FOUR, prefix)
            return node(
                "eqeltri",
                goal,
                node("dec0u", Eq(t, times4), prove_mem_n0(prefix)),
                prove_mem_n(times4, via_dec0u),
            )
        case Add(Mul(Lit(4), prefix), digit) if evaluate(digit) > 0:
            return node("decnnclc", goal, prove_mem_n0(prefix), prove_mem_n(digit, via_dec0u))
        case Mul(Lit(4), x):
            return node("decnncl", goal, prove_mem_n(x, via_dec0u))
    # any other positive term: transport membership from its numeral
    to_num = symm(numeralize(t))
    return node("eqeltri", goal, to_num, prove_mem_n(to_num.rhs, via_dec0u))


def prove_mem_c(t: Term) -> ProofNode:
    return node("nn0cni", ElC(t), prove_mem_n0(t))


# basic facts

def _basic_sum(x: int, y: int, t: Term) -> ProofNode:
    s = x + y
    if y == 0:
        return symm(node("addid1i", Eq(t, Lit(x)), prove_mem_c(Lit(x))))
    if x == 0:
        return symm(node("addid2i", Eq(t, Lit(y)), prove_mem_c(Lit(y))))
    if y == 1:
        return node(f"df-{s}", Eq(Lit(s), t))
    if x == 1:
        swapped = Add(Lit(y), ONE)
        return trans(
            node(f"df-{s}", Eq(Lit(s), swapped)),
            node("addcomi", Eq(swapped, t), prove_mem_c(Lit(y)), prove_mem_c(ONE)),
        )
    if x >= y:
        return symm(node(f"{x}p{y}e{s}", Eq(t, Lit(s))))
    swapped = Add(Lit(y), Lit(x))
    return trans(
        symm(node(f"{y}p{x}e{s}", Eq(swapped, Lit(s)))),
        node("addcomi", Eq(swapped, t), prove_mem_c(Lit(y)), prove_mem_c(Lit(x))),
    )


def _basic_product(x: int, y: int, t: Term) -> ProofNode:
    s = x * y
    if y == 0:
        return symm(node("mul01i", Eq(t, ZERO), prove_mem_c(Lit(x))))
    if x == 0:
        return symm(node("mul02i", Eq(t, ZERO), prove_mem_c(Lit(y))))
    if y == 1:
        return symm(node("mulid1i", Eq(t, Lit(x)), prove_mem_c(Lit(x))))
    if x == 1:
        return symm(node("mulid2i", Eq(t, Lit(y)), prove_mem_c(Lit(y))))
    if x >= y:
        return symm(node(f"{x}t{y}e{s}", Eq(t, Lit(s))))
    swapped = Mul(Lit(y), Lit(x))
    return trans(
        symm(node(f"{y}t{x}e{s}", Eq(swapped, Lit(s)))),
        node("mulcomi", Eq(swapped, t), prove_mem_c(Lit(y)), prove_mem_c(Lit(x))),
    )


@lru_cache(maxsize=CACHE_SIZE)
def basic_eq(t: Term) -> ProofNode:
    """
    Proof of Eq(Lit(value), t) for a sum or product of two literals with value at most 10

    Raises:
        OutOfRange: operands are not literals or the value exceeds 10
    """
    match t:
        case Add(Lit(x), Lit(y)) if x + y <= 10:
            return _basic_sum(x, y, t)
        case Mul(Lit(x), Lit(y)) if x * y <= 10:
            return _basic_product(x, y, t)
    raise OutOfRange(f"{t} is not a basic fact")


@lru_cache(maxsize=CACHE_SIZE)
def small_numeral_eq(t: Term) -> ProofNode:
    """Eq([t], t) for a basic sum or product, via dec4..dec10 when the value is 4 or more"""
    pf = basic_eq(t)
    v = pf.lhs.v
    if v < 4:
        return pf
    return trans(node(f"dec{v}", Eq(to_numeral(v), Lit(v))), pf)


# promotion and its inverse

def promote(n: Term) -> Tuple[Term, Term, ProofNode]:
    """
    Rewrite a numeral as 4*a+b

    Returns (a, b, proof of Eq(4*a+b, n)); single digits go through dec0h with a = 0.
    """
    parts = split_numeral(n)
    if parts is None:
        return ZERO, n, node("dec0h", Eq(horner(ZERO, n), n), prove_mem_n0(n))
    return parts[0], parts[1], eqid(n)


def _promoted(n: Term, alias_pf: ProofNode) -> Tuple[Term, Term, ProofNode]:
    a, b, pf = promote(n)
    return a, b, trans(pf, alias_pf)


def _lift(pf: ProofNode) -> ProofNode:
    """Eq(n, x) with n a numeral -> Eq(4*a+b, x)"""
    return _promoted(pf.lhs, pf)[2]


def _demote(pf: ProofNode) -> ProofNode:
    """Eq(4*0+f, x) -> Eq(f, x); other results pass through"""
    parts = split_numeral(pf.lhs)
    if parts is None or parts[0] != ZERO:
        return pf
    f = parts[1]
    return node("eqtr3i", Eq(f, pf.rhs), node("dec0h", Eq(pf.lhs, f), prove_mem_n0(f)), pf)


# ordering

def _provelt(x: Term, y: Term) -> ProofNode:
    goal = Lt(x, y)
    px, py = split_numeral(x), split_numeral(y)
    if px is None and py is None:
        return node(f"{x.v}lt{y.v}", goal)
    if px is None:
        a, b = py
        return node("declti", goal, prove_mem_n(a), prove_mem_n0(b), prove_mem_n0(x), _provelt(x, FOUR))
    (a, b), (c, d) = px, py
    if a == c:
        return node("declt", goal, prove_mem_n0(a), prove_mem_n0(b), prove_mem_n(d), _provelt(b, d))
    return node(
        "decltc",
        goal,
        prove_mem_n0(a),
        prove_mem_n0(b),
        prove_mem_n0(c),
        prove_mem_n0(d),
        _provelt(b, FOUR),
        _provelt(a, c),
    )


def prove_lt(x: Term, y: Term) -> ProofNode:
    """
    Proof of Lt(x, y)

    Non-numeral operands are first rewritten to their numerals with eqbrtrri / breqtri;
    the literal 4 is accepted on the right as is.
    """
    if evaluate(x) >= evaluate(y):
        raise NotTrue(f"{evaluate(x)} < {evaluate(y)} is false")
    if not is_numeral(x):
        to_x = numeralize(x)
        return node("eqbrtrri", Lt(x, y), to_x, prove_lt(to_x.lhs, y))
    if not (is_numeral(y) or y == FOUR):
        to_y = numeralize(y)
        return node("breqtri", Lt(x, y), prove_lt(x, to_y.lhs), to_y)
    return _provelt(x, y)


# successor

def prove_succ(n: Term, alias_pf: Optional[ProofNode] = None) -> ProofNode:
    """Proof of Eq([n+1], alias+1) given alias_pf: Eq(n, alias)"""
    if alias_pf is None or is_refl(alias_pf):
        return _succ_plain(n)
    return _succ(n, _alias(alias_pf, n))


@lru_cache(maxsize=CACHE_SIZE)
def _succ_plain(n: Term) -> ProofNode:
    return _succ(n, eqid(n))


def _succ(n: Term, pf: ProofNode) -> ProofNode:
    alias = pf.rhs
    if evaluate(n) <= 2 and is_refl(pf):
        return basic_eq(Add(n, ONE))
    a, b, pf_n = _promoted(n, pf)
    if b.v < 3:
        c = Lit(b.v + 1)
        out = node(
            "decsuc",
            Eq(horner(a, c), Add(alias, ONE)),
            prove_mem_n0(a),
            prove_mem_n0(b),
            basic_eq(Add(b, ONE)),
            pf_n,
        )
    else:
        pf_b = prove_succ(a)
        out = node("decsucc2", Eq(horner(pf_b.lhs, ZERO), Add(alias, ONE)), prove_mem_n0(a), pf_b, pf_n)
    return _demote(out)


# addition

def prove_add(m: Term, n: Term, m_pf: Optional[ProofNode] = None, n_pf: Optional[ProofNode] = None) -> ProofNode:
    """
    Proof of Eq([m+n], m'+n') for numerals m, n with m_pf: Eq(m, m'), n_pf: Eq(n, n')

    Missing alias proofs mean m' = m and n' = n.
    """
    m_pf, n_pf = _alias(m_pf, m), _alias(n_pf, n)
    if is_refl(m_pf) and is_refl(n_pf):
        return _add_plain(m, n)
    return _add(m, n, m_pf, n_pf)


@lru_cache(maxsize=CACHE_SIZE)
def _add_plain(m: Term, n: Term) -> ProofNode:
    return _add(m, n, eqid(m), eqid(n))


def _add(m: Term, n: Term, m_pf: ProofNode, n_pf: ProofNode) -> ProofNode:
    if evaluate(m) + evaluate(n) < 4 and is_refl(m_pf) and is_refl(n_pf):
        return basic_eq(Add(m, n))
    goal_rhs = Add(m_pf.rhs, n_pf.rhs)
    a, b, pf_m = _promoted(m, m_pf)
    c, d, pf_n = _promoted(n, n_pf)
    digits = b.v + d.v
    if digits < 4:
        pf_e = prove_add(a, c)
        f = Lit(digits)
        out = node(
            "decadd",
            Eq(horner(pf_e.lhs, f), goal_rhs),
            prove_mem_n0(a),
            prove_mem_n0(b),
            prove_mem_n0(c),
            prove_mem_n0(d),
            pf_m,
            pf_n,
            pf_e,
            basic_eq(Add(b, d)),
        )
    else:
        f = Lit(digits - 4)
        pf_ac = prove_add(a, c)
        pf_e = prove_succ(pf_ac.lhs, pf_ac)
        pf_f = node("eqtr3i", Eq(Add(FOUR, f), Add(b, d)), basic_eq(Add(FOUR, f)), basic_eq(Add(b, d)))
        out = node(
            "decaddc",
            Eq(horner(pf_e.lhs, f), goal_rhs),
            prove_mem_n0(a),
            prove_mem_n0(b),
            prove_mem_n0(c),
            prove_mem_n0(d),
            prove_mem_n0(f),
            pf_m,
            pf_n,
            pf_e,
            pf_f,
        )
    return _demote(out)


# multiply-accumulate and multiplication

def prove_mac(
    m: Term, p: Term, n: Term, m_pf: Optional[ProofNode] = None, n_pf: Optional[ProofNode] = None
) -> ProofNode:
    """Proof of Eq([m*p+n], m'*p+n') for a single digit p"""
    if not (isinstance(p, Lit) and p.v < 4):
        raise OutOfDomain(f"multiply-accumulate needs a digit, got {p}")
    m_pf, n_pf = _alias(m_pf, m), _alias(n_pf, n)
    if is_refl(m_pf) and is_refl(n_pf):
        return _mac_plain(m, p, n)
    return _mac(m, p, n, m_pf, n_pf)


@lru_cache(maxsize=CACHE_SIZE)
def _mac_plain(m: Term, p: Lit, n: Term) -> ProofNode:
    return _mac(m, p, n, eqid(m), eqid(n))


def _mac(m: Term, p: Lit, n: Term, m_pf: ProofNode, n_pf: ProofNode) -> ProofNode:
    if isinstance(m, Lit) and is_refl(m_pf):
        pf_mp = small_numeral_eq(Mul(m, p))
        return prove_add(pf_mp.lhs, n, pf_mp, n_pf)
    goal_rhs = Add(Mul(m_pf.rhs, p), n_pf.rhs)
    a, b, pf_m = _promoted(m, m_pf)
    c, d, pf_n = _promoted(n, n_pf)
    pf_bp = small_numeral_eq(Mul(b, p))
    pf_gf = _lift(prove_add(pf_bp.lhs, d, pf_bp))
    g, f = split_numeral(pf_gf.lhs)
    pf_cg = prove_add(c, g)
    pf_e = prove_mac(a, p, pf_cg.lhs, None, pf_cg)
    out = node(
        "decmac",
        Eq(horner(pf_e.lhs, f), goal_rhs),
        prove_mem_n0(a),
        prove_mem_n0(b),
        prove_mem_n0(c),
        prove_mem_n0(d),
        prove_mem_n0(p),
        prove_mem_n0(f),
        prove_mem_n0(g),
        pf_m,
        pf_n,
        pf_e,
        pf_gf,
    )
    return _demote(out)


def prove_ma(
    m: Term,
    p: Term,
    n: Term,
    m_pf: Optional[ProofNode] = None,
    p_pf: Optional[ProofNode] = None,
    n_pf: Optional[ProofNode] = None,
) -> ProofNode:
    """Proof of Eq([m*p+n], m'*p'+n') for numerals m, p, n"""
    m_pf, p_pf, n_pf = _alias(m_pf, m), _alias(p_pf, p), _alias(n_pf, n)
    if isinstance(p, Lit) and p.v < 4 and is_refl(p_pf):
        return prove_mac(m, p, n, m_pf, n_pf)
    goal_rhs = Add(Mul(m_pf.rhs, p_pf.rhs), n_pf.rhs)
    a, b, pf_p = _promoted(p, p_pf)
    c, d, pf_n = _promoted(n, n_pf)
    pf_gf = _lift(prove_mac(m, b, d, m_pf))
    g, f = split_numeral(pf_gf.lhs)
    pf_cg = prove_add(c, g)
    pf_e = prove_ma(m, a, pf_cg.lhs, m_pf, None, pf_cg)
    out = node(
        "decma2c",
        Eq(horner(pf_e.lhs, f), goal_rhs),
        prove_mem_n0(a),
        prove_mem_n0(b),
        prove_mem_n0(c),
        prove_mem_n0(d),
        prove_mem_n0(m_pf.rhs),
        prove_mem_n0(f),
        prove_mem_n0(g),
        pf_p,
        pf_n,
        pf_e,
        pf_gf,
    )
    return _demote(out)


def prove_mul(m: Term, n: Term, m_pf: Optional[ProofNode] = None, n_pf: Optional[ProofNode] = None) -> ProofNode:
    """
    Proof of Eq([m*n], m'*n') for numerals m, n

    Uses decmul1c / decmul2c rather than the multiply-accumulate rules with a zero addend.
    """
    m_pf, n_pf = _alias(m_pf, m), _alias(n_pf, n)
    if is_refl(m_pf) and is_refl(n_pf):
        return _mul_plain(m, n)
    return _mul(m, n, m_pf, n_pf)


@lru_cache(maxsize=CACHE_SIZE)
def _mul_plain(m: Term, n: Term) -> ProofNode:
    return _mul(m, n, eqid(m), eqid(n))


def _mul(m: Term, n: Term, m_pf: ProofNode, n_pf: ProofNode) -> ProofNode:
    m_alias, n_alias = m_pf.rhs, n_pf.rhs
    if n_alias == ZERO:
        return symm(node("mul01i", Eq(Mul(m_alias, ZERO), ZERO), prove_mem_c(m_alias)))
    if m_alias == ZERO:
        return symm(node("mul02i", Eq(Mul(ZERO, n_alias), ZERO), prove_mem_c(n_alias)))
    goal_rhs = Mul(m_alias, n_alias)
    if isinstance(n, Lit) and is_refl(n_pf):
        if isinstance(m, Lit) and is_refl(m_pf):
            return small_numeral_eq(Mul(m, n))
        a, b, pf_m = _promoted(m, m_pf)
        pf_gf = _lift(small_numeral_eq(Mul(b, n)))
        g, f = split_numeral(pf_gf.lhs)
        pf_e = prove_mac(a, n, g)
        out = node(
            "decmul1c",
            Eq(horner(pf_e.lhs, f), goal_rhs),
            prove_mem_n0(a),
            prove_mem_n0(b),
            prove_mem_n0(n),
            prove_mem_n0(f),
            prove_mem_n0(g),
            pf_m,
            pf_e,
            pf_gf,
        )
    else:
        a, b, pf_n = _promoted(n, n_pf)
        pf_gf = _lift(prove_mul(m, b, m_pf))
        g, f = split_numeral(pf_gf.lhs)
        pf_e = prove_ma(m, a, g, m_pf)
        out = node(
            "decmul2c",
            Eq(horner(pf_e.lhs, f), goal_rhs),
            prove_mem_n0(a),
            prove_mem_n0(b),
            prove_mem_n0(m_alias),
            prove_mem_n0(f),
            prove_mem_n0(g),
            pf_n,
            pf_e,
            pf_gf,
        )
    return _demote(out)


# equality

def numeralize(t: Term) -> ProofNode:
    """Proof of Eq([t], t) for any term built from literals, sums and products"""
    if is_numeral(t):
        return eqid(t)
    match t:
        case Lit(v):
            return node(f"dec{v}", Eq(to_numeral(v), t))
        case Add(x, y):
            px, py = numeralize(x), numeralize(y)
            return prove_add(px.lhs, py.lhs, px, py)
        case Mul(x, y):
            px, py = numeralize(x), numeralize(y)
            return prove_mul(px.lhs, py.lhs, px, py)
    raise OutOfDomain(f"{t} has no arithmetic numeral proof")


def prove_eq(x: Term, y: Term) -> ProofNode:
    """
    Proof of Eq(x, y)

    Raises:
        NotTrue: the two sides have different values
        OutOfDomain: a side contains a power
    """
    if evaluate(x) != evaluate(y):
        raise NotTrue(f"{evaluate(x)} = {evaluate(y)} is false")
    if x == y:
        return eqid(x)
    if is_numeral(x):
        return numeralize(y)
    if is_numeral(y):
        return symm(numeralize(x))
    return node("eqtr3i", Eq(x, y), numeralize(x), numeralize(y))
