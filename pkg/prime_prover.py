"""
Primality layer
Non-divisibility, compositeness, gcd, modular powers and primality proofs,
including trial-division stages and Pocklington certificates
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from arith_prover import (
    prove_add,
    prove_lt,
    prove_ma,
    prove_mem_c,
    prove_mem_n,
    prove_mem_n0,
    prove_mul,
    prove_succ,
    symm,
)
from errors import (
    BadChain,
    Composite,
    Divides,
    IsPrime,
    NoCertificate,
    NotPrime,
    OutOfDomain,
    OutOfRange,
    ParseError,
)
from numerals import (
    Add,
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
    is_prime,
    to_numeral,
)
from proof import ProofNode, node
from rules import TRIAL_PRIMES_25, TRIAL_PRIMES_841

logger = logging.getLogger(__name__)

ONE = Lit(1)
TRIAL_LIMIT = 841

# (exponent, left addend, right addend); addends are 1 or earlier exponents
AdditionChain = List[Tuple[int, int, int]]


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization by trial division"""
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class PocklingtonCert:
    N: int
    p: int
    e: int
    B: int
    a: int

    @property
    def m(self) -> int:
        return self.N - 1

    @property
    def g(self) -> int:
        return self.B * self.p ** (self.e - 1)

    @classmethod
    def parse(cls, text: str, N: int) -> "PocklingtonCert":
        """Read "p=<int>,e=<int>,a=<int>"; B is derived from N"""
        fields = {}
        for part in text.split(","):
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or key not in ("p", "e", "a") or key in fields:
                raise ParseError(f"bad certificate field {part.strip()!r}", text.find(part))
            try:
                fields[key] = int(value.strip())
            except ValueError:
                raise ParseError(f"certificate field {key} is not an integer", text.find(part)) from None
        if set(fields) != {"p", "e", "a"}:
            raise ParseError("certificate needs p, e and a")
        pe = fields["p"] ** fields["e"] if fields["e"] >= 1 else 0
        if pe == 0 or (N - 1) % pe:
            raise NoCertificate(f"p^e = {pe} does not divide N-1 = {N - 1}")
        return cls(N, fields["p"], fields["e"], (N - 1) // pe, fields["a"])

    def validate(self) -> "PocklingtonCert":
        """Re-check every certificate condition against the integer oracle"""
        pe = self.p**self.e
        k = pow(self.a, self.g, self.N)
        problems = []
        if not is_prime(self.p):
            problems.append(f"p = {self.p} is not prime")
        if self.e < 1 or self.a < 1 or self.B < 1:
            problems.append("p, e, B and a must be positive")
        if self.B * pe != self.m:
            problems.append(f"N-1 = {self.m} is not B*p^e = {self.B * pe}")
        if self.B >= pe:
            problems.append(f"B = {self.B} is not below p^e = {pe}")
        if pow(self.a, self.m, self.N) != 1:
            problems.append(f"a^(N-1) is not 1 mod N for a = {self.a}")
        if k < 2 or math.gcd(k - 1, self.N) != 1:
            problems.append(f"gcd(a^g - 1, N) is not 1 for a = {self.a}")
        if problems:
            raise NoCertificate("; ".join(problems), N=self.N)
        return self

    def summary(self) -> str:
        return f"N={self.N} p={self.p} e={self.e} B={self.B} a={self.a} g={self.g}"


# trial division stages

def prove_ndvd(a: int, b: int) -> ProofNode:
    """
    Proof of NDvd([a], [b])

    Odd b of four or more uses dec2dvds1 / dec2dvds3 when a = 2, otherwise
    ndvdsi with b = a*q + r and 0 < r < a.
    """
    if a < 2 or b < 1:
        raise OutOfDomain(f"non-divisibility needs a >= 2 and b >= 1, got {a}, {b}")
    if b % a == 0:
        raise Divides(f"{a} divides {b}")
    A, Bn = to_numeral(a), to_numeral(b)
    if a == 2 and b >= 4:
        return node(f"dec2dvds{b % 4}", NDvd(A, Bn), prove_mem_n0(to_numeral(b // 4)))
    q, r = divmod(b, a)
    Q, R = to_numeral(q), to_numeral(r)
    return node(
        "ndvdsi",
        NDvd(A, Bn),
        prove_mem_n0(Q),
        prove_mem_n(A),
        prove_mem_n(R),
        prove_ma(A, Q, R),
        prove_lt(R, A),
    )


def prove_nprime(n: int) -> ProofNode:
    if n < 4:
        raise OutOfDomain(f"compositeness proofs start at 4, got {n}")
    if is_prime(n):
        raise IsPrime(f"{n} is prime")
    Nn = to_numeral(n)
    if n % 4 == 2:
        return node("dec2nprm", NPrm(Nn), prove_mem_n(to_numeral(n // 4)))
    a = min(factorize(n))
    A, Bn = to_numeral(a), to_numeral(n // a)
    return node(
        "nprmi",
        NPrm(Nn),
        prove_mem_n(A),
        prove_mem_n(Bn),
        prove_lt(ONE, A),
        prove_lt(ONE, Bn),
        prove_mul(A, Bn),
    )


def prove_prime_trial(n: int) -> ProofNode:
    """
    Primality below 841 by the two trial-division stages

    Below 25 only 2 and 3 need ruling out; below 29^2 = 841 the primes up to 23.
    """
    if not is_prime(n):
        raise Composite(f"{n} is not prime")
    if n >= TRIAL_LIMIT:
        raise OutOfRange(f"{n} is beyond the trial-division stages (< {TRIAL_LIMIT})")
    Nn = to_numeral(n)
    if n in (2, 3):
        return node(f"prm{n}", Prm(Nn))
    if n < 25:
        label, bound, primes = "prmlt25", 25, TRIAL_PRIMES_25
    else:
        label, bound, primes = "prmlt841", TRIAL_LIMIT, TRIAL_PRIMES_841
    return node(
        label,
        Prm(Nn),
        prove_mem_n(Nn),
        prove_lt(ONE, Nn),
        prove_lt(Nn, to_numeral(bound)),
        *(prove_ndvd(p, n) for p in primes),
    )


# gcd

def prove_gcd(m: int, n: int) -> ProofNode:
    """Euclid descent: gcd(m,n) = gcd(n, m mod n) down to gcd(x,1) or gcd(x,0)"""
    if m < 0 or n < 0:
        raise OutOfDomain("gcd arguments must be nonnegative")
    M, Nn = to_numeral(m), to_numeral(n)
    if n == 1:
        return node("gcdn1", GcdEq(M, ONE, ONE), prove_mem_n0(M))
    if n == 0:
        return node("gcdn0", GcdEq(M, Nn, M), prove_mem_n0(M))
    k, r = divmod(m, n)
    K, R = to_numeral(k), to_numeral(r)
    rest = prove_gcd(n, r)
    return node(
        "gcdi",
        GcdEq(M, Nn, rest.stmt.args[2]),
        prove_mem_n0(K),
        prove_mem_n0(R),
        prove_mem_n0(Nn),
        prove_ma(K, Nn, R),
        rest,
    )


# modular powers

def default_chain(e: int) -> AdditionChain:
    """
    Square-and-multiply over the base-4 digits of e

    Each further digit squares twice and then adds the digit, building 2 and 3 on first use.
    """
    if e < 1:
        raise BadChain(f"exponent must be positive, got {e}")
    digits = []
    x = e
    while x:
        digits.append(x % 4)
        x //= 4
    digits.reverse()

    steps: AdditionChain = []
    have = {1}

    def add(t: int, u: int) -> int:
        s = t + u
        if s not in have:
            steps.append((s, t, u))
            have.add(s)
        return s

    def small(digit: int) -> int:
        if digit >= 2:
            add(1, 1)
        if digit == 3:
            add(2, 1)
        return digit

    cur = small(digits[0])
    for digit in digits[1:]:
        cur = add(cur, cur)
        cur = add(cur, cur)
        if digit:
            cur = add(cur, small(digit))
    return steps


def validate_chain(chain: Sequence[Tuple[int, int, int]], e: int) -> AdditionChain:
    have = {1}
    for step in chain:
        s, t, u = step
        if t not in have or u not in have:
            raise BadChain(f"step {step} uses an exponent not yet built")
        if s != t + u:
            raise BadChain(f"step {step} is not a sum")
        have.add(s)
    if e not in have:
        raise BadChain(f"chain does not reach {e}")
    return [tuple(step) for step in chain]


def prove_powmod(
    a: int, e: int, n: int, chain: Optional[Sequence[Tuple[int, int, int]]] = None
) -> Tuple[int, ProofNode]:
    """
    Proof of PMod([a], [e], [r], [n]) with r = a^e mod n

    Args:
        a: base
        e: exponent, at least 1
        n: modulus, at least 2
        chain: addition chain reaching e; square-and-multiply when omitted

    Returns:
        (r, proof); an exponent used twice in one step shares one subproof
    """
    if n < 2 or e < 1 or a < 0:
        raise OutOfDomain(f"modular power needs a >= 0, e >= 1, n >= 2, got {a}, {e}, {n}")
    steps = validate_chain(default_chain(e) if chain is None else chain, e)
    A, Nn = to_numeral(a), to_numeral(n)

    q, r = divmod(a, n)
    Q, R = to_numeral(q), to_numeral(r)
    base = node(
        "pm1",
        PMod(A, ONE, R, Nn),
        prove_mem_n0(A),
        prove_mem_n(Nn),
        prove_mem_n0(Q),
        prove_mem_n0(R),
        prove_ma(Q, Nn, R),
        prove_lt(R, Nn),
    )
    proofs = {1: (r, base)}
    for s, t, u in steps:
        (k, pk), (l, pl) = proofs[t], proofs[u]
        d, res = divmod(k * l, n)
        K, L, Dn, Res = to_numeral(k), to_numeral(l), to_numeral(d), to_numeral(res)
        product = prove_mul(K, L)
        expanded = prove_ma(Dn, Nn, Res)
        proofs[s] = (
            res,
            node(
                "modxai",
                PMod(A, to_numeral(s), Res, Nn),
                prove_mem_n0(Dn),
                prove_mem_n0(Res),
                prove_mem_n0(K),
                prove_mem_n0(L),
                prove_mem_n(Nn),
                prove_add(to_numeral(t), to_numeral(u)),
                node("eqtr3i", Eq(Add(Mul(Dn, Nn), Res), Mul(K, L)), expanded, product),
                pk,
                pl,
            ),
        )
    logger.debug(f"{a}^{e} mod {n} via a chain of {len(steps)} steps")
    return proofs[e]


def prove_pow(p: int, e: int) -> ProofNode:
    """Eq([p^e], Pow([p], [e])) by unrolling p^e into repeated products"""
    P = to_numeral(p)
    if e == 1:
        return symm(node("exp1", Eq(Pow(P, ONE), P), prove_mem_c(P)))
    prev = prove_pow(p, e - 1)
    times = prove_mul(prev.lhs, P)
    bump = prove_succ(to_numeral(e - 1))
    return node("expsucci", Eq(times.lhs, Pow(P, bump.lhs)), prev, times, bump)


# certificates

def find_pocklington_cert(N: int) -> PocklingtonCert:
    """
    Certificate for N from the largest prime power p^e exactly dividing N-1 with cofactor B < p^e

    The witness a is the first base from 2 upward that passes both power conditions.
    """
    if not is_prime(N):
        raise NotPrime(f"{N} is not prime")
    if N < 3:
        raise NoCertificate(f"{N} has no Pocklington certificate")
    m = N - 1
    candidates = [(p**e, p, e) for p, e in factorize(m).items() if m // p**e < p**e]
    if not candidates:
        raise NoCertificate(f"no prime power of N-1 = {m} exceeds its cofactor", N=N)
    pe, p, e = max(candidates, key=lambda c: (c[0], -c[1]))
    B = m // pe
    g = B * p ** (e - 1)
    for a in range(2, N):
        if pow(a, m, N) != 1:
            continue
        k = pow(a, g, N)
        if k >= 2 and math.gcd(k - 1, N) == 1:
            cert = PocklingtonCert(N, p, e, B, a)
            logger.debug(f"Pocklington certificate {cert.summary()}")
            return cert
    raise NoCertificate(f"no witness base for N = {N}", N=N)


def prove_prime_pocklington(N: int, cert: Optional[PocklingtonCert] = None) -> ProofNode:
    cert = (cert or find_pocklington_cert(N)).validate()
    P, E, Bn, G, A = (to_numeral(x) for x in (cert.p, cert.e, cert.B, cert.g, cert.a))
    M, Nn = to_numeral(cert.m), to_numeral(N)

    power = prove_pow(cert.p, cert.e)
    _, full = prove_powmod(cert.a, cert.m, N)
    k, partial = prove_powmod(cert.a, cert.g, N)
    K1 = to_numeral(k - 1)
    return node(
        "pockthi-variant",
        Prm(Nn),
        prove_prime(cert.p),
        prove_mem_n(G),
        prove_mem_n(Bn),
        prove_mem_n(E),
        prove_mem_n(A),
        prove_mul(G, P),
        prove_succ(M),
        prove_mul(Bn, power.lhs, None, power),
        node("breqtri", Lt(Bn, power.rhs), prove_lt(Bn, power.lhs), power),
        full,
        partial,
        prove_succ(K1),
        prove_mem_n(K1),
        prove_gcd(N, k - 1),
    )


def prove_prime(N: int, method: str = "auto", cert: Optional[PocklingtonCert] = None) -> ProofNode:
    """
    Proof of Prm([N])

    Args:
        N: the prime
        method: "trial" (N < 841), "pocklington", or "auto" choosing trial below 841
        cert: certificate to use instead of searching for one
    """
    if not is_prime(N):
        raise Composite(f"{N} is not prime")
    if method == "auto":
        method = "trial" if N < TRIAL_LIMIT and cert is None else "pocklington"
    if method == "trial":
        return prove_prime_trial(N)
    if method == "pocklington":
        return prove_prime_pocklington(N, cert)
    raise ValueError(f"unknown method {method!r}")


def prove_doubling_steps(primes: Sequence[int]) -> List[ProofNode]:
    """Lt([p_next], 2*[p]) for each consecutive pair of the sequence"""
    return [prove_lt(to_numeral(nxt), Mul(Lit(2), to_numeral(cur))) for cur, nxt in zip(primes, primes[1:])]
