"""
Term and statement language for base-4 numeral arithmetic
Defines literals 0-10, sums, products and powers, the canonical numeral form
and the unbounded-integer oracle used by tests and certificate search
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Tuple, Union

from errors import OutOfRange, SchemaError

BASE = 4
MAX_LITERAL = 10
# largest power evaluate computes exactly, in bits
MAX_POWER_BITS = 1 << 16
NUMERAL_CACHE_SIZE = 1 << 16


def _coerce(x):
    return Lit(x) if isinstance(x, int) and not isinstance(x, bool) else x


@dataclass(frozen=True, slots=True)
class Lit:
    v: int

    def __post_init__(self):
        if isinstance(self.v, bool) or not isinstance(self.v, int) or not 0 <= self.v <= MAX_LITERAL:
            raise OutOfRange(f"literal must lie in [0, {MAX_LITERAL}], got {self.v!r}")

    @property
    def args(self) -> tuple:
        return ()


@dataclass(frozen=True, slots=True)
class Add:
    l: "Term"
    r: "Term"

    def __post_init__(self):
        object.__setattr__(self, "l", _coerce(self.l))
        object.__setattr__(self, "r", _coerce(self.r))

    @property
    def args(self) -> tuple:
        return (self.l, self.r)


@dataclass(frozen=True, slots=True)
class Mul:
    l: "Term"
    r: "Term"

    def __post_init__(self):
        object.__setattr__(self, "l", _coerce(self.l))
        object.__setattr__(self, "r", _coerce(self.r))

    @property
    def args(self) -> tuple:
        return (self.l, self.r)


@dataclass(frozen=True, slots=True)
class Pow:
    base: "Term"
    exp: "Term"

    def __post_init__(self):
        object.__setattr__(self, "base", _coerce(self.base))
        object.__setattr__(self, "exp", _coerce(self.exp))

    @property
    def args(self) -> tuple:
        return (self.base, self.exp)


Term = Union[Lit, Add, Mul, Pow]

# head -> arity; the closed set of statement kinds
HEADS = {
    "eq": 2,
    "lt": 2,
    "elN": 1,
    "elN0": 1,
    "elC": 1,
    "ndvd": 2,
    "nprm": 1,
    "prm": 1,
    "gcdeq": 3,
    "pmod": 4,
}


@dataclass(frozen=True, slots=True)
class Statement:
    head: str
    args: Tuple[Term, ...]

    def __post_init__(self):
        if self.head not in HEADS:
            raise SchemaError(f"unknown statement head {self.head!r}")
        args = tuple(_coerce(a) for a in self.args)
        if len(args) != HEADS[self.head]:
            raise SchemaError(f"{self.head} takes {HEADS[self.head]} arguments, got {len(args)}")
        object.__setattr__(self, "args", args)


def Eq(lhs, rhs) -> Statement:
    return Statement("eq", (lhs, rhs))


def Lt(lhs, rhs) -> Statement:
    return Statement("lt", (lhs, rhs))


def ElN(t) -> Statement:
    return Statement("elN", (t,))


def ElN0(t) -> Statement:
    return Statement("elN0", (t,))


def ElC(t) -> Statement:
    return Statement("elC", (t,))


def NDvd(a, b) -> Statement:
    return Statement("ndvd", (a, b))


def NPrm(n) -> Statement:
    return Statement("nprm", (n,))


def Prm(n) -> Statement:
    return Statement("prm", (n,))


def GcdEq(a, b, g) -> Statement:
    return Statement("gcdeq", (a, b, g))


def PMod(base, exp, residue, modulus) -> Statement:
    return Statement("pmod", (base, exp, residue, modulus))


def horner(prefix, digit) -> Add:
    """The digit-append form 4*prefix+digit"""
    return Add(Mul(Lit(BASE), prefix), digit)


def evaluate(t: Term) -> int:
    """Value of a ground term under ordinary integer arithmetic"""
    match t:
        case Lit(v):
            return v
        case Add(l, r):
            return evaluate(l) + evaluate(r)
        case Mul(l, r):
            return evaluate(l) * evaluate(r)
        case Pow(b, e):
            base, exp = evaluate(b), evaluate(e)
            if base > 1 and exp * (base.bit_length() - 1) > MAX_POWER_BITS:
                raise OutOfRange(f"power {base}^{exp} exceeds {MAX_POWER_BITS} bits")
            return base**exp
    raise TypeError(f"not a ground term: {t!r}")


@lru_cache(maxsize=NUMERAL_CACHE_SIZE)
def to_numeral(k: int) -> Term:
    """
    Canonical base-4 numeral for k

    The least significant digit is k mod 4 and the prefix is the numeral of k div 4,
    so 13 becomes 4*3+1 and 11 becomes 4*2+3.
    """
    if k < 0:
        raise OutOfRange(f"numerals denote nonnegative integers, got {k}")
    if k < BASE:
        return Lit(k)
    return horner(to_numeral(k // BASE), Lit(k % BASE))


def split_numeral(t: Term):
    """(prefix, digit) for a term of the shape 4*prefix+digit, else None"""
    match t:
        case Add(Mul(Lit(4), prefix), digit):
            return prefix, digit
    return None


def _canonical(t: Term) -> bool:
    match t:
        case Lit(v):
            return v < BASE
        case Add(Mul(Lit(4), n), Lit(a)) if a < BASE:
            return n != Lit(0) and _canonical(n)
    return False


def _extended(t: Term) -> bool:
    # only the low digit is restricted to 0-3; the leading digit may be any literal
    match t:
        case Lit():
            return True
        case Add(Mul(Lit(4), n), Lit(a)) if a < BASE:
            return _extended(n) and evaluate(n) != 0
        case Mul(Lit(4), n):
            return _extended(n) and evaluate(n) != 0
    return False


def is_numeral(t: Term, mode: Literal["canonical", "extended"] = "canonical") -> bool:
    if mode == "canonical":
        return _canonical(t)
    if mode == "extended":
        return _extended(t)
    raise ValueError(f"unknown numeral mode {mode!r}")


def is_prime(n: int) -> bool:
    """Deterministic trial division up to the integer square root"""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def statement_holds(s: Statement) -> bool:
    """Truth of a ground statement over the nonnegative integers"""
    vals = [evaluate(a) for a in s.args] if s.head != "pmod" else None
    match s.head:
        case "eq":
            return vals[0] == vals[1]
        case "lt":
            return vals[0] < vals[1]
        case "elN":
            return vals[0] >= 1
        case "elN0" | "elC":
            return vals[0] >= 0
        case "ndvd":
            a, b = vals
            return b % a != 0 if a else b != 0
        case "nprm":
            return not is_prime(vals[0])
        case "prm":
            return is_prime(vals[0])
        case "gcdeq":
            return math.gcd(vals[0], vals[1]) == vals[2]
        case "pmod":
            a, e, r, n = (evaluate(x) for x in s.args)
            if n == 0:
                return evaluate(Pow(s.args[0], s.args[1])) == r
            return pow(a, e, n) == r % n
    return False


SYMBOLS = {"eq": "=", "lt": "<"}


def render(t, numerals_as_int: bool = False, prec: int = 0) -> str:
    """
    Infix text for a term, with the fewest parentheses that keep the tree shape
    Non-term leaves such as metavariables render through str()
    """
    if numerals_as_int and _canonical(t) and evaluate(t) > MAX_LITERAL:
        return str(evaluate(t))
    match t:
        case Lit(v):
            return str(v)
        case Add(l, r):
            s = f"{render(l, numerals_as_int, 1)}+{render(r, numerals_as_int, 2)}"
            return f"({s})" if prec > 1 else s
        case Mul(l, r):
            s = f"{render(l, numerals_as_int, 2)}*{render(r, numerals_as_int, 3)}"
            return f"({s})" if prec > 2 else s
        case Pow(b, e):
            # powers chain to the left, so only a compound exponent needs parentheses
            s = f"{render(b, numerals_as_int, 3)}^{render(e, numerals_as_int, 4)}"
            return f"({s})" if prec > 3 else s
    return str(t)


def render_statement(s: Statement, numerals_as_int: bool = False) -> str:
    r = [render(a, numerals_as_int) for a in s.args]
    match s.head:
        case "eq" | "lt":
            return f"{r[0]} {SYMBOLS[s.head]} {r[1]}"
        case "elN":
            return f"{r[0]} in N"
        case "elN0":
            return f"{r[0]} in N0"
        case "elC":
            return f"{r[0]} in C"
        case "ndvd":
            return f"!dvd({r[0]},{r[1]})"
        case "nprm":
            return f"composite {r[0]}"
        case "prm":
            return f"prime {r[0]}"
        case "gcdeq":
            return f"gcd({r[0]},{r[1]})={r[2]}"
        case "pmod":
            return f"{render(s.args[0], numerals_as_int, 4)}^{render(s.args[1], numerals_as_int, 4)} == {r[2]} mod {r[3]}"
    return f"{s.head}({', '.join(r)})"
