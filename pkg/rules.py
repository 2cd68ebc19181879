"""
Rule registry and first-order matcher
Each schema is a conclusion pattern plus ordered hypothesis patterns over metavariables.
The same matcher drives proof synthesis and proof checking.
"""

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Tuple

from errors import UnboundMetaVar, UnknownRule
from numerals import (
    Add,
    ElC,
    ElN,
    ElN0,
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
    horner,
    render_statement,
    to_numeral,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class MetaVar:
    name: str

    @property
    def args(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return self.name


Substitution = Dict[str, object]


def match_into(p, x, s: Substitution) -> bool:
    if type(p) is MetaVar:
        bound = s.get(p.name)
        if bound is None:
            s[p.name] = x
            return True
        return bound is x or bound == x
    if type(p) is not type(x):
        return False
    if type(p) is Lit:
        return p.v == x.v
    if type(p) is Statement and p.head != x.head:
        return False
    pa, xa = p.args, x.args
    if len(pa) != len(xa):
        return False
    for pp, xx in zip(pa, xa):
        if not match_into(pp, xx, s):
            return False
    return True


def match(p, subject, s: Optional[Substitution] = None) -> Optional[Substitution]:
    """
    Extend s so that p instantiated by it equals subject

    Returns the extended substitution (a new dict), or None on a head or literal
    mismatch or a conflicting binding of a repeated metavariable.
    """
    work = dict(s) if s else {}
    return work if match_into(p, subject, work) else None


def instantiate(p, s: Substitution):
    match p:
        case MetaVar(name):
            if name not in s:
                raise UnboundMetaVar(f"metavariable {name} is unbound")
            return s[name]
        case Lit():
            return p
        case Statement(head, args):
            return Statement(head, tuple(instantiate(a, s) for a in args))
    return type(p)(*(instantiate(a, s) for a in p.args))


def metavars(p) -> Iterator[str]:
    if type(p) is MetaVar:
        yield p.name
    for a in p.args:
        yield from metavars(a)


@dataclass(frozen=True)
class RuleSchema:
    label: str
    hyps: Tuple[Statement, ...]
    concl: Statement

    @property
    def arity(self) -> int:
        return len(self.hyps)

    def variables(self) -> list:
        seen = []
        for p in (self.concl, *self.hyps):
            for name in metavars(p):
                if name not in seen:
                    seen.append(name)
        return seen

    def line(self) -> str:
        hyps = " & ".join(render_statement(h) for h in self.hyps)
        return f"{self.label}\t{self.arity}\t{hyps}\t{render_statement(self.concl)}"


a, b, c, d, e, f, g = (MetaVar(x) for x in "abcdefg")
k, l, m, n, p, q, r = (MetaVar(x) for x in "klmnpqr")
B, N = MetaVar("B"), MetaVar("N")
k1, k2, e2 = MetaVar("k1"), MetaVar("k2"), MetaVar("e2")

D = horner
ONE, FOUR = Lit(1), Lit(4)

SUM_FACTS = [(x, y) for x in range(2, 11) for y in range(2, x + 1) if x + y <= 10]
PRODUCT_FACTS = [(x, y) for x in range(2, 11) for y in range(2, x + 1) if x * y <= 10]
TRIAL_PRIMES_25 = (2, 3)
TRIAL_PRIMES_841 = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def _catalog():
    rules = []

    def rule(label, hyps, concl):
        rules.append(RuleSchema(label, tuple(hyps), concl))

    # literal closure and order facts
    for x in range(0, 5):
        rule(f"{x}nn0", [], ElN0(x))
    for x in range(1, 11):
        rule(f"{x}nn", [], ElN(x))
    for x in range(0, 11):
        for y in range(x + 1, 11):
            rule(f"{x}lt{y}", [], Lt(x, y))

    # definitions and the small addition / multiplication tables
    for x in range(2, 11):
        rule(f"df-{x}", [], Eq(x, Add(x - 1, 1)))
    for x, y in SUM_FACTS:
        rule(f"{x}p{y}e{x + y}", [], Eq(Add(x, y), x + y))
    for x, y in PRODUCT_FACTS:
        rule(f"{x}t{y}e{x * y}", [], Eq(Mul(x, y), x * y))

    # field identities
    rule("addid1i", [ElC(a)], Eq(Add(a, 0), a))
    rule("addid2i", [ElC(a)], Eq(Add(0, a), a))
    rule("mulid1i", [ElC(a)], Eq(Mul(a, 1), a))
    rule("mulid2i", [ElC(a)], Eq(Mul(1, a), a))
    rule("mul01i", [ElC(a)], Eq(Mul(a, 0), 0))
    rule("mul02i", [ElC(a)], Eq(Mul(0, a), 0))
    rule("addcomi", [ElC(a), ElC(b)], Eq(Add(a, b), Add(b, a)))
    rule("mulcomi", [ElC(a), ElC(b)], Eq(Mul(a, b), Mul(b, a)))

    # equality glue
    rule("eqid", [], Eq(a, a))
    rule("eqcomi", [Eq(a, b)], Eq(b, a))
    rule("eqtri", [Eq(a, b), Eq(b, c)], Eq(a, c))
    rule("eqtr3i", [Eq(a, b), Eq(a, c)], Eq(b, c))
    rule("breqtri", [Lt(a, b), Eq(b, c)], Lt(a, c))
    rule("eqbrtrri", [Eq(a, b), Lt(a, c)], Lt(b, c))
    rule("eqeltri", [Eq(a, b), ElN(b)], ElN(a))

    # closure
    rule("nnnn0i", [ElN(a)], ElN0(a))
    rule("nn0cni", [ElN0(a)], ElC(a))
    rule("nn0addcli", [ElN0(a), ElN0(b)], ElN0(Add(a, b)))
    rule("nn0mulcli", [ElN0(a), ElN0(b)], ElN0(Mul(a, b)))
    rule("decclc", [ElN0(m), ElN0(a)], ElN0(D(m, a)))
    rule("decnncl", [ElN(a)], ElN(Mul(FOUR, a)))
    rule("decnncl2", [ElN(m)], ElN(D(m, 0)))
    rule("decnnclc", [ElN0(m), ElN(a)], ElN(D(m, a)))

    # conversions between numeral shapes
    for x in range(4, 11):
        rule(f"dec{x}", [], Eq(to_numeral(x), x))
    rule("dec0u", [ElN0(n)], Eq(D(n, 0), Mul(FOUR, n)))
    rule("dec0h", [ElN0(a)], Eq(D(0, a), a))

    # ordering
    rule("declti", [ElN(a), ElN0(b), ElN0(c), Lt(c, FOUR)], Lt(c, D(a, b)))
    rule("declt", [ElN0(a), ElN0(b), ElN(c), Lt(b, c)], Lt(D(a, b), D(a, c)))
    rule(
        "decltc",
        [ElN0(a), ElN0(b), ElN0(c), ElN0(d), Lt(b, FOUR), Lt(a, c)],
        Lt(D(a, b), D(c, d)),
    )

    # successor
    rule("decsuc", [ElN0(a), ElN0(b), Eq(c, Add(b, 1)), Eq(D(a, b), n)], Eq(D(a, c), Add(n, 1)))
    rule("decsucc2", [ElN0(a), Eq(b, Add(a, 1)), Eq(D(a, 3), n)], Eq(D(b, 0), Add(n, 1)))

    # addition
    rule(
        "decadd",
        [ElN0(a), ElN0(b), ElN0(c), ElN0(d), Eq(D(a, b), m), Eq(D(c, d), n),
         Eq(e, Add(a, c)), Eq(f, Add(b, d))],
        Eq(D(e, f), Add(m, n)),
    )
    rule(
        "decaddc",
        [ElN0(a), ElN0(b), ElN0(c), ElN0(d), ElN0(f), Eq(D(a, b), m), Eq(D(c, d), n),
         Eq(e, Add(Add(a, c), 1)), Eq(Add(FOUR, f), Add(b, d))],
        Eq(D(e, f), Add(m, n)),
    )

    # multiplication
    rule(
        "decmac",
        [ElN0(a), ElN0(b), ElN0(c), ElN0(d), ElN0(p), ElN0(f), ElN0(g),
         Eq(D(a, b), m), Eq(D(c, d), n),
         Eq(e, Add(Mul(a, p), Add(c, g))), Eq(D(g, f), Add(Mul(b, p), d))],
        Eq(D(e, f), Add(Mul(m, p), n)),
    )
    rule(
        "decma2c",
        [ElN0(a), ElN0(b), ElN0(c), ElN0(d), ElN0(m), ElN0(f), ElN0(g),
         Eq(D(a, b), p), Eq(D(c, d), n),
         Eq(e, Add(Mul(m, a), Add(c, g))), Eq(D(g, f), Add(Mul(m, b), d))],
        Eq(D(e, f), Add(Mul(m, p), n)),
    )
    rule(
        "decmul1c",
        [ElN0(a), ElN0(b), ElN0(p), ElN0(f), ElN0(g), Eq(D(a, b), m),
         Eq(e, Add(Mul(a, p), g)), Eq(D(g, f), Mul(b, p))],
        Eq(D(e, f), Mul(m, p)),
    )
    rule(
        "decmul2c",
        [ElN0(a), ElN0(b), ElN0(m), ElN0(f), ElN0(g), Eq(D(a, b), p),
         Eq(e, Add(Mul(m, a), g)), Eq(D(g, f), Mul(m, b))],
        Eq(D(e, f), Mul(m, p)),
    )

    # divisibility and primality
    rule("ndvdsi", [ElN0(q), ElN(a), ElN(r), Eq(b, Add(Mul(a, q), r)), Lt(r, a)], NDvd(a, b))
    rule("nprmi", [ElN(a), ElN(b), Lt(1, a), Lt(1, b), Eq(n, Mul(a, b))], NPrm(n))
    rule("dec2dvds1", [ElN0(a)], NDvd(2, D(a, 1)))
    rule("dec2dvds3", [ElN0(a)], NDvd(2, D(a, 3)))
    rule("dec2nprm", [ElN(a)], NPrm(D(a, 2)))
    rule("prm2", [], Prm(2))
    rule("prm3", [], Prm(3))
    rule(
        "prmlt25",
        [ElN(n), Lt(1, n), Lt(n, to_numeral(25))] + [NDvd(to_numeral(x), n) for x in TRIAL_PRIMES_25],
        Prm(n),
    )
    rule(
        "prmlt841",
        [ElN(n), Lt(1, n), Lt(n, to_numeral(841))] + [NDvd(to_numeral(x), n) for x in TRIAL_PRIMES_841],
        Prm(n),
    )

    # gcd
    rule("gcdi", [ElN0(k), ElN0(r), ElN0(n), Eq(m, Add(Mul(k, n), r)), GcdEq(n, r, g)], GcdEq(m, n, g))
    rule("gcdn1", [ElN0(n)], GcdEq(n, 1, 1))
    rule("gcdn0", [ElN0(n)], GcdEq(n, 0, n))

    # modular powers
    rule(
        "pm1",
        [ElN0(a), ElN(n), ElN0(q), ElN0(r), Eq(a, Add(Mul(q, n), r)), Lt(r, n)],
        PMod(a, ONE, r, n),
    )
    rule(
        "modxai",
        [ElN0(d), ElN0(m), ElN0(k), ElN0(l), ElN(n), Eq(e, Add(b, c)),
         Eq(Add(Mul(d, n), m), Mul(k, l)), PMod(a, b, k, n), PMod(a, c, l, n)],
        PMod(a, e, m, n),
    )
    rule("exp1", [ElC(p)], Eq(Pow(p, ONE), p))
    rule("expsucci", [Eq(k, Pow(p, e)), Eq(k2, Mul(k, p)), Eq(e2, Add(e, 1))], Eq(k2, Pow(p, e2)))

    # Pocklington with the gcd(a^g-1, N)=1 hypothesis folded through a^g = k1+1 (mod N)
    rule(
        "pockthi-variant",
        [Prm(p), ElN(g), ElN(B), ElN(e), ElN(a),
         Eq(m, Mul(g, p)), Eq(N, Add(m, 1)), Eq(m, Mul(B, Pow(p, e))), Lt(B, Pow(p, e)),
         PMod(a, m, ONE, N), PMod(a, g, k, N), Eq(k, Add(k1, 1)), ElN(k1), GcdEq(N, k1, ONE)],
        Prm(N),
    )
    return rules


def _build() -> Mapping[str, RuleSchema]:
    table = {}
    for schema in _catalog():
        if schema.label in table:
            raise ValueError(f"duplicate rule label {schema.label}")
        table[schema.label] = schema
    logger.debug(f"Registered {len(table)} rule schemas")
    return MappingProxyType(table)


REGISTRY: Mapping[str, RuleSchema] = _build()


def lookup(label: str) -> RuleSchema:
    try:
        return REGISTRY[label]
    except KeyError:
        raise UnknownRule(f"no rule labelled {label!r}", label=label) from None


def catalog_lines() -> Iterator[str]:
    """One tab-separated line per rule: label, hypothesis count, hypotheses, conclusion"""
    for label in REGISTRY:
        yield REGISTRY[label].line()
