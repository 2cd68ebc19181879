"""
Goal text
Parses the goal language into statements and prints statements back into it.

    expr := sum;  sum := prod ('+' prod)*;  prod := atom ('*' atom)*
    atom := INT | '(' expr ')' | atom '^' (INT | '(' expr ')')

Statements: expr = expr | expr < expr | expr in N|N0|C | prime INT | composite INT
| gcd(INT,INT)=INT | INT^INT == INT mod INT | !dvd(INT,INT)

Integers up to 10 inside expressions stay literals; larger ones, and every integer
in the fixed-shape statements, become canonical numerals.
"""

import re
from typing import List, NamedTuple, Optional

from errors import ParseError
from numerals import (
    MAX_LITERAL,
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
    Term,
    evaluate,
    render,
    render_statement,
    to_numeral,
)

TOKEN = re.compile(r"(?P<int>\d+)|(?P<op>==|!dvd|[+*^()=<,])|(?P<word>[A-Za-z][A-Za-z0-9]*)")
MEMBERSHIP = {"N": ElN, "N0": ElN0, "C": ElC}


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        found = TOKEN.match(text, pos)
        if found is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = found.lastgroup
        tokens.append(Token(kind, found.group(kind), pos))
        pos = found.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def literal(value: int) -> Term:
    return Lit(value) if value <= MAX_LITERAL else to_numeral(value)


class GoalParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "end":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.take()

    def integer(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError(f"expected an integer, found {tok.text or 'end of input'!r}", tok.pos)
        self.take()
        return int(tok.text)

    def numeral(self) -> Term:
        return to_numeral(self.integer())

    # expressions

    def expr(self) -> Term:
        t = self.prod()
        while self.accept("+"):
            t = Add(t, self.prod())
        return t

    def prod(self) -> Term:
        t = self.atom()
        while self.accept("*"):
            t = Mul(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "int":
            t = literal(self.integer())
        elif self.accept("("):
            t = self.expr()
            self.expect(")")
        else:
            raise ParseError(f"expected a number or '(', found {tok.text or 'end of input'!r}", tok.pos)
        while self.accept("^"):
            if self.accept("("):
                exponent = self.expr()
                self.expect(")")
            else:
                exponent = literal(self.integer())
            t = Pow(t, exponent)
        return t

    # statements

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.kind == "word" and tok.text in ("prime", "composite"):
            self.take()
            return (Prm if tok.text == "prime" else NPrm)(self.numeral())
        if tok.kind == "word" and tok.text == "gcd":
            self.take()
            self.expect("(")
            x = self.numeral()
            self.expect(",")
            y = self.numeral()
            self.expect(")")
            self.expect("=")
            return GcdEq(x, y, self.numeral())
        if tok.text == "!dvd":
            self.take()
            self.expect("(")
            x = self.numeral()
            self.expect(",")
            y = self.numeral()
            self.expect(")")
            return NDvd(x, y)
        if tok.kind == "int" and self.peek(1).text == "^" and self.peek(2).kind == "int" and self.peek(3).text == "==":
            base = self.numeral()
            self.expect("^")
            exponent = self.numeral()
            self.expect("==")
            residue = self.numeral()
            self.expect("mod")
            return PMod(base, exponent, residue, self.numeral())

        lhs = self.expr()
        if self.accept("="):
            return Eq(lhs, self.expr())
        if self.accept("<"):
            return Lt(lhs, self.expr())
        if self.accept("in"):
            tok = self.take()
            if tok.text not in MEMBERSHIP:
                raise ParseError(f"expected N, N0 or C, found {tok.text or 'end of input'!r}", tok.pos)
            return MEMBERSHIP[tok.text](lhs)
        tok = self.peek()
        raise ParseError(f"expected '=', '<' or 'in', found {tok.text or 'end of input'!r}", tok.pos)

    def parse(self) -> Statement:
        stmt = self.statement()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)
        return stmt


def parse_goal(text: str) -> Statement:
    """
    Parse one goal

    Raises:
        ParseError: with the character position of the offending token
    """
    return GoalParser(text).parse()


def render_term(t: Term, numerals_as_int: bool = False) -> str:
    if not isinstance(t, (Lit, Add, Mul, Pow)):
        raise TypeError(f"not a ground term: {t!r}")
    return render(t, numerals_as_int)


def render_goal(s: Statement, numerals_as_int: bool = False) -> Optional[str]:
    """
    Goal text for a statement; parse_goal gives the same statement back

    Expression sides keep their tree shape. The fixed-shape statements print
    their arguments as integers, which reparse to canonical numerals.
    """
    if s.head in ("eq", "lt", "elN", "elN0", "elC"):
        return render_statement(s, numerals_as_int)
    ints = [str(evaluate(x)) for x in s.args]
    match s.head:
        case "prm":
            return f"prime {ints[0]}"
        case "nprm":
            return f"composite {ints[0]}"
        case "gcdeq":
            return f"gcd({ints[0]},{ints[1]})={ints[2]}"
        case "ndvd":
            return f"!dvd({ints[0]},{ints[1]})"
        case "pmod":
            return f"{ints[0]}^{ints[1]} == {ints[2]} mod {ints[3]}"
    return None
