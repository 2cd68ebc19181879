"""
numcert command line
Proves goals about base-4 numerals, checks proof files and reports proof statistics.

    numcert prove '4*(4*1+3)+2 = 5*6' --stats --out proof.json
    numcert verify proof.json --semantic
    numcert prime 4001
    numcert rules
    numcert scaling --digits 8,16,32 --samples 100
"""

import json
import logging
from typing import Optional

import click

from arith_prover import prove_eq, prove_lt, prove_mem_c, prove_mem_n, prove_mem_n0
from checker import audit_semantics, check_root
from config import NUMCERT_LOG_LEVEL, NUMCERT_SEED
from errors import (
    CheckError,
    NoCertificate,
    NotTrue,
    NumcertError,
    OutOfDomain,
    ParseError,
    SchemaError,
)
from goal_parser import parse_goal, render_goal
from metrics import proof_stats, step_growth
from numerals import Statement, evaluate, render_statement, statement_holds
from prime_prover import PocklingtonCert, prove_gcd, prove_ndvd, prove_nprime, prove_powmod, prove_prime
from proof import ProofNode
from proof_io import make_document, read_document, write_document
from rules import catalog_lines

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_GOAL, EXIT_CERT = 0, 1, 2, 3, 4
METHODS = ["auto", "trial", "pocklington"]


def exit_code(err: NumcertError) -> int:
    if isinstance(err, (ParseError, SchemaError)):
        return EXIT_PARSE
    if isinstance(err, NoCertificate):
        return EXIT_CERT
    if isinstance(err, CheckError):
        return EXIT_VERIFY
    return EXIT_GOAL


def prove_goal(goal: Statement, method: str = "auto", cert: Optional[PocklingtonCert] = None) -> ProofNode:
    """
    Synthesize a proof of any goal the parser accepts

    Raises:
        NotTrue: the goal is false
        OutOfDomain: true, but not in a form the provers produce
    """
    args = goal.args
    if goal.head == "pmod" and evaluate(args[3]) < 2:
        raise OutOfDomain("modulus must be at least 2")
    if goal.head in ("eq", "lt", "ndvd", "nprm", "prm", "gcdeq", "pmod") and not statement_holds(goal):
        raise NotTrue(f"{render_statement(goal, numerals_as_int=True)} is false")
    match goal.head:
        case "eq":
            return prove_eq(*args)
        case "lt":
            return prove_lt(*args)
        case "elN":
            return prove_mem_n(args[0])
        case "elN0":
            return prove_mem_n0(args[0])
        case "elC":
            return prove_mem_c(args[0])
        case "ndvd":
            return prove_ndvd(evaluate(args[0]), evaluate(args[1]))
        case "nprm":
            return prove_nprime(evaluate(args[0]))
        case "prm":
            return prove_prime(evaluate(args[0]), method, cert)
        case "gcdeq":
            return prove_gcd(evaluate(args[0]), evaluate(args[1]))
        case "pmod":
            a, e, r, n = (evaluate(x) for x in args)
            if r >= n:
                raise OutOfDomain(f"residue {r} is not reduced mod {n}")
            return prove_powmod(a, e, n)[1]
    raise OutOfDomain(f"no prover for {goal.head}")


def _emit(goal_text: str, root: ProofNode, goal: Statement, out: Optional[str], stats: bool, certificate=None) -> None:
    result = check_root(root, goal, reuse_shared=True)
    if not result.ok:
        raise CheckError(result.reason, result.path, "refusing to write an unchecked proof: " + result.detail)
    summary = proof_stats(root) if stats else None
    doc = make_document(goal_text, root, summary, certificate)
    data = write_document(doc, out)
    if out is None:
        click.echo(data.decode("utf-8"))
    if summary is not None:
        click.echo(f"steps {summary.steps} (dedup {summary.dedup_steps}), depth {summary.depth}", err=True)
    logger.info(f"Proved {goal_text}")


def _fail(ctx: click.Context, err: NumcertError) -> None:
    logger.error(str(err))
    click.echo(json.dumps(err.to_dict()), err=True)
    ctx.exit(exit_code(err))


def _certificate(text: Optional[str], N: int) -> Optional[PocklingtonCert]:
    return PocklingtonCert.parse(text, N).validate() if text else None


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level")
def cli(verbose: bool):
    """Base-4 numeral proof synthesis and checking"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else NUMCERT_LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("goal")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Proof file (default stdout)")
@click.option("--stats", is_flag=True, help="Include step statistics")
@click.option("--method", type=click.Choice(METHODS), default="auto", help="Primality method for prime goals")
@click.option("--cert", help='Pocklington certificate "p=..,e=..,a=.." for prime goals')
@click.pass_context
def prove(ctx, goal, out, stats, method, cert):
    """Prove GOAL and write a checked proof document"""
    try:
        stmt = parse_goal(goal)
        if cert and stmt.head != "prm":
            raise ParseError("--cert applies only to prime goals")
        certificate = _certificate(cert, evaluate(stmt.args[0])) if stmt.head == "prm" else None
        root = prove_goal(stmt, method, certificate)
        _emit(render_goal(stmt), root, stmt, out, stats)
    except NumcertError as e:
        _fail(ctx, e)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--goal", help="Statement the proof must conclude (default: the document's goal)")
@click.option("--semantic", is_flag=True, help="Also evaluate every statement over the integers")
@click.option("--full", is_flag=True, help="Re-check shared subproofs at every use instead of once")
@click.pass_context
def verify(ctx, path, goal, semantic, full):
    """Check the proof document at PATH"""
    try:
        doc = read_document(path)
        root = doc.tree()
        result = check_root(root, parse_goal(goal or doc.goal), reuse_shared=not full)
        if result.ok and semantic:
            result = audit_semantics(root)
    except NumcertError as e:
        _fail(ctx, e)
        return
    click.echo(json.dumps(result.to_dict()))
    if not result.ok:
        logger.warning(f"Rejected {path}: {result.reason} at {list(result.path)}")
        ctx.exit(EXIT_VERIFY)


@cli.command()
@click.argument("n", type=int)
@click.option("--method", type=click.Choice(METHODS), default="auto")
@click.option("--cert", help='Pocklington certificate "p=..,e=..,a=.."')
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Proof file (default stdout)")
@click.option("--stats", is_flag=True, help="Include step statistics")
@click.pass_context
def prime(ctx, n, method, cert, out, stats):
    """Prove that N is prime"""
    try:
        if n < 0:
            raise OutOfDomain(f"{n} is negative")
        certificate = _certificate(cert, n)
        root = prove_prime(n, method, certificate)
        stmt = root.stmt
        summary = None
        if root.rule == "pockthi-variant":
            used = certificate or _used_certificate(root)
            summary = used.summary()
        _emit(render_goal(stmt), root, stmt, out, stats, summary)
        click.echo(f"certificate: {summary}" if summary else f"trial division: {root.rule}", err=out is None)
    except NumcertError as e:
        _fail(ctx, e)


def _used_certificate(root: ProofNode) -> PocklingtonCert:
    # pockthi-variant hypotheses 0-4: Prm p, N g, N B, N e, N a
    p, _, B, e, a = (evaluate(h.stmt.args[0]) for h in root.hyps[:5])
    return PocklingtonCert(evaluate(root.stmt.args[0]), p, e, B, a)


@cli.command()
def rules():
    """Print the rule catalog, one tab-separated line per rule"""
    for line in catalog_lines():
        click.echo(line)


@cli.command()
@click.option("--digits", default="8,16,32", help="Comma-separated operand lengths in base-4 digits")
@click.option("--samples", default=100, type=int, help="Random operand pairs per length")
@click.option("--seed", default=NUMCERT_SEED, type=int)
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="CSV file for the table")
@click.pass_context
def scaling(ctx, digits, samples, seed, out):
    """Median proof size of addition and multiplication as operands grow"""
    try:
        sizes = [int(x) for x in digits.split(",") if x.strip()]
    except ValueError:
        click.echo(f"bad --digits {digits!r}", err=True)
        ctx.exit(EXIT_PARSE)
        return
    if not sizes or min(sizes) < 1 or samples < 1:
        click.echo("--digits and --samples must be positive", err=True)
        ctx.exit(EXIT_PARSE)
        return
    table = step_growth(sizes, samples, seed)
    click.echo(table.to_string(index=False))
    if out:
        table.to_csv(out, index=False)
        logger.info(f"Wrote {out}")


if __name__ == "__main__":
    cli()
