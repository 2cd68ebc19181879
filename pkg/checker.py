"""
Independent proof checker
Replays every node of a proof tree against its rule schema: the conclusion pattern is
matched against the node statement, then each hypothesis pattern against the matching
child statement, left to right, all under one substitution.
Uses only the term language and the rule registry.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from errors import CheckError
from numerals import Statement, render_statement, statement_holds
from proof import STUB, ProofNode
from rules import REGISTRY, match_into

logger = logging.getLogger(__name__)

OK = "Ok"
UNKNOWN_RULE = "UnknownRule"
ARITY_MISMATCH = "ArityMismatch"
CONCLUSION_MISMATCH = "ConclusionMismatch"
HYPOTHESIS_MISMATCH = "HypothesisMismatch"
INCOMPLETE_PROOF = "IncompleteProof"
ROOT_MISMATCH = "RootMismatch"
SEMANTIC_FAILURE = "SemanticFailure"


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: Tuple[int, ...] = ()
    reason: str = OK
    detail: str = ""
    nodes: int = 0

    def raise_for_status(self) -> "CheckResult":
        if not self.ok:
            raise CheckError(self.reason, self.path, self.detail)
        return self

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "reason": self.reason,
            "path": list(self.path),
            "detail": self.detail,
            "nodes": self.nodes,
        }


def _fail(path, reason, detail="") -> CheckResult:
    return CheckResult(False, tuple(path), reason, detail)


def _check_node(cur: ProofNode, path) -> Optional[CheckResult]:
    if cur.rule == STUB:
        return _fail(path, INCOMPLETE_PROOF, render_statement(cur.stmt))
    schema = REGISTRY.get(cur.rule)
    if schema is None:
        return _fail(path, UNKNOWN_RULE, cur.rule)
    if len(cur.hyps) != len(schema.hyps):
        return _fail(path, ARITY_MISMATCH, f"{cur.rule} takes {len(schema.hyps)} hypotheses, got {len(cur.hyps)}")
    s = {}
    if not match_into(schema.concl, cur.stmt, s):
        return _fail(path, CONCLUSION_MISMATCH, f"{cur.rule} does not conclude {render_statement(cur.stmt)}")
    for i, (pattern, child) in enumerate(zip(schema.hyps, cur.hyps)):
        if not match_into(pattern, child.stmt, s):
            return _fail(
                path,
                HYPOTHESIS_MISMATCH,
                f"hypothesis {i} of {cur.rule}: {render_statement(child.stmt)} does not match {render_statement(pattern)}",
            )
    return None


def check(root: ProofNode, reuse_shared: bool = False) -> CheckResult:
    """
    Validate a whole proof tree

    Returns a CheckResult; on failure it names the first offending node by its
    path of child indices from the root.

    Args:
        root: the proof
        reuse_shared: a node object met a second time is not walked again. By default
            shared subtrees are re-checked at every occurrence, which grows with the
            raw (undeduplicated) size of the tree.
    """
    stack = [((), root)]
    seen = set()
    count = 0
    while stack:
        path, cur = stack.pop()
        if reuse_shared:
            if id(cur) in seen:
                continue
            seen.add(id(cur))
        count += 1
        failure = _check_node(cur, path)
        if failure is not None:
            logger.debug(f"Rejected proof at {list(path)}: {failure.reason}")
            return failure
        for i in range(len(cur.hyps) - 1, -1, -1):
            stack.append((path + (i,), cur.hyps[i]))
    return CheckResult(True, nodes=count)


def check_root(root: ProofNode, expected: Statement, reuse_shared: bool = False) -> CheckResult:
    result = check(root, reuse_shared)
    if not result.ok:
        return result
    if root.stmt != expected:
        return _fail((), ROOT_MISMATCH, f"proves {render_statement(root.stmt)}, expected {render_statement(expected)}")
    return result


def audit_semantics(root: ProofNode) -> CheckResult:
    """Every statement in the tree must hold over the integers"""
    seen = set()
    stack = [((), root)]
    count = 0
    while stack:
        path, cur = stack.pop()
        if id(cur) in seen:
            continue
        seen.add(id(cur))
        count += 1
        if not statement_holds(cur.stmt):
            return _fail(path, SEMANTIC_FAILURE, render_statement(cur.stmt))
        for i in range(len(cur.hyps) - 1, -1, -1):
            stack.append((path + (i,), cur.hyps[i]))
    return CheckResult(True, nodes=count)
