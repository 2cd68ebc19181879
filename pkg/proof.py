"""
Proof trees
A proof of a statement is the triple (subproofs, statement, rule label), one node per rule application.
"""

from dataclasses import dataclass
from typing import Iterator, Tuple

from numerals import Statement

STUB = "?"


@dataclass(frozen=True)
class ProofNode:
    hyps: Tuple["ProofNode", ...]
    stmt: Statement
    rule: str

    @property
    def lhs(self):
        return self.stmt.args[0]

    @property
    def rhs(self):
        return self.stmt.args[-1]

    def is_stub(self) -> bool:
        return self.rule == STUB


def node(rule: str, stmt: Statement, *hyps: ProofNode) -> ProofNode:
    return ProofNode(tuple(hyps), stmt, rule)


def stub(stmt: Statement) -> ProofNode:
    """An unfinished step; never valid, the checker reports it as IncompleteProof"""
    return ProofNode((), stmt, STUB)


def walk(root: ProofNode) -> Iterator[Tuple[Tuple[int, ...], ProofNode]]:
    """Preorder (path, node) pairs; iterative so deep trees do not exhaust the stack"""
    stack = [((), root)]
    while stack:
        path, cur = stack.pop()
        yield path, cur
        for i in range(len(cur.hyps) - 1, -1, -1):
            stack.append((path + (i,), cur.hyps[i]))


def at_path(root: ProofNode, path: Tuple[int, ...]) -> ProofNode:
    cur = root
    for i in path:
        cur = cur.hyps[i]
    return cur


def replace_at(root: ProofNode, path: Tuple[int, ...], new: ProofNode) -> ProofNode:
    """Copy of root with the node at path swapped for new"""
    if not path:
        return new
    i = path[0]
    hyps = list(root.hyps)
    hyps[i] = replace_at(hyps[i], path[1:], new)
    return ProofNode(tuple(hyps), root.stmt, root.rule)
