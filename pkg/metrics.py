import logging
from typing import Dict, Iterable, List, Sequence

import numpy as np
import pandas as pd

from arith_prover import prove_add, prove_mul
from numerals import to_numeral
from proof import ProofNode
from proof_io import ProofStats

logger = logging.getLogger(__name__)

OPERATIONS = {"add": prove_add, "mul": prove_mul}


def distinct_nodes(root: ProofNode) -> List[ProofNode]:
    """Every node object once, children before parents"""
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        cur, expanded = stack.pop()
        if expanded:
            order.append(cur)
            continue
        if id(cur) in seen:
            continue
        seen.add(id(cur))
        stack.append((cur, True))
        stack.extend((h, False) for h in cur.hyps)
    return order


def raw_steps(root: ProofNode) -> int:
    """Tree size with every occurrence of a shared subtree counted"""
    size: Dict[int, int] = {}
    for cur in distinct_nodes(root):
        size[id(cur)] = 1 + sum(size[id(h)] for h in cur.hyps)
    return size[id(root)]


def dedup_steps(root: ProofNode) -> int:
    """Number of distinct subtrees; structurally identical subtrees count once"""
    keys: Dict[int, int] = {}
    table: Dict[tuple, int] = {}
    for cur in distinct_nodes(root):
        key = (cur.rule, cur.stmt, tuple(keys[id(h)] for h in cur.hyps))
        keys[id(cur)] = table.setdefault(key, len(table))
    return len(table)


def depth(root: ProofNode) -> int:
    height: Dict[int, int] = {}
    for cur in distinct_nodes(root):
        height[id(cur)] = 1 + max((height[id(h)] for h in cur.hyps), default=0)
    return height[id(root)]


def occurrences(root: ProofNode) -> Dict[int, int]:
    """Times each node object appears in the tree, keyed by id"""
    uses = {id(root): 1}
    for cur in reversed(distinct_nodes(root)):
        for h in cur.hyps:
            uses[id(h)] = uses.get(id(h), 0) + uses[id(cur)]
    return uses


def rule_histogram(root: ProofNode, per_use: bool = True) -> pd.Series:
    """
    Rule label counts, most used first

    Shared subtrees count at every use, so the counts sum to raw_steps. With
    per_use=False each node object counts once.
    """
    nodes = distinct_nodes(root)
    uses = occurrences(root) if per_use else {id(cur): 1 for cur in nodes}
    counts = pd.Series([uses[id(cur)] for cur in nodes], index=[cur.rule for cur in nodes], dtype="int64")
    return counts.groupby(level=0).sum().sort_values(ascending=False, kind="stable")


def proof_stats(root: ProofNode) -> ProofStats:
    hist = rule_histogram(root)
    return ProofStats(
        steps=raw_steps(root),
        dedup_steps=dedup_steps(root),
        depth=depth(root),
        rules={str(label): int(count) for label, count in hist.items()},
    )


# step growth

def random_operand(rng: np.random.Generator, digits: int) -> int:
    """Uniform integer with exactly `digits` base-4 digits"""
    value = int(rng.integers(1, 4))
    for digit in rng.integers(0, 4, size=digits - 1):
        value = 4 * value + int(digit)
    return value


def sample_steps(op: str, digits: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    prover = OPERATIONS[op]
    counts = []
    for _ in range(samples):
        x, y = random_operand(rng, digits), random_operand(rng, digits)
        counts.append(dedup_steps(prover(to_numeral(x), to_numeral(y))))
    return np.asarray(counts, dtype=float)


def step_growth(
    sizes: Sequence[int] = (8, 16, 32),
    samples: int = 100,
    seed: int = 0,
    ops: Iterable[str] = ("add", "mul"),
) -> pd.DataFrame:
    """
    Median deduplicated proof size per operand length

    Args:
        sizes: operand lengths in base-4 digits
        samples: random operand pairs per length
        seed: generator seed
        ops: any of "add", "mul"

    Returns:
        One row per (op, digits) with the median step count and the ratio to the
        previous size in the list (NaN for the first)
    """
    rng = np.random.default_rng(seed)
    rows = []
    for op in ops:
        previous = None
        for digits in sizes:
            median = float(np.median(sample_steps(op, digits, samples, rng)))
            ratio = median / previous if previous else np.nan
            rows.append({"op": op, "digits": digits, "median_steps": median, "ratio": ratio})
            logger.debug(f"{op} at {digits} digits: median {median} steps")
            previous = median
    return pd.DataFrame(rows, columns=["op", "digits", "median_steps", "ratio"])
