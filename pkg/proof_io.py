"""
Proof files
JSON encoding of proof trees and the versioned document envelope written by the CLI.

    node = {"hyps": [node, ...], "stmt": stmt, "rule": label}
    documents may write a repeated node object as {"ref": k}, its preorder index
    stmt = {"head": "eq|lt|elN|elN0|elC|ndvd|nprm|prm|gcdeq|pmod", "args": [term, ...]}
    term = integer 0-10 | {"op": "pl|tm|exp", "args": [term, term]}
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from config import RECURSION_LIMIT
from errors import NumcertError, SchemaError
from numerals import HEADS, Add, Lit, Mul, Pow, Statement, Term
from proof import ProofNode

logger = logging.getLogger(__name__)

# proof files nest as deep as the proofs they hold
sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))

FORMAT_VERSION = "1"
OPS = {Add: "pl", Mul: "tm", Pow: "exp"}
CONSTRUCTORS = {name: cls for cls, name in OPS.items()}
# deepest proof node accepted from a file, well inside the recursion limit
MAX_DEPTH = RECURSION_LIMIT // 4


def encode_term(t: Term) -> Any:
    if type(t) is Lit:
        return t.v
    return {"op": OPS[type(t)], "args": [encode_term(x) for x in t.args]}


def decode_term(obj: Any) -> Term:
    if type(obj) is int:
        try:
            return Lit(obj)
        except NumcertError:
            raise SchemaError(f"literal {obj} is outside 0-10") from None
    if not isinstance(obj, dict) or set(obj) != {"op", "args"}:
        raise SchemaError(f"malformed term of type {type(obj).__name__}")
    op, args = obj["op"], obj["args"]
    cls = CONSTRUCTORS.get(op) if isinstance(op, str) else None
    if cls is None:
        raise SchemaError(f"unknown operator {op!r}")
    if not isinstance(args, list) or len(args) != 2:
        raise SchemaError(f"operator {op} takes two arguments")
    return cls(decode_term(args[0]), decode_term(args[1]))


def encode_statement(s: Statement) -> Dict[str, Any]:
    return {"head": s.head, "args": [encode_term(a) for a in s.args]}


def decode_statement(obj: Any) -> Statement:
    if not isinstance(obj, dict) or set(obj) != {"head", "args"}:
        raise SchemaError(f"malformed statement of type {type(obj).__name__}")
    head, args = obj["head"], obj["args"]
    if not isinstance(head, str) or head not in HEADS:
        raise SchemaError(f"unknown head {head!r}")
    if not isinstance(args, list) or len(args) != HEADS[head]:
        raise SchemaError(f"{head} takes {HEADS[head]} arguments")
    return Statement(head, tuple(decode_term(a) for a in args))


def to_json(root: ProofNode, share: bool = False) -> Dict[str, Any]:
    """
    Plain JSON value for a proof tree

    Shared subtrees are written out at every use unless share is set; then a node
    object met again becomes {"ref": k}, k counting nodes in preorder of first appearance.
    """
    done: Dict[int, Any] = {}

    def encode(cur: ProofNode) -> Dict[str, Any]:
        key = id(cur)
        if key in done:
            return done[key]
        if share:
            done[key] = {"ref": len(done)}
        out = {
            "hyps": [encode(h) for h in cur.hyps],
            "stmt": encode_statement(cur.stmt),
            "rule": cur.rule,
        }
        if not share:
            done[key] = out
        return out

    return encode(root)


def from_json(obj: Any) -> ProofNode:
    table: List[Optional[ProofNode]] = []

    def decode(obj: Any, level: int) -> ProofNode:
        if level > MAX_DEPTH:
            raise SchemaError(f"proof nests deeper than {MAX_DEPTH} nodes")
        if isinstance(obj, dict) and set(obj) == {"ref"}:
            k = obj["ref"]
            if type(k) is not int or not 0 <= k < len(table) or table[k] is None:
                raise SchemaError(f"bad back-reference {k!r}")
            return table[k]
        if not isinstance(obj, dict) or set(obj) != {"hyps", "stmt", "rule"}:
            raise SchemaError("proof node needs exactly hyps, stmt and rule")
        if not isinstance(obj["hyps"], list) or not isinstance(obj["rule"], str):
            raise SchemaError("hyps must be a list and rule a string")
        slot = len(table)
        table.append(None)
        built = ProofNode(tuple(decode(h, level + 1) for h in obj["hyps"]), decode_statement(obj["stmt"]), obj["rule"])
        table[slot] = built
        return built

    try:
        return decode(obj, 1)
    except RecursionError:
        raise SchemaError("proof nests too deeply to decode") from None


def dumps(obj: Any) -> bytes:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def serialize(root: ProofNode) -> bytes:
    return dumps(to_json(root))


def deserialize(data: Union[bytes, str]) -> ProofNode:
    """
    Proof tree from its JSON bytes

    Raises:
        SchemaError: the bytes are not JSON or do not follow the node layout
    """
    try:
        obj = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError, RecursionError) as e:
        raise SchemaError(f"not a JSON document: {e}") from None
    return from_json(obj)


# documents

class ProofStats(BaseModel):
    steps: int = Field(description="Rule applications with shared subtrees counted at every use")
    dedup_steps: int = Field(description="Distinct rule applications")
    depth: int = Field(description="Longest root-to-leaf path in nodes")
    rules: Dict[str, int] = Field(default_factory=dict, description="Applications per rule label, counted at every use")


class ProofDocument(BaseModel):
    format_version: str = Field(default=FORMAT_VERSION)
    goal: str = Field(description="Goal in the goal language")
    proof: Dict[str, Any] = Field(description="Proof tree as JSON nodes")
    stats: Optional[ProofStats] = None
    certificate: Optional[str] = Field(default=None, description="Pocklington certificate summary")

    def tree(self) -> ProofNode:
        return from_json(self.proof)


def make_document(
    goal: str, root: ProofNode, stats: Optional[ProofStats] = None, certificate: Optional[str] = None
) -> ProofDocument:
    return ProofDocument(goal=goal, proof=to_json(root, share=True), stats=stats, certificate=certificate)


def load_document(data: Union[bytes, str]) -> ProofDocument:
    try:
        obj = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError, RecursionError) as e:
        raise SchemaError(f"not a JSON document: {e}") from None
    try:
        doc = ProofDocument.model_validate(obj)
    except RecursionError:
        raise SchemaError("proof document nests too deeply") from None
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(f"invalid proof document: {'.'.join(map(str, first['loc']))} {first['msg']}") from None
    if doc.format_version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {doc.format_version!r}")
    return doc


def read_document(path: Union[str, Path]) -> ProofDocument:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    return load_document(data)


def write_document(doc: ProofDocument, path: Optional[Union[str, Path]] = None) -> bytes:
    """Serialized document bytes; also written to path when one is given"""
    # the proof tree is plain JSON already and can nest deeper than the model serializer walks
    envelope = doc.model_dump(exclude={"proof"}, exclude_none=True)
    payload = {"format_version": envelope.pop("format_version"), "goal": envelope.pop("goal"), "proof": doc.proof}
    payload.update(envelope)
    data = dumps(payload)
    if path is not None:
        Path(path).write_bytes(data)
        logger.info(f"Wrote {len(data)} bytes to {path}")
    return data
