import json

import pytest

from arith_prover import prove_mem_n0, prove_mul
from checker import check, check_root
from errors import SchemaError
from metrics import proof_stats, raw_steps
from numerals import Add, Lt, Mul, PMod, Pow, to_numeral
from prime_prover import prove_powmod
from proof import node
from proof_io import (
    FORMAT_VERSION,
    MAX_DEPTH,
    decode_statement,
    decode_term,
    deserialize,
    encode_term,
    from_json,
    load_document,
    make_document,
    read_document,
    serialize,
    to_json,
    write_document,
)


def golden():
    return prove_mem_n0(Mul(2, Add(Mul(4, 1), 1)))


# --- trees ---


def test_golden_encoding():
    obj = to_json(golden())
    assert obj["rule"] == "nn0mulcli"
    assert obj["stmt"] == {
        "head": "elN0",
        "args": [{"op": "tm", "args": [2, {"op": "pl", "args": [{"op": "tm", "args": [4, 1]}, 1]}]}],
    }
    assert [h["rule"] for h in obj["hyps"]] == ["2nn0", "decclc"]
    assert obj["hyps"][0] == {"hyps": [], "stmt": {"head": "elN0", "args": [2]}, "rule": "2nn0"}


def test_serialize_round_trip():
    pf = golden()
    data = serialize(pf)
    assert b" " not in data
    assert deserialize(data) == pf
    assert deserialize(data.decode()) == pf


def test_atomic_node():
    pf = node("3lt4", Lt(3, 4))
    assert deserialize(serialize(pf)) == pf
    assert to_json(pf)["hyps"] == []


def test_pow_terms():
    t = Pow(to_numeral(5), 3)
    assert encode_term(t) == {"op": "exp", "args": [{"op": "pl", "args": [{"op": "tm", "args": [4, 1]}, 1]}, 3]}
    assert decode_term(encode_term(t)) == t


def test_random_products_round_trip(rng):
    for _ in range(20):
        x, y = (to_numeral(int(v)) for v in rng.integers(0, 4**6, size=2))
        pf = prove_mul(x, y)
        assert deserialize(serialize(pf)) == pf


def test_decode_errors():
    with pytest.raises(SchemaError):
        decode_term(11)
    with pytest.raises(SchemaError):
        decode_term({"op": "minus", "args": [1, 2]})
    with pytest.raises(SchemaError):
        decode_term({"op": "pl", "args": [1]})
    with pytest.raises(SchemaError):
        decode_statement({"head": "le", "args": [1, 2]})
    with pytest.raises(SchemaError):
        decode_statement({"head": "eq", "args": [1]})
    with pytest.raises(SchemaError):
        from_json({"hyps": [], "stmt": {"head": "eq", "args": [1, 1]}})


@pytest.mark.parametrize(
    "stmt",
    [
        {"head": ["eq"], "args": [1, 1]},
        {"head": {"eq": 1}, "args": [1, 1]},
        {"head": "eq", "args": [{"op": [1], "args": [1, 1]}, 2]},
        {"head": "eq", "args": [{"op": {"pl": 1}, "args": [1, 1]}, 2]},
        {"head": "eq", "args": [[1], 1]},
    ],
)
def test_non_string_heads_and_operators(stmt):
    with pytest.raises(SchemaError):
        deserialize(json.dumps({"hyps": [], "stmt": stmt, "rule": "x"}))


def deep_proof_text(levels):
    leaf = '{"hyps":[],"stmt":{"head":"elN0","args":[1]},"rule":"1nn0"}'
    opening = '{"hyps":[' * levels
    closing = '],"stmt":{"head":"elN0","args":[1]},"rule":"x"}' * levels
    return opening + leaf + closing


def test_deep_nesting_is_a_schema_error():
    with pytest.raises(SchemaError):
        deserialize(deep_proof_text(MAX_DEPTH + 10))
    with pytest.raises(SchemaError):
        deserialize("[" * 50000 + "]" * 50000)
    document = '{"format_version":"1","goal":"1 in N0","proof":' + deep_proof_text(MAX_DEPTH + 10) + "}"
    with pytest.raises(SchemaError):
        load_document(document).tree()
    assert deserialize(deep_proof_text(50)).rule == "x"


def test_truncated_input():
    data = serialize(golden())
    with pytest.raises(SchemaError):
        deserialize(data[: len(data) // 2])
    with pytest.raises(SchemaError):
        deserialize(b"\xff\xfe")


# --- shared subtrees ---


def test_shared_refs_round_trip():
    r, pf = prove_powmod(3, 64, 1000)
    obj = to_json(pf, share=True)
    assert "ref" in json.dumps(obj)
    back = from_json(obj)
    assert back == pf
    assert back.hyps[7] is back.hyps[8]
    assert check_root(back, PMod(3, to_numeral(64), to_numeral(r), to_numeral(1000)), reuse_shared=True).ok


def test_shared_encoding_is_smaller():
    _, pf = prove_powmod(3, 64, 1000)
    shared = json.dumps(to_json(pf, share=True))
    assert len(shared) < len(serialize(pf))


def test_bad_back_reference():
    obj = {"hyps": [{"ref": 5}], "stmt": {"head": "eq", "args": [1, 1]}, "rule": "eqid"}
    with pytest.raises(SchemaError):
        from_json(obj)
    # a node may not refer to itself before it is complete
    obj = {"hyps": [{"ref": 0}], "stmt": {"head": "eq", "args": [1, 1]}, "rule": "eqid"}
    with pytest.raises(SchemaError):
        from_json(obj)


# --- documents ---


def test_document_round_trip(tmp_path):
    pf = golden()
    doc = make_document("2*(4*1+1) in N0", pf, proof_stats(pf))
    path = tmp_path / "golden.json"
    data = write_document(doc, path)
    assert path.read_bytes() == data
    loaded = read_document(path)
    assert loaded.format_version == FORMAT_VERSION
    assert loaded.goal == "2*(4*1+1) in N0"
    assert loaded.stats.steps == 5
    assert loaded.certificate is None
    assert loaded.tree() == pf
    assert check(loaded.tree()).ok


def test_document_key_order():
    data = write_document(make_document("3 < 4", node("3lt4", Lt(3, 4))))
    assert list(json.loads(data)) == ["format_version", "goal", "proof"]


def test_document_errors(tmp_path):
    good = json.loads(write_document(make_document("3 < 4", golden())))
    with pytest.raises(SchemaError):
        load_document(b"{")
    with pytest.raises(SchemaError):
        load_document(json.dumps({**good, "format_version": "2"}))
    with pytest.raises(SchemaError):
        load_document(json.dumps({k: v for k, v in good.items() if k != "proof"}))
    with pytest.raises(SchemaError):
        read_document(tmp_path / "missing.json")


def test_document_with_certificate():
    pf = golden()
    doc = make_document("prime 4001", pf, certificate="N=4001 p=5 e=3 B=32 a=3 g=800")
    assert load_document(write_document(doc)).certificate.startswith("N=4001")
    assert raw_steps(doc.tree()) == 5
