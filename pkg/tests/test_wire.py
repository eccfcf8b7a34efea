import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from factorbreak.attacks import AttackReport, span_attack_decrypt
from factorbreak.bench import Family, Instance
from factorbreak.errors import ParseError
from factorbreak.factor_scheme import Ciphertext, KexToken, PrivateKey, PublicKey, Role
from factorbreak.wire import parse, serialize

from conftest import GOLDEN, matrices


@pytest.mark.parametrize("name, build", [
    ("ex1_public_key.json", lambda ex: ex["pub"]),
    ("ex1_private_key.json", lambda ex: ex["priv"]),
    ("ex1_ciphertext.json", lambda ex: ex["ct"]),
    ("ex1_message.json", lambda ex: ex["m"]),
    ("ex1_instance.json", lambda ex: Instance(ex["g"], ex["h"], Family.GENERAL_LINEAR)),
])
def test_golden_bytes(ex1, name, build):
    text = (GOLDEN / name).read_text()
    assert serialize(build(ex1)) == text
    assert parse(text) == build(ex1)


def test_key_order_is_fixed(ex1):
    text = serialize(ex1["pub"])
    positions = [text.index(f'"{k}"') for k in ("kind", "p", "n", "g", "h", "c")]
    assert positions == sorted(positions)


@st.composite
def wire_objects(draw):
    a = draw(matrices())
    b = draw(matrices(n=a.n, p=a.p))
    kind = draw(st.sampled_from(["matrix", "instance", "pub", "priv", "ct", "token", "report"]))
    if kind == "matrix":
        return a
    if kind == "instance":
        return Instance(a, b, draw(st.sampled_from(list(Family))))
    if kind == "pub":
        return PublicKey(a, b, a @ b)
    if kind == "priv":
        return PrivateKey(draw(st.integers(-2**40, 2**40)), draw(st.integers(-5, 5)), a, b)
    if kind == "ct":
        return Ciphertext(a, b)
    if kind == "token":
        return KexToken(a, draw(st.sampled_from(list(Role))))
    return AttackReport(draw(st.sampled_from(["span", "lindecomp", "lindecomp-kex"])), a,
                        draw(st.integers(0, 100)), draw(st.integers(0, 64)),
                        draw(st.floats(0, 100, allow_nan=False)), draw(st.sampled_from([None, True, False])))


@settings(max_examples=150)
@given(wire_objects())
def test_round_trip(obj):
    text = serialize(obj)
    assert parse(text) == obj
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("text, field", [
    ('{"kind": "matrix", "p": 7, "n": 2, "m": [[7, 0], [0, 1]]}', "m"),
    ('{"kind": "matrix", "p": 7, "n": 2, "m": [[-1, 0], [0, 1]]}', "m"),
    ('{"kind": "matrix", "p": 8, "n": 2, "m": [[1, 0], [0, 1]]}', "p"),
    ('{"kind": "matrix", "p": 7, "n": 2, "m": [[1, 0, 0], [0, 1]]}', "m"),
    ('{"kind": "matrix", "p": 7, "n": 2, "m": [[1, 0], [0, 1.5]]}', "m"),
    ('{"kind": "public_key", "p": 7, "n": 2, "g": [[1, 0], [0, 1]], "h": [[1, 0], [0, 1]]}', "c"),
    ('{"kind": "secret", "p": 7, "n": 2}', "kind"),
    ('{"kind": "kex_token", "p": 7, "n": 1, "role": "observer", "t": [[1]]}', "role"),
    ('{"kind": "instance", "p": 7, "n": 1, "family": "braid", "g": [[1]], "h": [[1]]}', "family"),
])
def test_parse_errors_name_field(text, field):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.field == field
    assert field in str(info.value)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse('{"kind": "matrix",\n "p": 7,\n "n": 2 "m": []}')
    assert info.value.line == 3


def test_parse_expected_type(ex1):
    with pytest.raises(ParseError):
        parse(serialize(ex1["ct"]), PublicKey)


def test_unknown_keys_rejected():
    with pytest.raises(ParseError):
        parse('{"kind": "matrix", "p": 7, "n": 1, "m": [[1]], "x": 3}')


def test_report_round_trip_after_attack(ex1):
    report = span_attack_decrypt(ex1["pub"], ex1["ct"], np.random.default_rng(1)).graded(ex1["m"])
    assert parse(serialize(report)) == report
