from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import configs
from rootstab.chern import CRClass, NumClass
from rootstab.errors import ParseError, WrongSignature
from rootstab.grammar import (
    bundled_fixtures,
    emit_class,
    emit_config,
    fixture_text,
    fmt_q,
    load_fixture,
    normalize_config_text,
    parse_class,
    parse_config,
    parse_config_text,
    parse_document,
    parse_rational,
)

P2 = '{name: "p2", rho: 1, gram: [["1"]], H: ["1"], C: ["2"], n: 2}'


def test_rationals():
    assert parse_rational("9/2") == F(9, 2)
    assert parse_rational(" -3 / 6 ") == F(-1, 2)
    assert parse_rational("1/-2") == F(-1, 2)
    assert parse_rational(7) == 7
    for bad in ("1/0", "x", "1.5", "", "1/2/3"):
        with pytest.raises(ParseError):
            parse_rational(bad)
    for bad in (0.5, True, None, [1]):
        with pytest.raises(ParseError):
            parse_rational(bad)


@given(st.fractions(max_denominator=1000))
def test_rational_text_round_trip(q):
    assert parse_rational(fmt_q(q)) == q


def test_fmt_inf():
    assert fmt_q(float("inf")) == "+inf"
    with pytest.raises(TypeError):
        fmt_q(0.25)


def test_bundled_fixtures(conic):
    assert bundled_fixtures() == ["p2_conic_n2", "p2_n1", "quadric_n3"]
    assert parse_config("p2_conic_n2") == conic
    assert parse_config("p2_conic_n2.cfg") == conic
    assert parse_config("conic") == conic
    assert (conic.rho, conic.n, conic.H2, conic.h_gerbe, conic.gerbe_sq) == (1, 2, 1, 1, 1)


def test_fixture_round_trip_byte_exact():
    for name in bundled_fixtures():
        text = fixture_text(name)
        assert emit_config(parse_config_text(text)) == text


def test_config_file_on_disk(tmp_path):
    path = tmp_path / "mine.cfg"
    path.write_text(P2)
    cfg = parse_config(str(path))
    assert cfg.n == 2 and cfg.H2 == 1
    assert normalize_config_text(P2) == emit_config(cfg)
    with pytest.raises(ParseError):
        parse_config(str(tmp_path / "missing.cfg"))


def test_config_errors():
    with pytest.raises(ParseError):
        parse_config_text('{rho: 2, gram: [["1", "0"], ["0"]], H: [1, 0], C: [1, 0], n: 1}')
    with pytest.raises(WrongSignature):
        parse_config_text('{rho: 1, gram: [["-1"]], H: [1], C: [1], n: 1}')
    with pytest.raises(ParseError):
        parse_config_text('{rho: 1, gram: [[1]], H: [1], C: [1], n: 1, colour: "red"}')
    with pytest.raises(ParseError):
        parse_config_text('{rho: 1, gram: [[1]], H: [1], C: [1]}')
    with pytest.raises(ParseError):
        parse_config_text('{rho: 1, gram: [[1]], H: [1], C: [1], n: "3/2"}')


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_document('{rho: 1,\n  gram: [[1] [2]]}')
    err = info.value
    assert err.code == "PARSE_ERROR"
    assert (err.details["line"], err.details["column"]) == (2, 14)


def test_string_values_keep_colons():
    doc = parse_document('{name: "a, b: c", n: 1}')
    assert doc == {"name": "a, b: c", "n": 1}


def test_class_examples(conic):
    w = parse_class('{ch0:"1", ch1:["4"], cg:"-1", ch2:"9/2"}', conic)
    assert w == NumClass(1, conic.divisor((4,), -1), F(9, 2))
    o = parse_class('{ch0:"0", ch1:["0"], cg:"0", ch2:"1/2", sectors:[["0","1"]]}', conic)
    assert o == CRClass(NumClass(0, conic.zero_divisor(), F(1, 2)), ((0, 1),))
    with pytest.raises(ParseError):
        parse_class('{ch0:"1", ch1:["4"], ch2:"1/0"}', conic)
    with pytest.raises(ParseError):
        parse_class('{ch0:"1", ch1:["4", "1"], ch2:"0"}', conic)
    with pytest.raises(ParseError):
        parse_class('{ch0:"1", ch1:["4"], ch2:"0", sectors: []}', conic)


def test_emit_class(conic):
    w = NumClass(1, conic.divisor((4,), -1), F(9, 2))
    assert emit_class(w) == '{ch0: "1", ch1: ["4"], cg: "-1", ch2: "9/2"}'
    assert parse_class(emit_class(w), conic) == w
    o = CRClass(w, ((F(1, 3), -2),))
    assert parse_class(emit_class(o), conic) == o


@given(configs())
def test_config_round_trip(cfg):
    text = emit_config(cfg)
    again = parse_config_text(text)
    assert again == cfg and emit_config(again) == text


def test_fixtures_load(quadric):
    assert load_fixture("quadric_n3") == quadric
    with pytest.raises(FileNotFoundError):
        load_fixture("nope")


def test_bare_rationals(conic):
    assert parse_class("{ch0: 1, ch1: [4], cg: -1, ch2: 9/2}", conic) == NumClass(1, conic.divisor((4,), -1), F(9, 2))
    assert parse_document('{name: "ratio 1/2", x: -3 / 4}') == {"name": "ratio 1/2", "x": "-3 / 4"}
    with pytest.raises(ParseError):
        parse_class("{ch0: 1, ch1: [4], ch2: 1/0}", conic)
