import pytest
from hypothesis import given, strategies as st

from lcsalg.catalog import load_catalog
from lcsalg.liealg import KForm, LieError
from lcsalg.notation import (IndexOutOfRange, MixedDegree, ParseError, parse_form_expr, parse_structure_notation,
                             to_structure_notation)

NOTATED = [e for e in load_catalog() if e.notation]


def test_examples():
    g1 = parse_structure_notation("(0,0,0,12)")
    assert g1.dim == 4 and g1.brackets == {(0, 1): {3: -1}}
    l622 = parse_structure_notation("(0,0,12,13,14+23,25-34)")
    assert l622.dim == 6 and len(l622.brackets) == 6
    d41 = parse_structure_notation("(12+34,0,-23,0)")
    # de1 = e12 + e34, de3 = -e23 with de^k = -sum c^k_ij e^ij
    assert d41.brackets == {(0, 1): {0: -1}, (2, 3): {0: -1}, (1, 2): {2: 1}}


def test_form_examples():
    phi = parse_form_expr("2*e12+e34", 4)
    assert phi == KForm.basis(4, 0, 1).scale(2) + KForm.basis(4, 2, 3)
    assert parse_form_expr("e3", 4).degree == 1
    z = parse_form_expr("e12-e12", 4)
    assert z.is_zero() and z.degree == 2
    assert parse_form_expr("-1/2*e135", 5).coeffs == {(0, 2, 4): -0.5}


@pytest.mark.parametrize("entry", NOTATED, ids=lambda e: e.key)
def test_print_parse_roundtrip(entry):
    text = to_structure_notation(entry.algebra)
    assert text == entry.notation.replace(" ", "")
    assert parse_structure_notation(text).brackets == entry.algebra.brackets


@pytest.mark.parametrize("text, pos", [
    ("(0,0,21)", 5),
    ("(0,0,12", 7),
    ("0,0,12)", 0),
    ("(0,0,1)", 5),
    ("(0,0,+12)", 5),
    ("(0,0,12)x", 8),
])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_structure_notation(text)
    assert exc.value.position == pos


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange) as exc:
        parse_structure_notation("(0,0,14)")
    assert exc.value.position == 5


def test_form_errors():
    with pytest.raises(MixedDegree):
        parse_form_expr("e1+e23", 3)
    with pytest.raises(ParseError):
        parse_form_expr("", 3)
    with pytest.raises(ParseError):
        parse_form_expr("e19", 3)


@given(st.text(max_size=30))
def test_fuzz_structure_notation(text):
    try:
        parse_structure_notation(text)
    except ParseError as exc:
        assert 0 <= exc.position <= len(text)
    except LieError:
        pass  # well-formed but not a Lie algebra


@given(st.binary(max_size=30))
def test_fuzz_bytes(data):
    text = data.decode("latin-1")
    for fn in (parse_structure_notation, lambda t: parse_form_expr(t, 6)):
        try:
            fn(text)
        except (ParseError, LieError):
            pass


@given(st.text(alphabet="()0123456789+-,e*/ ", max_size=25))
def test_fuzz_grammar_alphabet(text):
    try:
        alg = parse_structure_notation(text)
    except (ParseError, LieError):
        return
    # anything accepted with unit coefficients prints back to an equivalent algebra
    try:
        back = to_structure_notation(alg)
    except ValueError:
        return
    assert parse_structure_notation(back).brackets == alg.brackets
