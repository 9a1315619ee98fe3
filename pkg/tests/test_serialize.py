import json
import random

import pytest

from cone_green.catalog import first_example, planted_operator, second_example
from cone_green.errors import ParseError
from cone_green.field import gr
from cone_green.green import GreenFormula, verify_theorem_main
from cone_green.serialize import (
    SCHEMA,
    document,
    dumps,
    loads,
    matrix_from_json,
    matrix_to_json,
    operator_from_json,
    operator_to_json,
    rational_from_json,
    rational_to_json,
)
from cone_green.symbols import complete_symbol, invert_complete_symbol


def operators():
    rng = random.Random(17)
    out = [first_example()[0], second_example(gr("3/2"), gr("-2+i"))[0]]
    out += [planted_operator(rng, rng.randint(1, 3), rng.randint(1, 3)) for _ in range(5)]
    return out


@pytest.mark.parametrize("A", operators())
def test_operator_records_round_trip(A):
    doc = loads(dumps(operator_to_json(A)))
    assert doc["schema"] == SCHEMA
    assert operator_from_json(doc) == A


def test_operator_from_expression_record():
    doc = {"expression": "d^2 + a*d + b", "bindings": {"a": "3/2", "b": "-2+i"}}
    assert operator_from_json(doc) == second_example(gr("3/2"), gr("-2+i"))[0]


def test_numbers_are_strings():
    text = dumps(operator_to_json(first_example()[0]))

    def walk(x):
        if isinstance(x, dict):
            return all(walk(v) for v in x.values())
        if isinstance(x, list):
            return all(walk(v) for v in x)
        return not isinstance(x, float)

    assert walk(json.loads(text))
    assert '"-1/1+0/1*i"' in text


def test_rational_functions_round_trip():
    Sinv = invert_complete_symbol(complete_symbol(second_example(gr("1/2"), gr("i"))[0]), 3)
    for k in range(4):
        f = Sinv.shifted_term(k)
        assert rational_from_json(json.loads(json.dumps(rational_to_json(f)))) == f


def test_matrices_round_trip():
    M = verify_theorem_main(*first_example()).pairing
    assert matrix_from_json(matrix_to_json(M)) == M


def test_green_formula_record_round_trips():
    f = verify_theorem_main(*first_example()).formula
    assert GreenFormula.from_record(f.to_record()) == f


def test_dumps_is_byte_stable():
    doc = document("example", {"b": [gr("1/2")], "a": "x"})
    doc = json.loads(json.dumps(doc, default=str))
    assert dumps(doc) == dumps(json.loads(dumps(doc)))
    assert dumps(doc).index('"a"') < dumps(doc).index('"b"')


@pytest.mark.parametrize(
    "text",
    ["{", "[1, 2]", '{"schema": "cone-green/2"}', '{"coeffs": [[[["x"]]]], "mu": 0, "size": 1}', "{}"],
)
def test_malformed_input_is_a_parse_error(text):
    with pytest.raises(ParseError):
        operator_from_json(loads(text))
