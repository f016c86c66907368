import json

import pytest
from hypothesis import given

from efxorient.io import (FormatError, dumps_instance, dumps_orientation, instance_from_dict,
                          loads_instance, loads_orientation)
from efxorient.core import Orientation, new_instance

from support import instances, oriented


@given(instances())
def test_instance_round_trip_is_byte_identical(inst):
    text = dumps_instance(inst)
    again = loads_instance(text)
    assert again == inst
    assert dumps_instance(again) == text


@given(oriented(partial=True))
def test_orientation_round_trip(case):
    inst, owners = case
    pi = Orientation(owners)
    assert loads_orientation(dumps_orientation(pi), inst) == pi


def test_rationals_written_as_strings():
    doc = json.loads(dumps_instance(new_instance(2, "7/2", "1/2", [(0, 1, "light")])))
    assert doc["alpha"] == "7/2" and doc["beta"] == "1/2"
    assert list(doc) == ["alpha", "beta", "vertices", "edges"]


@pytest.mark.parametrize("text", [
    "{", "[]", '{"alpha": "3", "beta": "1", "vertices": 2}',
    '{"alpha": 2.5, "beta": "1", "vertices": 2, "edges": []}',
    '{"alpha": "x", "beta": "1", "vertices": 2, "edges": []}',
    '{"alpha": "1", "beta": "1", "vertices": 2, "edges": []}',
    '{"alpha": "3", "beta": "1", "vertices": 2, "edges": [{"u": 0, "v": 5, "w": "heavy"}]}',
    '{"alpha": "3", "beta": "1", "vertices": 2, "edges": [{"u": 0, "v": 1, "w": "medium"}]}',
    '{"alpha": "3", "beta": "1", "vertices": "2", "edges": []}',
])
def test_malformed_instances(text):
    with pytest.raises(FormatError):
        loads_instance(text)


def test_malformed_orientations():
    inst = new_instance(3, 3, 1, [(0, 1, "heavy")])
    for text in ('{"owners": [2]}', '{"owners": []}', '{"own": [0]}', '{"owners": 0}', "nope"):
        with pytest.raises(FormatError):
            loads_orientation(text, inst)


def test_integer_weights_accepted():
    inst = instance_from_dict({"alpha": 3, "beta": 0, "vertices": 1, "edges": []})
    assert inst.alpha == 3
