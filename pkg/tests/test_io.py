import json

import pytest

from mnatcomp import io
from mnatcomp.discrete import DiscreteFn
from mnatcomp.submodular import SetFunction


def test_setfunction_roundtrip():
    f = SetFunction(3, (0, 3, 2, 4, 1, 3, 2, 3))
    doc = io.setfunction_to_json(f)
    assert doc["values"]["1,2"] == 4 and doc["values"][""] == 0
    inst = io.instance_from_json(json.loads(json.dumps(doc)))
    assert inst.kind == "setfn" and inst.payload == f


def test_discretefn_roundtrip():
    F = DiscreteFn(2, {(1, 0): 1, (0, 1): 0, (2, -1): 5})
    inst = io.loads(json.dumps(io.discretefn_to_json(F)))
    assert inst.kind == "discretefn" and inst.payload.entries == F.entries


def test_vgm_shorthand():
    inst = io.loads('{"kind": "vgm", "n": 2, "values": {"": 0, "1": 1, "2": 0, "1,2": 0}}')
    F = inst.as_discrete()
    assert F.entries == {(0, 0): 0, (1, 0): 1, (0, 1): 0, (1, 1): 0}
    with pytest.raises(io.InputError):
        io.loads('{"n": 1, "values": {"": 0, "1": 0}}').as_discrete()


@pytest.mark.parametrize("text, fragment", [
    ("{", "line 1"),
    ("[]", "JSON object"),
    ('{"n": 2, "values": {"": 0, "1": 1, "2": 0}}', "missing, first '1,2'"),
    ('{"n": 2, "values": {"": 0, "1": 1, "2": 0, "2,1": 0}}', "sorted"),
    ('{"n": 2, "values": {"": 0, "1": 1, "2": 0, "1,3": 0}}', "1..2"),
    ('{"n": 2, "values": {"": 0, "1": 1.5, "2": 0, "1,2": 0}}', "values['1']"),
    ('{"n": 1, "values": {"": 1, "1": 0}}', "must be 0"),
    ('{"n": 1, "values": {"": 0, "a": 0}}', "element list"),
    ('{"values": {}}', "missing 'n'"),
    ('{"n": 0, "values": {}}', "document.n"),
    ('{"n": 2, "points": []}', "nonempty"),
    ('{"n": 2, "points": [{"x": [0], "f": 0}]}', "points[0].x"),
    ('{"n": 1, "points": [{"x": [0]}]}', "missing 'f'"),
    ('{"n": 1, "points": [{"x": [0], "f": 0}, {"x": [0], "f": 1}]}', "duplicate"),
    ('{"kind": "poly", "n": 1}', "document.kind"),
])
def test_parse_errors_name_the_key(text, fragment):
    with pytest.raises(io.InputError) as exc:
        io.loads(text)
    assert fragment in str(exc.value)


def test_load_missing_file(tmp_path):
    with pytest.raises(io.InputError, match="cannot read"):
        io.load(str(tmp_path / "nope.json"))
