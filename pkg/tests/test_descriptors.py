import json

import pytest

from ordspace.abelian import FlagCone, FlagOrder, LatticeSubgroup, flag_cone
from ordspace.braid import b3_abelianization_cone, dehornoy_cone, example_braid_surgery
from ordspace.cones import PullbackCone, lex_extension, surgery
from ordspace.descriptors import dumps, loads, parse_cone_spec, parse_flag
from ordspace.elements import AbelianGroup, BraidGroup, FreeGroup, TowerGroup, ball
from ordspace.errors import DescriptorError
from ordspace.lattice import Lattice
from ordspace.magnus import magnus_cone
from ordspace.maps import CoordinateMap, InvertGenerator
from ordspace.quad import QuadField
from ordspace.realization import dense_approximation_free, finfty_approximation
from ordspace.tower import enumerate_tower_cones

R2 = QuadField(0, 1)


def shipped_cones():
    Z2 = AbelianGroup(2)
    F2 = FreeGroup(2)
    pl = dense_approximation_free(magnus_cone(2), [F2.parse("x1")], 2)
    fin = finfty_approximation(magnus_cone(None), [FreeGroup(None).parse("x1")])
    return [
        flag_cone([(1, R2)]),
        flag_cone([(1, 1, 0), (1, 0, R2)]),
        FlagCone(FlagOrder.standard(3)),
        magnus_cone(2),
        magnus_cone(None, 3),
        dehornoy_cone(3),
        dehornoy_cone(4),
        *enumerate_tower_cones(2),
        surgery(FlagCone(FlagOrder.standard(2)), LatticeSubgroup(Lattice.from_generators(2, [(0, 1)])), flag_cone([(0, -1), (1, 0)])),
        lex_extension(FlagCone(FlagOrder.standard(2)), FlagCone(FlagOrder.standard(1)), CoordinateMap(Z2, [0])),
        PullbackCone(magnus_cone(2), InvertGenerator(F2, 1)),
        pl.Q,
        pl.Q_prime,
        fin.flip,
        fin.dense,
        b3_abelianization_cone(),
        example_braid_surgery(4, b3_abelianization_cone()),
    ]


@pytest.mark.parametrize("cone", shipped_cones(), ids=lambda c: c.kind)
def test_round_trip(cone):
    text = dumps(cone)
    back = loads(text)
    assert dumps(back) == text
    assert json.loads(text) == cone.descriptor()
    sample = list(ball(cone.group, 2, gens=getattr(cone, "ball_generators", None)))
    assert all(back.classify(g) == cone.classify(g) for g in sample)


def test_shorthands():
    F2 = FreeGroup(2)
    assert parse_cone_spec("magnus", F2).degree == 2
    assert parse_cone_spec("magnus:4", F2).degree == 4
    assert parse_cone_spec("dehornoy", BraidGroup(3)).group == BraidGroup(3)
    assert parse_cone_spec("tower:+-", TowerGroup(2)).label == "+-"
    assert parse_cone_spec("lex", AbelianGroup(2)).flag == FlagOrder.standard(2)
    assert parse_cone_spec("flag:[(1,r2)]", AbelianGroup(2)).flag == FlagOrder(2, [(1, R2)])
    assert parse_cone_spec(dumps(magnus_cone(2))).group == F2


def test_file_reference(tmp_path):
    path = tmp_path / "cone.json"
    path.write_text(dumps(dehornoy_cone(4)))
    assert parse_cone_spec(f"@{path}").group == BraidGroup(4)
    with pytest.raises(DescriptorError):
        parse_cone_spec(f"@{tmp_path / 'missing.json'}")


def test_parse_flag():
    assert parse_flag("[(1,r2),(0,1)]") == ((QuadField(1), R2), (QuadField(0), QuadField(1)))
    for bad in ("(1,2)", "[(1,2)x]", "[]"):
        with pytest.raises(DescriptorError):
            parse_flag(bad)


@pytest.mark.parametrize(
    "text,where",
    [
        ('{"kind":"magnus"}', "'group'"),
        ('{"kind":"magnus","group":"z:2"}', "$.group"),
        ('{"kind":"zk-flag","group":"z:2","functionals":[[1,2]]}', "$.functionals[0]"),
        ('{"kind":"surgery","base":{"kind":"dehornoy","group":"b:3"},"convex":{"kind":"nope"},"replacement":{}}', "$.convex"),
        ('{"kind":"tower-signs","group":"t:2","signs":"+x"}', "$.signs"),
        ('{"kind":"mystery"}', "mystery"),
    ],
)
def test_errors_are_located(text, where):
    with pytest.raises(DescriptorError) as e:
        loads(text)
    assert where in str(e.value)


def test_malformed_json_has_position():
    with pytest.raises(DescriptorError) as e:
        loads('{"kind": "magnus", ')
    assert e.value.position is not None


def test_shorthand_needs_group():
    with pytest.raises(DescriptorError):
        parse_cone_spec("magnus")
    with pytest.raises(DescriptorError):
        parse_cone_spec("dehornoy", FreeGroup(2))
