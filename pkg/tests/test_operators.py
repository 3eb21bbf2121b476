import numpy as np
import pytest

from geneo.core import GroupElement, TransformGroup, act, make_function, sup_distance
from geneo.errors import ConstraintViolation
from geneo.operators import (Compose, ConstantOffset, ConvexCombination, GridRotation, Identity,
                             PointwiseMax, Reflect, TranslateMax, TranslateMin, WeightedShiftSum,
                             apply_operator, operator_from_dict, operator_to_dict, validate_geneo)

PHI = make_function([0, 2, 1, 3])

VALID = [
    Identity(),
    ConstantOffset(-1.0),
    GridRotation(3),
    TranslateMax((0, 1)),
    TranslateMax((0, 1, 2)),
    TranslateMin((0, 1)),
    TranslateMin((-2, 5)),
    WeightedShiftSum(((0, 0.5), (1, 0.5))),
    WeightedShiftSum(((0, 0.7), (3, -0.3))),
    PointwiseMax(TranslateMin((0, 1)), WeightedShiftSum(((2, 0.25),))),
    Compose((TranslateMax((0, 1)), WeightedShiftSum(((0, 0.5), (2, 0.5))))),
    ConvexCombination(((Identity(), 0.25), (TranslateMax((0, 2)), 0.75))),
]


def test_apply_examples():
    assert apply_operator(Identity(), PHI).tolist() == [0, 2, 1, 3]
    # pointwise max of phi(i), phi(i+1), written out
    expected = [max(PHI.values[i], PHI.values[(i + 1) % 4]) for i in range(4)]
    assert expected == [2, 2, 3, 3]
    assert apply_operator(TranslateMax((0, 1)), PHI).tolist() == expected
    expected = [0.5 * PHI.values[i] + 0.5 * PHI.values[(i + 2) % 4] for i in range(4)]
    assert expected == [0.5, 2.5, 0.5, 2.5]
    assert apply_operator(WeightedShiftSum(((0, 0.5), (2, 0.5))), PHI).tolist() == expected
    assert apply_operator(ConstantOffset(-1), PHI).tolist() == [-1, 1, 0, 2]


def test_apply_rotation_and_reflect_match_group_action():
    assert apply_operator(GridRotation(1), PHI) == act(GroupElement.rotation(1, 4), PHI)
    assert apply_operator(Reflect(), PHI) == act(GroupElement.reflection(0, 4), PHI)
    # shifts reduce mod N
    assert apply_operator(GridRotation(5), PHI) == apply_operator(GridRotation(1), PHI)
    assert apply_operator(TranslateMin((-1,)), PHI) == apply_operator(TranslateMin((3,)), PHI)


def test_compose_is_left_to_right():
    op = Compose((ConstantOffset(1.0), TranslateMax((0, 1))))
    assert apply_operator(op, PHI).tolist() == [3, 3, 4, 4]
    op = Compose((GridRotation(1), Reflect()))
    # rotate first, then reflect: phi((-i) + 1)
    assert apply_operator(op, PHI).tolist() == [PHI.values[(1 - i) % 4] for i in range(4)]


def test_weight_constraints():
    with pytest.raises(ConstraintViolation):
        WeightedShiftSum(((0, 0.8), (1, 0.4)))
    with pytest.raises(ConstraintViolation):
        WeightedShiftSum(((0, 0.8), (1, -0.4)))
    WeightedShiftSum(((0, 0.5), (1, 0.5 + 1e-13)))
    with pytest.raises(ConstraintViolation):
        ConvexCombination(((Identity(), 0.5), (Identity(), 0.6)))
    with pytest.raises(ConstraintViolation):
        ConvexCombination(((Identity(), 1.5), (Identity(), -0.5)))
    with pytest.raises(ConstraintViolation):
        TranslateMax(())
    with pytest.raises(ConstraintViolation):
        Compose(())


def test_identity_passes():
    rep = validate_geneo(Identity(), TransformGroup("cyclic", 8), trials=100, seed=0)
    assert rep.passed
    assert rep.max_equivariance_violation == 0.0
    assert rep.max_expansiveness_ratio <= 1.0


def test_reflect_counterexample_by_hand():
    g = GroupElement.rotation(1, 4)
    lhs = apply_operator(Reflect(), act(g, PHI))
    rhs = act(g, apply_operator(Reflect(), PHI))
    assert lhs.tolist() == [2, 0, 3, 1]
    assert rhs.tolist() == [3, 1, 2, 0]


def test_reflect_fails_cyclic_with_witness():
    rep = validate_geneo(Reflect(), TransformGroup("cyclic", 4), trials=5, seed=1)
    assert not rep.passed
    assert rep.max_equivariance_violation > 0
    assert rep.non_expansive
    assert 1 <= len(rep.equivariance_witnesses) <= 3
    w = rep.equivariance_witnesses[0]
    assert w["F(phi o g)"] != w["F(phi) o g"]


def test_reflect_is_equivariant_for_reflection_only_subgroup_elements():
    # reflect commutes with q_0 and r_0 but not with other rotations
    n = 6
    rng = np.random.default_rng(3)
    phi = make_function(rng.normal(size=n))
    for g in (GroupElement.identity(n), GroupElement.reflection(0, n)):
        assert apply_operator(Reflect(), act(g, phi)) == act(g, apply_operator(Reflect(), phi))


def test_rotation_fails_dihedral():
    g = GroupElement.reflection(0, 4)
    op = GridRotation(1)
    assert apply_operator(op, act(g, PHI)) != act(g, apply_operator(op, PHI))
    rep = validate_geneo(op, TransformGroup("dihedral", 4), trials=1, seed=0)
    assert rep.max_equivariance_violation > 0
    assert not rep.passed


@pytest.mark.parametrize("op", VALID, ids=lambda op: op.label)
def test_valid_operators_pass_cyclic_exactly(op):
    rep = validate_geneo(op, TransformGroup("cyclic", 12), trials=40, seed=7)
    assert rep.max_equivariance_violation == 0.0
    assert rep.max_expansiveness_ratio <= 1 + 1e-12
    assert rep.passed


@pytest.mark.parametrize("op", VALID + [Reflect()], ids=lambda op: op.label)
def test_non_expansive_on_random_pairs(op, rng):
    for _ in range(50):
        n = int(rng.integers(3, 30))
        a = make_function(rng.uniform(-1, 1, n))
        b = make_function(rng.uniform(-1, 1, n))
        assert (sup_distance(apply_operator(op, a), apply_operator(op, b))
                <= sup_distance(a, b) + 1e-12)


def test_validate_is_deterministic():
    op = VALID[-1]
    group = TransformGroup("dihedral", 10)
    assert validate_geneo(op, group, 20, 5) == validate_geneo(op, group, 20, 5)
    rep = validate_geneo(Reflect(), TransformGroup("cyclic", 10), 20, 5)
    assert rep == validate_geneo(Reflect(), TransformGroup("cyclic", 10), 20, 5)


def test_validate_needs_trials():
    with pytest.raises(ValueError):
        validate_geneo(Identity(), TransformGroup("cyclic", 5), trials=0)


@pytest.mark.parametrize("op", VALID + [Reflect()], ids=lambda op: op.label)
def test_descriptor_round_trip(op):
    assert operator_from_dict(operator_to_dict(op)) == op


def test_descriptor_errors():
    with pytest.raises(KeyError):
        operator_from_dict({"type": "constant_offset"})
    with pytest.raises(ValueError):
        operator_from_dict({"type": "warp"})
    with pytest.raises(TypeError):
        operator_from_dict({"type": "grid_rotation", "s": "one"})
