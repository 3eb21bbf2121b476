import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geneo.core import (GroupElement, TransformGroup, act, enumerate_group, make_function,
                        sup_distance)
from geneo.errors import EmptyInput, NonFiniteValue, SizeMismatch

PHI = [0, 2, 1, 3]


def r(s, n=4):
    return GroupElement.rotation(s, n)


def q(s, n=4):
    return GroupElement.reflection(s, n)


def test_make_function_basic():
    phi = make_function(PHI)
    assert phi.n == 4
    assert phi.tolist() == [0.0, 2.0, 1.0, 3.0]


@pytest.mark.parametrize("values", [[], [1.0], [1.0, 2.0]])
def test_make_function_too_short(values):
    with pytest.raises(EmptyInput):
        make_function(values)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_make_function_non_finite_reports_index(bad):
    with pytest.raises(NonFiniteValue) as info:
        make_function([0, bad, 1])
    assert info.value.index == 1


def test_function_is_immutable():
    phi = make_function(PHI)
    with pytest.raises(ValueError):
        phi.values[0] = 5.0


def test_act_examples():
    phi = make_function(PHI)
    # expected values from the index maps written out by hand
    rot1 = [PHI[(i + 1) % 4] for i in range(4)]
    ref0 = [PHI[(-i) % 4] for i in range(4)]
    assert rot1 == [2, 1, 3, 0]
    assert ref0 == [0, 3, 1, 2]
    assert act(r(0), phi).tolist() == PHI
    assert act(r(1), phi).tolist() == rot1
    assert act(q(0), phi).tolist() == ref0


def test_act_size_mismatch():
    with pytest.raises(SizeMismatch):
        act(r(1, 5), make_function(PHI))


def test_sup_distance_examples():
    phi = make_function(PHI)
    assert sup_distance(phi, phi) == 0.0
    assert sup_distance(phi, make_function([1, 1, 1, 1])) == 2.0
    assert sup_distance(make_function([0] * 5), make_function([1] * 5)) == 1.0
    with pytest.raises(SizeMismatch):
        sup_distance(phi, make_function([0, 0, 0]))


def test_enumerate_group_examples():
    assert enumerate_group(TransformGroup("trivial", 8)) == [r(0, 8)]
    assert enumerate_group(TransformGroup("cyclic", 4)) == [r(s) for s in range(4)]
    dihedral = enumerate_group(TransformGroup("dihedral", 4))
    assert len(dihedral) == 8
    assert dihedral == [r(s) for s in range(4)] + [q(s) for s in range(4)]
    assert dihedral[0].is_identity


@pytest.mark.parametrize("preset,size", [("trivial", lambda n: 1), ("cyclic", lambda n: n),
                                         ("dihedral", lambda n: 2 * n)])
def test_group_orders(preset, size):
    for n in range(3, 12):
        elements = enumerate_group(TransformGroup(preset, n))
        assert len(elements) == len(set(elements)) == size(n)


@pytest.mark.parametrize("n", range(3, 17))
@pytest.mark.parametrize("preset", ["trivial", "cyclic", "dihedral"])
def test_group_closed_under_composition_and_inverse(preset, n):
    group = TransformGroup(preset, n)
    elements = set(enumerate_group(group))
    for g in elements:
        assert g.inverse() in elements
        assert g.compose(g.inverse()).is_identity
        for h in elements:
            assert h.compose(g) in elements


@pytest.mark.parametrize("n", range(3, 9))
def test_action_property_exhaustive(n):
    rng = np.random.default_rng(n)
    phi = make_function(rng.normal(size=n))
    elements = enumerate_group(TransformGroup("dihedral", n))
    for g in elements:
        # compose must agree with plain function composition on indices
        for h in elements:
            assert [h.compose(g)(i) for i in range(n)] == [h(g(i)) for i in range(n)]
            assert act(g, act(h, phi)) == act(h.compose(g), phi)
    assert act(GroupElement.identity(n), phi) == phi


@settings(max_examples=60, deadline=None)
@given(n=st.integers(9, 80), data=st.data())
def test_action_property_random(n, data):
    kinds = st.sampled_from(["rotation", "reflection"])
    shifts = st.integers(-3 * n, 3 * n)
    g = GroupElement(data.draw(kinds), data.draw(shifts), n)
    h = GroupElement(data.draw(kinds), data.draw(shifts), n)
    values = data.draw(st.lists(st.floats(-1e6, 1e6), min_size=n, max_size=n))
    phi = make_function(values)
    assert act(g, act(h, phi)) == act(h.compose(g), phi)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), n=st.integers(3, 40))
def test_action_is_isometry(data, n):
    floats = st.floats(-1e3, 1e3)
    a = make_function(data.draw(st.lists(floats, min_size=n, max_size=n)))
    b = make_function(data.draw(st.lists(floats, min_size=n, max_size=n)))
    g = GroupElement(data.draw(st.sampled_from(["rotation", "reflection"])),
                     data.draw(st.integers(0, n - 1)), n)
    assert sup_distance(act(g, a), act(g, b)) == sup_distance(a, b)
