"""Functions on the sampled circle and the grid-aligned groups acting on them.

A :class:`CircularFunction` holds ``N`` samples of a piecewise-linear function
on S^1, sample ``i`` sitting at angle ``2*pi*i/N``.  Groups are realised as
index permutations of the sample grid, so every group action is exact.

Composition convention: ``act(g, phi)`` is ``phi o g``, i.e. ``g`` is applied
to indices first.  For group elements, ``h.compose(g)`` is the element
``i -> h(g(i))``, and ``act(g, act(h, phi)) == act(h.compose(g), phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyInput, NonFiniteValue, SizeMismatch

ROTATION = "rotation"
REFLECTION = "reflection"

TRIVIAL = "trivial"
CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
GROUP_PRESETS = (TRIVIAL, CYCLIC, DIHEDRAL)


class CircularFunction:
    """Immutable vector of samples of a PL function on the circle."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[float]):
        arr = np.array(list(values) if not isinstance(values, np.ndarray) else values,
                       dtype=float).ravel()
        if arr.size < 3:
            raise EmptyInput(int(arr.size))
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise NonFiniteValue(int(bad[0]), float(arr[bad[0]]))
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n(self) -> int:
        return self._values.size

    def tolist(self) -> list[float]:
        return self._values.tolist()

    def __len__(self):
        return self._values.size

    def __eq__(self, other):
        if not isinstance(other, CircularFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._values, other._values))

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"CircularFunction({self.tolist()!r})"

    def __add__(self, offset: float) -> CircularFunction:
        return CircularFunction(self._values + offset)


def make_function(values: Sequence[float]) -> CircularFunction:
    """Validate ``values`` and wrap them as a :class:`CircularFunction`.

    Raises :class:`EmptyInput` for fewer than 3 samples and
    :class:`NonFiniteValue` (carrying the index) for NaN or infinities.
    """
    return CircularFunction(values)


def check_same_size(a: int, b: int) -> None:
    if a != b:
        raise SizeMismatch(a, b)


@dataclass(frozen=True)
class GroupElement:
    """Grid homeomorphism of the circle.

    ``rotation`` with shift ``s`` maps ``i -> (i + s) mod N``;
    ``reflection`` with shift ``s`` maps ``i -> (s - i) mod N``.
    """

    kind: str
    shift: int
    n: int

    def __post_init__(self):
        if self.kind not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown group element kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "shift", int(self.shift) % self.n)

    @classmethod
    def rotation(cls, shift: int, n: int) -> GroupElement:
        return cls(ROTATION, shift, n)

    @classmethod
    def reflection(cls, shift: int, n: int) -> GroupElement:
        return cls(REFLECTION, shift, n)

    @classmethod
    def identity(cls, n: int) -> GroupElement:
        return cls(ROTATION, 0, n)

    @property
    def is_identity(self) -> bool:
        return self.kind == ROTATION and self.shift == 0

    def __call__(self, i: int) -> int:
        if self.kind == ROTATION:
            return (i + self.shift) % self.n
        return (self.shift - i) % self.n

    def indices(self) -> np.ndarray:
        i = np.arange(self.n)
        if self.kind == ROTATION:
            return (i + self.shift) % self.n
        return (self.shift - i) % self.n

    def compose(self, first: GroupElement) -> GroupElement:
        """Return ``self o first``: apply ``first`` to an index, then ``self``."""
        check_same_size(self.n, first.n)
        a, b = self.shift, first.shift
        if self.kind == ROTATION:
            return GroupElement(first.kind, a + b, self.n)
        if first.kind == ROTATION:
            return GroupElement(REFLECTION, a - b, self.n)
        return GroupElement(ROTATION, a - b, self.n)

    def inverse(self) -> GroupElement:
        if self.kind == ROTATION:
            return GroupElement(ROTATION, -self.shift, self.n)
        return self

    @property
    def label(self) -> str:
        return f"{'r' if self.kind == ROTATION else 'q'}_{self.shift}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "shift": self.shift, "n": self.n}


@dataclass(frozen=True)
class TransformGroup:
    """One of the finite grid groups: trivial, cyclic C_N or dihedral D_N."""

    preset: str
    n: int
    _elements: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.preset not in GROUP_PRESETS:
            raise ValueError(f"unknown group preset {self.preset!r}; expected one of {GROUP_PRESETS}")
        if self.n < 3:
            raise EmptyInput(self.n)
        rotations = [GroupElement.rotation(s, self.n) for s in range(self.n)]
        if self.preset == TRIVIAL:
            elements = rotations[:1]
        elif self.preset == CYCLIC:
            elements = rotations
        else:
            elements = rotations + [GroupElement.reflection(s, self.n) for s in range(self.n)]
        object.__setattr__(self, "_elements", tuple(elements))

    @property
    def elements(self) -> tuple[GroupElement, ...]:
        return self._elements

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, g):
        return g in self._elements


def enumerate_group(group: TransformGroup) -> list[GroupElement]:
    """All elements of ``group``: identity first, rotations by ascending
    shift, then reflections by ascending shift."""
    return list(group.elements)


def act(g: GroupElement, phi: CircularFunction) -> CircularFunction:
    """Right action ``phi o g``: ``act(g, phi)[i] == phi[g(i)]``."""
    check_same_size(g.n, phi.n)
    return CircularFunction(phi.values[g.indices()])


def sup_distance(phi1: CircularFunction, phi2: CircularFunction) -> float:
    # Max over vertices equals the continuous sup norm for PL functions on a common grid.
    check_same_size(phi1.n, phi2.n)
    return float(np.max(np.abs(phi1.values - phi2.values)))
