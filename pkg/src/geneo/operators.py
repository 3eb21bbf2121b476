"""Candidate G-invariant non-expansive operators and a randomized axiom checker.

Operators are small frozen dataclasses that compose into trees.  Every
constructor enforces the condition that makes the operator non-expansive in
the sup norm (e.g. ``sum |w| <= 1`` for weighted shift sums), so an invalid
descriptor fails at build time rather than at application time.

Shifts are measured in grid steps and reduced modulo ``N`` when applied.
``Reflect`` is deliberately included: it is non-expansive but does not
commute with rotations, which makes it the standard negative case for
:func:`validate_geneo`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .core import CircularFunction, TransformGroup
from .errors import ConstraintViolation

WEIGHT_TOL = 1e-12
AXIOM_TOL = 1e-9
MAX_WITNESSES = 3


def _shifted(values: np.ndarray, shift: int) -> np.ndarray:
    """``out[i] = values[(i + shift) mod N]``."""
    n = values.size
    return values[(np.arange(n) + shift) % n]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class Identity:
    def apply(self, values):
        return values

    @property
    def label(self):
        return "identity"


@dataclass(frozen=True)
class ConstantOffset:
    b: float

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise ConstraintViolation(f"constant_offset needs a finite offset, got {self.b}")
        object.__setattr__(self, "b", float(self.b))

    def apply(self, values):
        return values + self.b

    @property
    def label(self):
        return f"constant_offset({_fmt(self.b)})"


@dataclass(frozen=True)
class GridRotation:
    s: int

    def __post_init__(self):
        object.__setattr__(self, "s", int(self.s))

    def apply(self, values):
        return _shifted(values, self.s)

    @property
    def label(self):
        return f"grid_rotation({self.s})"


@dataclass(frozen=True)
class Reflect:
    """``phi -> phi o q_0``; equivariant for no nontrivial rotation group."""

    def apply(self, values):
        n = values.size
        return values[(-np.arange(n)) % n]

    @property
    def label(self):
        return "reflect"


def _shift_tuple(kind, shifts):
    out = tuple(sorted({int(s) for s in shifts}))
    if not out:
        raise ConstraintViolation(f"{kind} needs a nonempty set of shifts")
    return out


@dataclass(frozen=True)
class TranslateMax:
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", _shift_tuple("translate_max", self.shifts))

    def apply(self, values):
        out = _shifted(values, self.shifts[0])
        for s in self.shifts[1:]:
            out = np.maximum(out, _shifted(values, s))
        return out

    @property
    def label(self):
        return "translate_max{" + ",".join(map(str, self.shifts)) + "}"


@dataclass(frozen=True)
class TranslateMin:
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", _shift_tuple("translate_min", self.shifts))

    def apply(self, values):
        out = _shifted(values, self.shifts[0])
        for s in self.shifts[1:]:
            out = np.minimum(out, _shifted(values, s))
        return out

    @property
    def label(self):
        return "translate_min{" + ",".join(map(str, self.shifts)) + "}"


@dataclass(frozen=True)
class WeightedShiftSum:
    """``phi -> sum_k w_k * phi(. + s_k)`` with ``sum |w_k| <= 1``."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((int(s), float(w)) for s, w in self.terms)
        if not terms:
            raise ConstraintViolation("weighted_shift_sum needs at least one term")
        if not all(math.isfinite(w) for _, w in terms):
            raise ConstraintViolation("weighted_shift_sum weights must be finite")
        total = sum(abs(w) for _, w in terms)
        if total > 1 + WEIGHT_TOL:
            raise ConstraintViolation(
                f"weighted_shift_sum has sum |w| = {_fmt(total)} > 1, which is expansive"
            )
        object.__setattr__(self, "terms", terms)

    def apply(self, values):
        out = np.zeros_like(values)
        for s, w in self.terms:
            out = out + w * _shifted(values, s)
        return out

    @property
    def label(self):
        inner = ",".join(f"({s},{_fmt(w)})" for s, w in self.terms)
        return f"weighted_shift_sum[{inner}]"


@dataclass(frozen=True)
class PointwiseMax:
    left: "OperatorSpec"
    right: "OperatorSpec"

    def apply(self, values):
        return np.maximum(self.left.apply(values), self.right.apply(values))

    @property
    def label(self):
        return f"pointwise_max({self.left.label},{self.right.label})"


@dataclass(frozen=True)
class Compose:
    """Apply ``ops`` left to right."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise ConstraintViolation("compose needs at least one operator")
        object.__setattr__(self, "ops", ops)

    def apply(self, values):
        for op in self.ops:
            values = op.apply(values)
        return values

    @property
    def label(self):
        return "compose(" + ",".join(op.label for op in self.ops) + ")"


@dataclass(frozen=True)
class ConvexCombination:
    parts: tuple

    def __post_init__(self):
        parts = tuple((op, float(w)) for op, w in self.parts)
        if not parts:
            raise ConstraintViolation("convex_combination needs at least one part")
        if any(not math.isfinite(w) or w < 0 for _, w in parts):
            raise ConstraintViolation("convex_combination weights must be finite and >= 0")
        total = sum(w for _, w in parts)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ConstraintViolation(
                f"convex_combination weights sum to {_fmt(total)}, expected 1"
            )
        object.__setattr__(self, "parts", parts)

    def apply(self, values):
        out = np.zeros_like(values)
        for op, w in self.parts:
            out = out + w * op.apply(values)
        return out

    @property
    def label(self):
        inner = ",".join(f"({op.label},{_fmt(w)})" for op, w in self.parts)
        return f"convex_combination[{inner}]"


OperatorSpec = Union[
    Identity, ConstantOffset, GridRotation, Reflect, TranslateMax, TranslateMin,
    WeightedShiftSum, PointwiseMax, Compose, ConvexCombination,
]


@dataclass(frozen=True)
class OperatorFamily:
    ops: tuple = ()
    name: str = "family"

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @property
    def labels(self) -> list[str]:
        return [op.label for op in self.ops]


def apply_operator(op: OperatorSpec, phi: CircularFunction) -> CircularFunction:
    return CircularFunction(op.apply(phi.values))


@dataclass(frozen=True)
class AxiomReport:
    max_equivariance_violation: float
    max_expansiveness_ratio: float
    trials: int
    seed: int
    equivariance_witnesses: tuple = field(default=())
    expansiveness_witnesses: tuple = field(default=())

    @property
    def equivariant(self) -> bool:
        return self.max_equivariance_violation <= AXIOM_TOL

    @property
    def non_expansive(self) -> bool:
        return self.max_expansiveness_ratio <= 1 + AXIOM_TOL

    @property
    def passed(self) -> bool:
        return self.equivariant and self.non_expansive

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "max_equivariance_violation": self.max_equivariance_violation,
            "max_expansiveness_ratio": self.max_expansiveness_ratio,
            "trials": self.trials,
            "seed": self.seed,
            "equivariance_witnesses": list(self.equivariance_witnesses),
            "expansiveness_witnesses": list(self.expansiveness_witnesses),
        }


def _trial_function(rng: np.random.Generator, n: int, trial: int) -> np.ndarray:
    # Odd trials use a small integer range so that ties (plateaus) get exercised.
    if trial % 2:
        return rng.integers(-3, 4, size=n).astype(float)
    return rng.uniform(-1.0, 1.0, size=n)


def validate_geneo(op: OperatorSpec, group: TransformGroup, trials: int = 100,
                   seed: int = 0) -> AxiomReport:
    """Randomized check of equivariance and non-expansiveness of ``op``.

    Each trial draws its own generator from ``(seed, trial)``.  Equivariance
    is tested against every element of ``group``; non-expansiveness on one
    random pair per trial plus a small perturbation of the first function.
    Never raises on an axiom failure; see the returned report.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = group.n
    elements = group.elements
    index_maps = [g.indices() for g in elements]

    max_eq = 0.0
    max_ratio = 0.0
    eq_witnesses: list[dict] = []
    ex_witnesses: list[dict] = []

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        phi = _trial_function(rng, n, trial)
        f_phi = op.apply(phi)
        for g, idx in zip(elements, index_maps):
            lhs = op.apply(phi[idx])
            rhs = f_phi[idx]
            violation = float(np.max(np.abs(lhs - rhs)))
            if violation > max_eq:
                max_eq = violation
            if violation > AXIOM_TOL and len(eq_witnesses) < MAX_WITNESSES:
                eq_witnesses.append({
                    "phi": phi.tolist(), "g": g.label,
                    "F(phi o g)": lhs.tolist(), "F(phi) o g": rhs.tolist(),
                    "violation": violation,
                })

        others = (_trial_function(rng, n, trial + 1),
                  phi + rng.uniform(-1e-3, 1e-3, size=n))
        for other in others:
            denom = float(np.max(np.abs(phi - other)))
            if denom == 0.0:
                continue
            ratio = float(np.max(np.abs(f_phi - op.apply(other)))) / denom
            if ratio > max_ratio:
                max_ratio = ratio
            if ratio > 1 + AXIOM_TOL and len(ex_witnesses) < MAX_WITNESSES:
                ex_witnesses.append({"phi1": phi.tolist(), "phi2": other.tolist(), "ratio": ratio})

    return AxiomReport(
        max_equivariance_violation=max_eq,
        max_expansiveness_ratio=max_ratio,
        trials=trials,
        seed=seed,
        equivariance_witnesses=tuple(eq_witnesses),
        expansiveness_witnesses=tuple(ex_witnesses),
    )


# descriptor <-> operator conversion lives here so the JSON schema has one home

def operator_from_dict(desc: dict) -> OperatorSpec:
    """Build an operator from a JSON-style descriptor ``{"type": ..., ...}``.

    Raises :class:`ConstraintViolation` for constraint failures and
    ``KeyError``/``TypeError``/``ValueError`` for malformed descriptors.
    """
    if not isinstance(desc, dict):
        raise TypeError(f"operator descriptor must be an object, got {type(desc).__name__}")
    kind = desc["type"]
    if kind == "identity":
        return Identity()
    if kind == "constant_offset":
        return ConstantOffset(_number(desc["b"]))
    if kind == "grid_rotation":
        return GridRotation(_integer(desc["s"]))
    if kind == "reflect":
        return Reflect()
    if kind in ("translate_max", "translate_min"):
        shifts = [_integer(s) for s in _list(desc["shifts"])]
        return (TranslateMax if kind == "translate_max" else TranslateMin)(tuple(shifts))
    if kind == "weighted_shift_sum":
        terms = [(_integer(t["shift"]), _number(t["weight"])) for t in _list(desc["terms"])]
        return WeightedShiftSum(tuple(terms))
    if kind == "pointwise_max":
        return PointwiseMax(operator_from_dict(desc["left"]), operator_from_dict(desc["right"]))
    if kind == "compose":
        return Compose(tuple(operator_from_dict(d) for d in _list(desc["ops"])))
    if kind == "convex_combination":
        parts = [(operator_from_dict(p["op"]), _number(p["weight"])) for p in _list(desc["parts"])]
        return ConvexCombination(tuple(parts))
    raise ValueError(f"unknown operator type {kind!r}")


def operator_to_dict(op: OperatorSpec) -> dict:
    if isinstance(op, Identity):
        return {"type": "identity"}
    if isinstance(op, ConstantOffset):
        return {"type": "constant_offset", "b": op.b}
    if isinstance(op, GridRotation):
        return {"type": "grid_rotation", "s": op.s}
    if isinstance(op, Reflect):
        return {"type": "reflect"}
    if isinstance(op, TranslateMax):
        return {"type": "translate_max", "shifts": list(op.shifts)}
    if isinstance(op, TranslateMin):
        return {"type": "translate_min", "shifts": list(op.shifts)}
    if isinstance(op, WeightedShiftSum):
        return {"type": "weighted_shift_sum",
                "terms": [{"shift": s, "weight": w} for s, w in op.terms]}
    if isinstance(op, PointwiseMax):
        return {"type": "pointwise_max", "left": operator_to_dict(op.left),
                "right": operator_to_dict(op.right)}
    if isinstance(op, Compose):
        return {"type": "compose", "ops": [operator_to_dict(o) for o in op.ops]}
    if isinstance(op, ConvexCombination):
        return {"type": "convex_combination",
                "parts": [{"op": operator_to_dict(o), "weight": w} for o, w in op.parts]}
    raise TypeError(f"not an operator: {op!r}")


def _number(x) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise TypeError(f"expected a number, got {x!r}")
    return float(x)


def _integer(x) -> int:
    if isinstance(x, bool):
        raise TypeError(f"expected an integer, got {x!r}")
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if not isinstance(x, int):
        raise TypeError(f"expected an integer, got {x!r}")
    return x


def _list(x) -> Sequence:
    if not isinstance(x, list):
        raise TypeError(f"expected a list, got {type(x).__name__}")
    return x
