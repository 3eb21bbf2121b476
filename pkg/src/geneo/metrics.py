"""Sup norm, natural pseudo-distance and the family matching pseudo-metric.

Groups and operator families are finite, so the infimum over the group and
the supremum over the family are plain min and max.  Ties go to the first
element in enumeration order, which keeps reports reproducible.

For a family of G-invariant non-expansive operators the chain

    D_family(phi1, phi2) <= d_G(phi1, phi2) <= ||phi1 - phi2||_inf

must hold; :func:`verify_inequalities` measures every term and checks it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .core import CircularFunction, GroupElement, TransformGroup, act, check_same_size, sup_distance
from .matching import bottleneck
from .operators import OperatorFamily, apply_operator, validate_geneo
from .persistence import sublevel_diagram

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


def natural_pseudo_distance(phi1: CircularFunction, phi2: CircularFunction,
                            group: TransformGroup) -> tuple[float, GroupElement]:
    """``min over g of ||phi1 - phi2 o g||_inf`` and the first minimizing ``g``."""
    check_same_size(phi1.n, phi2.n)
    check_same_size(phi1.n, group.n)
    best, best_g = None, None
    for g in group:
        d = sup_distance(phi1, act(g, phi2))
        if best is None or d < best:
            best, best_g = d, g
    return best, best_g


def family_distances(phi1: CircularFunction, phi2: CircularFunction,
                     family: OperatorFamily) -> list[tuple[str, float]]:
    check_same_size(phi1.n, phi2.n)
    out = []
    for op in family:
        d1 = sublevel_diagram(apply_operator(op, phi1))
        d2 = sublevel_diagram(apply_operator(op, phi2))
        out.append((op.label, bottleneck(d1, d2).distance))
    return out


def family_matching_distance(phi1: CircularFunction, phi2: CircularFunction,
                             family: OperatorFamily) -> tuple[float, Optional[str]]:
    """Largest matching distance between the diagrams of ``F(phi1)`` and
    ``F(phi2)`` over ``F`` in ``family``, with the first achieving label.

    An empty family gives ``(0.0, None)``.
    """
    return max_with_label(family_distances(phi1, phi2, family))


def max_with_label(per_op):
    """Largest value in ``(label, value)`` pairs, first label on ties; ``(0.0, None)`` when empty."""
    best, label = 0.0, None
    for name, d in per_op:
        if label is None or d > best:
            best, label = d, name
    return best, label


@dataclass(frozen=True)
class VerificationReport:
    sup_norm: float
    d_G: float
    argmin_g: GroupElement
    D_family_match: float
    argmax_op: Optional[str]
    per_op_distances: tuple
    per_op_sup_norms: tuple
    chain_ok: bool
    stability_ok: bool
    tolerance: float
    seed: int
    group: str
    axiom_reports: tuple = field(default=())

    @property
    def axioms_ok(self) -> bool:
        return all(rep.passed for _, rep in self.axiom_reports)

    def to_dict(self) -> dict:
        return {
            "sup_norm": self.sup_norm,
            "d_G": self.d_G,
            "argmin_g": self.argmin_g.to_dict(),
            "D_family_match": self.D_family_match,
            "argmax_op": self.argmax_op,
            "per_op_distances": [{"op": n, "distance": d} for n, d in self.per_op_distances],
            "per_op_sup_norms": [{"op": n, "sup_norm": d} for n, d in self.per_op_sup_norms],
            "chain_ok": self.chain_ok,
            "stability_ok": self.stability_ok,
            "axioms_ok": self.axioms_ok,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "group": self.group,
            "axiom_reports": [
                {"op": n, **rep.to_dict()} for n, rep in self.axiom_reports
            ],
        }


def verify_inequalities(phi1: CircularFunction, phi2: CircularFunction,
                        group: TransformGroup, family: OperatorFamily,
                        tolerance: float = DEFAULT_TOLERANCE, *, seed: int = 0,
                        trials: int = 50) -> VerificationReport:
    """Measure sup norm, d_G and D_family and check the lower-bound chain.

    ``stability_ok`` holds when, for every operator, the matching distance of
    the two image diagrams is at most the sup distance of the images.  Each
    operator is also re-validated against ``group`` with ``trials`` random
    functions (``trials=0`` skips this) and the axiom reports are attached;
    ``chain_ok`` itself does not depend on them.
    """
    check_same_size(phi1.n, phi2.n)
    check_same_size(phi1.n, group.n)

    sup = sup_distance(phi1, phi2)
    d_g, g = natural_pseudo_distance(phi1, phi2, group)

    per_op, per_op_sup = [], []
    stability_ok = True
    for op in family:
        f1, f2 = apply_operator(op, phi1), apply_operator(op, phi2)
        d = bottleneck(sublevel_diagram(f1), sublevel_diagram(f2)).distance
        s = sup_distance(f1, f2)
        per_op.append((op.label, d))
        per_op_sup.append((op.label, s))
        if d > s + tolerance:
            log.warning("stability violated for %s: %r > %r", op.label, d, s)
            stability_ok = False
    big_d, label = max_with_label(per_op)

    chain_ok = big_d <= d_g + tolerance and d_g <= sup + tolerance

    axiom_reports = ()
    if trials > 0:
        axiom_reports = tuple(
            (op.label, validate_geneo(op, group, trials=trials, seed=seed)) for op in family
        )
        for name, rep in axiom_reports:
            log.debug("axioms %s: equivariance %.3g, ratio %.6g", name,
                      rep.max_equivariance_violation, rep.max_expansiveness_ratio)

    return VerificationReport(
        sup_norm=sup,
        d_G=d_g,
        argmin_g=g,
        D_family_match=big_d,
        argmax_op=label,
        per_op_distances=tuple(per_op),
        per_op_sup_norms=tuple(per_op_sup),
        chain_ok=chain_ok,
        stability_ok=stability_ok,
        tolerance=tolerance,
        seed=seed,
        group=group.preset,
        axiom_reports=axiom_reports,
    )

