"""Structured inequality reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

EXACT_PADDING = 1e-12
FLOAT_RTOL = 1e-9


@dataclass
class BoundReport:
    """Outcome of one inequality check.

    ``relation`` is ``"<="`` (the usual ``lhs <= rhs``) or ``">="``;
    ``slack`` is the margin in the holding direction, so ``holds`` iff
    ``slack >= -tolerance``.  When both sides are exact rational multiples
    of ``log p`` (``lhs_exact``/``rhs_exact``) the decision is exact.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    exactness: str
    relation: str = "<="
    tolerance: float = 0.0
    lhs_exact: Fraction | None = None
    rhs_exact: Fraction | None = None
    sup_estimated: bool = False
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "exactness": self.exactness,
            "relation": self.relation,
            "tolerance": self.tolerance,
            "lhs_exact": None if self.lhs_exact is None else str(self.lhs_exact),
            "rhs_exact": None if self.rhs_exact is None else str(self.rhs_exact),
            "sup_estimated": self.sup_estimated,
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, d: dict) -> "BoundReport":
        d = dict(d)
        for k in ("lhs_exact", "rhs_exact"):
            if d.get(k) is not None:
                d[k] = Fraction(d[k])
        return cls(**d)


def make_report(name, lhs, rhs, *, relation="<=", lhs_exact=None, rhs_exact=None,
                lhs_is_exact=False, tol=None, sup_estimated=False, **metadata) -> BoundReport:
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs if relation == "<=" else lhs - rhs
    if lhs_exact is not None and rhs_exact is not None:
        exactness = "exact"
        margin = rhs_exact - lhs_exact if relation == "<=" else lhs_exact - rhs_exact
        holds = margin >= 0
        tol = 0.0
    else:
        exactness = "exact" if (lhs_is_exact or lhs_exact is not None) else "float"
        if tol is None:
            tol = EXACT_PADDING if exactness == "exact" else FLOAT_RTOL * (abs(lhs) + abs(rhs))
        holds = (not math.isnan(slack)) and slack >= -tol
    return BoundReport(
        name=name, lhs=lhs, rhs=rhs, slack=slack, holds=bool(holds), exactness=exactness,
        relation=relation, tolerance=tol, lhs_exact=lhs_exact, rhs_exact=rhs_exact,
        sup_estimated=sup_estimated, metadata=metadata,
    )
