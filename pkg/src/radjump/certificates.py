"""Certified-inequality record shared by the bounds, landau, functionals and
regularity layers.

A certificate states one concrete inequality instance: the two evaluated
sides, the multiplicative constant in front of the bound side, the signed
slack (``margin``), and the numerical tolerance the slack is judged against.
``margin`` is always oriented so that *more positive = more slack*: for
lower-bound checks (lhs >= rhs) it is ``lhs - rhs``; for upper-bound checks
(lhs <= rhs) it is ``rhs - lhs``.  ``passed`` is exactly ``margin >= -tolerance``
and tolerances are floored at TOL_FLOOR so a zero-error certificate is never
failed by sign noise in a genuinely tight (margin = 0) case.
"""

from dataclasses import dataclass, field
from typing import Optional

TOL_FLOOR = 1e-9

CHECK_NAMES = (
    "FisherJump",
    "EntropyJump",
    "EntropyJumpNoReg",
    "LsiNoReg",
    "LsiReg",
    "ImprovedStam",
    "ImprovedLsi",
    "MixtureExample",
    "DvLemma",
    "ChiMoment",
    "D_vs_deficit",
)

CSV_COLUMNS = (
    "profile_id",
    "d",
    "check",
    "epsilon",
    "lhs",
    "rhs",
    "constant",
    "margin",
    "tolerance",
    "pass",
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


@dataclass(frozen=True)
class BoundCertificate:
    name: str
    profile_id: str
    d: int
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool
    direction: str = "lower"
    epsilon: Optional[float] = None
    constant: Optional[float] = None
    c_used: Optional[float] = None
    error_budget: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        name: str,
        profile,
        lhs: float,
        rhs: float,
        tolerance: float,
        *,
        direction: str = "lower",
        epsilon: Optional[float] = None,
        constant: Optional[float] = None,
        c_used: Optional[float] = None,
        error_budget: Optional[dict] = None,
        metadata: Optional[dict] = None,
    ) -> "BoundCertificate":
        if direction not in ("lower", "upper"):
            raise ValueError(f"direction must be 'lower' or 'upper', got {direction!r}")
        margin = (lhs - rhs) if direction == "lower" else (rhs - lhs)
        tol = max(float(tolerance), TOL_FLOOR)
        return cls(
            name=name,
            profile_id=profile.profile_id,
            d=profile.dim,
            lhs=float(lhs),
            rhs=float(rhs),
            margin=float(margin),
            tolerance=tol,
            passed=bool(margin >= -tol),
            direction=direction,
            epsilon=None if epsilon is None else float(epsilon),
            constant=None if constant is None else float(constant),
            c_used=None if c_used is None else float(c_used),
            error_budget=dict(error_budget or {}),
            metadata=dict(metadata or {}),
        )

    def to_csv_row(self) -> list:
        return [
            self.profile_id,
            str(self.d),
            self.name,
            _fmt(self.epsilon),
            _fmt(self.lhs),
            _fmt(self.rhs),
            _fmt(self.constant),
            _fmt(self.margin),
            _fmt(self.tolerance),
            _fmt(self.passed),
        ]

    def to_json_dict(self) -> dict:
        out = {
            "check": self.name,
            "profile_id": self.profile_id,
            "d": self.d,
            "epsilon": self.epsilon,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "constant": self.constant,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "direction": self.direction,
            "c_used": self.c_used,
            "error_budget": self.error_budget,
        }
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def key(self) -> tuple:
        return (self.profile_id, self.name, -1.0 if self.epsilon is None else self.epsilon)
