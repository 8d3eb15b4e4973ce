"""Structural checks for a computed reduced Poincare series.

Each check returns a ``CheckReport`` instead of raising, so a caller can run
the whole suite and tabulate the outcome.  A failing report always carries a
nonzero witness polynomial: a residual or the offending term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple

from .poly import (
    ONE,
    ZERO,
    Binomial,
    Kind,
    LaurentPoly,
    NotDivisible,
    Q,
    Var,
    exact_div_binomial,
    qpow,
    t,
    tvar,
)
from .resolution import CurveInvariants


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    witness: Optional[LaurentPoly] = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failing check {self.name!r} needs a nonzero witness")

    def line(self, names=None) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name:<12} {status}"
        if self.detail:
            text += f"  {self.detail}"
        if not self.passed:
            text += f"  witness: {self.witness.render(names)}"
        return text


def _report(name: str, residual: LaurentPoly, detail: str = "") -> CheckReport:
    return CheckReport(name, not residual, residual if residual else None, detail)


def check_symmetry(p: LaurentPoly, inv: CurveInvariants) -> CheckReport:
    """``p(1/(q t)) == q^-delta * prod t^-l * p(t)`` as Laurent polynomials."""
    r = len(inv.l_alpha)
    rule = {tvar(a): qpow(-1) * t(a, -1) for a in range(r)}
    lhs = p.substitute(rule)
    scale = qpow(-inv.delta)
    for a, la in enumerate(inv.l_alpha):
        scale = scale * t(a, -la)
    return _report("symmetry", lhs - scale * p)


def check_alexander(p: LaurentPoly, r: int) -> Tuple[Optional[LaurentPoly], CheckReport]:
    """Specialize at ``q = 1`` and strip the factors ``1 - t_i`` when ``r > 1``.

    For one branch the result must take the value 1 at ``t = 1``.
    """
    delta = p.evaluate_ones([Q])
    if r == 1:
        at_one = delta.evaluate_ones([tvar(0)])
        return delta, _report("alexander", at_one - ONE, "value at t=1")
    for a in range(r):
        try:
            delta = exact_div_binomial(delta, Binomial(tvar(a)))
        except NotDivisible as exc:
            return None, CheckReport(
                "alexander", False, exc.remainder, f"q=1 value not divisible by (1 - t{a + 1})"
            )
    return delta, _report("alexander", ZERO)


def check_forget(
    p_full: LaurentPoly,
    p_sub: Optional[LaurentPoly],
    dropped: Var,
    rename: Optional[Mapping[Var, Var]] = None,
) -> CheckReport:
    """``p_full`` at ``dropped = 1`` against ``(1 - q) * p_sub``.

    ``rename`` maps the sub-curve's variables onto those of the full curve.
    With ``p_sub`` omitted the expected value is 1 (a single branch).
    """
    lhs = p_full.evaluate_ones([dropped])
    if p_sub is None:
        return _report("forget", lhs - ONE, "value at t=1")
    if rename:
        p_sub = p_sub.substitute({v: LaurentPoly.monomial({w: 1}) for v, w in rename.items()})
    return _report("forget", lhs - (ONE - qpow(1)) * p_sub)


def check_degree(p: LaurentPoly, inv: CurveInvariants) -> CheckReport:
    """Degree in each ``t_a`` is ``l_a``; the unique top term is ``q^delta prod t^l``; constant term 1."""
    for a, la in enumerate(inv.l_alpha):
        deg = p.degree(tvar(a)) if tvar(a) in p.variables() else 0
        if deg != la:
            worst = p.filter(lambda m: dict(m).get(tvar(a), 0) == deg)
            return CheckReport("degree", False, worst, f"t{a + 1}-degree {deg} != {la}")
    top_exps = {tvar(a): la for a, la in enumerate(inv.l_alpha) if la}
    top = p.filter(lambda m: {v: e for v, e in m if v.kind == Kind.T} == top_exps)
    expected = LaurentPoly.monomial({**top_exps, Q: 2 * inv.delta})
    if top != expected:
        return CheckReport("degree", False, top - expected, "top monomial")
    if p.constant_term() != 1:
        return CheckReport(
            "degree", False, LaurentPoly.constant(p.constant_term() - 1), "constant term"
        )
    return CheckReport("degree", True, detail=f"l = {list(inv.l_alpha)}, delta = {inv.delta}")


def check_unit_coefficients(p: LaurentPoly) -> CheckReport:
    """Every coefficient is 1 or -1 (expected for a single branch)."""
    bad = p.filter(lambda m: abs(p.coefficient(m)) != 1)
    return _report("coefficients", bad)


def run_suite(p: LaurentPoly, inv: CurveInvariants) -> List[CheckReport]:
    r = len(inv.l_alpha)
    reports = [check_symmetry(p, inv), check_alexander(p, r)[1], check_degree(p, inv)]
    if r == 1:
        reports.append(check_forget(p, None, tvar(0)))
        reports.append(check_unit_coefficients(p))
    return reports
