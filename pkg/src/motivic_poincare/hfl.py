"""Knot Floer Poincare polynomials of algebraic knots.

Two independent derivations are provided for a single branch:

* ``delta_sequence`` reads the staircase of the symmetrized Alexander
  polynomial and assigns each generator its Maslov grading recursively;
* ``hfl_from_pbar`` rewrites the reduced motivic series term by term,
  trading powers of q for Maslov gradings.

Polynomials here use ``t`` (branch variable 0) and ``u`` (the Maslov
grading, ``MASLOV``).  The two-component closed form for ``A_{2n-1}`` needs
half-integral Alexander gradings and uses half variables for ``t1, t2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .poly import MASLOV, ONE, ZERO, Kind, LaurentPoly, Q, Var, t, tvar


class BadShape(ValueError):
    """The Alexander polynomial is not of the staircase form of an algebraic knot."""


class BadCoefficient(ValueError):
    pass


T = tvar(0)


def maslov(d: int) -> LaurentPoly:
    return LaurentPoly.monomial({MASLOV: d})


@dataclass(frozen=True)
class HFLTable:
    """Generators ``(alexander, maslov)`` listed by increasing Alexander grading."""

    entries: Tuple[Tuple[int, int], ...]

    def to_poly(self) -> LaurentPoly:
        out = ZERO
        for n, d in self.entries:
            out = out + t(0, n) * maslov(d)
        return out

    def euler_characteristic(self) -> LaurentPoly:
        out = ZERO
        for n, d in self.entries:
            out = out + (-1) ** (d % 2) * t(0, n)
        return out


def _t_only(p: LaurentPoly) -> dict:
    out = {}
    for m, c in p.items():
        d = dict(m)
        if set(d) - {T}:
            raise BadShape(f"expected a polynomial in t alone, got {p.render()}")
        out[d.get(T, 0)] = c
    return out


def symmetrize(delta: LaurentPoly) -> LaurentPoly:
    """Shift ``delta`` so that its exponents are centred on 0."""
    coeffs = _t_only(delta)
    if not coeffs:
        raise BadShape("zero polynomial")
    lo, hi = min(coeffs), max(coeffs)
    if (lo + hi) % 2:
        raise BadShape(f"degree span {hi - lo} is odd")
    return delta * t(0, -(lo + hi) // 2)


def delta_sequence(delta: LaurentPoly) -> HFLTable:
    """Alexander and Maslov gradings of the generators, from the Alexander polynomial."""
    coeffs = _t_only(symmetrize(delta))
    positive = sorted(e for e in coeffs if e > 0)
    k = len(positive)
    expected = {0: (-1) ** k}
    for i, n in enumerate(positive, start=1):
        expected[n] = expected[-n] = (-1) ** (k - i)
    if coeffs != expected:
        raise BadShape(f"not an alternating staircase: {symmetrize(delta).render({T: 't'})}")
    n = [0] + positive  # n[i] for i = 0..k
    grading = {k: 0}
    for i in range(k - 1, -k - 1, -1):
        ni = n[i] if i >= 0 else -n[-i]
        nxt = n[i + 1] if i + 1 >= 0 else -n[-(i + 1)]
        if (k - i) % 2:
            grading[i] = grading[i + 1] - 2 * (nxt - ni) + 1
        else:
            grading[i] = grading[i + 1] - 1
    entries = tuple(
        (n[i] if i >= 0 else -n[-i], grading[i]) for i in range(-k, k + 1)
    )
    return HFLTable(entries)


def transform_pbar(p: LaurentPoly) -> LaurentPoly:
    """``+t^a q^b -> t^a u^(-2b)`` and ``-t^a q^b -> t^a u^(1-2b)``."""
    out = ZERO
    for m, c in p.items():
        if abs(c) != 1:
            raise BadCoefficient(f"coefficient {c} is not +-1")
        d = dict(m)
        if set(d) - {T, Q}:
            raise BadCoefficient(f"unexpected variables in {m}")
        doubled_b = d.get(Q, 0)  # stored exponent of q is 2b
        shift = -doubled_b if c == 1 else 1 - doubled_b
        out = out + t(0, d.get(T, 0)) * maslov(shift)
    return out


def hfl_from_pbar(p: LaurentPoly) -> LaurentPoly:
    """``HFL(t, u) = t^(deg/2) * D(1/t, u)`` with ``D`` the transformed series."""
    alexander = _t_only(p.evaluate_ones([Q]))
    degree = max(alexander) - min(alexander)
    if degree % 2:
        raise BadShape(f"Alexander polynomial has odd degree {degree}")
    flipped = transform_pbar(p).substitute({T: t(0, -1)})
    return flipped * t(0, degree // 2)


def alexander_from_pbar(p: LaurentPoly) -> LaurentPoly:
    return p.evaluate_ones([Q])


def at_maslov_minus_one(hfl: LaurentPoly) -> LaurentPoly:
    return hfl.substitute({MASLOV: LaurentPoly.constant(-1)})


# ---------------------------------------------------------------------------
# A_{2n-1}: two unknotted components, linking number n


T1H = Var(Kind.T, 0, True)
T2H = Var(Kind.T, 1, True)


def _th(i: int, doubled: int) -> LaurentPoly:
    return LaurentPoly.monomial({(T1H, T2H)[i]: doubled})


def _y_block(level: int, d: int) -> LaurentPoly:
    out = ZERO
    for j in range(level + 1):
        out = out + maslov(d) * _th(0, 2 * (level - j)) * _th(1, 2 * j)
    for j in range(level):
        out = out + maslov(d - 1) * _th(0, 2 * (level - 1 - j)) * _th(1, 2 * j)
    return out


def _b_block(d: int) -> LaurentPoly:
    t1, t2 = _th(0, 2), _th(1, 2)
    return maslov(d) + (t1 + t2) * maslov(d + 1) + maslov(d + 2) * t1 * t2


def hfl_a2n1_closed(n: int) -> LaurentPoly:
    """Two-variable knot Floer Poincare polynomial of the ``A_{2n-1}`` link."""
    if n < 1:
        raise ValueError("n must be positive")

    def diag(doubled: int) -> LaurentPoly:
        return _th(0, doubled) * _th(1, doubled)

    out = _y_block(0, 0) * diag(n) + _y_block(1, -1) * diag(n - 2)
    for i in range(2, n + 1):
        out = out + _b_block(-2 * i) * diag(n - 2 * i)
    return out


def a2n1_shifted(hfl: LaurentPoly, n: int) -> LaurentPoly:
    """``(t1 t2)^(n/2) * HFL(1/t1, 1/t2, u)`` for the two-component closed form."""
    inverted = hfl.substitute({T1H: _th(0, -1), T2H: _th(1, -1)})
    return inverted * _th(0, n) * _th(1, n)


def hfl_names() -> dict:
    return {T: "t", MASLOV: "u"}


def table_rows(table: HFLTable) -> List[str]:
    return [f"{n:>4} {d:>4}" for n, d in table.entries]
