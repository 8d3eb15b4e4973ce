"""Reduced motivic Poincare series of a plane curve singularity.

Three routes to the same polynomial are provided:

* ``assemble`` sums over proper-everywhere arrow sets ``P`` the expansions of
  the generating functions ``H_P(u)``; it is exact whenever every divisor
  carries an arrow and uses a certified truncation otherwise.
* ``assemble_one_arrow_each`` is the short pipeline for graphs with exactly
  one arrow per divisor.
* ``oracle_subset_expansion`` expands the subset generating functions
  ``A_K(u)`` term by term; it serves as an independent check up to a chosen
  total t-degree.

For a single branch, ``semigroup_series`` reads the answer off the value
semigroup.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .poly import (
    ONE,
    ZERO,
    Binomial,
    Kind,
    LaurentPoly,
    NotDivisible,
    Q,
    RationalSeries,
    Var,
    exact_div_binomial,
    expand_series,
    qpow,
    t,
    tvar,
    u,
    uvar,
)
from .resolution import (
    CurveInvariants,
    ResolutionData,
    milnor_numbers,
    q_exponent,
    t_exponent,
)


class EngineError(RuntimeError):
    """Internal consistency failure: the input violated a structural guarantee."""


class TruncationUnstable(EngineError):
    pass


class NonIntegralExponent(EngineError):
    pass


class NegativeExponentInResult(EngineError):
    pass


class DegreeBoundExceeded(EngineError):
    pass


class BadGenerators(ValueError):
    pass


ArrowSet = FrozenSet[int]


def _one_minus_qu(i: int) -> LaurentPoly:
    return ONE - qpow(1) * u(i)


def _one_minus_u(i: int) -> LaurentPoly:
    return ONE - u(i)


def _edge_factor(i: int, j: int, mu_i: int = 0, mu_j: int = 0) -> LaurentPoly:
    # 1 - q^{1-mu_i} u_i - q^{1-mu_j} u_j + q^{1-mu_i-mu_j} u_i u_j
    return (
        ONE
        - qpow(1 - mu_i) * u(i)
        - qpow(1 - mu_j) * u(j)
        + qpow(1 - mu_i - mu_j) * u(i) * u(j)
    )


def _u_monomial(exps: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial({uvar(i): e for i, e in enumerate(exps) if e})


def _split_u_term(mono, s: int) -> Tuple[List[int], int]:
    n = [0] * s
    qexp = 0
    for v, e in mono:
        if v.kind == Kind.U:
            n[v.index] = e
        elif v == Q:
            qexp = e
        else:
            raise EngineError(f"unexpected variable {v} in a u-series")
    return n, qexp


def t_names(d: ResolutionData) -> Dict[Var, str]:
    return {tvar(a): name for a, name in enumerate(d.names)}


# ---------------------------------------------------------------------------
# subset generating functions


def a_K(d: ResolutionData, K: Iterable[int]) -> RationalSeries:
    """Generating function ``A_K(u)`` of the coefficients ``c_K(n)``."""
    K = frozenset(K)
    num = LaurentPoly.constant((-1) ** len(K))
    dens: List[Binomial] = []
    for i in range(d.s):
        in_k = sum(1 for a in d.arrows_on(i) if a in K)
        out_k = d.k[i] - in_k
        for exp, base, qflag in ((out_k - 1, _one_minus_qu(i), True), (in_k - 1, _one_minus_u(i), False)):
            if exp >= 0:
                num = num * base ** exp
            else:
                dens.append(Binomial(uvar(i), qflag))
    for i, j in d.edges:
        num = num * _edge_factor(i, j)
    return RationalSeries(num, tuple(dens))


def proper_everywhere_sets(d: ResolutionData) -> Iterator[ArrowSet]:
    """Arrow sets meeting every divisor in a proper subset of its arrows."""
    choices = []
    for i in range(d.s):
        arrows = d.arrows_on(i)
        if not arrows:
            continue
        subsets = [
            frozenset(c)
            for size in range(len(arrows))
            for c in itertools.combinations(arrows, size)
        ]
        choices.append(subsets)
    for combo in itertools.product(*choices):
        yield frozenset().union(*combo)


def _empty_divisors(d: ResolutionData, P: ArrowSet) -> List[int]:
    return [i for i in range(d.s) if not any(a in P for a in d.arrows_on(i))]


def _inner_edges(d: ResolutionData, E: FrozenSet[int]) -> int:
    return sum(1 for i, j in d.edges if i in E and j in E)


def h_tilde(d: ResolutionData, P: Iterable[int]) -> RationalSeries:
    """The sum over divisor sets ``E`` whose quotient gives ``H_P``.

    ``E`` ranges over subsets of the divisors missed by ``P`` that carry at
    least one arrow.  Arrow-free divisors contribute a ``1/(1 - q u_i)``
    factor to every summand, kept as a denominator.
    """
    P = frozenset(P)
    empty = _empty_divisors(d, P)
    candidates = [i for i in empty if d.k[i] >= 1]
    dens = tuple(Binomial(uvar(i), True) for i in empty if d.k[i] == 0)
    total = ZERO
    for size in range(len(candidates) + 1):
        for E in itertools.combinations(candidates, size):
            E = frozenset(E)
            mu = [1 if i in E else 0 for i in range(d.s)]
            sign = (-1) ** sum(d.k[i] for i in E)
            shift = [-sum(d.a[i][j] * mu[j] for j in range(d.s)) for i in range(d.s)]
            term = sign * qpow(_inner_edges(d, E)) * _u_monomial(shift)
            for i in E:
                term = term * (qpow(1) - u(i)) ** (d.k[i] - 1)
            for i in empty:
                if i not in E and d.k[i] >= 1:
                    term = term * _one_minus_qu(i) ** (d.k[i] - 1)
            for i, j in d.edges:
                term = term * _edge_factor(i, j, mu[i], mu[j])
            total = total + term
    return RationalSeries(total, dens)


def h_P(d: ResolutionData, P: Iterable[int]) -> RationalSeries:
    """``H_P(u)``, whose coefficients are the numbers ``d_P(n)``.

    Division by ``1 - u_i`` is exact for divisors carrying arrows (a failure
    raises NotDivisible).  For arrow-free divisors it is attempted and the
    factor is kept as a denominator when it does not divide.
    """
    P = frozenset(P)
    ht = h_tilde(d, P)
    num = ht.numerator
    dens = list(ht.denominators)
    for i in _empty_divisors(d, P):
        factor = Binomial(uvar(i))
        if d.k[i] >= 1:
            num = exact_div_binomial(num, factor)
        else:
            try:
                num = exact_div_binomial(num, factor)
            except NotDivisible:
                dens.append(factor)
    for i in range(d.s):
        p_i = sum(1 for a in d.arrows_on(i) if a in P)
        if p_i:
            num = num * _one_minus_qu(i) ** (d.k[i] - p_i - 1) * _one_minus_u(i) ** (p_i - 1)
    return RationalSeries(num, tuple(dens))


# ---------------------------------------------------------------------------
# assembly


def _to_t_series(
    d: ResolutionData, series: LaurentPoly, marked: ArrowSet, sign: int
) -> LaurentPoly:
    """Map ``u^n q^e`` to ``sign * t_marked * q^|marked| * t^{Mn} q^{e + F(n) - sum n}``."""
    out: Dict = {}
    extra_q = 2 * len(marked)
    for mono, c in series.items():
        n, qexp = _split_u_term(mono, d.s)
        texp = list(t_exponent(d, n))
        for a in marked:
            texp[a] += 1
        qs = qexp + q_exponent(d, n) + extra_q
        key = tuple((tvar(a), e) for a, e in enumerate(texp) if e)
        if qs:
            key = key + ((Q, qs),)
        key = tuple(sorted(key))
        out[key] = out.get(key, 0) + sign * c
    return LaurentPoly({m: c for m, c in out.items() if c})


@dataclass(frozen=True)
class _Plan:
    anchor: int  # branch whose t-degree certifies truncation
    weight: Tuple[Tuple[Var, int], ...]
    bound: int


def _plan(d: ResolutionData, inv: CurveInvariants, margin: int) -> _Plan:
    anchor = min(range(d.r), key=lambda a: (inv.l_alpha[a], a))
    row = d.m[d.component_divisor[anchor]]
    weight = tuple((uvar(j), row[j]) for j in range(d.s))
    return _Plan(anchor, weight, inv.l_alpha[anchor] + margin)


def _contribution(args) -> Tuple[LaurentPoly, bool]:
    d, P, plan = args
    H = h_P(d, P)
    sign = (-1) ** len(P)
    if H.is_polynomial():
        return _to_t_series(d, H.numerator, P, sign), False
    # the u-weight of u^n is exactly the anchor's exponent in t^{Mn}
    bound = plan.bound - (1 if plan.anchor in P else 0)
    expanded = expand_series(H, dict(plan.weight), bound)
    return _to_t_series(d, expanded, P, sign), True


def _check_result(p: LaurentPoly, inv: CurveInvariants) -> None:
    for mono, c in p.items():
        for v, e in mono:
            if e < 0:
                raise NegativeExponentInResult(f"term {c}*{mono} has a negative exponent")
            if v == Q and e % 2:
                raise NonIntegralExponent(f"term {c}*{mono} has a half-integral q power")
            if v.kind == Kind.T and e > inv.l_alpha[v.index]:
                raise DegreeBoundExceeded(
                    f"t{v.index + 1}-degree {e} exceeds the bound {inv.l_alpha[v.index]}"
                )


def assemble(
    d: ResolutionData,
    inv: Optional[CurveInvariants] = None,
    *,
    workers: Optional[int] = None,
    margin: int = 1,
) -> LaurentPoly:
    """Reduced motivic Poincare series from resolution data.

    When arrow-free divisors force genuine power series, each ``H_P`` is
    expanded until the anchor branch reaches t-degree ``l + margin``.  Every
    term with that t-degree or less is then complete, so terms of degree
    above ``l`` must cancel; if they do not, TruncationUnstable is raised.
    """
    if inv is None:
        inv = milnor_numbers(d)
    if margin < 1:
        raise ValueError("margin must be at least 1")
    plan = _plan(d, inv, margin)
    jobs = [(d, P, plan) for P in proper_everywhere_sets(d)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_contribution, jobs))
    else:
        parts = [_contribution(job) for job in jobs]
    total = reduce(lambda x, y: x + y, (p for p, _ in parts), ZERO)
    if any(truncated for _, truncated in parts):
        anchor_var = tvar(plan.anchor)
        total = total.filter(lambda m: dict(m).get(anchor_var, 0) <= plan.bound)
        leftovers = total.filter(
            lambda m: any(v.kind == Kind.T and e > inv.l_alpha[v.index] for v, e in m)
        )
        if leftovers:
            raise TruncationUnstable(
                f"terms beyond the degree bound did not cancel: {leftovers.render()}"
            )
    _check_result(total, inv)
    return total


class PreconditionError(ValueError):
    pass


def assemble_one_arrow_each(d: ResolutionData) -> LaurentPoly:
    """Short pipeline for graphs with exactly one arrow on every divisor."""
    if any(k != 1 for k in d.k):
        raise PreconditionError(f"every divisor must carry exactly one arrow, got k = {d.k}")
    s = d.s
    base = ONE
    for i, j in d.edges:
        base = base * (ONE - qpow(1) * u(i) - qpow(1) * u(j) + qpow(1) * u(i) * u(j))
    htilde = ZERO
    for size in range(s + 1):
        for chosen in itertools.combinations(range(s), size):
            mu = [1 if i in chosen else 0 for i in range(s)]
            inner = sum(1 for i, j in d.edges if mu[i] and mu[j])
            shift = [-sum(d.a[i][j] * mu[j] for j in range(s)) for i in range(s)]
            rule = {uvar(i): u(i) * qpow(-1) for i in chosen}
            htilde = htilde + (-1) ** size * qpow(inner) * _u_monomial(shift) * base.substitute(rule)
    hpoly = htilde
    for i in range(s):
        hpoly = exact_div_binomial(hpoly, Binomial(uvar(i)))
    out = ZERO
    for mono, c in hpoly.items():
        n, qexp = _split_u_term(mono, s)
        texp = t_exponent(d, n)
        term = LaurentPoly.monomial(
            {**{tvar(a): e for a, e in enumerate(texp)}, Q: qexp + q_exponent(d, n)}, c
        )
        out = out + term
    _check_result(out, milnor_numbers(d))
    return out


def oracle_subset_expansion(d: ResolutionData, t_bound: int) -> LaurentPoly:
    """Brute-force expansion over all arrow subsets, complete up to total t-degree ``t_bound``.

    ``u^n`` produces ``t^{Mn}`` whose total degree is ``sum_j w_j n_j`` with
    ``w_j`` the column sums of M over the arrow rows; expanding each ``A_K``
    to that weighted degree is therefore exact.
    """
    if t_bound < 0:
        raise ValueError("t_bound must be non-negative")
    weight = {
        uvar(j): sum(d.m[i][j] for i in d.component_divisor) for j in range(d.s)
    }
    total = ZERO
    for size in range(d.r + 1):
        if size > t_bound:
            break
        for K in itertools.combinations(range(d.r), size):
            K = frozenset(K)
            series = expand_series(a_K(d, K), weight, t_bound - size)
            total = total + _to_t_series(d, series, K, 1)
    return total.filter(lambda m: sum(e for v, e in m if v.kind == Kind.T) <= t_bound)


def truncate_total_degree(p: LaurentPoly, bound: int) -> LaurentPoly:
    return p.filter(lambda m: sum(e for v, e in m if v.kind == Kind.T) <= bound)


# ---------------------------------------------------------------------------
# irreducible branches via the value semigroup


@dataclass(frozen=True)
class SemigroupSeries:
    pbar: LaurentPoly
    pg_head: LaurentPoly
    conductor: int
    elements: Tuple[int, ...]  # semigroup elements below the conductor

    @property
    def gaps(self) -> int:
        return self.conductor - len(self.elements)


def semigroup_elements(generators: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    """Elements below the conductor, and the conductor itself."""
    gens = sorted(set(int(g) for g in generators))
    if not gens or gens[0] <= 0:
        raise BadGenerators("generators must be positive integers")
    if reduce(gcd, gens) != 1:
        raise BadGenerators(f"gcd of {gens} is not 1")
    smallest = gens[0]
    member = [True]
    run = 1
    n = 0
    while run < smallest:
        n += 1
        ok = any(n - g >= 0 and member[n - g] for g in gens)
        member.append(ok)
        run = run + 1 if ok else 0
    conductor = n - smallest + 1
    if smallest == 1:
        conductor = 0
    return tuple(x for x in range(conductor) if member[x]), conductor


def semigroup_series(generators: Sequence[int], terms: int = 10) -> SemigroupSeries:
    """``P_g = sum_k q^k t^{sigma_k}`` and ``P̄ = (1 - q t) P_g`` for a branch."""
    elements, conductor = semigroup_elements(generators)
    g = len(elements)
    tt = t(0)
    pbar = ZERO
    for k, sigma in enumerate(elements):
        pbar = pbar + qpow(k) * t(0, sigma)
    pbar = pbar * (ONE - qpow(1) * tt) + qpow(g) * t(0, conductor)
    head = ZERO
    for k in range(terms):
        sigma = elements[k] if k < g else conductor + (k - g)
        head = head + qpow(k) * t(0, sigma)
    return SemigroupSeries(pbar, head, conductor, elements)


def semigroup_invariants(series: SemigroupSeries) -> CurveInvariants:
    """Invariants of a branch read off its semigroup (conductor = Milnor number)."""
    c = series.conductor
    return CurveInvariants(
        mu=c, mu_alpha=(c,), l_alpha=(c,), delta=series.gaps, intersections=((c,),)
    )


# ---------------------------------------------------------------------------


def a2n1_closed_form(n: int) -> LaurentPoly:
    """Closed form of the reduced series for ``A_{2n-1}``: ``y^2 = x^{2n}``."""
    if n < 1:
        raise ValueError("n must be positive")
    x = t(0) * t(1)
    first = ONE + qpow(n) * x ** n
    for j in range(1, n):
        first = first + (qpow(j) + qpow(j + 1)) * x ** j
    second = ZERO
    for j in range(n):
        second = second + qpow(j + 1) * x ** j
    return first - (t(0) + t(1)) * second
