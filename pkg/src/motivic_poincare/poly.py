"""Exact sparse multivariate Laurent polynomials over the integers.

A polynomial maps monomials to Python ints.  A monomial is a sorted tuple of
``(Var, exponent)`` pairs with no zero exponents, so the empty tuple is the
constant monomial.

Some variables carry half-integer exponents (``q`` always does, since the
quadratic form producing q-powers has a 1/2 prefactor).  For such variables
the *stored* exponent is twice the real power; ``Var.half`` marks them.  All
arithmetic works on stored exponents and therefore stays in the integers.

    >>> p = (ONE - qpow(1) * t(0)) * (ONE + qpow(1) * t(0))
    >>> p.render()
    '1 - q^2*t1^2'
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple


class Kind(IntEnum):
    T = 0  # branch variables t_alpha
    U = 1  # divisor variables u_i
    H = 2  # homological (Maslov) grading of knot Floer polynomials
    Q = 3


class Var(NamedTuple):
    kind: Kind
    index: int = 0
    half: bool = False


Monomial = Tuple[Tuple[Var, int], ...]

Q = Var(Kind.Q, 0, True)
MASLOV = Var(Kind.H, 0)


class NotDivisible(ArithmeticError):
    """Raised when an exact division by a binomial leaves a remainder."""

    def __init__(self, remainder: "LaurentPoly", factor: "Binomial"):
        self.remainder = remainder
        self.factor = factor
        super().__init__(
            f"not divisible by {factor.render()}; remainder {remainder.render()}"
        )


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean: Dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(sorted((v, e) for v, e in m if e))
                    clean[m] = clean.get(m, 0) + int(c)
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "LaurentPoly":
        # trusted constructor: canonical monomials, no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls._raw({(): int(c)} if c else {})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff: int = 1) -> "LaurentPoly":
        """Monomial from *stored* exponents (doubled for half variables)."""
        return cls({tuple(exps.items()): coeff})

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterable[Tuple[Monomial, int]]:
        return self._terms.items()

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def is_constant(self) -> bool:
        return not self._terms or list(self._terms) == [()]

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def degree(self, var: Var) -> int:
        """Largest stored exponent of ``var`` (0 for the zero polynomial)."""
        return max((dict(m).get(var, 0) for m in self._terms), default=0)

    def min_degree(self, var: Var) -> int:
        return min((dict(m).get(var, 0) for m in self._terms), default=0)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self._terms for _, e in m)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            n = out.get(m, 0) + c
            if n:
                out[m] = n
            else:
                del out[m]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self._terms) == 1:
                (m, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly._raw({_mono_pow(m, e): c ** abs(e)})
            raise ValueError("negative powers are only defined for unit monomials")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    # -- transformations --------------------------------------------------

    def substitute(self, rule: Mapping[Var, "LaurentPoly"]) -> "LaurentPoly":
        """Ring-homomorphic substitution of variables by signed monomials.

        Each image must be a single term ``c * m``.  Exponents of half
        variables are taken as stored, so ``t -> q^-1 * t^-1`` is
        ``{t: qpow(-1) * t**-1}``.
        """
        images: Dict[Var, Tuple[Monomial, int]] = {}
        for v, img in rule.items():
            if len(img) != 1:
                raise ValueError(f"image of {v} must be a single term, got {img}")
            (m, c), = img.items()
            images[v] = (m, c)
        out: Dict[Monomial, int] = {}
        for m, c in self._terms.items():
            mono: Monomial = ()
            coeff = c
            for v, e in m:
                if v in images:
                    im, ic = images[v]
                    if e < 0 and ic not in (1, -1):
                        raise ValueError("negative exponent on non-unit image")
                    mono = _mono_mul(mono, _mono_pow(im, e))
                    coeff *= ic ** abs(e)
                else:
                    mono = _mono_mul(mono, ((v, e),))
            out[mono] = out.get(mono, 0) + coeff
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    def evaluate_ones(self, variables: Iterable[Var]) -> "LaurentPoly":
        """Set every listed variable to 1."""
        drop = frozenset(variables)
        if not drop:
            return self
        out: Dict[Monomial, int] = {}
        for m, c in self._terms.items():
            mono = tuple((v, e) for v, e in m if v not in drop)
            out[mono] = out.get(mono, 0) + c
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    def shift(self, exps: Mapping[Var, int]) -> "LaurentPoly":
        """Multiply by the monomial with the given stored exponents."""
        return self * LaurentPoly.monomial(exps)

    def filter(self, keep) -> "LaurentPoly":
        return LaurentPoly._raw({m: c for m, c in self._terms.items() if keep(m)})

    # -- rendering --------------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda mc: _sort_key(mc[0], self._order_vars))

    @property
    def _order_vars(self) -> Tuple[Var, ...]:
        return tuple(sorted(v for v in self.variables() if v.kind in (Kind.T, Kind.U)))

    def render(self, names: Optional[Mapping[Var, str]] = None) -> str:
        """Canonical text form, e.g. ``1 - q*t1 - q*t2 + q*t1*t2``."""
        if not self._terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            body = _render_monomial(m, names)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if i == 0:
                pieces.append(("-" if c < 0 else "") + text)
            else:
                pieces.append((" - " if c < 0 else " + ") + text)
        return "".join(pieces)


def _sort_key(m: Monomial, order_vars: Tuple[Var, ...]):
    d = dict(m)
    vec = tuple(d.get(v, 0) * (1 if v.half else 2) for v in order_vars)
    return (sum(vec), tuple(-x for x in vec), d.get(MASLOV, 0), d.get(Q, 0))


_PRINT_RANK = {Kind.Q: 0, Kind.H: 1, Kind.T: 2, Kind.U: 3}


def default_name(v: Var) -> str:
    if v.kind == Kind.Q:
        return "q"
    if v.kind == Kind.H:
        return "u"
    if v.kind == Kind.T:
        return f"t{v.index + 1}"
    return f"u{v.index}"


def _render_exponent(e: int, half: bool) -> str:
    if half:
        if e % 2 == 0:
            e //= 2
        else:
            return f"^({e}/2)"
    return "" if e == 1 else f"^{e}"


def _render_monomial(m: Monomial, names: Optional[Mapping[Var, str]]) -> str:
    factors = sorted(m, key=lambda ve: (_PRINT_RANK[ve[0].kind], ve[0].index))
    out = []
    for v, e in factors:
        name = names.get(v) if names and v in names else default_name(v)
        out.append(name + _render_exponent(e, v.half))
    return "*".join(out)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({(): 1})


def t(index: int, exp: int = 1) -> LaurentPoly:
    return LaurentPoly._raw({((Var(Kind.T, index), exp),): 1} if exp else {(): 1})


def u(index: int, exp: int = 1) -> LaurentPoly:
    return LaurentPoly._raw({((Var(Kind.U, index), exp),): 1} if exp else {(): 1})


def qpow(power: int) -> LaurentPoly:
    """q raised to an integer power (stored doubled)."""
    return LaurentPoly._raw({((Q, 2 * power),): 1} if power else {(): 1})


def q_half(stored: int) -> LaurentPoly:
    """q^(stored/2)."""
    return LaurentPoly._raw({((Q, stored),): 1} if stored else {(): 1})


def tvar(index: int) -> Var:
    return Var(Kind.T, index)


def uvar(index: int) -> Var:
    return Var(Kind.U, index)


# ---------------------------------------------------------------------------
# binomials and rational series


@dataclass(frozen=True, order=True)
class Binomial:
    """The factor ``1 - x`` or, with ``qflag``, ``1 - q*x``."""

    var: Var
    qflag: bool = False

    @property
    def multiplier(self) -> LaurentPoly:
        return qpow(1) if self.qflag else ONE

    def poly(self) -> LaurentPoly:
        return ONE - self.multiplier * LaurentPoly.monomial({self.var: 1})

    def render(self, names=None) -> str:
        return "(" + self.poly().render(names) + ")"


def exact_div_binomial(p: LaurentPoly, factor: Binomial) -> LaurentPoly:
    """Divide ``p`` exactly by ``1 - x`` (or ``1 - q*x``).

    Raises NotDivisible with ``p`` evaluated at the root of the factor.
    """
    x = factor.var
    if factor.qflag:
        remainder = p.substitute({x: qpow(-1)})
    else:
        remainder = p.evaluate_ones([x])
    if remainder:
        raise NotDivisible(remainder, factor)
    if not p:
        return ZERO
    # group by the exponent of x: p = sum_e c_e x^e
    slices: Dict[int, Dict[Monomial, int]] = {}
    for m, c in p.items():
        d = dict(m)
        e = d.pop(x, 0)
        rest = tuple(sorted(d.items()))
        slices.setdefault(e, {})[rest] = c
    lo, hi = min(slices), max(slices)
    mult = factor.multiplier
    quotient = ZERO
    carry = ZERO
    # p = (1 - m x) Q  =>  b_e = c_e + m b_{e-1}
    for e in range(lo, hi):
        carry = LaurentPoly._raw(slices.get(e, {})) + mult * carry
        quotient = quotient + carry * LaurentPoly.monomial({x: e})
    return quotient


@dataclass(frozen=True)
class RationalSeries:
    """``numerator / prod(denominators)`` with binomial denominator factors."""

    numerator: LaurentPoly
    denominators: Tuple[Binomial, ...] = ()

    def __post_init__(self):
        for f in self.denominators:
            if not isinstance(f, Binomial):
                raise TypeError(f"denominator factors must be Binomial, got {f!r}")
        object.__setattr__(self, "denominators", tuple(sorted(self.denominators)))

    def denominator_poly(self) -> LaurentPoly:
        out = ONE
        for f in self.denominators:
            out = out * f.poly()
        return out

    def is_polynomial(self) -> bool:
        return not self.denominators

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        if isinstance(other, LaurentPoly):
            return RationalSeries(self.numerator * other, self.denominators)
        return RationalSeries(
            self.numerator * other.numerator, self.denominators + other.denominators
        )

    def reduce(self) -> "RationalSeries":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.numerator
        kept = []
        for f in self.denominators:
            try:
                num = exact_div_binomial(num, f)
            except NotDivisible:
                kept.append(f)
        return RationalSeries(num, tuple(kept))

    def equals(self, other: "RationalSeries") -> bool:
        """Exact equality as rational functions (cross multiplication)."""
        return (
            self.numerator * other.denominator_poly()
            == other.numerator * self.denominator_poly()
        )

    def expand(self, weight: Mapping[Var, int], bound: int) -> LaurentPoly:
        return expand_series(self, weight, bound)

    def render(self, names=None) -> str:
        num = self.numerator.render(names)
        if not self.denominators:
            return num
        den = "*".join(f.render(names) for f in self.denominators)
        return f"({num}) / ({den})"


def weighted_degree(m: Monomial, weight: Mapping[Var, int]) -> int:
    return sum(weight.get(v, 0) * e for v, e in m)


def truncated_mul(
    a: LaurentPoly, b: LaurentPoly, weight: Mapping[Var, int], bound: int
) -> LaurentPoly:
    """Product of ``a`` and ``b`` keeping only terms of weighted degree <= bound."""
    bw = [(m, c, weighted_degree(m, weight)) for m, c in b.items()]
    out: Dict[Monomial, int] = {}
    for ma, ca in a.items():
        room = bound - weighted_degree(ma, weight)
        for mb, cb, db in bw:
            if db <= room:
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
    return LaurentPoly._raw({m: c for m, c in out.items() if c})


def expand_series(r: RationalSeries, weight: Mapping[Var, int], bound: int) -> LaurentPoly:
    """All terms of the expansion of ``r`` with weighted degree <= ``bound``.

    Each denominator ``1 - x`` is expanded as a geometric series in ``x``;
    every such ``x`` needs a positive weight so that the truncation is finite.
    Variables absent from ``weight`` have weight 0.
    """
    for f in r.denominators:
        if weight.get(f.var, 0) <= 0:
            raise ValueError(f"denominator variable {f.var} needs a positive weight")
    num = r.numerator
    if not num:
        return ZERO
    dmin = min(weighted_degree(m, weight) for m, _ in num.items())
    room = bound - dmin
    if room < 0:
        return ZERO
    series = ONE
    for f in r.denominators:
        w = weight[f.var]
        step = f.multiplier * LaurentPoly.monomial({f.var: 1})
        geo = ONE
        term = ONE
        for _ in range(room // w):
            term = term * step
            geo = geo + term
        series = truncated_mul(series, geo, weight, room)
    return truncated_mul(num, series, weight, bound)


# ---------------------------------------------------------------------------


def generalized_binomial(k: int, j: int) -> int:
    """``C(k, j)`` for any integer ``k`` and ``j >= 0``."""
    if j < 0:
        return 0
    num = 1
    den = 1
    for i in range(j):
        num *= k - i
        den *= i + 1
    return num // den


def binom_alt_poly(k: int, n: int) -> LaurentPoly:
    """``P_{k,n}(q) = sum_{j<=n} (-1)^j q^j C(k, j)``; ``k`` may be negative."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = ZERO
    for j in range(n + 1):
        c = generalized_binomial(k, j)
        if c:
            out = out + (-1) ** j * c * qpow(j)
    return out
