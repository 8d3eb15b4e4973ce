"""Embedded resolution graphs and the numerical data derived from them.

A resolution graph is the dual tree of the exceptional divisor: one vertex
per divisor E_i with its self-intersection, an edge whenever two divisors
meet, and one arrow per branch of the strict transform, attached to the
divisor it crosses.  ``validate`` turns it into a ``ResolutionData`` holding
``M = -A^{-1}``, the Euler characteristics of the punctured divisors and the
arrow counts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import sympy


class InvalidGraph(ValueError):
    """Base class for rejected resolution graphs."""


class NotATree(InvalidGraph):
    pass


class NonUnimodular(InvalidGraph):
    pass


class NonPositiveM(InvalidGraph):
    pass


class BadSelfIntersection(InvalidGraph):
    pass


class ParityError(InvalidGraph):
    pass


@dataclass(frozen=True)
class Arrow:
    divisor: int
    name: str


@dataclass(frozen=True)
class ResolutionGraph:
    self_intersections: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    arrows: Tuple[Arrow, ...]

    @classmethod
    def build(cls, self_intersections, edges, arrows, names=None) -> "ResolutionGraph":
        """Convenience constructor; ``arrows`` is a list of divisor indices."""
        if names is None:
            names = [f"t{a + 1}" for a in range(len(arrows))]
        return cls(
            tuple(self_intersections),
            tuple(tuple(e) for e in edges),
            tuple(Arrow(d, n) for d, n in zip(arrows, names)),
        )

    @classmethod
    def from_dict(cls, data: dict) -> "ResolutionGraph":
        try:
            divisors = data["divisors"]
            self_int = tuple(int(d["self_intersection"]) for d in divisors)
            edges = tuple((int(a), int(b)) for a, b in data.get("edges", []))
            arrows = tuple(
                Arrow(int(a["divisor"]), str(a.get("name", f"t{k + 1}")))
                for k, a in enumerate(data["arrows"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraph(f"malformed graph description: {exc!r}") from exc
        return cls(self_int, edges, arrows)

    @classmethod
    def load(cls, path) -> "ResolutionGraph":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "divisors": [{"self_intersection": a} for a in self.self_intersections],
            "edges": [list(e) for e in self.edges],
            "arrows": [{"divisor": a.divisor, "name": a.name} for a in self.arrows],
        }

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.arrows)


@dataclass(frozen=True)
class ResolutionData:
    graph: ResolutionGraph
    a: Tuple[Tuple[int, ...], ...]
    m: Tuple[Tuple[int, ...], ...]
    chi_bullet: Tuple[int, ...]
    chi_circ: Tuple[int, ...]
    k: Tuple[int, ...]
    component_divisor: Tuple[int, ...]
    neighbors: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def r(self) -> int:
        return len(self.component_divisor)

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(tuple(sorted(e)) for e in self.graph.edges)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.graph.names

    def arrows_on(self, i: int) -> Tuple[int, ...]:
        return tuple(a for a, d in enumerate(self.component_divisor) if d == i)


@dataclass(frozen=True)
class CurveInvariants:
    mu: int
    mu_alpha: Tuple[int, ...]
    l_alpha: Tuple[int, ...]
    delta: int
    intersections: Tuple[Tuple[int, ...], ...]

    @property
    def degree_bound(self) -> Tuple[int, ...]:
        return self.l_alpha


def _check_tree(s: int, edges) -> List[List[int]]:
    seen = set()
    nbrs: List[List[int]] = [[] for _ in range(s)]
    for a, b in edges:
        if not (0 <= a < s and 0 <= b < s):
            raise NotATree(f"edge {(a, b)} refers to a missing divisor")
        if a == b:
            raise NotATree(f"self-loop at divisor {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise NotATree(f"duplicate edge {key}")
        seen.add(key)
        nbrs[a].append(b)
        nbrs[b].append(a)
    if len(seen) != s - 1:
        raise NotATree(f"{s} divisors need {s - 1} edges, got {len(seen)}")
    stack, reached = [0], {0}
    while stack:
        for j in nbrs[stack.pop()]:
            if j not in reached:
                reached.add(j)
                stack.append(j)
    if len(reached) != s:
        raise NotATree("graph is disconnected")
    return nbrs


def validate(g: ResolutionGraph) -> ResolutionData:
    s = len(g.self_intersections)
    if s == 0:
        raise NotATree("graph has no divisors")
    for i, a in enumerate(g.self_intersections):
        if a > -1:
            raise BadSelfIntersection(f"divisor {i} has self-intersection {a} > -1")
    if not g.arrows:
        raise InvalidGraph("graph has no arrows (the curve has no branches)")
    for a in g.arrows:
        if not 0 <= a.divisor < s:
            raise InvalidGraph(f"arrow {a.name!r} sits on missing divisor {a.divisor}")
    if len(set(g.names)) != len(g.names):
        raise InvalidGraph("arrow names must be distinct")
    nbrs = _check_tree(s, g.edges)

    a = [[0] * s for _ in range(s)]
    for i, x in enumerate(g.self_intersections):
        a[i][i] = x
    for i, j in g.edges:
        a[i][j] = a[j][i] = 1
    mat = sympy.Matrix(a)
    det = mat.det()
    if det == 0:
        raise NonUnimodular("intersection matrix is singular")
    inv = mat.inv()
    m = []
    for i in range(s):
        row = []
        for j in range(s):
            x = -inv[i, j]
            if not x.is_integer:
                raise NonUnimodular(f"M[{i}][{j}] = {x} is not an integer")
            if x <= 0:
                raise NonPositiveM(f"M[{i}][{j}] = {x} is not positive")
            row.append(int(x))
        m.append(tuple(row))

    k = [0] * s
    for arrow in g.arrows:
        k[arrow.divisor] += 1
    chi_bullet = tuple(2 - len(nbrs[i]) for i in range(s))
    chi_circ = tuple(chi_bullet[i] - k[i] for i in range(s))
    return ResolutionData(
        graph=g,
        a=tuple(tuple(row) for row in a),
        m=tuple(m),
        chi_bullet=chi_bullet,
        chi_circ=chi_circ,
        k=tuple(k),
        component_divisor=tuple(arrow.divisor for arrow in g.arrows),
        neighbors=tuple(tuple(sorted(x)) for x in nbrs),
    )


def quadratic_form(d: ResolutionData, n: Sequence[int]) -> int:
    """Twice the arrow-free quadratic form: ``n.M.n + sum_i n_i (M chi_bullet + 1)_i``."""
    s = d.s
    total = 0
    for i in range(s):
        if not n[i]:
            continue
        row = d.m[i]
        total += n[i] * sum(row[j] * n[j] for j in range(s))
        total += n[i] * (sum(row[j] * d.chi_bullet[j] for j in range(s)) + 1)
    return total


def q_exponent(d: ResolutionData, n: Sequence[int]) -> int:
    """Doubled q-exponent ``2 (F(n) - sum n_i)`` attached to ``u^n``."""
    return quadratic_form(d, n) - 2 * sum(n)


def t_exponent(d: ResolutionData, n: Sequence[int]) -> Tuple[int, ...]:
    """Exponent of each branch variable in ``t^{M n}``."""
    rows = d.m
    s = d.s
    return tuple(sum(rows[i][j] * n[j] for j in range(s)) for i in d.component_divisor)


def milnor_numbers(d: ResolutionData) -> CurveInvariants:
    s, r = d.s, d.r
    m, chi_b = d.m, d.chi_bullet
    one_minus_mu = sum(
        d.chi_circ[i] * sum(m[i][j] * d.k[j] for j in range(s)) for i in range(s)
    )
    mu = 1 - one_minus_mu
    if (mu + r - 1) % 2:
        raise ParityError(f"mu + r - 1 = {mu + r - 1} is odd")
    mu_alpha = []
    for i in d.component_divisor:
        one_minus = sum(m[i][j] * chi_b[j] for j in range(s) if j != i) + m[i][i] * (
            chi_b[i] - 1
        )
        mu_alpha.append(1 - one_minus)
    inter = tuple(
        tuple(m[d.component_divisor[x]][d.component_divisor[y]] for y in range(r))
        for x in range(r)
    )
    l_alpha = tuple(
        mu_alpha[x] + sum(inter[x][y] for y in range(r) if y != x) for x in range(r)
    )
    return CurveInvariants(
        mu=mu,
        mu_alpha=tuple(mu_alpha),
        l_alpha=l_alpha,
        delta=(mu + r - 1) // 2,
        intersections=inter,
    )


# ---------------------------------------------------------------------------
# graph generators


class _BlowUp:
    """Tracks a tree of exceptional divisors while blowing up points."""

    def __init__(self):
        self.self_int: List[int] = []
        self.edges: set = set()

    def blow_up(self, through: Sequence[int]) -> int:
        """Blow up a point lying on the divisors ``through`` (at most two)."""
        new = len(self.self_int)
        self.self_int.append(-1)
        for i in through:
            self.self_int[i] -= 1
        if len(through) == 2:
            self.edges.discard(tuple(sorted(through)))
        for i in through:
            self.edges.add((i, new))
        return new

    def graph(self, arrows: Sequence[int], names=None) -> ResolutionGraph:
        return ResolutionGraph.build(self.self_int, sorted(self.edges), arrows, names)


def torus_knot_graph(p: int, q: int, name: str = "t") -> ResolutionGraph:
    """Embedded resolution of the branch ``y^p = x^q`` (gcd(p, q) = 1)."""
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError("need coprime positive exponents")
    b = _BlowUp()
    # local curve y^a = x^c with a <= c; dx, dy: divisors {x=0}, {y=0} through the point
    a, c = min(p, q), max(p, q)
    dx: Optional[int] = None
    dy: Optional[int] = None
    while True:
        if a == 1 and dy is None:
            # smooth and transverse to dx
            if dx is None:
                dx = b.blow_up([])
            return b.graph([dx], [name])
        if a == 1 and c == 1 and dx is None:
            return b.graph([dy], [name])
        e = b.blow_up([i for i in (dx, dy) if i is not None])
        if a == 1 and c == 1:
            return b.graph([e], [name])
        # chart y = x*y1: the curve becomes y1^a = x^(c-a), the new divisor is {x=0}
        c -= a
        if c < a:
            a, c = c, a
            dx, dy = dy, e
        else:
            dx = e


def a2n1_chain_graph(n: int) -> ResolutionGraph:
    """Resolution of ``y^2 = x^(2n)``: a chain of n divisors, two arrows at the end."""
    if n < 1:
        raise ValueError("n must be positive")
    self_int = [-2] * (n - 1) + [-1]
    edges = [(i, i + 1) for i in range(n - 1)]
    return ResolutionGraph.build(self_int, edges, [n - 1, n - 1])


def random_blowup_graph(
    rng: random.Random, blowups: int, arrows: str = "one_each", max_arrows: int = 2
) -> ResolutionGraph:
    """Random resolution tree obtained by ``blowups`` successive point blow-ups.

    ``arrows`` is ``"one_each"`` (one branch per divisor) or ``"random"``
    (0..max_arrows branches per divisor, at least one in total).
    """
    b = _BlowUp()
    b.blow_up([])
    for _ in range(blowups - 1):
        if b.edges and rng.random() < 0.4:
            i, j = rng.choice(sorted(b.edges))
            b.blow_up([i, j])
        else:
            b.blow_up([rng.randrange(len(b.self_int))])
    s = len(b.self_int)
    if arrows == "one_each":
        where = list(range(s))
    elif arrows == "random":
        where = [i for i in range(s) for _ in range(rng.randint(0, max_arrows))]
        if not where:
            where = [rng.randrange(s)]
    else:
        raise ValueError(f"unknown arrow policy {arrows!r}")
    return b.graph(where)


def load_graph(path) -> ResolutionGraph:
    return ResolutionGraph.load(Path(path))
