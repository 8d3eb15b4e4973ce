"""Parse golden expressions with sympy, independently of the package's own arithmetic."""

from __future__ import annotations

import sympy

from motivic_poincare.poly import MASLOV, Q, LaurentPoly, Var, tvar, uvar


def parse(text: str, variables: dict) -> LaurentPoly:
    """Expand ``text`` (``^`` allowed for powers) into a LaurentPoly.

    ``variables`` maps symbol names to package variables; half variables take
    doubled stored exponents.
    """
    syms = {name: sympy.Symbol(name) for name in variables}
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals=syms))
    out = {}
    for term, coeff in expr.as_coefficients_dict().items():
        if not coeff.is_integer:
            raise ValueError(f"non-integer coefficient {coeff}")
        exps = {}
        for base, e in term.as_powers_dict().items():
            if base == 1:
                continue
            v = variables[str(base)]
            stored = e * 2 if v.half or v == Q else e
            if not stored.is_integer:
                raise ValueError(f"fractional exponent {e} on {base}")
            exps[v] = int(stored)
        key = tuple(sorted((v, e) for v, e in exps.items() if e))
        out[key] = out.get(key, 0) + int(coeff)
    return LaurentPoly(out)


def tq(*names: str) -> dict:
    """Variable map for a series in the named branches and q."""
    out = {name: tvar(a) for a, name in enumerate(names)}
    out["q"] = Q
    return out


def uq(*names: str) -> dict:
    out = {name: uvar(i) for i, name in enumerate(names)}
    out["q"] = Q
    return out


def tu(t_name: str = "t") -> dict:
    return {t_name: tvar(0), "u": MASLOV}
