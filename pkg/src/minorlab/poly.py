"""Multivariate Laurent polynomials over Q with a fixed variable tuple.

A polynomial is a dict from exponent tuples (ints, negatives allowed) to
nonzero Fraction coefficients.  The dict itself is the canonical form:
zero coefficients are dropped on every operation, so two polynomials are
equal exactly when their term dicts are equal.  Arithmetic requires both
operands to live over the same variable tuple; callers set up one ring
per evaluation context and stay inside it.
"""

from __future__ import annotations

from fractions import Fraction as Q


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict[tuple[int, ...], Q] | None = None):
        self.vars = vars
        self.terms: dict[tuple[int, ...], Q] = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(vars: tuple[str, ...], c) -> "Poly":
        c = Q(c)
        if c == 0:
            return Poly(vars)
        return Poly(vars, {(0,) * len(vars): c})

    @staticmethod
    def var(vars: tuple[str, ...], name: str, power: int = 1) -> "Poly":
        i = vars.index(name)
        exp = [0] * len(vars)
        exp[i] = power
        return Poly(vars, {tuple(exp): Q(1)})

    def copy(self) -> "Poly":
        return Poly(self.vars, dict(self.terms))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in k) for k in self.terms)

    def constant_value(self) -> Q:
        if self.is_zero():
            return Q(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError("polynomials over different variable tuples")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, Q(0)) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return Poly(self.vars, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.vars)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict[tuple[int, ...], Q] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                s = terms.get(k, Q(0)) + ca * cb
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return Poly(self.vars, terms)

    def scale(self, c) -> "Poly":
        c = Q(c)
        if c == 0:
            return Poly(self.vars)
        return Poly(self.vars, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def shift(self, exp: tuple[int, ...]) -> "Poly":
        """Multiply by the Laurent monomial with the given exponent vector."""
        return Poly(self.vars, {tuple(x + y for x, y in zip(k, exp)): c for k, c in self.terms.items()})

    # -- division ----------------------------------------------------------

    def min_exponents(self) -> tuple[int, ...]:
        mins = [0] * len(self.vars)
        first = True
        for k in self.terms:
            if first:
                mins = list(k)
                first = False
            else:
                mins = [min(m, e) for m, e in zip(mins, k)]
        return tuple(mins)

    def divide_exact(self, other: "Poly") -> "Poly | None":
        """Return self / other if the quotient is again a Laurent polynomial.

        Laurent exponents are cleared by a monomial shift, then ordinary
        multivariate division by lex leading terms runs to a zero remainder
        or fails; failure means other does not divide self.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly(self.vars)
        sh_n = self.min_exponents()
        sh_d = other.min_exponents()
        num = self.shift(tuple(-e for e in sh_n))
        den = other.shift(tuple(-e for e in sh_d))
        lt_d = max(den.terms)
        cd = den.terms[lt_d]
        quo: dict[tuple[int, ...], Q] = {}
        rem = dict(num.terms)
        while rem:
            lt_n = max(rem)
            k = tuple(a - b for a, b in zip(lt_n, lt_d))
            if any(e < 0 for e in k):
                return None
            c = rem[lt_n] / cd
            quo[k] = c
            for kd, vd in den.terms.items():
                kk = tuple(a + b for a, b in zip(k, kd))
                s = rem.get(kk, Q(0)) - c * vd
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
        shift_back = tuple(a - b for a, b in zip(sh_n, sh_d))
        return Poly(self.vars, quo).shift(shift_back)

    # -- evaluation --------------------------------------------------------

    def eval(self, point: dict[str, Q]) -> Q:
        idx = [point[name] for name in self.vars]
        total = Q(0)
        pow_cache: dict[tuple[int, int], Q] = {}
        for k, c in self.terms.items():
            val = c
            for i, e in enumerate(k):
                if e == 0:
                    continue
                key = (i, e)
                p = pow_cache.get(key)
                if p is None:
                    p = idx[i] ** e
                    pow_cache[key] = p
                val *= p
            total += val
        return total

    def negative_exponent_vars(self) -> set[str]:
        bad = set()
        for k in self.terms:
            for name, e in zip(self.vars, k):
                if e < 0:
                    bad.add(name)
        return bad

    # -- formatting --------------------------------------------------------

    def canonical_str(self) -> str:
        """Sorted-monomial string with explicit exponents; '' is never returned."""
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            factors = [str(c)]
            for name, e in zip(self.vars, k):
                if e != 0:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.canonical_str()})"
