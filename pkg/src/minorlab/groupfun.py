"""Group elements as words in one-parameter subgroups, acting on modules.

A group word is a sequence of factors x_s(t), y_s(t), torus points, and
reflection lifts.  Acting on a finite-dimensional module turns each factor
into an exact matrix: the exponentials terminate at the nilpotency degree,
the torus acts diagonally through the weight pairing, and rbar_s is the
fixed product x_s(-1) y_s(1) x_s(-1).

Parameters may be rational numbers or named variables.  With variables the
action lands in a Laurent-polynomial matrix; with numbers it is a rational
matrix.  Regular functions are compared either symbolically on the big
cell y_{j_1}(u_1)...y_{j_L}(u_L) a x_{i_1}(t_1)...x_{i_L}(t_L), which is
dense, or by exact evaluation at recorded random rational points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as Q

from .poly import Poly
from .repcore import ExplicitModule, Module, irreducible
from .rootweyl import (
    RootDatum,
    Weight,
    WeylElement,
    from_word,
    longest_element,
    weight_to_weyl,
)

SYMBOLIC_RANK_GUARD = 2
DEFAULT_SAMPLE_COUNT = 20
PARAM_RANGE = 9


# ---------------------------------------------------------------------------
# Group words


@dataclass(frozen=True)
class Factor:
    kind: str  # "x" | "y" | "torus" | "rbar"
    s: int = 0
    param: object = None  # Fraction or variable name (str)
    torus: tuple = ()  # per-coordinate Fraction or variable name

    def variables(self) -> list[str]:
        out = []
        if self.kind in ("x", "y") and isinstance(self.param, str):
            out.append(self.param)
        if self.kind == "torus":
            out.extend(a for a in self.torus if isinstance(a, str))
        return out


def x_factor(s: int, t) -> Factor:
    return Factor("x", s, t if isinstance(t, str) else Q(t))


def y_factor(s: int, t) -> Factor:
    return Factor("y", s, t if isinstance(t, str) else Q(t))


def torus_factor(params) -> Factor:
    vals = tuple(a if isinstance(a, str) else Q(a) for a in params)
    for a in vals:
        if not isinstance(a, str) and a == 0:
            raise ValueError("torus parameters must be nonzero")
    return Factor("torus", torus=vals)


def rbar_factor(s: int) -> Factor:
    return Factor("rbar", s)


class GroupWord:
    """Formal product of factors; immutable once built."""

    def __init__(self, datum: RootDatum, factors):
        self.datum = datum
        self.factors = tuple(factors)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.datum is not other.datum:
            raise ValueError("group words over different root data")
        return GroupWord(self.datum, self.factors + other.factors)

    def variables(self) -> list[str]:
        out = []
        for f in self.factors:
            out.extend(f.variables())
        return out

    def __repr__(self) -> str:
        bits = []
        for f in self.factors:
            if f.kind in ("x", "y"):
                bits.append(f"{f.kind}_{f.s}({f.param})")
            elif f.kind == "torus":
                bits.append(f"H{list(f.torus)}")
            else:
                bits.append(f"rbar_{f.s}")
        return " ".join(bits) or "1"


def lift_reflection(datum: RootDatum, s: int) -> GroupWord:
    """rbar_s as the fixed SL2 lift x_s(-1) y_s(1) x_s(-1)."""
    return GroupWord(datum, [x_factor(s, -1), y_factor(s, 1), x_factor(s, -1)])


def lift_weyl(w: WeylElement) -> GroupWord:
    """wbar along the stored reduced word; the result is word independent."""
    return GroupWord(w.datum, [rbar_factor(s) for s in w.word])


# ---------------------------------------------------------------------------
# Action on modules


def _exp_gen_columns(v: Module, kind: str, s: int) -> list[list[tuple[int, int, Q]]]:
    """Columns of exp(t N) as triples (row, power of t, coefficient/k!)."""
    cols = []
    for j in range(v.dim):
        cur = {j: Q(1)}
        entries = [(j, 0, Q(1))]
        k = 0
        fact = 1
        while cur:
            k += 1
            fact *= k
            cur = v.apply_gen(kind, s, cur)
            entries.extend((i, k, c / fact) for i, c in cur.items())
        cols.append(entries)
    return cols


def _exp_columns_cached(v: Module, kind: str, s: int):
    cache = getattr(v, "_exp_cache", None)
    if cache is None:
        cache = {}
        v._exp_cache = cache
    key = (kind, s)
    got = cache.get(key)
    if got is None:
        got = _exp_gen_columns(v, kind, s)
        cache[key] = got
    return got


def factor_matrix_rational(v: Module, f: Factor, point: dict[str, Q] | None = None) -> list[dict[int, Q]]:
    """Sparse columns of one factor acting on v, all parameters numeric."""

    def val(p):
        if isinstance(p, str):
            if point is None or p not in point:
                raise ValueError(f"unbound variable {p!r}")
            return point[p]
        return p

    if f.kind in ("x", "y"):
        t = val(f.param)
        kind = "e" if f.kind == "x" else "f"
        cols = []
        for entries in _exp_columns_cached(v, kind, f.s):
            col: dict[int, Q] = {}
            for i, k, c in entries:
                cv = col.get(i, Q(0)) + c * t**k
                if cv:
                    col[i] = cv
                else:
                    col.pop(i, None)
            cols.append(col)
        return cols
    if f.kind == "torus":
        a = [val(p) for p in f.torus]
        for x in a:
            if x == 0:
                raise ValueError("torus parameter is zero")
        cols = []
        for j in range(v.dim):
            c = Q(1)
            for s in range(1, v.datum.n + 1):
                e = v.weights[j].pairing(s)
                if e:
                    c *= a[s - 1] ** e
            cols.append({j: c})
        return cols
    if f.kind == "rbar":
        return _rbar_columns(v, f.s)
    raise ValueError(f"unknown factor kind {f.kind!r}")


def _rbar_columns(v: Module, s: int) -> list[dict[int, Q]]:
    cache = getattr(v, "_rbar_cache", None)
    if cache is None:
        cache = {}
        v._rbar_cache = cache
    got = cache.get(s)
    if got is None:
        got = act_columns(lift_reflection(v.datum, s), v)
        cache[s] = got
    return got


def act_columns(gw: GroupWord, v: Module, point: dict[str, Q] | None = None) -> list[dict[int, Q]]:
    """Sparse columns of the product of all factors (left factor outermost)."""
    cols: list[dict[int, Q]] | None = None
    for f in reversed(gw.factors):
        fcols = factor_matrix_rational(v, f, point)
        if cols is None:
            cols = fcols
            continue
        new_cols = []
        for col in cols:
            out: dict[int, Q] = {}
            for k, c in col.items():
                for i, m in fcols[k].items():
                    val = out.get(i, Q(0)) + c * m
                    if val:
                        out[i] = val
                    else:
                        out.pop(i, None)
            new_cols.append(out)
        cols = new_cols
    if cols is None:
        cols = [{j: Q(1)} for j in range(v.dim)]
    return cols


def apply_word(gw: GroupWord, v: Module, vec: dict[int, Q], point: dict[str, Q] | None = None) -> dict[int, Q]:
    """g . vec computed factor by factor, right factor first."""
    cur = dict(vec)
    for f in reversed(gw.factors):
        fcols = factor_matrix_rational(v, f, point)
        out: dict[int, Q] = {}
        for k, c in cur.items():
            for i, m in fcols[k].items():
                val = out.get(i, Q(0)) + c * m
                if val:
                    out[i] = val
                else:
                    out.pop(i, None)
        cur = out
    return cur


def act_matrix(gw: GroupWord, v: Module, point: dict[str, Q] | None = None) -> list[list[Q]]:
    cols = act_columns(gw, v, point)
    return [[cols[j].get(i, Q(0)) for j in range(v.dim)] for i in range(v.dim)]


def factor_matrix_symbolic(v: Module, f: Factor, ring: tuple[str, ...]) -> list[dict[int, Poly]]:
    one = Poly.const(ring, 1)
    if f.kind in ("x", "y"):
        kind = "e" if f.kind == "x" else "f"
        if isinstance(f.param, str):
            t = Poly.var(ring, f.param)
        else:
            t = Poly.const(ring, f.param)
        tp = [one]
        cols = []
        for entries in _exp_columns_cached(v, kind, f.s):
            col: dict[int, Poly] = {}
            for i, k, c in entries:
                while len(tp) <= k:
                    tp.append(tp[-1] * t)
                term = tp[k].scale(c)
                col[i] = col[i] + term if i in col else term
            cols.append({i: p for i, p in col.items() if not p.is_zero()})
        return cols
    if f.kind == "torus":
        cols = []
        for j in range(v.dim):
            p = one
            for s in range(1, v.datum.n + 1):
                e = v.weights[j].pairing(s)
                if not e:
                    continue
                a = f.torus[s - 1]
                if isinstance(a, str):
                    p = p.shift(tuple(e if name == a else 0 for name in ring))
                else:
                    p = p.scale(Q(a) ** e)
            cols.append({j: p})
        return cols
    if f.kind == "rbar":
        return [
            {i: Poly.const(ring, c) for i, c in col.items()}
            for col in _rbar_columns(v, f.s)
        ]
    raise ValueError(f"unknown factor kind {f.kind!r}")


def act_symbolic(gw: GroupWord, v: Module, ring: tuple[str, ...]) -> list[list[Poly]]:
    """Dense Poly matrix of the word; feasible for small modules only."""
    cols: list[dict[int, Poly]] | None = None
    for f in reversed(gw.factors):
        fcols = factor_matrix_symbolic(v, f, ring)
        if cols is None:
            cols = fcols
            continue
        new_cols = []
        for col in cols:
            out: dict[int, Poly] = {}
            for k, p in col.items():
                for i, m in fcols[k].items():
                    add = p * m
                    out[i] = out[i] + add if i in out else add
            new_cols.append({i: p for i, p in out.items() if not p.is_zero()})
        cols = new_cols
    if cols is None:
        cols = [{j: Poly.const(ring, 1)} for j in range(v.dim)]
    zero = Poly(ring)
    return [[cols[j].get(i, zero) for j in range(v.dim)] for i in range(v.dim)]


# ---------------------------------------------------------------------------
# Extremal vectors and minors


def extremal_vector(v: ExplicitModule, w: WeylElement) -> dict[int, Q]:
    """v_{w lambda} = wbar . v_lambda; depends only on the weight w(lambda)."""
    lam = v.highest_weight
    mu = w.apply(lam)
    idx, coeff = _extremal_index_coeff(v, mu)
    return {idx: coeff}


def _extremal_index_coeff(v: ExplicitModule, mu: Weight) -> tuple[int, Q]:
    cache = getattr(v, "_extremal_cache", None)
    if cache is None:
        cache = {}
        v._extremal_cache = cache
    got = cache.get(mu.coords)
    if got is None:
        w = weight_to_weyl(v.datum, mu, v.highest_weight)
        vec = apply_word(lift_weyl(w), v, {0: Q(1)})
        if len(vec) != 1:
            raise AssertionError("extremal vector is not a single basis line")
        ((idx, coeff),) = vec.items()
        if v.weights[idx] != mu:
            raise AssertionError("extremal vector has the wrong weight")
        got = (idx, coeff)
        cache[mu.coords] = got
    return got


def extremal_dual(v: ExplicitModule, w: WeylElement) -> dict[int, Q]:
    """f_{w lambda}: the functional with <f, v_{w lambda}> = 1, weight -w(lambda)."""
    mu = w.apply(v.highest_weight)
    idx, coeff = _extremal_index_coeff(v, mu)
    return {idx: Q(1) / coeff}


@dataclass(frozen=True)
class MinorLabel:
    """Generalized minor label; equivalent labels have equal weight pairs."""

    s: int
    left: WeylElement
    right: WeylElement

    def weight_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        datum = self.left.datum
        lam = datum.fundamental_weight(self.s)
        return (self.left.apply(lam).coords, self.right.apply(lam).coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MinorLabel)
            and self.s == other.s
            and self.weight_pair() == other.weight_pair()
        )

    def __hash__(self):
        return hash((self.s, self.weight_pair()))

    def pretty(self) -> str:
        lw = ",".join(map(str, self.left.word)) or "e"
        rw = ",".join(map(str, self.right.word)) or "e"
        return f"D[{lw}|w{self.s}|{rw}]"


class CoefficientFunction:
    """Matrix coefficient g -> <f, g.v> of a module, f and v weight vectors."""

    def __init__(self, module: Module, f: dict[int, Q], v: dict[int, Q], label: MinorLabel | None = None):
        self.module = module
        self.f = dict(f)
        self.v = dict(v)
        self.label = label

    def weight_f(self) -> Weight:
        (mu,) = {-self.module.weights[i] for i in self.f}
        return mu

    def weight_v(self) -> Weight:
        (mu,) = {self.module.weights[i] for i in self.v}
        return mu

    def eval_columns(self, cols: list[dict[int, Q]]) -> Q:
        total = Q(0)
        for j, cv in self.v.items():
            col = cols[j]
            for i, cf in self.f.items():
                m = col.get(i)
                if m:
                    total += cf * cv * m
        return total

    def eval_at(self, gw: GroupWord, point: dict[str, Q] | None = None) -> Q:
        vec = apply_word(gw, self.module, self.v, point)
        return sum((self.f[i] * c for i, c in vec.items() if i in self.f), Q(0))

    def eval_symbolic(self, matrix: list[list[Poly]], ring: tuple[str, ...]) -> Poly:
        total = Poly(ring)
        for j, cv in self.v.items():
            for i, cf in self.f.items():
                p = matrix[i][j]
                if not p.is_zero():
                    total = total + p.scale(cf * cv)
        return total

    def __repr__(self) -> str:
        tag = self.label.pretty() if self.label else "C"
        return f"CoefficientFunction({tag} on {self.module.name})"


def minor(datum: RootDatum, label: MinorLabel) -> CoefficientFunction:
    v = irreducible(datum, datum.fundamental_weight(label.s))
    return CoefficientFunction(
        v,
        extremal_dual(v, label.left),
        extremal_vector(v, label.right),
        label=label,
    )


def minor_from_weights(datum: RootDatum, s: int, left: Weight, right: Weight) -> CoefficientFunction:
    lam = datum.fundamental_weight(s)
    return minor(
        datum,
        MinorLabel(s, weight_to_weyl(datum, left, lam), weight_to_weyl(datum, right, lam)),
    )


# ---------------------------------------------------------------------------
# Function expressions and equality on G


class FunctionCombo:
    """Rational-coefficient polynomial in matrix coefficients of fixed modules."""

    def __init__(self, terms):
        # terms: list of (Fraction, tuple of CoefficientFunction)
        self.terms = [(Q(c), tuple(fs)) for c, fs in terms if c != 0]

    @staticmethod
    def of(fn: CoefficientFunction) -> "FunctionCombo":
        return FunctionCombo([(Q(1), (fn,))])

    @staticmethod
    def product(fns, coeff=1) -> "FunctionCombo":
        return FunctionCombo([(Q(coeff), tuple(fns))])

    def __add__(self, other: "FunctionCombo") -> "FunctionCombo":
        return FunctionCombo(self.terms + other.terms)

    def scale(self, c) -> "FunctionCombo":
        return FunctionCombo([(Q(c) * a, fs) for a, fs in self.terms])

    def modules(self):
        out = []
        for _, fs in self.terms:
            for f in fs:
                if all(f.module is not m for m in out):
                    out.append(f.module)
        return out

    def eval_point_cols(self, cols_by_module) -> Q:
        total = Q(0)
        for c, fs in self.terms:
            val = c
            for f in fs:
                val *= f.eval_columns(cols_by_module[id(f.module)])
                if val == 0:
                    break
            total += val
        return total

    def eval_symbolic_mats(self, mats_by_module, ring: tuple[str, ...]) -> Poly:
        total = Poly(ring)
        cache: dict[tuple[int, int], Poly] = {}
        for c, fs in self.terms:
            prod = Poly.const(ring, c)
            for f in fs:
                key = (id(f), 0)
                p = cache.get(key)
                if p is None:
                    p = f.eval_symbolic(mats_by_module[id(f.module)], ring)
                    cache[key] = p
                prod = prod * p
                if prod.is_zero():
                    break
            total = total + prod
        return total


def as_combo(obj) -> FunctionCombo:
    if isinstance(obj, FunctionCombo):
        return obj
    if isinstance(obj, CoefficientFunction):
        return FunctionCombo.of(obj)
    raise TypeError(f"not a function expression: {obj!r}")


def big_cell_ring(datum: RootDatum) -> tuple[tuple[str, ...], GroupWord]:
    """Variable ring and symbolic word for the dense cell U- H U+."""
    w0 = longest_element(datum)
    word = w0.word
    ln = len(word)
    uvars = tuple(f"u{k}" for k in range(1, ln + 1))
    avars = tuple(f"a{s}" for s in range(1, datum.n + 1))
    tvars = tuple(f"t{k}" for k in range(1, ln + 1))
    ring = uvars + avars + tvars
    factors = [y_factor(s, f"u{k}") for k, s in enumerate(word, 1)]
    factors.append(torus_factor(avars))
    factors.extend(x_factor(s, f"t{k}") for k, s in enumerate(word, 1))
    return ring, GroupWord(datum, factors)


_big_cell_cache: dict[str, tuple[tuple[str, ...], GroupWord]] = {}


def big_cell(datum: RootDatum) -> tuple[tuple[str, ...], GroupWord]:
    got = _big_cell_cache.get(datum.kind)
    if got is None:
        got = big_cell_ring(datum)
        _big_cell_cache[datum.kind] = got
    return got


def big_cell_matrix(module: Module) -> tuple[list[list[Poly]], tuple[str, ...]]:
    ring, word = big_cell(module.datum)
    mat = getattr(module, "_big_cell_matrix", None)
    if mat is None:
        mat = act_symbolic(word, module, ring)
        module._big_cell_matrix = mat
    return mat, ring


def random_point(datum: RootDatum, rng: random.Random) -> dict[str, Q]:
    """One exact rational parameter choice on the big cell, all nonzero."""
    ring, _ = big_cell(datum)
    point = {}
    for name in ring:
        val = 0
        while val == 0:
            val = rng.randint(-PARAM_RANGE, PARAM_RANGE)
        point[name] = Q(val)
    return point


def point_columns(module: Module, point: dict[str, Q]) -> list[dict[int, Q]]:
    cache = getattr(module, "_point_cols", None)
    if cache is None:
        cache = {}
        module._point_cols = cache
    key = tuple(sorted(point.items()))
    got = cache.get(key)
    if got is None:
        _, word = big_cell(module.datum)
        got = act_columns(word, module, point)
        cache[key] = got
    return got


def symbolic_equal(lhs, rhs) -> bool:
    """Identity of regular functions via full expansion on the big cell."""
    a, b = as_combo(lhs), as_combo(rhs)
    datum = (a.modules() or b.modules())[0].datum
    if datum.n > SYMBOLIC_RANK_GUARD:
        raise ValueError(f"symbolic mode is guarded to rank <= {SYMBOLIC_RANK_GUARD}")
    ring, _ = big_cell(datum)
    mats = {}
    for m in a.modules() + b.modules():
        mats[id(m)] = big_cell_matrix(m)[0]
    return a.eval_symbolic_mats(mats, ring) == b.eval_symbolic_mats(mats, ring)


def probabilistic_equal(lhs, rhs, seed: int, count: int = DEFAULT_SAMPLE_COUNT):
    """Exact sampling test: inequality is certain, equality comes with the points."""
    a, b = as_combo(lhs), as_combo(rhs)
    datum = (a.modules() or b.modules())[0].datum
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        point = random_point(datum, rng)
        cols = {}
        for m in a.modules() + b.modules():
            cols[id(m)] = point_columns(m, point)
        va = a.eval_point_cols(cols)
        vb = b.eval_point_cols(cols)
        points.append(point)
        if va != vb:
            return False, {"seed": seed, "count": count, "witness": {k: str(v) for k, v in point.items()}, "lhs": str(va), "rhs": str(vb)}
    return True, {"seed": seed, "count": count}


def function_equal(lhs, rhs, mode: str = "symbolic", seed: int = 0, count: int = DEFAULT_SAMPLE_COUNT):
    """Compare regular functions on G; returns (equal, certificate dict)."""
    if mode == "symbolic":
        return symbolic_equal(lhs, rhs), {"mode": "symbolic"}
    if mode == "probabilistic":
        eq, cert = probabilistic_equal(lhs, rhs, seed, count)
        cert["mode"] = "probabilistic"
        return eq, cert
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# JSON encoding


def factor_to_json(f: Factor):
    if f.kind in ("x", "y"):
        return {"kind": f.kind, "s": f.s, "t": f.param if isinstance(f.param, str) else str(f.param)}
    if f.kind == "torus":
        return {"kind": "torus", "a": [a if isinstance(a, str) else str(a) for a in f.torus]}
    return {"kind": "rbar", "s": f.s}


def group_word_to_json(gw: GroupWord):
    return [factor_to_json(f) for f in gw.factors]


def _parse_param(p):
    return p if isinstance(p, str) and not _is_rational_literal(p) else Q(p)


def _is_rational_literal(p: str) -> bool:
    try:
        Q(p)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def group_word_from_json(datum: RootDatum, data) -> GroupWord:
    factors = []
    for item in data:
        kind = item["kind"]
        if kind in ("x", "y"):
            factors.append(Factor(kind, int(item["s"]), _parse_param(item["t"])))
        elif kind == "torus":
            factors.append(torus_factor([_parse_param(a) for a in item["a"]]))
        elif kind == "rbar":
            factors.append(rbar_factor(int(item["s"])))
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return GroupWord(datum, factors)


def minor_label_to_json(label: MinorLabel):
    return {
        "s": label.s,
        "left": list(label.left.word),
        "right": list(label.right.word),
    }


def minor_label_from_json(datum: RootDatum, data) -> MinorLabel:
    return MinorLabel(
        int(data["s"]),
        from_word(datum, tuple(data["left"])),
        from_word(datum, tuple(data["right"])),
    )
