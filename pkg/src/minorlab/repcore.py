"""Finite-dimensional modules with exact rational generator matrices.

Irreducibles are built level by level from the highest weight vector:
candidates f_s . v are tested against the contravariant form, whose radical
is exactly the kernel of the projection from the Verma module, so rejected
candidates come with their expansion in the accepted basis and the f
matrices fill themselves in.  The form is positive definite on each weight
space of V(lambda), which makes the incremental acceptance test sound.

Vectors are sparse dicts {basis index: Fraction}; generator matrices are
stored column-wise the same way.  Tensor modules keep their factors and
produce columns on demand, which is what keeps the 248-dimensional adjoint
square workable.
"""

from __future__ import annotations

from fractions import Fraction as Q

from . import ratmat
from .rootweyl import RootDatum, Weight, longest_element, reflect

Vec = "dict[int, Q]"

DIM_GUARD_DEFAULT = 1000


def vec_add(a: dict[int, Q], b: dict[int, Q], scale: Q = Q(1)) -> dict[int, Q]:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, Q(0)) + scale * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(a: dict[int, Q], c: Q) -> dict[int, Q]:
    if c == 0:
        return {}
    return {k: c * v for k, v in a.items()}


# ---------------------------------------------------------------------------
# Modules


class Module:
    """Weight-graded module interface; subclasses provide generator columns."""

    datum: RootDatum
    weights: tuple[Weight, ...]
    highest_weight: Weight | None
    name: str

    @property
    def dim(self) -> int:
        return len(self.weights)

    def gen_col(self, kind: str, s: int, j: int) -> dict[int, Q]:
        raise NotImplementedError

    def apply_gen(self, kind: str, s: int, vec: dict[int, Q]) -> dict[int, Q]:
        if kind == "h":
            return {
                j: c * self.weights[j].pairing(s) for j, c in vec.items() if self.weights[j].pairing(s)
            }
        out: dict[int, Q] = {}
        for j, c in vec.items():
            for i, m in self.gen_col(kind, s, j).items():
                val = out.get(i, Q(0)) + c * m
                if val:
                    out[i] = val
                else:
                    out.pop(i, None)
        return out

    def weight_space(self, mu: Weight) -> list[int]:
        table = getattr(self, "_wspaces", None)
        if table is None:
            table = {}
            for i, w in enumerate(self.weights):
                table.setdefault(w, []).append(i)
            self._wspaces = table
        return table.get(mu, [])

    def weight_support(self) -> set[Weight]:
        return set(self.weights)

    def weight_multiplicities(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out


class ExplicitModule(Module):
    def __init__(
        self,
        datum: RootDatum,
        weights: tuple[Weight, ...],
        e_cols: tuple[tuple[dict[int, Q], ...], ...],
        f_cols: tuple[tuple[dict[int, Q], ...], ...],
        highest_weight: Weight | None,
        name: str,
        paths: tuple[tuple[int, ...], ...] | None = None,
        parents: tuple[tuple[int, int] | None, ...] | None = None,
        gram: dict[tuple[int, int], Q] | None = None,
    ):
        self.datum = datum
        self.weights = weights
        self._e_cols = e_cols
        self._f_cols = f_cols
        self.highest_weight = highest_weight
        self.name = name
        self.paths = paths
        self.parents = parents
        self._gram = gram

    def __repr__(self) -> str:
        return f"Module({self.name}, dim={self.dim})"

    def gen_col(self, kind: str, s: int, j: int) -> dict[int, Q]:
        if kind == "e":
            return self._e_cols[s - 1][j]
        if kind == "f":
            return self._f_cols[s - 1][j]
        if kind == "h":
            c = self.weights[j].pairing(s)
            return {j: Q(c)} if c else {}
        raise ValueError(f"unknown generator kind {kind!r}")

    def contravariant(self, i: int, j: int) -> Q:
        if self._gram is None:
            raise ValueError("module carries no contravariant form data")
        key = (i, j) if i <= j else (j, i)
        return self._gram.get(key, Q(0))


class TensorModule(Module):
    """V (x) V' with the Leibniz action, columns computed on demand."""

    def __init__(self, left: Module, right: Module):
        if left.datum is not right.datum:
            raise ValueError("tensor factors over different root data")
        self.datum = left.datum
        self.left = left
        self.right = right
        self._dim_r = right.dim
        self.weights = tuple(
            wl + wr for wl in left.weights for wr in right.weights
        )
        self.highest_weight = None
        self.name = f"{left.name}(x){right.name}"

    def __repr__(self) -> str:
        return f"Module({self.name}, dim={self.dim})"

    def pair_index(self, i: int, j: int) -> int:
        return i * self._dim_r + j

    def split_index(self, k: int) -> tuple[int, int]:
        return divmod(k, self._dim_r)

    def gen_col(self, kind: str, s: int, j: int) -> dict[int, Q]:
        a, b = self.split_index(j)
        out: dict[int, Q] = {}
        for i, c in self.left.gen_col(kind, s, a).items():
            out[self.pair_index(i, b)] = c
        for i, c in self.right.gen_col(kind, s, b).items():
            k = self.pair_index(a, i)
            v = out.get(k, Q(0)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def pure_tensor(self, u: dict[int, Q], v: dict[int, Q]) -> dict[int, Q]:
        out: dict[int, Q] = {}
        for i, ci in u.items():
            for j, cj in v.items():
                out[self.pair_index(i, j)] = ci * cj
        return out


def tensor(left: Module, right: Module) -> TensorModule:
    return TensorModule(left, right)


def dual_module(v: Module) -> Module:
    """Dual with the sign-twisted action; tensor duals distribute over factors."""
    if isinstance(v, TensorModule):
        return TensorModule(dual_module(v.left), dual_module(v.right))
    n = v.datum.n
    dim = v.dim
    weights = tuple(-w for w in v.weights)
    e_cols: list[list[dict[int, Q]]] = [[{} for _ in range(dim)] for _ in range(n)]
    f_cols: list[list[dict[int, Q]]] = [[{} for _ in range(dim)] for _ in range(n)]
    for s in range(1, n + 1):
        for j in range(dim):
            for i, c in v.gen_col("e", s, j).items():
                e_cols[s - 1][i][j] = -c
            for i, c in v.gen_col("f", s, j).items():
                f_cols[s - 1][i][j] = -c
    hw = None
    if v.highest_weight is not None:
        w0 = longest_element(v.datum)
        hw = -w0.apply(v.highest_weight)
    out = ExplicitModule(
        v.datum,
        weights,
        tuple(tuple(col) for col in e_cols),
        tuple(tuple(col) for col in f_cols),
        hw,
        f"{v.name}*",
    )
    out.dual_of = v
    return out


# ---------------------------------------------------------------------------
# Dimension and multiplicity oracles (root data only, no module needed)


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    """Product formula over positive roots with the symmetrized form."""
    num = Q(1)
    for root in datum.positive_roots:
        a = sum(m * d * (c + 1) for m, d, c in zip(root, datum.symmetrizers, lam.coords))
        b = sum(m * d for m, d in zip(root, datum.symmetrizers))
        num *= Q(a, b)
    assert num.denominator == 1
    return int(num)


def freudenthal_multiplicities(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    """Weight multiplicities of V(lambda) by Freudenthal's recursion."""
    rho = datum.rho()
    top = datum.form(lam + rho, lam + rho)
    mult: dict[Weight, int] = {lam: 1}
    pos_weights = [datum.weight_of_root(r) for r in datum.positive_roots]
    frontier = [lam]
    while frontier:
        candidates: set[Weight] = set()
        for mu in frontier:
            for s in range(1, datum.n + 1):
                candidates.add(mu - datum.simple_root(s))
        nxt = []
        for mu in sorted(candidates, key=lambda w: w.coords):
            if mu in mult:
                continue
            denom = top - datum.form(mu + rho, mu + rho)
            if denom == 0:
                continue
            total = Q(0)
            for alpha in pos_weights:
                k = 1
                while True:
                    nu = mu + alpha.scaled(k)
                    m = mult.get(nu)
                    if m is None:
                        break
                    total += 2 * m * datum.form(nu, alpha)
                    k += 1
            if total == 0:
                continue
            val = total / denom
            assert val.denominator == 1 and val > 0
            mult[mu] = int(val)
            nxt.append(mu)
        frontier = nxt
    return mult


# ---------------------------------------------------------------------------
# Irreducible construction


def construct_irreducible(datum: RootDatum, lam: Weight, guard: int | None = None) -> ExplicitModule:
    """V(lambda), built from f-chains with the contravariant form as the filter."""
    if guard is None:
        guard = DIM_GUARD_DEFAULT
    if not lam.is_dominant():
        raise ValueError(f"highest weight {lam} is not dominant")
    expected_dim = weyl_dimension(datum, lam)
    if expected_dim > guard:
        raise ValueError(f"dim V({lam.coords}) = {expected_dim} exceeds guard {guard}")
    n = datum.n

    weights: list[Weight] = [lam]
    paths: list[tuple[int, ...]] = [()]
    parents: list[tuple[int, int] | None] = [None]
    e_cols: list[list[dict[int, Q]]] = [[{}] for _ in range(n)]
    f_cols: list[list[dict[int, Q]]] = [[{}] for _ in range(n)]
    gram: dict[tuple[int, int], Q] = {(0, 0): Q(1)}

    def form(i: int, j: int) -> Q:
        key = (i, j) if i <= j else (j, i)
        return gram.get(key, Q(0))

    def form_vec(i: int, vec: dict[int, Q]) -> Q:
        return sum((c * form(i, p) for p, c in vec.items()), Q(0))

    level = [0]
    while level:
        # candidates in path-lex order; parents within a level are path-sorted
        candidates = [(j, s) for j in level for s in range(1, n + 1)]
        by_weight: dict[Weight, list[tuple[int, int]]] = {}
        for j, s in candidates:
            by_weight.setdefault(weights[j] - datum.simple_root(s), []).append((j, s))
        new_level: list[int] = []
        for mu in sorted(by_weight, key=lambda w: w.coords):
            selected: list[int] = []
            gram_sel: list[list[Q]] = []
            for j, s in by_weight[mu]:
                # <f_s v_j, x> = <v_j, e_s x>
                row = [form_vec(j, e_cols[s - 1][idx]) for idx in selected]
                self_vec = datum_apply_f_then_e(datum, e_cols, f_cols, weights, j, s)
                norm = form_vec(j, self_vec)
                if selected:
                    x = ratmat.solve(gram_sel, row)
                    residual = norm - sum(xi * ri for xi, ri in zip(x, row))
                else:
                    x = []
                    residual = norm
                if residual == 0:
                    f_cols[s - 1][j] = {
                        idx: xi for idx, xi in zip(selected, x) if xi
                    }
                    continue
                # accept: new basis vector is exactly f_s v_j
                new = len(weights)
                weights.append(mu)
                paths.append(paths[j] + (s,))
                parents.append((j, s))
                f_cols[s - 1][j] = {new: Q(1)}
                for t in range(1, n + 1):
                    col = {}
                    for p, c in e_cols[t - 1][j].items():
                        for q, d in f_cols[s - 1][p].items():
                            v = col.get(q, Q(0)) + c * d
                            if v:
                                col[q] = v
                            else:
                                col.pop(q, None)
                    if t == s:
                        h = weights[j].pairing(t)
                        if h:
                            v = col.get(j, Q(0)) + h
                            if v:
                                col[j] = v
                            else:
                                col.pop(j, None)
                    e_cols[t - 1].append(col)
                for t in range(1, n + 1):
                    f_cols[t - 1].append({})  # next level fills these
                for idx, val in zip(selected, row):
                    if val:
                        gram[(idx, new)] = val
                gram[(new, new)] = norm
                for r, idx in enumerate(selected):
                    gram_sel[r].append(row[r])
                gram_sel.append(row + [norm])
                selected.append(new)
                new_level.append(new)
        level = new_level
        if len(weights) > expected_dim:
            raise AssertionError("construction exceeded the Weyl dimension bound")

    if len(weights) != expected_dim:
        raise AssertionError(
            f"constructed dim {len(weights)} != Weyl formula {expected_dim} for {lam.coords}"
        )
    mod = ExplicitModule(
        datum,
        tuple(weights),
        tuple(tuple(col) for col in e_cols),
        tuple(tuple(col) for col in f_cols),
        lam,
        f"V({','.join(map(str, lam.coords))})",
        paths=tuple(paths),
        parents=tuple(parents),
        gram=gram,
    )
    return mod


def datum_apply_f_then_e(datum, e_cols, f_cols, weights, j: int, s: int) -> dict[int, Q]:
    """e_s f_s v_j = f_s e_s v_j + h_s v_j as a vector over existing indices."""
    out: dict[int, Q] = {}
    for p, c in e_cols[s - 1][j].items():
        for q, d in f_cols[s - 1][p].items():
            v = out.get(q, Q(0)) + c * d
            if v:
                out[q] = v
            else:
                out.pop(q, None)
    h = weights[j].pairing(s)
    if h:
        v = out.get(j, Q(0)) + h
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


_irreducible_cache: dict[tuple[str, tuple[int, ...]], ExplicitModule] = {}


def irreducible(datum: RootDatum, lam: Weight, guard: int | None = None) -> ExplicitModule:
    """Cached construct_irreducible; modules are immutable so sharing is safe."""
    key = (datum.kind, lam.coords)
    got = _irreducible_cache.get(key)
    if got is None:
        got = construct_irreducible(datum, lam, guard)
        _irreducible_cache[key] = got
    return got


def adjoint_module(datum: RootDatum) -> ExplicitModule:
    """The adjoint as the irreducible with the dominant (highest) root on top."""
    return irreducible(datum, datum.highest_root(), guard=max(DIM_GUARD_DEFAULT, 2 * len(datum.positive_roots) + datum.n))


# ---------------------------------------------------------------------------
# Highest weight vectors, module maps


def highest_weight_vectors(v: Module, mu: Weight) -> list[dict[int, Q]]:
    """Basis of the joint e-kernel in the mu weight space, first coordinate 1."""
    idx = v.weight_space(mu)
    if not idx:
        return []
    rows: list[list[Q]] = []
    for s in range(1, v.datum.n + 1):
        targets = v.weight_space(mu + v.datum.simple_root(s))
        tpos = {t: r for r, t in enumerate(targets)}
        block = [[Q(0)] * len(idx) for _ in targets]
        for c, j in enumerate(idx):
            for i, val in v.gen_col("e", s, j).items():
                block[tpos[i]][c] = val
        rows.extend(block)
    if not rows:
        rows = [[Q(0)] * len(idx)]
    basis = ratmat.nullspace(rows)
    out = []
    for nv in basis:
        first = next(c for c in nv if c != 0)
        nv = [c / first for c in nv]
        out.append({idx[k]: c for k, c in enumerate(nv) if c})
    return out


class ModuleMap:
    """Intertwiner between modules, stored as (possibly lazy) sparse columns."""

    def __init__(self, source: Module, target: Module, cols=None, col_fn=None, name: str = "map"):
        self.source = source
        self.target = target
        self._cols: dict[int, dict[int, Q]] = dict(cols) if cols else {}
        self._col_fn = col_fn
        self.name = name

    def col(self, j: int) -> dict[int, Q]:
        got = self._cols.get(j)
        if got is None:
            if self._col_fn is None:
                return {}
            got = self._col_fn(j)
            self._cols[j] = got
        return got

    def apply(self, vec: dict[int, Q]) -> dict[int, Q]:
        out: dict[int, Q] = {}
        for j, c in vec.items():
            for i, m in self.col(j).items():
                v = out.get(i, Q(0)) + c * m
                if v:
                    out[i] = v
                else:
                    out.pop(i, None)
        return out

    def materialized_cols(self) -> dict[int, dict[int, Q]]:
        if self._col_fn is not None:
            for j in range(self.source.dim):
                self.col(j)
        return self._cols

    def triples(self) -> list[tuple[int, int, Q]]:
        out = []
        for j, col in sorted(self.materialized_cols().items()):
            for i, c in sorted(col.items()):
                if c:
                    out.append((i, j, c))
        return out

    def intertwines(self, columns=None) -> bool:
        """Exact check of commutation with every e_s and f_s on the given columns."""
        cols = range(self.source.dim) if columns is None else columns
        for j in cols:
            img = self.col(j)
            for s in range(1, self.source.datum.n + 1):
                for kind in ("e", "f"):
                    lhs = self.target.apply_gen(kind, s, img)
                    rhs = self.apply(self.source.gen_col(kind, s, j))
                    if lhs != rhs:
                        return False
        return True


def map_from_highest_vector(v_src: ExplicitModule, v_tgt: Module, hwv: dict[int, Q]) -> ModuleMap:
    """The unique map sending the canonical highest vector of v_src to hwv."""
    if v_src.parents is None:
        raise ValueError("source must come from construct_irreducible")
    wt = None
    for i in hwv:
        wt = v_tgt.weights[i] if wt is None else wt
        if v_tgt.weights[i] != wt:
            raise ValueError("hwv is not weight homogeneous")
    if wt != v_src.highest_weight:
        raise ValueError("hwv weight differs from the source highest weight")
    for s in range(1, v_tgt.datum.n + 1):
        if v_tgt.apply_gen("e", s, hwv):
            raise ValueError(f"hwv is not killed by e_{s}")
    cols: list[dict[int, Q]] = [dict(hwv)]
    for i in range(1, v_src.dim):
        j, s = v_src.parents[i]
        cols.append(v_tgt.apply_gen("f", s, cols[j]))
    return ModuleMap(v_src, v_tgt, cols=dict(enumerate(cols)), name="hw-propagated")


def dualize_map(phi: ModuleMap, dual_of_source: Module, dual_of_target: Module) -> ModuleMap:
    """Transpose of phi: A -> B as a map B* -> A* (dual bases, no twist)."""
    cols: dict[int, dict[int, Q]] = {}
    for j, col in phi.materialized_cols().items():
        for i, c in col.items():
            cols.setdefault(i, {})[j] = c
    return ModuleMap(dual_of_target, dual_of_source, cols=cols, name=f"{phi.name}^T")


def compose_maps(outer: ModuleMap, inner: ModuleMap, name: str = "composed") -> ModuleMap:
    if inner.target is not outer.source and inner.target.dim != outer.source.dim:
        raise ValueError("maps do not compose")
    return ModuleMap(
        inner.source,
        outer.target,
        col_fn=lambda j: outer.apply(inner.col(j)),
        name=name,
    )


def module_isomorphism(v_src: ExplicitModule, v_tgt: Module) -> ModuleMap:
    """An iso onto an isomorphic copy, via the target's highest weight vector."""
    hw = highest_weight_vectors(v_tgt, v_src.highest_weight)
    if len(hw) != 1:
        raise ValueError("target highest-weight space is not one dimensional")
    return map_from_highest_vector(v_src, v_tgt, hw[0])


def invert_iso(phi: ModuleMap) -> ModuleMap:
    """Inverse of a weight-preserving iso, solved block by block per weight."""

    src, tgt = phi.source, phi.target

    def col_fn(j: int) -> dict[int, Q]:
        mu = tgt.weights[j]
        cols_src = src.weight_space(mu)
        rows_tgt = tgt.weight_space(mu)
        rpos = {r: k for k, r in enumerate(rows_tgt)}
        block = [[Q(0)] * len(cols_src) for _ in rows_tgt]
        for c, jj in enumerate(cols_src):
            for i, val in phi.col(jj).items():
                block[rpos[i]][c] = val
        rhs = [Q(0)] * len(rows_tgt)
        rhs[rpos[j]] = Q(1)
        x = ratmat.solve(block, rhs)
        if x is None:
            raise ValueError("map is not invertible on a weight space")
        return {cols_src[k]: c for k, c in enumerate(x) if c}

    return ModuleMap(tgt, src, col_fn=col_fn, name=f"{phi.name}^-1")


# ---------------------------------------------------------------------------
# Quasi-minuscule structure and the multiplication map


def weyl_orbit(datum: RootDatum, mu: Weight) -> set[Weight]:
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for w in frontier:
            for s in range(1, datum.n + 1):
                img = reflect(datum, w, s)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def is_quasi_minuscule(v: Module) -> tuple[bool, int | None]:
    """Whether wt(V) is one orbit plus zero; returns the witness simple index."""
    if v.highest_weight is None or v.highest_weight.is_zero():
        raise ValueError("quasi-minuscule test needs a non-trivial irreducible")
    datum = v.datum
    support = v.weight_support()
    nonzero = {w for w in support if not w.is_zero()}
    orbit = weyl_orbit(datum, v.highest_weight)
    if datum.zero_weight() not in support or nonzero != orbit:
        return False, None
    witness = None
    for s in range(1, datum.n + 1):
        if weyl_orbit(datum, datum.simple_root(s)) == orbit:
            witness = s
            break
    if witness is None:
        return False, None
    for w in support:
        if not (datum.in_q_plus(w) or datum.in_q_plus(-w)):
            return False, None
    return True, witness


def zero_weight_regeneration(v: Module) -> bool:
    """sum_s f_s e_s V_0 = V_0 as an exact rank statement."""
    zero = v.datum.zero_weight()
    idx = v.weight_space(zero)
    if not idx:
        return False
    pos = {i: k for k, i in enumerate(idx)}
    acc = ratmat.IncrementalRank(len(idx))
    for i in idx:
        for s in range(1, v.datum.n + 1):
            img = v.apply_gen("f", s, v.apply_gen("e", s, {i: Q(1)}))
            row = [Q(0)] * len(idx)
            for p, c in img.items():
                row[pos[p]] = c
            acc.add(row)
    return acc.rank == len(idx)


def multiplication_map(v: ExplicitModule) -> tuple[ModuleMap, ModuleMap]:
    """The unique (up to scalar) intertwiner m: V(x)V -> V, plus the embedding.

    Returns (m, iota) where iota: V -> V(x)V realizes the multiplicity space
    and m is iota's transpose transported back through V ~ V*.  Requires the
    highest-weight multiplicity of V in V(x)V to be exactly one.
    """
    lam = v.highest_weight
    vv = tensor(v, v)
    hw = highest_weight_vectors(vv, lam)
    if len(hw) != 1:
        raise ValueError(
            f"multiplicity of V({lam.coords}) in the tensor square is {len(hw)}, not 1"
        )
    iota = map_from_highest_vector(v, vv, hw[0])
    vdual = dual_module(v)
    vvdual = tensor(vdual, vdual)  # identified with (V(x)V)* entrywise
    m_dual = dualize_map(iota, vdual, vvdual)  # (V*)(x)(V*) -> V*
    psi = module_isomorphism(v, vdual)
    psi_inv = invert_iso(psi)
    vv_mod = vv

    def m_col(k: int) -> dict[int, Q]:
        i, j = vv_mod.split_index(k)
        ten = vvdual.pure_tensor(psi.col(i), psi.col(j))
        out = m_dual.apply(ten)
        return psi_inv.apply(out)

    m = ModuleMap(vv, v, col_fn=m_col, name="multiplication")
    return m, iota


def kills_zero_square(m: ModuleMap) -> bool:
    """m(V_0 (x) V_0) = 0, checked column by column."""
    vv = m.source
    if not isinstance(vv, TensorModule):
        raise ValueError("kills_zero_square needs a tensor-source map")
    zero = vv.datum.zero_weight()
    for i in vv.left.weight_space(zero):
        for j in vv.right.weight_space(zero):
            if m.col(vv.pair_index(i, j)):
                return False
    return True


def zero_square_witness(m: ModuleMap) -> tuple[int, int, dict[int, Q]] | None:
    """A pair of zero-weight basis indices with nonzero product, if any."""
    vv = m.source
    zero = vv.datum.zero_weight()
    for i in vv.left.weight_space(zero):
        for j in vv.right.weight_space(zero):
            img = m.col(vv.pair_index(i, j))
            if img:
                return i, j, img
    return None


def surjective_onto_target(m: ModuleMap) -> bool:
    """Rank of m equals dim of the target, one weight space at a time."""
    src, tgt = m.source, m.target
    by_weight: dict[Weight, list[int]] = {}
    for j, w in enumerate(src.weights):
        by_weight.setdefault(w, []).append(j)
    for mu in tgt.weight_support():
        rows = tgt.weight_space(mu)
        rpos = {r: k for k, r in enumerate(rows)}
        acc = ratmat.IncrementalRank(len(rows))
        for j in by_weight.get(mu, []):
            col = m.col(j)
            if not col:
                continue
            vec = [Q(0)] * len(rows)
            for i, c in col.items():
                vec[rpos[i]] = c
            if acc.add(vec) and acc.rank == len(rows):
                break
        if acc.rank < len(rows):
            return False
    return True


def nonzero_preimage(m: ModuleMap, v_vec: dict[int, Q]) -> dict[int, Q]:
    """Solve m(x) = v with x supported on V_nu (x) V_{mu-nu}, nu != 0, nu != mu.

    v must be weight homogeneous of some weight mu.  The solution is the
    deterministic one from the row-reduced restricted system (free variables
    zero).  Absence of a solution violates the hypotheses and raises.
    """
    vv = m.source
    if not isinstance(vv, TensorModule):
        raise ValueError("nonzero_preimage needs a tensor-source map")
    datum = vv.datum
    mus = {m.target.weights[i] for i in v_vec}
    if len(mus) != 1:
        raise ValueError("preimage target vector must be weight homogeneous")
    mu = mus.pop()
    zero = datum.zero_weight()
    pairs: list[int] = []
    for nu in vv.left.weight_support():
        if nu == zero or nu == mu:
            continue
        rest = mu - nu
        right_idx = vv.right.weight_space(rest)
        if not right_idx:
            continue
        for i in vv.left.weight_space(nu):
            for j in right_idx:
                pairs.append(vv.pair_index(i, j))
    pairs.sort()
    rows_idx = m.target.weight_space(mu)
    rpos = {r: k for k, r in enumerate(rows_idx)}
    a = [[Q(0)] * len(pairs) for _ in rows_idx]
    for c, k in enumerate(pairs):
        for i, val in m.col(k).items():
            a[rpos[i]][c] = val
    b = [Q(0)] * len(rows_idx)
    for i, val in v_vec.items():
        b[rpos[i]] = val
    x = ratmat.solve(a, b)
    if x is None:
        raise ValueError("no preimage with both weights nonzero exists")
    return {pairs[k]: c for k, c in enumerate(x) if c}


def verify_module_identities(v: Module) -> bool:
    """Bracket and Serre relations as exact column-wise matrix identities."""
    n = v.datum.n
    dim = v.dim
    unit = [{j: Q(1)} for j in range(dim)]
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            for j in range(dim):
                lhs = vec_add(
                    v.apply_gen("e", s, v.apply_gen("f", t, unit[j])),
                    v.apply_gen("f", t, v.apply_gen("e", s, unit[j])),
                    Q(-1),
                )
                want = v.gen_col("h", s, j) if s == t else {}
                if lhs != want:
                    return False
                lhs = vec_add(
                    v.apply_gen("h", s, v.apply_gen("e", t, unit[j])),
                    v.apply_gen("e", t, v.apply_gen("h", s, unit[j])),
                    Q(-1),
                )
                a_st = v.datum.cartan[s - 1][t - 1]
                if lhs != vec_scale(v.gen_col("e", t, j), Q(a_st)):
                    return False
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            if s == t:
                continue
            power = 1 - v.datum.cartan[s - 1][t - 1]
            for kind in ("e", "f"):
                cols = [dict(v.gen_col(kind, t, j)) for j in range(dim)]
                for _ in range(power):
                    cols = [
                        vec_add(
                            v.apply_gen(kind, s, cols[j]),
                            _apply_cols(cols, v.gen_col(kind, s, j)),
                            Q(-1),
                        )
                        for j in range(dim)
                    ]
                if any(cols[j] for j in range(dim)):
                    return False
    return True


def _apply_cols(cols: list[dict[int, Q]], vec: dict[int, Q]) -> dict[int, Q]:
    out: dict[int, Q] = {}
    for j, c in vec.items():
        for i, m in cols[j].items():
            val = out.get(i, Q(0)) + c * m
            if val:
                out[i] = val
            else:
                out.pop(i, None)
    return out


# ---------------------------------------------------------------------------
# Tensor decomposition


def character(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    return freudenthal_multiplicities(datum, lam)


def decompose_character(datum: RootDatum, char: dict[Weight, int]) -> dict[Weight, int]:
    """Greedy peeling of a nonnegative character into irreducible characters."""
    rest = {w: m for w, m in char.items() if m}
    out: dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda w: (sum_height(datum, w), w.coords))
        if not top.is_dominant():
            raise ValueError("maximal weight of a character is not dominant")
        mult = rest[top]
        out[top] = out.get(top, 0) + mult
        for w, m in freudenthal_multiplicities(datum, top).items():
            r = rest.get(w, 0) - mult * m
            if r:
                rest[w] = r
            else:
                rest.pop(w, None)
        if any(m < 0 for m in rest.values()):
            raise ValueError("character peeling went negative")
    return out


def sum_height(datum: RootDatum, mu: Weight) -> Q:
    return sum(datum.root_coords(mu))


def decompose_tensor(
    datum: RootDatum, lam: Weight, lam2: Weight, guard: int | None = None
) -> dict[Weight, int]:
    """Multiplicities in V(lam) (x) V(lam2), hwv extraction vs character oracle."""
    if guard is None:
        guard = DIM_GUARD_DEFAULT
    d1 = weyl_dimension(datum, lam)
    d2 = weyl_dimension(datum, lam2)
    if d1 > guard or d2 > guard:
        raise ValueError("tensor factor exceeds the dimension guard")
    # character oracle
    c1 = character(datum, lam)
    c2 = character(datum, lam2)
    prod: dict[Weight, int] = {}
    for w1, m1 in c1.items():
        for w2, m2 in c2.items():
            w = w1 + w2
            prod[w] = prod.get(w, 0) + m1 * m2
    by_character = decompose_character(datum, prod)
    # highest-weight-vector extraction on the actual tensor module
    vv = tensor(irreducible(datum, lam, guard), irreducible(datum, lam2, guard))
    by_extraction: dict[Weight, int] = {}
    for mu in sorted({w for w in prod if w.is_dominant()}, key=lambda w: w.coords):
        k = len(highest_weight_vectors(vv, mu))
        if k:
            by_extraction[mu] = k
    total = sum(m * weyl_dimension(datum, w) for w, m in by_extraction.items())
    if total != d1 * d2:
        raise AssertionError("extraction did not exhaust the tensor dimension")
    if by_extraction != by_character:
        raise AssertionError("tensor decomposition routes disagree")
    return by_extraction
