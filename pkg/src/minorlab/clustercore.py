"""Seeds, mutation, mutation-path search, and Laurent checks.

A seed holds an extended exchange matrix over an index set J with a frozen
part, plus one Laurent polynomial per index, always written in the initial
cluster.  Initial seeds may also attach function semantics (one matrix
coefficient per index); mutated variables stay symbolic and are compared
as functions by evaluating their Laurent form on the initial functions.

Frozen variables are never mutated and never inverted: mutation refuses
frozen vertices and the Laurent check rejects negative frozen exponents.
"""

from __future__ import annotations

import random
from fractions import Fraction as Q

from . import groupfun
from .poly import Poly

BFS_NODE_CAP = 200_000


def var_name(label) -> str:
    return f"x[{label}]"


class Seed:
    def __init__(self, labels, exchangeable, b, variables, functions=None, ring=None, symmetrizer=None):
        self.labels = tuple(labels)
        self.exchangeable = tuple(k for k in self.labels if k in set(exchangeable))
        self.frozen = tuple(k for k in self.labels if k not in set(exchangeable))
        self.b = {k: v for k, v in b.items() if v}
        self.ring = ring if ring is not None else tuple(var_name(k) for k in self.labels)
        if variables is None:
            variables = {k: Poly.var(self.ring, var_name(k)) for k in self.labels}
        self.variables = dict(variables)
        self.functions = functions
        self._validate()
        self.symmetrizer = symmetrizer if symmetrizer is not None else self._find_symmetrizer()

    def _validate(self) -> None:
        if len(self.labels) <= 1:
            raise ValueError("a seed needs more than one vertex")
        if not self.exchangeable:
            raise ValueError("a seed needs at least one exchangeable vertex")
        for (i, k) in self.b:
            if k not in set(self.exchangeable):
                raise ValueError(f"column {k} of B is not exchangeable")
            if i not in set(self.labels):
                raise ValueError(f"row {i} of B is not a vertex")
        if not self._principal_connected():
            raise ValueError("principal part of B is not connected")

    def _principal_connected(self) -> bool:
        ex = list(self.exchangeable)
        if len(ex) == 1:
            return True
        adj = {k: set() for k in ex}
        for (i, k), v in self.b.items():
            if v and i in adj and k in adj:
                adj[i].add(k)
                adj[k].add(i)
        seen = {ex[0]}
        stack = [ex[0]]
        while stack:
            for t in adj[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == len(ex)

    def _find_symmetrizer(self) -> dict:
        """Positive integers d with d_i b_ik = -d_k b_ki on the principal part."""
        ex = list(self.exchangeable)
        d: dict = {ex[0]: Q(1)}
        stack = [ex[0]]
        while stack:
            i = stack.pop()
            for k in ex:
                bik = self.b.get((i, k), 0)
                bki = self.b.get((k, i), 0)
                if (bik or bki) and k not in d:
                    if not bik or not bki or (bik > 0) == (bki > 0):
                        raise ValueError("principal part is not skew-symmetrizable")
                    d[k] = d[i] * Q(bik, -bki)
                    stack.append(k)
        denom = 1
        for v in d.values():
            denom = denom * v.denominator // _gcd(denom, v.denominator)
        out = {k: int(v * denom) for k, v in d.items()}
        g = 0
        for v in out.values():
            g = _gcd(g, v)
        out = {k: v // g for k, v in out.items()}
        for i in ex:
            for k in ex:
                if d_times(out, i, self.b.get((i, k), 0)) != -d_times(out, k, self.b.get((k, i), 0)):
                    raise ValueError("principal part is not skew-symmetrizable")
        if any(v <= 0 for v in out.values()):
            raise ValueError("skew-symmetrizer is not positive")
        return out

    def principal_part(self) -> dict:
        ex = set(self.exchangeable)
        return {(i, k): v for (i, k), v in self.b.items() if i in ex}

    def b_key(self):
        return tuple(sorted(self.b.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))))

    def variables_key(self):
        return tuple(frozenset(self.variables[k].terms.items()) for k in self.labels)

    def copy_with(self, b=None, variables=None) -> "Seed":
        out = Seed.__new__(Seed)
        out.labels = self.labels
        out.exchangeable = self.exchangeable
        out.frozen = self.frozen
        out.b = dict(self.b) if b is None else b
        out.ring = self.ring
        out.variables = dict(self.variables) if variables is None else variables
        out.functions = self.functions
        out.symmetrizer = self.symmetrizer
        return out

    def __repr__(self) -> str:
        return f"Seed(|J|={len(self.labels)}, ex={list(self.exchangeable)})"


def d_times(d: dict, k, v: int):
    return d.get(k, 0) * v


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def seeds_equal(a: Seed, b: Seed) -> bool:
    return a.labels == b.labels and a.b == b.b and a.variables == b.variables


def mutate(seed: Seed, k) -> Seed:
    """Seed mutation at an exchangeable vertex; an involution."""
    if k not in set(seed.exchangeable):
        raise ValueError(f"vertex {k} is frozen or absent")
    b = seed.b
    nb: dict = {}
    for i in seed.labels:
        for j in seed.exchangeable:
            bij = b.get((i, j), 0)
            if i == k or j == k:
                v = -bij
            else:
                bik = b.get((i, k), 0)
                bkj = b.get((k, j), 0)
                v = bij + (abs(bik) * bkj + bik * abs(bkj)) // 2
            if v:
                nb[(i, j)] = v
    pos = Poly.const(seed.ring, 1)
    neg = Poly.const(seed.ring, 1)
    for i in seed.labels:
        bik = b.get((i, k), 0)
        if bik > 0:
            pos = pos * seed.variables[i] ** bik
        elif bik < 0:
            neg = neg * seed.variables[i] ** (-bik)
    total = pos + neg
    quo = total.divide_exact(seed.variables[k])
    if quo is None:
        raise ArithmeticError(f"exchange at {k} is not Laurent in the initial cluster")
    variables = dict(seed.variables)
    variables[k] = quo
    return seed.copy_with(b=nb, variables=variables)


def mutate_sequence(seed: Seed, sequence) -> Seed:
    cur = seed
    for k in sequence:
        cur = mutate(cur, k)
    return cur


def laurent_check(seed: Seed, sequence) -> bool:
    """Every variable along the sequence is Laurent with frozen exponents >= 0."""
    frozen_names = {var_name(k) for k in seed.frozen}
    cur = seed
    for k in sequence:
        try:
            cur = mutate(cur, k)
        except ArithmeticError:
            return False
        bad = cur.variables[k].negative_exponent_vars()
        if bad & frozen_names:
            return False
    return True


# ---------------------------------------------------------------------------
# Function-level comparison of cluster variables


def initial_function_values(seed: Seed, points) -> list[dict[str, Q]]:
    """Per point, the value of each initial variable through its function."""
    if seed.functions is None:
        raise ValueError("seed carries no function semantics")
    out = []
    for cols_by_module in points:
        vals = {}
        for k in seed.labels:
            fn = seed.functions[k]
            combo = groupfun.as_combo(fn)
            vals[var_name(k)] = combo.eval_point_cols(cols_by_module)
        out.append(vals)
    return out


def clusters_disjoint(seed_a: Seed, seed_b: Seed) -> bool:
    """No exchangeable variable of one equals an exchangeable variable of the other."""
    if seed_a.ring == seed_b.ring and seed_a.functions is None and seed_b.functions is None:
        va = {frozenset(seed_a.variables[k].terms.items()) for k in seed_a.exchangeable}
        vb = {frozenset(seed_b.variables[k].terms.items()) for k in seed_b.exchangeable}
        return not (va & vb)
    if seed_a.functions is None or seed_b.functions is None:
        raise ValueError("variables are incomparable: different clusters, no functions")
    fa = [seed_a.functions[k] for k in seed_a.exchangeable]
    fb = [seed_b.functions[k] for k in seed_b.exchangeable]
    for x in fa:
        for y in fb:
            if _functions_equal_as_minors(x, y):
                return False
    return True


def _functions_equal_as_minors(x, y) -> bool:
    lx = getattr(x, "label", None)
    ly = getattr(y, "label", None)
    if lx is not None and ly is not None:
        return lx == ly
    eq, _ = groupfun.function_equal(x, y, mode="probabilistic", seed=99)
    return eq


# ---------------------------------------------------------------------------
# Mutation path search


class NotFound(Exception):
    def __init__(self, depth: int):
        super().__init__(f"no mutation path within depth {depth}")
        self.depth = depth


class _DegeneratePoint(Exception):
    pass


class _ValueNode:
    """Search node: the B matrix plus exact variable values at sample points.

    Mutation acts on the values directly through the exchange relation, so
    the search never touches Laurent polynomials; the found path is replayed
    and confirmed exactly afterwards.
    """

    __slots__ = ("b", "values", "path")

    def __init__(self, b, values, path):
        self.b = b
        self.values = values  # tuple over points of tuple over labels
        self.path = path

    def key(self):
        return (
            tuple(sorted(self.b.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))),
            self.values,
        )


def _mutate_values(template: Seed, node: _ValueNode, k, label_pos):
    b = node.b
    nb = {}
    for i in template.labels:
        for j in template.exchangeable:
            bij = b.get((i, j), 0)
            if i == k or j == k:
                v = -bij
            else:
                bik = b.get((i, k), 0)
                bkj = b.get((k, j), 0)
                v = bij + (abs(bik) * bkj + bik * abs(bkj)) // 2
            if v:
                nb[(i, j)] = v
    kpos = label_pos[k]
    new_values = []
    for vals in node.values:
        pos = Q(1)
        neg = Q(1)
        for i in template.labels:
            bik = b.get((i, k), 0)
            if bik > 0:
                pos *= vals[label_pos[i]] ** bik
            elif bik < 0:
                neg *= vals[label_pos[i]] ** (-bik)
        old = vals[kpos]
        if old == 0:
            raise _DegeneratePoint()  # sample point degenerates; caller resamples
        row = list(vals)
        row[kpos] = (pos + neg) / old
        new_values.append(tuple(row))
    return _ValueNode(nb, tuple(new_values), node.path + (k,))


def find_mutation_path(seed_a: Seed, seed_b: Seed, depth: int, rng_seed: int = 2024,
                       screen_points: int = 4, node_cap: int = BFS_NODE_CAP):
    """Bidirectional breadth-first search for mutations carrying seed_a to seed_b.

    Nodes are screened by exact variable values at random group points (the
    initial functions evaluated through the modules); the frontiers meet on
    equal (B, values) signatures and the assembled path is then replayed and
    confirmed exactly.  Raises NotFound(depth) when the combined depth is
    exhausted; that outcome is inconclusive, not a refutation.
    """
    if seed_a.labels != seed_b.labels:
        raise ValueError("seeds index different vertex sets")
    if seed_a.functions is None or seed_b.functions is None:
        raise ValueError("path search needs function semantics on both seeds")
    datum = _seed_datum(seed_a)
    modules = _seed_modules(seed_a) | _seed_modules(seed_b)
    labels = seed_a.labels
    label_pos = {k: i for i, k in enumerate(labels)}
    rng = random.Random(rng_seed)

    for _attempt in range(6):
        vals_a, vals_b = [], []
        while len(vals_a) < screen_points:
            point = groupfun.random_point(datum, rng)
            cols = {mid: groupfun.point_columns(m, point) for mid, m in modules.items()}
            va = tuple(groupfun.as_combo(seed_a.functions[k]).eval_point_cols(cols) for k in labels)
            vb = tuple(groupfun.as_combo(seed_b.functions[k]).eval_point_cols(cols) for k in labels)
            if any(v == 0 for v in va) or any(v == 0 for v in vb):
                continue  # starting clusters must be invertible at the samples
            vals_a.append(va)
            vals_b.append(vb)
        try:
            path = _bidirectional_search(
                seed_a, seed_b, tuple(vals_a), tuple(vals_b), label_pos, depth, node_cap
            )
        except _DegeneratePoint:
            continue  # a mutated variable vanished at a sample point; resample
        if path is None:
            raise NotFound(depth)
        if path:
            _confirm_match(seed_a, seed_b, path)
        return list(path)
    raise NotFound(depth)


def _bidirectional_search(seed_a, seed_b, vals_a, vals_b, label_pos, depth, node_cap):
    root_a = _ValueNode(dict(seed_a.b), vals_a, ())
    root_b = _ValueNode(dict(seed_b.b), vals_b, ())
    sides = {"a": {root_a.key(): root_a}, "b": {root_b.key(): root_b}}
    frontiers = {"a": [root_a], "b": [root_b]}
    if root_a.key() in sides["b"]:
        return ()
    explored = 2
    spent = {"a": 0, "b": 0}
    while spent["a"] + spent["b"] < depth:
        side = "a" if frontiers["a"] and (not frontiers["b"] or len(frontiers["a"]) <= len(frontiers["b"])) else "b"
        if not frontiers[side]:
            return None
        other = "b" if side == "a" else "a"
        spent[side] += 1
        nxt = []
        for node in frontiers[side]:
            for k in seed_a.exchangeable:
                if node.path and node.path[-1] == k:
                    continue
                child = _mutate_values(seed_a, node, k, label_pos)
                key = child.key()
                if key in sides[side]:
                    continue
                sides[side][key] = child
                explored += 1
                if explored > node_cap:
                    return None
                hit = sides[other].get(key)
                if hit is not None:
                    fwd, bwd = (child, hit) if side == "a" else (hit, child)
                    return fwd.path + tuple(reversed(bwd.path))
                nxt.append(child)
        frontiers[side] = nxt
    return None


def _seed_datum(seed: Seed):
    for k in seed.labels:
        fn = seed.functions[k]
        combo = groupfun.as_combo(fn)
        mods = combo.modules()
        if mods:
            return mods[0].datum
    raise ValueError("seed functions reference no modules")


def _seed_modules(seed: Seed) -> dict:
    out = {}
    for k in seed.labels:
        for m in groupfun.as_combo(seed.functions[k]).modules():
            out[id(m)] = m
    return out


def _confirm_match(seed_a: Seed, seed_b: Seed, path) -> None:
    """Exact confirmation that the endpoint variables equal seed_b's as functions.

    Symbolic on the big cell where the expansions stay small (A2 scale);
    longer words confirm at extra recorded sample points instead.
    """
    from .rootweyl import longest_element

    datum = _seed_datum(seed_a)
    end = mutate_sequence(seed_a, path)
    if datum.n <= groupfun.SYMBOLIC_RANK_GUARD and longest_element(datum).length <= 4:
        ring, _ = groupfun.big_cell(datum)
        sym_init = {}
        for k in seed_a.labels:
            combo = groupfun.as_combo(seed_a.functions[k])
            mats = {id(m): groupfun.big_cell_matrix(m)[0] for m in combo.modules()}
            sym_init[var_name(k)] = combo.eval_symbolic_mats(mats, ring)
        for k in seed_a.labels:
            combo_b = groupfun.as_combo(seed_b.functions[k])
            mats_b = {id(m): groupfun.big_cell_matrix(m)[0] for m in combo_b.modules()}
            target = combo_b.eval_symbolic_mats(mats_b, ring)
            if not _laurent_matches_symbolic(end.variables[k], sym_init, target, ring):
                raise AssertionError(f"endpoint variable at {k} differs from target")
    else:
        eqs = _probabilistic_endpoint_check(end, seed_a, seed_b)
        if not eqs:
            raise AssertionError("endpoint variables differ from target at a sample point")


def _laurent_matches_symbolic(lp: Poly, sym_init: dict[str, Poly], target: Poly, ring) -> bool:
    """lp(initial minors) == target, cleared of denominators exactly."""
    mins = lp.min_exponents()
    num = lp.shift(tuple(-min(e, 0) for e in mins))
    lhs = Poly(ring)
    for exp, c in num.terms.items():
        term = Poly.const(ring, c)
        for name, e in zip(lp.vars, exp):
            if e:
                term = term * sym_init[name] ** e
        lhs = lhs + term
    rhs = target
    for name, e in zip(lp.vars, mins):
        if e < 0:
            rhs = rhs * sym_init[name] ** (-e)
    return lhs == rhs


def _probabilistic_endpoint_check(end: Seed, seed_a: Seed, seed_b: Seed, seed: int = 4242, count: int = 12) -> bool:
    datum = _seed_datum(seed_a)
    rng = random.Random(seed)
    modules = _seed_modules(seed_a) | _seed_modules(seed_b)
    done = 0
    while done < count:
        point = groupfun.random_point(datum, rng)
        cols = {mid: groupfun.point_columns(m, point) for mid, m in modules.items()}
        va = {var_name(k): groupfun.as_combo(seed_a.functions[k]).eval_point_cols(cols) for k in seed_a.labels}
        if any(v == 0 for v in va.values()):
            continue
        done += 1
        for k in seed_a.labels:
            if end.variables[k].eval(va) != groupfun.as_combo(seed_b.functions[k]).eval_point_cols(cols):
                return False
    return True


# ---------------------------------------------------------------------------
# JSON encoding


def seed_to_json(seed: Seed) -> dict:
    out = {
        "labels": list(seed.labels),
        "exchangeable": list(seed.exchangeable),
        "B": [[i, k, v] for (i, k), v in sorted(seed.b.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))],
        "variables": {},
    }
    for k in seed.labels:
        entry = {}
        fn = seed.functions.get(k) if seed.functions else None
        label = getattr(fn, "label", None)
        if label is not None and _is_initial_var(seed, k):
            entry["minor"] = groupfun.minor_label_to_json(label)
        else:
            entry["laurent"] = seed.variables[k].canonical_str()
        out["variables"][str(k)] = entry
    return out


def _is_initial_var(seed: Seed, k) -> bool:
    p = seed.variables[k]
    return p == Poly.var(seed.ring, var_name(k))
