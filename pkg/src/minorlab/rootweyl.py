"""Cartan data, weights, roots, and Weyl-group word combinatorics.

Weights live in the weight lattice and are stored by their coordinates in
the fundamental-weight basis.  Weyl group elements are stored by their
canonical form, the tuple of images of all fundamental weights, plus one
reduced word; the action on the fundamental weights is faithful, so the
canonical form decides equality.

Simple-root labeling follows Kac, Chapter 4.  For G2 this puts the long
root first: the Cartan matrix is [[2,-1],[-3,2]] and the 7-dimensional
module has highest weight w_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache

from . import ratmat

WORD_ENUM_MAX_RANK = 4
WORD_ENUM_MAX_LENGTH = 12


@dataclass(frozen=True)
class Weight:
    """Element of the weight lattice, coordinates in the w_s basis."""

    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scaled(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def pairing(self, s: int) -> int:
        """<h_s, mu> for 1-based s."""
        return self.coords[s - 1]


class RootDatum:
    """Cartan matrix with symmetrizers, roots, and coordinate conversions."""

    def __init__(self, kind: str, cartan: tuple[tuple[int, ...], ...]):
        self.kind = kind
        self.n = len(cartan)
        self.cartan = cartan
        self.symmetrizers = _symmetrizers(cartan)
        self._cartan_inv = ratmat.invert([[Q(x) for x in row] for row in cartan])
        self.positive_roots = self._generate_positive_roots()
        self._pos_set = set(self.positive_roots)

    def __repr__(self) -> str:
        return f"RootDatum({self.kind})"

    # Weights of roots -----------------------------------------------------

    def simple_root(self, s: int) -> Weight:
        """alpha_s in fundamental-weight coordinates: column s of the Cartan matrix."""
        return Weight(tuple(self.cartan[t][s - 1] for t in range(self.n)))

    def fundamental_weight(self, s: int) -> Weight:
        coords = [0] * self.n
        coords[s - 1] = 1
        return Weight(tuple(coords))

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.n)

    def root_coords(self, mu: Weight) -> tuple[Q, ...]:
        """Coordinates of mu in the simple-root basis (exact, may be fractional)."""
        return tuple(ratmat.mat_vec(self._cartan_inv, [Q(c) for c in mu.coords]))

    def weight_of_root(self, root: tuple[int, ...]) -> Weight:
        return Weight(tuple(sum(self.cartan[s][t] * root[t] for t in range(self.n)) for s in range(self.n)))

    def is_positive_root(self, mu: Weight) -> bool:
        rc = self.root_coords(mu)
        return all(x.denominator == 1 for x in rc) and tuple(int(x) for x in rc) in self._pos_set

    def is_root(self, mu: Weight) -> bool:
        return self.is_positive_root(mu) or self.is_positive_root(-mu)

    def in_q_plus(self, mu: Weight) -> bool:
        """Membership of mu in the nonnegative span of the simple roots."""
        return all(x.denominator == 1 and x >= 0 for x in self.root_coords(mu))

    def dominance_leq(self, mu: Weight, lam: Weight) -> bool:
        return self.in_q_plus(lam - mu)

    # Invariant bilinear form ------------------------------------------------

    def form(self, mu: Weight, nu: Weight) -> Q:
        """W-invariant form with (alpha_s, alpha_s) = 2 d_s."""
        # (w_s, alpha_t) = d_t * delta_st, so (mu, nu) = sum_t d_t c_t(mu in root basis) nu_t...
        # expand mu in roots: (mu, nu) = sum_t rc(mu)_t (alpha_t, nu) = sum_t rc(mu)_t d_t <h_t, nu>.
        rc = self.root_coords(mu)
        return sum(rc[t] * self.symmetrizers[t] * nu.coords[t] for t in range(self.n))

    def _generate_positive_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        simple = [tuple(1 if t == s else 0 for t in range(n)) for s in range(n)]
        roots = set(simple)
        frontier = set(simple)
        while frontier:
            new = set()
            for m in frontier:
                coords = [sum(self.cartan[s][t] * m[t] for t in range(n)) for s in range(n)]
                for s in range(n):
                    img = list(m)
                    img[s] -= coords[s]
                    img_t = tuple(img)
                    if img_t not in roots:
                        roots.add(img_t)
                        new.add(img_t)
            frontier = new
        pos = [r for r in roots if all(x >= 0 for x in r)]
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        return pos

    def highest_root(self) -> Weight:
        return self.weight_of_root(self.positive_roots[-1])

    def rho(self) -> Weight:
        return Weight((1,) * self.n)


def _symmetrizers(cartan: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Smallest positive integers d with d_s a_st = d_t a_ts."""
    n = len(cartan)
    d: list[Q | None] = [None] * n
    d[0] = Q(1)
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in range(n):
                if cartan[s][t] != 0 and d[s] is not None and d[t] is None:
                    d[t] = d[s] * cartan[s][t] / cartan[t][s]
                    changed = True
    if any(x is None for x in d):
        raise ValueError("Cartan matrix is not connected")
    denom_lcm = 1
    for x in d:
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


_CHAIN_TYPES = {"A", "B", "C", "D", "E", "F", "G"}


@lru_cache(maxsize=None)
def cartan_matrix(kind: str) -> RootDatum:
    """Root datum for a type label like 'A2', 'G2', 'F4', 'E8'."""
    kind = kind.strip().upper().replace("_", "")
    if len(kind) < 2 or kind[0] not in _CHAIN_TYPES or not kind[1:].isdigit():
        raise ValueError(f"unsupported type label: {kind!r}")
    letter, n = kind[0], int(kind[1:])
    a = [[2 if s == t else 0 for t in range(n)] for s in range(n)]

    def link(s: int, t: int, ast: int = -1, ats: int = -1) -> None:
        a[s][t] = ast
        a[t][s] = ats

    if letter == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        for i in range(n - 1):
            link(i, i + 1)
    elif letter == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)  # alpha_n short
    elif letter == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif letter == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6,7,8}")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 4, n - 1)
    elif letter == "F":
        if n != 4:
            raise ValueError("F_n needs n = 4")
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_3, alpha_4 short
        link(2, 3)
    else:  # G
        if n != 2:
            raise ValueError("G_n needs n = 2")
        link(0, 1, -1, -3)  # alpha_1 long, matching the 7-dim module labels
    return RootDatum(kind, tuple(tuple(row) for row in a))


def reflect(datum: RootDatum, mu: Weight, s: int) -> Weight:
    """Simple reflection r_s(mu) = mu - <h_s, mu> alpha_s."""
    if not 1 <= s <= datum.n:
        raise IndexError(f"reflection index {s} out of range 1..{datum.n}")
    c = mu.coords[s - 1]
    if c == 0:
        return mu
    return mu - datum.simple_root(s).scaled(c)


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: images of all fundamental weights plus a reduced word."""

    datum: RootDatum
    canonical: tuple[Weight, ...]
    word: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.datum is other.datum
            and self.canonical == other.canonical
        )

    def __hash__(self):
        return hash((id(self.datum), self.canonical))

    def __repr__(self) -> str:
        return f"WeylElement({','.join(map(str, self.word)) or 'e'})"

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, mu: Weight) -> Weight:
        out = [0] * self.datum.n
        for s, c in enumerate(mu.coords):
            if c:
                img = self.canonical[s].coords
                for t in range(self.datum.n):
                    out[t] += c * img[t]
        return Weight(tuple(out))

    def is_identity(self) -> bool:
        return all(
            self.canonical[s - 1] == self.datum.fundamental_weight(s)
            for s in range(1, self.datum.n + 1)
        )


def identity_element(datum: RootDatum) -> WeylElement:
    can = tuple(datum.fundamental_weight(s) for s in range(1, datum.n + 1))
    return WeylElement(datum, can, ())


def _right_multiply(w: WeylElement, s: int) -> tuple[Weight, ...]:
    """Canonical form of w r_s: only the image of w_s changes."""
    can = list(w.canonical)
    can[s - 1] = can[s - 1] - w.apply(w.datum.simple_root(s))
    return tuple(can)


def right_descents(w: WeylElement) -> list[int]:
    """All s with l(w r_s) < l(w), i.e. w(alpha_s) negative."""
    return [
        s
        for s in range(1, w.datum.n + 1)
        if w.datum.is_positive_root(-w.apply(w.datum.simple_root(s)))
    ]


def _word_from_canonical(datum: RootDatum, canonical: tuple[Weight, ...]) -> tuple[int, ...]:
    """Deterministic reduced word: peel the smallest right descent repeatedly."""
    w = WeylElement(datum, canonical, ())
    letters: list[int] = []
    while True:
        ds = right_descents(w)
        if not ds:
            break
        s = ds[0]
        w = WeylElement(datum, _right_multiply(w, s), ())
        letters.append(s)
    letters.reverse()
    return tuple(letters)


def from_word(datum: RootDatum, word) -> WeylElement:
    """Product r_{s_1} ... r_{s_k}; the stored word is re-derived (hence reduced)."""
    can = list(identity_element(datum).canonical)
    for s in reversed(list(word)):
        # left action on each column: r_s composed after the partial product
        can = [reflect(datum, mu, s) for mu in can]
    canonical = tuple(can)
    return WeylElement(datum, canonical, _word_from_canonical(datum, canonical))


def weyl_compose(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.datum is not v.datum:
        raise ValueError("Weyl elements over different root data")
    canonical = tuple(u.apply(mu) for mu in v.canonical)
    return WeylElement(u.datum, canonical, _word_from_canonical(u.datum, canonical))


def weyl_inverse(w: WeylElement) -> WeylElement:
    return from_word(w.datum, tuple(reversed(w.word)))


def weyl_length(w: WeylElement) -> int:
    return len(w.word)


def longest_element(datum: RootDatum) -> WeylElement:
    """Greedy ascent from e, right-multiplying by the smallest ascent letter."""
    w = identity_element(datum)
    letters: list[int] = []
    while True:
        descents = set(right_descents(w))
        s = next((t for t in range(1, datum.n + 1) if t not in descents), None)
        if s is None:
            return WeylElement(datum, w.canonical, tuple(letters))
        w = WeylElement(datum, _right_multiply(w, s), ())
        letters.append(s)


def reduced_words(w: WeylElement) -> list[tuple[int, ...]]:
    """Complete enumeration of R(w); R(e) is the set holding the empty word."""
    datum = w.datum
    if datum.n > WORD_ENUM_MAX_RANK and w.length > WORD_ENUM_MAX_LENGTH:
        raise ValueError(
            f"reduced-word enumeration guarded: rank {datum.n} > {WORD_ENUM_MAX_RANK} "
            f"and length {w.length} > {WORD_ENUM_MAX_LENGTH}"
        )
    cache: dict[tuple[Weight, ...], list[tuple[int, ...]]] = {}

    def rec(elem: WeylElement) -> list[tuple[int, ...]]:
        got = cache.get(elem.canonical)
        if got is not None:
            return got
        ds = right_descents(elem)
        if not ds:
            cache[elem.canonical] = [()]
            return [()]
        words = []
        for s in ds:
            shorter = WeylElement(datum, _right_multiply(elem, s), ())
            words.extend(u + (s,) for u in rec(shorter))
        words.sort()
        cache[elem.canonical] = words
        return words

    return rec(w)


def is_reduced(datum: RootDatum, word) -> bool:
    word = tuple(word)
    return from_word(datum, word).length == len(word)


def is_double_reduced(seq, u: WeylElement, v: WeylElement) -> bool:
    """Whether a signed sequence is a double reduced word for (u, v)."""
    datum = u.datum
    neg = tuple(-s for s in seq if s < 0)
    pos = tuple(s for s in seq if s > 0)
    if any(s == 0 or abs(s) > datum.n for s in seq):
        return False
    if len(neg) != u.length or len(pos) != v.length:
        return False
    return (
        is_reduced(datum, neg)
        and is_reduced(datum, pos)
        and from_word(datum, neg) == u
        and from_word(datum, pos) == v
    )


def min_coset_rep(w: WeylElement, s: int) -> WeylElement:
    """Shortest w'' with w'' w_s = w w_s; its right descents lie in {s}."""
    datum = w.datum
    cur = w
    while True:
        ds = [t for t in right_descents(cur) if t != s]
        if not ds:
            break
        cur = WeylElement(datum, _right_multiply(cur, ds[0]), ())
    canonical = cur.canonical
    return WeylElement(datum, canonical, _word_from_canonical(datum, canonical))


def complete_to_w0(datum: RootDatum, prefix) -> tuple[int, ...]:
    """Extend a reduced word to a reduced word of w0, smallest ascent first."""
    prefix = tuple(prefix)
    if not is_reduced(datum, prefix):
        raise ValueError(f"prefix {prefix} is not reduced")
    w = from_word(datum, prefix)
    letters = list(prefix)
    while True:
        descents = set(right_descents(w))
        s = next((t for t in range(1, datum.n + 1) if t not in descents), None)
        if s is None:
            return tuple(letters)
        w = WeylElement(datum, _right_multiply(w, s), ())
        letters.append(s)


@lru_cache(maxsize=None)
def weight_to_weyl(datum: RootDatum, mu: Weight, lam: Weight) -> WeylElement:
    """Some w with w(lam) = mu, for mu in the orbit of a dominant lam."""
    if not lam.is_dominant():
        raise ValueError("target weight must be dominant")
    letters: list[int] = []
    cur = mu
    limit = len(datum.positive_roots)
    for _ in range(limit + 1):
        if cur == lam:
            return from_word(datum, tuple(letters))
        s = next((t for t in range(1, datum.n + 1) if cur.coords[t - 1] < 0), None)
        if s is None:
            break
        cur = reflect(datum, cur, s)
        letters.append(s)
    raise ValueError(f"{mu} is not in the Weyl orbit of {lam}")


def weyl_group_size(datum: RootDatum) -> int:
    """Order of W by closure over canonical forms (small ranks only)."""
    seen = {identity_element(datum).canonical}
    frontier = [identity_element(datum)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in range(1, datum.n + 1):
                can = _right_multiply(w, s)
                if can not in seen:
                    seen.add(can)
                    nxt.append(WeylElement(datum, can, ()))
        frontier = nxt
    return len(seen)


def all_elements(datum: RootDatum) -> list[WeylElement]:
    """Every Weyl group element with its canonical word, sorted by length."""
    seen = {identity_element(datum).canonical}
    frontier = [identity_element(datum)]
    out = [identity_element(datum)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in range(1, datum.n + 1):
                can = _right_multiply(w, s)
                if can not in seen:
                    seen.add(can)
                    elem = WeylElement(datum, can, _word_from_canonical(datum, can))
                    nxt.append(elem)
                    out.append(elem)
        frontier = nxt
    out.sort(key=lambda w: (w.length, w.word))
    return out


# -- JSON encoding ---------------------------------------------------------


def weyl_to_json(w: WeylElement) -> list[int]:
    return list(w.word)


def weyl_from_json(datum: RootDatum, data) -> WeylElement:
    return from_word(datum, tuple(int(x) for x in data))


def weight_to_json(mu: Weight) -> list[int]:
    return list(mu.coords)


def weight_from_json(data) -> Weight:
    return Weight(tuple(int(x) for x in data))
