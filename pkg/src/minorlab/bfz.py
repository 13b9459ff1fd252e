"""Seeds on the open double Bruhat cell from double reduced words.

A double reduced word for (w0, w0) indexes a seed whose variables are
generalized minors D(k; s).  The exchange matrix is transcribed from the
double-word combinatorics: entries connect consecutive occurrences of one
letter, and Cartan-adjacent letters whose occurrence intervals properly
overlap, with signs gated by the word's sign pattern.  Conventions drift
across the literature, so the matrix is held to a validation contract:

  V1  principal part skew-symmetrizable with the symmetrizers d_{|s_k|},
      and connected;
  V2  support only on chain neighbours or Cartan-adjacent letters with
      properly overlapping intervals, entries bounded by the Cartan matrix;
  V3  every exchange sum is divisible, as a function on the big cell, by
      the variable it replaces (rank <= 2, symbolic);
  V4  the mutation-equivalence and disjointness acceptance checks.

V3 is the semantic arbiter: a wrong sign anywhere breaks regularity of the
exchanged variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import groupfun
from .clustercore import Seed
from .poly import Poly
from .rootweyl import (
    RootDatum,
    WeylElement,
    complete_to_w0,
    from_word,
    identity_element,
    is_double_reduced,
    longest_element,
    min_coset_rep,
    reduced_words,
)


@dataclass(frozen=True)
class DoubleWord:
    """Double reduced word for (w0, w0) over the signed alphabet."""

    datum: RootDatum
    entries: tuple[int, ...]

    def __post_init__(self):
        w0 = longest_element(self.datum)
        if not is_double_reduced(self.entries, w0, w0):
            raise ValueError(f"{self.entries} is not a double reduced word for (w0, w0)")

    @property
    def length(self) -> int:
        return len(self.entries)

    def letter(self, k: int) -> int:
        """|s_k| with the convention s_k = k for k in -S."""
        return abs(k) if k < 0 else abs(self.entries[k - 1])

    def sign(self, k: int) -> int:
        if k < 0:
            return -1
        return 1 if self.entries[k - 1] > 0 else -1


@dataclass(frozen=True)
class BfzIndex:
    labels: tuple[int, ...]
    kplus: dict
    frozen: tuple[int, ...]
    exchangeable: tuple[int, ...]


def index_structure(dw: DoubleWord) -> BfzIndex:
    """k+ chains and the frozen/exchangeable partition of J = -S u {1..N}."""
    n = dw.datum.n
    big_n = dw.length
    labels = tuple(range(-n, 0)) + tuple(range(1, big_n + 1))
    kplus = {}
    for k in labels:
        nxt = next(
            (j for j in range(max(k + 1, 1), big_n + 1) if dw.letter(j) == dw.letter(k)),
            big_n + 1,
        )
        kplus[k] = nxt
    frozen = tuple(k for k in labels if k < 0 or kplus[k] == big_n + 1)
    exchangeable = tuple(k for k in labels if k not in set(frozen))
    return BfzIndex(labels, kplus, frozen, exchangeable)


def prefix_weyl(dw: DoubleWord, k: int) -> WeylElement:
    """w~_{<=k}: increasing product of the negative letters up to k."""
    if k < 0:
        return identity_element(dw.datum)
    letters = [-s for s in dw.entries[:k] if s < 0]
    return from_word(dw.datum, letters)


def suffix_weyl(dw: DoubleWord, k: int) -> WeylElement:
    """w~_{>k}: decreasing product of the positive letters after k."""
    if k < 0:
        return longest_element(dw.datum)
    letters = [s for s in reversed(dw.entries[k:]) if s > 0]
    return from_word(dw.datum, letters)


def minor_label(dw: DoubleWord, k: int) -> groupfun.MinorLabel:
    return groupfun.MinorLabel(dw.letter(k), prefix_weyl(dw, k), suffix_weyl(dw, k))


def frozen_labels(datum: RootDatum) -> list[groupfun.MinorLabel]:
    """The word-independent frozen set {D_{w_s, w0 w_s}, D_{w0 w_s, w_s}}."""
    e = identity_element(datum)
    w0 = longest_element(datum)
    out = []
    for s in range(1, datum.n + 1):
        out.append(groupfun.MinorLabel(s, e, w0))
        out.append(groupfun.MinorLabel(s, w0, e))
    return out


# ---------------------------------------------------------------------------
# Exchange matrix


def exchange_matrix(dw: DoubleWord) -> dict:
    """B_s as a sparse dict over (row in J, column in J_ex).

    Nonzero entries: chain neighbours p+ = k or k+ = p carry -eps_k resp.
    eps_p; properly overlapping intervals of Cartan-adjacent letters carry
    the Cartan entry, gated by the sign pattern.  Validated by V1/V2 here
    and V3/V4 downstream.
    """
    datum = dw.datum
    idx = index_structure(dw)
    kp = idx.kplus
    a = datum.cartan
    b: dict = {}
    for p in idx.labels:
        for k in idx.exchangeable:
            if p == k:
                continue
            val = 0
            lp, lk = dw.letter(p), dw.letter(k)
            if lp == lk:
                if kp[p] == k:
                    val = -dw.sign(k)
                elif kp[k] == p:
                    val = dw.sign(p)
            elif a[lp - 1][lk - 1] != 0:
                pp, kk = kp[p], kp[k]
                if p < k < pp < kk and dw.sign(k) == dw.sign(pp):
                    val = -dw.sign(k) * a[lp - 1][lk - 1]
                elif p < k < kk < pp and dw.sign(k) == -dw.sign(kk):
                    val = -dw.sign(k) * a[lp - 1][lk - 1]
                elif k < p < kk < pp and dw.sign(p) == dw.sign(kk):
                    val = dw.sign(p) * a[lp - 1][lk - 1]
                elif k < p < pp < kk and dw.sign(p) == -dw.sign(pp):
                    val = dw.sign(p) * a[lp - 1][lk - 1]
            if val:
                b[(p, k)] = val
    _validate_support(dw, idx, b)
    return b


class ExchangeMatrixError(ValueError):
    pass


def _validate_support(dw: DoubleWord, idx: BfzIndex, b: dict) -> None:
    """V2: support pattern and entry sizes against the word combinatorics."""
    datum = dw.datum
    kp = idx.kplus
    for (p, k), val in b.items():
        lp, lk = dw.letter(p), dw.letter(k)
        if lp == lk:
            if not (kp[p] == k or kp[k] == p):
                raise ExchangeMatrixError(f"V2: same-letter entry {p},{k} not chain-adjacent")
            if abs(val) != 1:
                raise ExchangeMatrixError(f"V2: chain entry {p},{k} has |b| = {abs(val)}")
        else:
            cart = abs(datum.cartan[lp - 1][lk - 1])
            if cart == 0:
                raise ExchangeMatrixError(f"V2: entry {p},{k} between non-adjacent letters")
            lo, hi = (p, k) if p < k else (k, p)
            if not hi < kp[lo]:  # properly overlapping intervals, crossing or nested
                raise ExchangeMatrixError(f"V2: entry {p},{k} without interval overlap")
            if abs(val) != cart:
                raise ExchangeMatrixError(f"V2: entry {p},{k} has |b| = {abs(val)} != {cart}")


def _validate_symmetrizer(dw: DoubleWord, seed: Seed) -> None:
    """V1: the seed's skew-symmetrizer is proportional to d_{|s_k|}."""
    datum = dw.datum
    ratios = set()
    for k in seed.exchangeable:
        d_word = datum.symmetrizers[dw.letter(k) - 1]
        ratios.add(Q(seed.symmetrizer[k], d_word))
    if len(ratios) != 1:
        raise ExchangeMatrixError(f"V1: symmetrizer not proportional to d_letter: {ratios}")


def exchange_regular(seed: Seed, dw: DoubleWord, k) -> bool:
    """V3 at one vertex: the exchange sum is divisible by D(k; s) on the big cell."""
    datum = dw.datum
    ring, _ = groupfun.big_cell(datum)
    sym = {}
    for j in seed.labels:
        combo = groupfun.as_combo(seed.functions[j])
        mats = {id(m): groupfun.big_cell_matrix(m)[0] for m in combo.modules()}
        sym[j] = combo.eval_symbolic_mats(mats, ring)
    pos = Poly.const(ring, 1)
    neg = Poly.const(ring, 1)
    for i in seed.labels:
        bik = seed.b.get((i, k), 0)
        if bik > 0:
            pos = pos * sym[i] ** bik
        elif bik < 0:
            neg = neg * sym[i] ** (-bik)
    total = pos + neg
    return total.divide_exact(sym[k]) is not None


def build_seed(dw: DoubleWord, regularity: bool | None = None) -> Seed:
    """The seed (x_s, B_s) with minors attached as function semantics.

    regularity=None runs the symbolic V3 check exactly when the rank allows
    it; passing False skips it (the cheap V1/V2 checks always run).
    """
    datum = dw.datum
    idx = index_structure(dw)
    b = exchange_matrix(dw)
    functions = {k: groupfun.minor(datum, minor_label(dw, k)) for k in idx.labels}
    seed = Seed(
        labels=idx.labels,
        exchangeable=idx.exchangeable,
        b=b,
        variables=None,
        functions=functions,
    )
    _validate_symmetrizer(dw, seed)
    if regularity is None:
        regularity = datum.n <= groupfun.SYMBOLIC_RANK_GUARD
    if regularity:
        for k in idx.exchangeable:
            if not exchange_regular(seed, dw, k):
                raise ExchangeMatrixError(f"V3: exchange at {k} is not regular")
    return seed


# ---------------------------------------------------------------------------
# Minor realization and disjoint pairs


def realize_minor(datum: RootDatum, w: WeylElement, wp: WeylElement, s: int):
    """A double word and index k with D(k; s) = D_{w w_s, w' w_s}.

    Follows the coset-replacement construction: both elements are replaced
    by their minimal coset representatives (whose words end with s, or are
    trivial), the words are completed to w0, and the four blocks are
    assembled.  When the left representative is trivial the target sits at
    k = l(w) - l(w') + N/2 after padding the front with the non-s letters
    that expose the next s; when additionally the right weight is the
    lowest one, the minor is a frozen variable and k = -s is returned.
    """
    w0 = longest_element(datum)
    half = w0.length
    w2 = min_coset_rep(w, s)
    w3 = min_coset_rep(wp, s)
    l2, l3 = w2.length, w3.length

    if l2 > 0:
        iword = complete_to_w0(datum, w2.word)
        jword = complete_to_w0(datum, w3.word) if l3 else complete_to_w0(datum, ())
        entries = (
            tuple(reversed(jword[l3:]))
            + tuple(-t for t in iword[:l2])
            + tuple(reversed(jword[:l3]))
            + tuple(-t for t in iword[l2:])
        )
        return DoubleWord(datum, entries), l2 - l3 + half

    # left representative is trivial: w w_s = w_s
    u = rootweyl_compose_inverse(w3, w0)
    if s not in set(u.word):
        # w' w_s is the lowest weight w0 w_s: the frozen minor at -s
        dw = standard_double_word(datum)
        return dw, -s
    pad, tail_word = _expose_left_letter(u, s)
    jword = w3.word + tuple(pad) + tuple(tail_word)
    iword = complete_to_w0(datum, tuple(pad))
    d = len(pad) + 1
    entries = (
        tuple(-t for t in iword[: d - 1])
        + tuple(reversed(jword))
        + tuple(-t for t in iword[d - 1 :])
    )
    return DoubleWord(datum, entries), half - l3


def rootweyl_compose_inverse(v: WeylElement, w0: WeylElement) -> WeylElement:
    """v^{-1} w0 with lengths adding: the completion element."""
    from .rootweyl import weyl_compose, weyl_inverse

    return weyl_compose(weyl_inverse(v), w0)


def _expose_left_letter(u: WeylElement, s: int):
    """Split u = (pad) . v with pad avoiding s and v having s as left descent.

    Returns (pad letters, a reduced word of v starting with s).
    """
    from .rootweyl import weyl_compose, from_word as fw

    datum = u.datum
    pad = []
    v = u
    while s not in _left_descents(v):
        t = _left_descents(v)[0]
        pad.append(t)
        v = weyl_compose(fw(datum, (t,)), v)
    word = [s]
    cur = weyl_compose(fw(datum, (s,)), v)
    while cur.length:
        t = _left_descents(cur)[0]
        word.append(t)
        cur = weyl_compose(fw(datum, (t,)), cur)
    return pad, word


def _left_descents(w: WeylElement) -> list[int]:
    from .rootweyl import right_descents, weyl_inverse

    return right_descents(weyl_inverse(w))


def standard_double_word(datum: RootDatum) -> DoubleWord:
    """Deterministic base word: reversed w0-word as positives, then negatives."""
    w0 = longest_element(datum)
    entries = tuple(reversed(w0.word)) + tuple(-t for t in w0.word)
    return DoubleWord(datum, entries)


def disjoint_pair(datum: RootDatum, iword, jword) -> tuple[DoubleWord, DoubleWord]:
    """The two shuffles (-i, +j) and (+i, -j); their clusters are disjoint."""
    iword, jword = tuple(iword), tuple(jword)
    w0 = longest_element(datum)
    for word in (iword, jword):
        if from_word(datum, word) != w0 or len(word) != w0.length:
            raise ValueError(f"{word} is not a reduced word of w0")
    s1 = DoubleWord(datum, tuple(-t for t in iword) + jword)
    s2 = DoubleWord(datum, iword + tuple(-t for t in jword))
    return s1, s2


def all_double_words(datum: RootDatum):
    """Every double reduced word for (w0, w0): shuffles of +/- reduced words."""
    w0 = longest_element(datum)
    half = w0.length
    words = reduced_words(w0)
    out = []
    for iw in words:
        for jw in words:
            for mask in _shuffles(half):
                entries = []
                ni = nj = 0
                for take_neg in mask:
                    if take_neg:
                        entries.append(-iw[ni])
                        ni += 1
                    else:
                        entries.append(jw[nj])
                        nj += 1
                out.append(DoubleWord(datum, tuple(entries)))
    return out


def _shuffles(half: int):
    from itertools import combinations

    total = 2 * half
    for neg_positions in combinations(range(total), half):
        mask = [False] * total
        for p in neg_positions:
            mask[p] = True
        yield tuple(mask)


# ---------------------------------------------------------------------------
# JSON


def double_word_to_json(dw: DoubleWord) -> list[int]:
    return list(dw.entries)


def double_word_from_json(datum: RootDatum, data) -> DoubleWord:
    return DoubleWord(datum, tuple(int(x) for x in data))
