"""The alcove model: lambda-hyperplanes, lex chains, adapted sequences.

A lambda-hyperplane for a dominant weight lam is a pair (alpha, k) with alpha
a positive real coroot and 0 <= k < <alpha, lam>.  The lex chain orders all of
them by the vector (1/<alpha,lam>) * (k, c_1, ..., c_r) compared
lexicographically, where c is the coroot's coordinate vector; this is a total
order satisfying both chain axioms:

(1) (alpha, k) precedes (alpha, k') whenever k < k';
(2) for a hyperplane h, a positive coroot alpha != beta = first(h), and any
    integer m with gamma = alpha + m*beta again a positive real coroot, the
    counts of earlier hyperplanes obey
    N_{<h}(gamma) = N_{<h}(alpha) + m * N_{<h}(beta).

Adapted sequences over a base z are saturated Bruhat chains
z < z s_{h_1} < ... < z s_{h_1} ... s_{h_q} whose hyperplane labels are
strictly lex-increasing ("inc") or strictly lex-decreasing ("dec").  They
carry the fixed-w Chevalley rows via the folded operators

    hs_apply(h):  mu -> s_alpha(mu) + k * alpha_root             (dominant)
    ts_apply(h):  mu -> s_alpha(mu) + (<alpha,lam> - k) * alpha_root

applied right-to-left over the labels and then pushed by z.

The module enumerates the two label-monotone cover trees below a fixed w,
the z-adapted sequences above a fixed z (with honest truncation reporting),
converts between adapted sequences and LS paths in both monotonicities, and
exposes the reflection order used to pick out the unique increasing chain in
each conversion segment.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

from .cartan import Coroot, Q, Realization, Weight, _num, pairing, wt_add, wt_neg, wt_scale
from .kring import LaurentPoly, lp_add_into, lp_monomial
from .lifts import down, up
from .lspath import LSPath, stabilizer_nodes
from .weyl import Coset, WeylElt, WeylGroup

__all__ = [
    "LambdaHyperplane",
    "AdaptedSequence",
    "stdvec",
    "lex_less",
    "inverted_lex",
    "rht",
    "rcht",
    "format_hyperplane",
    "lex_chain",
    "count_before",
    "validate_lambda_chain_finite",
    "hs_apply",
    "ts_apply",
    "wt_inc",
    "wt_dec",
    "enumerate_tree_dominant",
    "enumerate_tree_antidominant",
    "enumerate_z_adapted",
    "chevalley_dominant_alcove",
    "chevalley_antidominant_alcove",
    "refl_less",
    "refl_less_dual",
    "increasing_chain",
    "all_label_chains",
    "ls_to_inc",
    "inc_to_ls",
    "ls_to_dec",
    "dec_to_ls",
    "demazure_alcove",
    "opposite_demazure_alcove",
    "divisor_product",
    "tree_dot",
]


@dataclass(frozen=True)
class LambdaHyperplane:
    alpha: Coroot
    k: int

    def __post_init__(self):
        assert self.k >= 0

    def __repr__(self):
        return f"({self.k}|{','.join(map(str, self.alpha.c))})"


def stdvec(lam: Weight, h: LambdaHyperplane) -> tuple:
    """The lex comparison vector (k, c_1, ..., c_r) / <alpha, lam>."""
    p = pairing(h.alpha, lam)
    assert 0 < p and h.k < p, f"{h!r} is not a hyperplane for this weight"
    return (Q(h.k, p),) + tuple(Q(c, p) for c in h.alpha.c)


# Testing hook: flipping this inverts the lex comparator, which silently breaks
# axiom (1) of the chain order.  The self-test harness uses it as a negative
# control to prove the model cross-checks can actually fail.
_inverted_lex = False


@contextlib.contextmanager
def inverted_lex():
    global _inverted_lex
    _inverted_lex = True
    try:
        yield
    finally:
        _inverted_lex = False


def lex_less(lam: Weight, a: LambdaHyperplane, b: LambdaHyperplane) -> bool:
    if _inverted_lex:
        return stdvec(lam, a) > stdvec(lam, b)
    return stdvec(lam, a) < stdvec(lam, b)


def rht(lam: Weight, h: LambdaHyperplane):
    """Relative height k / <alpha, lam> in [0, 1)."""
    return _num(Q(h.k, pairing(h.alpha, lam)))


def rcht(lam: Weight, h: LambdaHyperplane):
    """Relative coheight 1 - rht in (0, 1]."""
    return _num(1 - Q(h.k, pairing(h.alpha, lam)))


def format_hyperplane(lam: Weight, h: LambdaHyperplane) -> str:
    p = pairing(h.alpha, lam)
    suffix = f"/{p}" if p > 1 else ""
    return f"({h.k}|{','.join(map(str, h.alpha.c))}){suffix}"


def lex_chain(R: Realization, lam: Weight) -> list[LambdaHyperplane]:
    """The full lex chain (finite types only)."""
    out = []
    for alpha in R.positive_coroots():
        p = pairing(alpha, lam)
        for k in range(p):
            out.append(LambdaHyperplane(alpha, k))
    out.sort(key=lambda h: stdvec(lam, h))
    return out


def count_before(lam: Weight, eta: Coroot, h: LambdaHyperplane) -> int:
    """N_{<h}(eta): how many hyperplanes (eta, k) lex-precede h.

    Closed form, so it works even when the ambient chain is infinite: the
    vectors (k/K, c_eta/K) share their tail, hence the count is the number of
    k in [0, K) with k/K below h's leading entry, plus one more on a leading
    tie decided by the tails.
    """
    K = pairing(eta, lam)
    if K <= 0:
        return 0
    target = stdvec(lam, h)
    t = Q(target[0]) * K
    strict = min(K, max(0, t.numerator // t.denominator + (0 if t.denominator == 1 else 1)))
    count = strict
    if t.denominator == 1 and 0 <= t <= K - 1:
        tail = tuple(Q(c, K) for c in eta.c)
        if tail < target[1:]:
            count += 1
    return count


def validate_lambda_chain_finite(R: Realization, lam: Weight, chain) -> tuple[bool, str | None]:
    """Check both chain axioms for an explicit (finite) hyperplane sequence.

    Axiom (1) is the per-coroot ordering of the levels k; completeness asks
    each positive coroot alpha to occur exactly <alpha, lam> times with levels
    0..<alpha,lam>-1.  Axiom (2) is the counting identity quoted in the module
    docstring, checked for every position, every coroot pair and every integer
    m (of either sign) making alpha + m*beta a positive coroot.
    """
    pos = R.positive_coroots()
    by_c = {alpha.c: alpha for alpha in pos}
    seen: dict[Coroot, list[int]] = {}
    for h in chain:
        if h.alpha not in by_c.values():
            return False, f"{h!r}: not a positive coroot"
        p = pairing(h.alpha, lam)
        if not 0 <= h.k < p:
            return False, f"{h!r}: level outside [0, {p})"
        seen.setdefault(h.alpha, []).append(h.k)
    for alpha in pos:
        p = pairing(alpha, lam)
        ks = seen.get(alpha, [])
        if sorted(ks) != list(range(p)):
            return False, f"{alpha!r}: levels {ks} != 0..{p - 1}"
        if ks != sorted(ks):
            return False, f"{alpha!r}: levels out of order"
    # multiples m with alpha + m*beta a positive coroot, m != 0
    def multiples(alpha: Coroot, beta: Coroot):
        for gamma in pos:
            diff = tuple(g - a for g, a in zip(gamma.c, alpha.c))
            ms = {Q(d, b) for d, b in zip(diff, beta.c) if b != 0}
            if len(ms) != 1:
                continue
            m = ms.pop()
            if m.denominator != 1 or m == 0:
                continue
            if all(d == m * b for d, b in zip(diff, beta.c)):
                yield int(m), gamma

    counts: dict[Coroot, int] = {alpha: 0 for alpha in pos}
    for idx, h in enumerate(chain):
        beta = h.alpha
        for alpha in pos:
            if alpha == beta:
                continue
            for m, gamma in multiples(alpha, beta):
                lhs = counts[gamma]
                rhs = counts[alpha] + m * counts[beta]
                if lhs != rhs:
                    return False, (
                        f"position {idx} ({h!r}): N({gamma!r})={lhs} but "
                        f"N({alpha!r}) + {m}*N({beta!r}) = {rhs}"
                    )
        counts[beta] += 1
    return True, None


# -- the folded reflection operators -------------------------------------------


def hs_apply(R: Realization, lam: Weight, h: LambdaHyperplane, mu: Weight) -> Weight:
    """s_alpha(mu) + k * alpha_root; fixes b*lam when rht(h) = b."""
    return wt_add(R.coroot_reflection(h.alpha, mu), wt_scale(h.k, h.alpha.root))


def ts_apply(R: Realization, lam: Weight, h: LambdaHyperplane, mu: Weight) -> Weight:
    """s_alpha(mu) + (<alpha,lam> - k) * alpha_root."""
    m = pairing(h.alpha, lam) - h.k
    return wt_add(R.coroot_reflection(h.alpha, mu), wt_scale(m, h.alpha.root))


@dataclass(frozen=True)
class AdaptedSequence:
    """A label-monotone saturated chain read from its base z up to its end.

    chain[0] = z, chain[j] = z s_{h_1} ... s_{h_j}; monotonicity records
    whether the labels hs strictly lex-increase or lex-decrease.
    """

    z: WeylElt
    hs: tuple
    chain: tuple
    monotonicity: str

    def __post_init__(self):
        assert self.monotonicity in ("inc", "dec")
        assert len(self.chain) == len(self.hs) + 1
        assert self.chain[0] == self.z

    @property
    def end(self) -> WeylElt:
        return self.chain[-1]

    def __repr__(self):
        labels = ",".join(repr(h) for h in self.hs)
        return f"AdaptedSequence({self.z!r}; [{labels}]; ->{self.end!r})"


def wt_inc(W: WeylGroup, lam: Weight, seq: AdaptedSequence) -> Weight:
    """z . hs_apply(h_1) ... hs_apply(h_q) (lam), innermost label last."""
    mu = lam
    for h in reversed(seq.hs):
        mu = hs_apply(W.R, lam, h, mu)
    return W.act(seq.z, mu)


def wt_dec(W: WeylGroup, lam: Weight, seq: AdaptedSequence) -> Weight:
    mu = lam
    for h in reversed(seq.hs):
        mu = ts_apply(W.R, lam, h, mu)
    return W.act(seq.z, mu)


# -- enumeration: trees below w, fans above z ------------------------------------


def _cover_edges_down(W: WeylGroup, lam: Weight, v: WeylElt):
    """Tree edges leaving v downward: (hyperplane, cocover), lex-sorted."""
    out = []
    for vp, beta in W.cocovers(v):
        p = pairing(beta, lam)
        for k in range(max(0, p)):
            out.append((LambdaHyperplane(beta, k), vp))
    out.sort(key=lambda t: (stdvec(lam, t[0]), t[1].key))
    return out


def _enumerate_tree(W: WeylGroup, lam: Weight, w: WeylElt, monotonicity: str) -> list[AdaptedSequence]:
    out: list[AdaptedSequence] = []

    def rec(v: WeylElt, incoming: LambdaHyperplane | None, hs_up: tuple, chain_up: tuple):
        out.append(AdaptedSequence(v, hs_up, (v,) + chain_up, monotonicity))
        for h, vp in _cover_edges_down(W, lam, v):
            if incoming is not None:
                if monotonicity == "inc" and not lex_less(lam, h, incoming):
                    continue
                if monotonicity == "dec" and not lex_less(lam, incoming, h):
                    continue
            rec(vp, h, (h,) + hs_up, (v,) + chain_up)

    rec(w, None, (), ())
    return out


def enumerate_tree_dominant(W: WeylGroup, lam: Weight, w: WeylElt) -> list[AdaptedSequence]:
    """All lex-increasing adapted sequences ending at w, grown as a cover tree
    below w (each vertex contributes the sequence reading its branch upward)."""
    return _enumerate_tree(W, lam, w, "inc")


def enumerate_tree_antidominant(W: WeylGroup, lam: Weight, w: WeylElt) -> list[AdaptedSequence]:
    """All lex-decreasing adapted sequences ending at w."""
    return _enumerate_tree(W, lam, w, "dec")


def enumerate_z_adapted(W: WeylGroup, lam: Weight, z: WeylElt, monotonicity: str,
                        length_bound: int) -> tuple[list[AdaptedSequence], bool]:
    """All adapted sequences based at z whose chain stays within the length
    bound.  The second component reports whether any admissible continuation
    was cut off by the bound (a truncation notice, not a failure)."""
    assert monotonicity in ("inc", "dec")
    out: list[AdaptedSequence] = []
    truncated = False

    def up_edges(u: WeylElt, bound: int):
        es = []
        for w, beta in W.covers_within(u, bound):
            p = pairing(beta, lam)
            for k in range(max(0, p)):
                es.append((LambdaHyperplane(beta, k), w))
        es.sort(key=lambda t: (stdvec(lam, t[0]), t[1].key))
        return es

    def admissible(h: LambdaHyperplane, last: LambdaHyperplane | None) -> bool:
        if last is None:
            return True
        return lex_less(lam, last, h) if monotonicity == "inc" else lex_less(lam, h, last)

    def rec(u: WeylElt, last: LambdaHyperplane | None, hs_acc: tuple, chain_acc: tuple):
        nonlocal truncated
        out.append(AdaptedSequence(z, hs_acc, chain_acc, monotonicity))
        if u.length >= length_bound:
            if any(admissible(h, last) for h, _ in up_edges(u, u.length + 1)):
                truncated = True
            return
        for h, w in up_edges(u, length_bound):
            if admissible(h, last):
                rec(w, h, hs_acc + (h,), chain_acc + (w,))

    rec(z, None, (), (z,))
    return out, truncated


# -- Chevalley rows ---------------------------------------------------------------


def chevalley_dominant_alcove(W: WeylGroup, lam: Weight, w: WeylElt) -> dict:
    """Fixed-w row from the lex-increasing tree: z |-> sum e^{wt_inc(seq)}."""
    acc: dict[WeylElt, LaurentPoly] = {}
    for seq in enumerate_tree_dominant(W, lam, w):
        lp_add_into(acc.setdefault(seq.z, {}), lp_monomial(wt_inc(W, lam, seq)))
    return {z: acc[z] for z in sorted(acc, key=lambda u: u.key) if acc[z]}


def chevalley_antidominant_alcove(W: WeylGroup, lam: Weight, w: WeylElt) -> dict:
    """Fixed-w row from the lex-decreasing tree:
    z |-> sum (-1)^q e^{-wt_dec(seq)}."""
    acc: dict[WeylElt, LaurentPoly] = {}
    for seq in enumerate_tree_antidominant(W, lam, w):
        sign = -1 if len(seq.hs) % 2 else 1
        lp_add_into(acc.setdefault(seq.z, {}), lp_monomial(wt_neg(wt_dec(W, lam, seq)), sign))
    return {z: acc[z] for z in sorted(acc, key=lambda u: u.key) if acc[z]}


# -- reflection orders and unique increasing chains --------------------------------


def refl_less(R: Realization, lam: Weight, a: Coroot, b: Coroot) -> bool:
    """Total reflection order: lam-positive coroots by c/<.,lam> lex, then all
    lam-orthogonal coroots (rho-normalized lex) as a final section."""
    pa, pb = pairing(a, lam), pairing(b, lam)
    if pa > 0 and pb > 0:
        return tuple(Q(c, pa) for c in a.c) < tuple(Q(c, pb) for c in b.c)
    if pa > 0:
        return True
    if pb > 0:
        return False
    ra, rb = pairing(a, R.rho), pairing(b, R.rho)
    return tuple(Q(c, ra) for c in a.c) < tuple(Q(c, rb) for c in b.c)


def refl_less_dual(R: Realization, lam: Weight, a: Coroot, b: Coroot) -> bool:
    """The reversed total order (lam-orthogonal coroots become initial)."""
    return refl_less(R, lam, b, a)


def all_label_chains(W: WeylGroup, a: WeylElt, b: WeylElt, label_ok=None):
    """Every saturated chain a -> b, as (elements ascending, labels ascending
    by position); labels may be filtered but no order is imposed."""
    res = []

    def rec(cur: WeylElt, labels: tuple, elems: tuple):
        if cur == a:
            res.append(((a,) + elems, labels))
            return
        if cur.length <= a.length:
            return
        for v, beta in W.cocovers(cur):
            if label_ok is not None and not label_ok(beta):
                continue
            if not W.bruhat_leq(a, v):
                continue
            rec(v, (beta,) + labels, (cur,) if not elems else (cur,) + elems)

    if a == b:
        return [((a,), ())]
    rec(b, (), ())
    return res


def increasing_chain(W: WeylGroup, lam: Weight, a: WeylElt, b: WeylElt, less=None, label_ok=None):
    """The unique saturated chain a -> b whose labels strictly increase in the
    given reflection order (default refl_less).  Asserts uniqueness."""
    if less is None:
        less = refl_less
    res = []

    def rec(cur: WeylElt, bound: Coroot | None, labels: tuple, elems: tuple):
        if cur == a:
            res.append(((a,) + elems, labels))
            return
        if cur.length <= a.length:
            return
        for v, beta in W.cocovers(cur):
            if label_ok is not None and not label_ok(beta):
                continue
            if bound is not None and not less(W.R, lam, beta, bound):
                continue
            if not W.bruhat_leq(a, v):
                continue
            rec(v, beta, (beta,) + labels, (cur,) if not elems else (cur,) + elems)

    if a == b:
        return (a,), ()
    rec(b, None, (), ())
    assert len(res) == 1, f"expected a unique increasing chain {a!r} -> {b!r}, found {len(res)}"
    return res[0]


# -- conversions between LS paths and adapted sequences -----------------------------


def ls_to_inc(W: WeylGroup, p: LSPath, z: WeylElt) -> AdaptedSequence:
    """The lex-increasing sequence based at z matching an LS path with
    phi(p) >= z W_lam: one chain segment per direction, lifted bottom-up."""
    lam = p.lam
    J = stabilizer_nodes(W.R, lam)
    zs = [z]
    for sigma in p.dirs:
        zs.append(up(W, zs[-1], Coset(sigma, J)))
    hs: list[LambdaHyperplane] = []
    chain: list[WeylElt] = [z]
    bexts = list(p.b)
    for j, bj in enumerate(bexts):
        def ok(beta: Coroot, bj=bj) -> bool:
            pr = pairing(beta, lam)
            return pr > 0 and (Q(bj) * pr).denominator == 1

        elems, labels = increasing_chain(W, lam, zs[j], zs[j + 1], refl_less, ok)
        for beta in labels:
            hs.append(LambdaHyperplane(beta, int(Q(bj) * pairing(beta, lam))))
        chain.extend(elems[1:])
    for x, y in zip(hs, hs[1:]):
        assert lex_less(lam, x, y)
    return AdaptedSequence(z, tuple(hs), tuple(chain), "inc")


def inc_to_ls(W: WeylGroup, lam: Weight, seq: AdaptedSequence) -> LSPath:
    """Read an LS path off a lex-increasing sequence: group labels by relative
    height, take the cosets at the block boundaries."""
    assert seq.monotonicity == "inc"
    J = stabilizer_nodes(W.R, lam)
    rhts = [rht(lam, h) for h in seq.hs]
    assert all(x <= y for x, y in zip(rhts, rhts[1:]))
    bvals = (0,) + tuple(sorted({r for r in rhts if r != 0}))
    dirs = []
    for b in bvals:
        cum = sum(1 for r in rhts if r <= b)
        dirs.append(W.coset_decompose(seq.chain[cum], J)[0])
    return LSPath(lam, bvals, tuple(dirs))


def ls_to_dec(W: WeylGroup, p: LSPath, w: WeylElt) -> AdaptedSequence:
    """The lex-decreasing sequence ending at w matching an LS path with
    iota(p) <= w W_lam: segments are dropped top-down, each the unique chain
    increasing in the dual reflection order."""
    lam = p.lam
    J = stabilizer_nodes(W.R, lam)
    m = len(p.dirs)
    w_arr = [None] * (m + 2)
    w_arr[m + 1] = w
    for j in range(m, 0, -1):
        w_arr[j] = down(W, w_arr[j + 1], Coset(p.dirs[j - 1], J))
    bexts = list(p.b) + [1]
    hs: list[LambdaHyperplane] = []
    chain: list[WeylElt] = [w_arr[1]]
    for j in range(1, m + 1):
        bj1 = bexts[j]

        def ok(beta: Coroot, bj1=bj1) -> bool:
            pr = pairing(beta, lam)
            return pr > 0 and (Q(bj1) * pr).denominator == 1

        elems, labels = increasing_chain(W, lam, w_arr[j], w_arr[j + 1], refl_less_dual, ok)
        for beta in labels:
            hs.append(LambdaHyperplane(beta, int((1 - Q(bj1)) * pairing(beta, lam))))
        chain.extend(elems[1:])
    for x, y in zip(hs, hs[1:]):
        assert lex_less(lam, y, x)
    return AdaptedSequence(w_arr[1], tuple(hs), tuple(chain), "dec")


def dec_to_ls(W: WeylGroup, lam: Weight, seq: AdaptedSequence) -> LSPath:
    """Read an LS path off a lex-decreasing sequence: group labels by relative
    coheight; a final segment at coheight 1 may be missing, in which case the
    last direction is the coset of the end."""
    assert seq.monotonicity == "dec"
    J = stabilizer_nodes(W.R, lam)
    rchts = [rcht(lam, h) for h in seq.hs]
    assert all(x <= y for x, y in zip(rchts, rchts[1:]))
    bvals = (0,) + tuple(sorted({r for r in rchts if r != 1}))
    m = len(bvals)
    # segment j (1-indexed) consumes the labels with rcht == b_{j+1}, where
    # b_{m+1} = 1; its direction is the coset of the segment's base element
    # (so an empty final segment reads the end coset, as it must)
    bnext = list(bvals[1:]) + [1]
    dirs = []
    consumed = 0
    for j in range(m):
        dirs.append(W.coset_decompose(seq.chain[consumed], J)[0])
        consumed += sum(1 for r in rchts if Q(r) == Q(bnext[j]))
    assert consumed == len(seq.hs)
    return LSPath(lam, bvals, tuple(dirs))


# -- Demazure sets, divisor row, export ----------------------------------------------


def demazure_alcove(W: WeylGroup, lam: Weight, w: WeylElt) -> list[AdaptedSequence]:
    """The lex-decreasing realization of the Demazure set of w (one sequence
    per crystal element, via dec_to_ls)."""
    return enumerate_tree_antidominant(W, lam, w)


def opposite_demazure_alcove(W: WeylGroup, lam: Weight, z: WeylElt,
                             length_bound: int) -> tuple[list[AdaptedSequence], bool]:
    """The lex-increasing realization of the opposite Demazure set over z."""
    return enumerate_z_adapted(W, lam, z, "inc", length_bound)


def divisor_product(W: WeylGroup, i: int, w: WeylElt) -> dict:
    """Row of the structure-sheaf class of the i-th Schubert divisor times
    [O_w], via 1 - e^{Lambda_i} [L^{-Lambda_i}]; the row of w = identity is
    empty."""
    lam = W.R.fundamental[i]
    rows = chevalley_antidominant_alcove(W, lam, w)
    out: dict[WeylElt, LaurentPoly] = {}
    for z, poly in rows.items():
        shifted: LaurentPoly = {}
        for mu, c in poly.items():
            lp_add_into(shifted, lp_monomial(wt_add(lam, mu), -c))
        out[z] = shifted
    lp_add_into(out.setdefault(w, {}), lp_monomial(W.R.zero()))
    return {z: out[z] for z in sorted(out, key=lambda u: u.key) if out[z]}


def tree_dot(W: WeylGroup, lam: Weight, seqs, name: str = "tree") -> str:
    """DOT digraph of a cover tree: nodes are the sequences' base elements,
    edges carry the hyperplane labels, parents point to children."""
    index = {(s.hs, s.chain): k for k, s in enumerate(seqs)}
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for k, s in enumerate(seqs):
        lines.append(f'  n{k} [label="{s.z!r}"];')
    for s in seqs:
        if not s.hs:
            continue
        parent = index[(s.hs[1:], s.chain[1:])]
        child = index[(s.hs, s.chain)]
        lines.append(
            f'  n{parent} -> n{child} [label="{format_hyperplane(lam, s.hs[0])}"];'
        )
    lines.append("}")
    return "\n".join(lines)
