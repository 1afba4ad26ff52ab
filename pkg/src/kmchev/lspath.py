"""Lakshmibai-Seshadri paths and their crystal structure.

An LS path of shape ``lam`` (a dominant integral weight) is stored as two
parallel tuples:

* ``b = (b_1, ..., b_m)`` -- strictly increasing rationals with ``b_1 = 0``
  and ``b_m < 1`` (a virtual ``b_{m+1} = 1`` closes the last segment);
* ``dirs = (sigma_1, ..., sigma_m)`` -- a strictly increasing Bruhat chain of
  cosets in W/W_lam, each held by its minimum-length representative.

Walking the actual piecewise-linear path from 0 visits the directions in
*decreasing* Bruhat order: the k-th traversal step is the vector
``(b_{m+2-k} - b_{m+1-k}) * sigma_{m+1-k}(lam)``.  The first direction of the
walk, ``sigma_m``, is the initial direction ``iota(p)``; the last one,
``sigma_1``, is the final direction ``phi(p)``.

Crystal operators f_i / e_i cut the i-height profile of the path at the
integer level closest to its minimum and reflect the enclosed portion.  All
local minima of the height profile of a shape-``lam`` LS path are integers,
which the code asserts; the cut point may still fall strictly inside a step,
in which case the step is split and only the part past the cut is reflected.

The module also provides Demazure and opposite Demazure subcrystals, the
iterated Deodhar lifts of a path from a Weyl group element, the resulting
fixed-w Chevalley rows for +/-lam, and the classification of how lifts vary
along an i-string (the U.*/D.* case analysis).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import Q, Realization, Weight, _num, is_lattice, pairing, wt_add, wt_neg, wt_scale
from .kring import LaurentPoly, lp_add_into, lp_monomial
from .lifts import down, interval_below, up
from .weyl import Coset, WeylElt, WeylGroup

__all__ = [
    "LSPath",
    "IString",
    "stabilizer_nodes",
    "straight_path",
    "steps",
    "from_steps",
    "phi",
    "iota",
    "endpoint",
    "validate",
    "validation_error",
    "f",
    "e",
    "demazure_crystal",
    "crystal_up_to",
    "opposite_demazure_ls",
    "up_path",
    "down_path",
    "paths_up",
    "paths_down",
    "chevalley_dominant_ls",
    "chevalley_antidominant_ls",
    "istring",
    "all_istrings",
    "pu_subset",
    "pd_subset",
    "classify_string",
    "path_key",
    "format_path",
    "crystal_dot",
]


def stabilizer_nodes(R: Realization, lam: Weight) -> frozenset:
    """Nodes i with <alpha_i^vee, lam> = 0; generates W_lam for dominant lam."""
    if not R.is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    return frozenset(i for i in range(R.gcm.n) if R.pairing_simple(i, lam) == 0)


@dataclass(frozen=True)
class LSPath:
    lam: Weight
    b: tuple
    dirs: tuple  # WeylElt minimal representatives, strictly increasing

    def __post_init__(self):
        assert len(self.b) == len(self.dirs) >= 1
        assert self.b[0] == 0

    def __repr__(self):
        return format_path(self)


def straight_path(W: WeylGroup, lam: Weight) -> LSPath:
    return LSPath(lam, (0,), (W.from_word(()),))


def steps(p: LSPath) -> list:
    """Traversal steps [(a_1, d_1), ...] walking from 0; d_1 = iota(p)."""
    m = len(p.dirs)
    ext = list(p.b) + [1]
    return [(_num(Q(ext[m + 1 - k]) - ext[m - k]), p.dirs[m - k]) for k in range(1, m + 1)]


def from_steps(lam: Weight, raw) -> LSPath:
    """Rebuild the canonical (b, dirs) form from traversal steps.

    Zero-length steps are dropped and adjacent steps with equal direction are
    merged, so crystal operators can hand in freshly cut step lists.
    """
    merged: list[list] = []
    for a, d in raw:
        if a == 0:
            continue
        assert a > 0
        if merged and merged[-1][1] == d:
            merged[-1][0] += a
        else:
            merged.append([a, d])
    assert sum(a for a, _ in merged) == 1
    m = len(merged)
    dirs = tuple(d for _, d in reversed(merged))
    bvals: list = [None] * m
    acc = Q(0)
    for k, (a, _) in enumerate(merged, start=1):
        acc += a
        bvals[m - k] = _num(1 - acc)
    assert bvals[0] == 0
    return LSPath(lam, tuple(bvals), dirs)


def phi(p: LSPath) -> WeylElt:
    """Final direction: the smallest coset in the chain."""
    return p.dirs[0]


def iota(p: LSPath) -> WeylElt:
    """Initial direction: the largest coset in the chain."""
    return p.dirs[-1]


def endpoint(W: WeylGroup, p: LSPath) -> Weight:
    """p(1) = sum_j (b_{j+1} - b_j) sigma_j(lam); always a lattice weight."""
    total = W.R.zero()
    for a, d in steps(p):
        total = wt_add(total, wt_scale(a, W.act(d, p.lam)))
    assert is_lattice(total)
    return total


def path_key(p: LSPath):
    """Deterministic sort key."""
    return (
        len(p.dirs),
        tuple((Q(x).numerator, Q(x).denominator) for x in p.b),
        tuple(d.key for d in p.dirs),
    )


def format_path(p: LSPath) -> str:
    segs = []
    for a, d in steps(p):
        part = "" if a == 1 else f"{a} "
        name = "" if d.length == 0 else f"{d!r}·"
        segs.append(f"{part}{name}λ")
    return "(" + ", ".join(segs) + ")"


# -- validity ----------------------------------------------------------------


def _quotient_chain_exists(W: WeylGroup, J: frozenset, lam: Weight, lo: WeylElt, hi: WeylElt, bnext) -> bool:
    """Is there a saturated chain of cosets lo -> hi (through minimal
    representatives) all of whose cover coroots beta satisfy
    bnext * <beta, lam> in Z?"""
    if lo == hi:
        return True
    for v, beta in W.cocovers(hi):
        if v != W.coset_decompose(v, J)[0]:
            continue  # not a minimal representative: not a quotient cover
        if (Q(bnext) * pairing(beta, lam)).denominator != 1:
            continue
        if not W.bruhat_leq(lo, v):
            continue
        if _quotient_chain_exists(W, J, lam, lo, v, bnext):
            return True
    return False


def validation_error(W: WeylGroup, p: LSPath) -> str | None:
    """None when p is a genuine LS path of its shape; else a diagnosis."""
    R = W.R
    if not R.is_dominant(p.lam):
        return "shape is not dominant"
    J = stabilizer_nodes(R, p.lam)
    bs = list(p.b)
    if bs[0] != 0:
        return "b_1 != 0"
    for x, y in zip(bs, bs[1:]):
        if not x < y:
            return "b not strictly increasing"
    if not bs[-1] < 1:
        return "b_m >= 1"
    for d in p.dirs:
        if d != W.coset_decompose(d, J)[0]:
            return f"direction {d!r} is not W_lam-minimal"
    for a, b in zip(p.dirs, p.dirs[1:]):
        if a == b or not W.bruhat_leq(a, b):
            return f"directions not strictly increasing at {a!r}, {b!r}"
    for j in range(len(p.dirs) - 1):
        if not _quotient_chain_exists(W, J, p.lam, p.dirs[j], p.dirs[j + 1], p.b[j + 1]):
            return f"no admissible chain from {p.dirs[j]!r} to {p.dirs[j + 1]!r} at b={p.b[j + 1]}"
    return None


def validate(W: WeylGroup, p: LSPath) -> bool:
    return validation_error(W, p) is None


# -- crystal operators ---------------------------------------------------------


def _reflect_dir(W: WeylGroup, J: frozenset, i: int, d: WeylElt) -> WeylElt:
    return W.coset_mult_simple(i, Coset(d, J)).rep


def _height_profile(W: WeylGroup, p: LSPath, i: int):
    st = steps(p)
    ns = [W.act(d, p.lam)[i] for _, d in st]
    H = [Q(0)]
    for (a, _), n in zip(st, ns):
        H.append(H[-1] + Q(a) * n)
    return st, ns, H


def f(W: WeylGroup, p: LSPath, i: int) -> LSPath | None:
    """Lowering operator in direction i (endpoint drops by alpha_i)."""
    st, ns, H = _height_profile(W, p, i)
    M = min(H)
    assert M.denominator == 1, "non-integral height minimum: input is not LS"
    if H[-1] - M < 1:
        return None
    J = stabilizer_nodes(W.R, p.lam)
    j1 = max(k for k, h in enumerate(H) if h == M)
    j2 = min(k for k in range(j1 + 1, len(H)) if H[k] >= M + 1)
    assert ns[j1] > 0
    out = list(st[:j1])
    for k in range(j1, j2 - 1):
        a, d = st[k]
        assert ns[k] >= 0
        out.append((a, _reflect_dir(W, J, i, d)))
    a, d = st[j2 - 1]
    if H[j2] > M + 1:
        cut = _num((M + 1 - H[j2 - 1]) / ns[j2 - 1])
        out.append((cut, _reflect_dir(W, J, i, d)))
        out.append((_num(a - cut), d))
    else:
        out.append((a, _reflect_dir(W, J, i, d)))
    out.extend(st[j2:])
    return from_steps(p.lam, out)


def e(W: WeylGroup, p: LSPath, i: int) -> LSPath | None:
    """Raising operator in direction i (endpoint gains alpha_i)."""
    st, ns, H = _height_profile(W, p, i)
    M = min(H)
    assert M.denominator == 1, "non-integral height minimum: input is not LS"
    if M > -1:
        return None
    J = stabilizer_nodes(W.R, p.lam)
    j2 = min(k for k, h in enumerate(H) if h == M)
    j1 = max(k for k in range(j2 + 1) if H[k] >= M + 1)
    assert ns[j1] < 0
    out = list(st[:j1])
    a, d = st[j1]
    if H[j1] > M + 1:
        keep = _num((M + 1 - H[j1]) / ns[j1])
        out.append((keep, d))
        out.append((_num(a - keep), _reflect_dir(W, J, i, d)))
    else:
        out.append((a, _reflect_dir(W, J, i, d)))
    for k in range(j1 + 1, j2):
        a, d = st[k]
        assert ns[k] <= 0
        out.append((a, _reflect_dir(W, J, i, d)))
    out.extend(st[j2:])
    return from_steps(p.lam, out)


# -- Demazure subcrystals ------------------------------------------------------


def demazure_crystal(W: WeylGroup, lam: Weight, w: WeylElt) -> frozenset:
    """Closure of the straight path under full f_{i}-strings along a reduced
    word of w, applied innermost-letter first.  Equals {p : iota(p) <= w W_lam}."""
    paths = {straight_path(W, lam)}
    for i in reversed(w.word):
        extra = set()
        for p in list(paths):
            q = f(W, p, i)
            while q is not None and q not in paths and q not in extra:
                extra.add(q)
                q = f(W, q, i)
        paths |= extra
    return frozenset(paths)


def crystal_up_to(W: WeylGroup, lam: Weight, length_bound: int) -> frozenset:
    """All LS paths whose initial direction has a representative of length
    <= length_bound; f_i never shortens the initial direction, so pruned
    breadth-first closure is exhaustive."""
    start = straight_path(W, lam)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(W.n):
                q = f(W, p, i)
                if q is None or q in seen:
                    continue
                if iota(q).length > length_bound:
                    continue
                seen.add(q)
                nxt.append(q)
        frontier = nxt
    return frozenset(seen)


def opposite_demazure_ls(W: WeylGroup, lam: Weight, z: WeylElt, length_bound: int):
    """Paths p with phi(p) >= z W_lam whose lift from z stays within the
    length bound.  Returns (paths, truncated)."""
    J = stabilizer_nodes(W.R, lam)
    zcos = W.coset_min_rep(z, J)
    pool = crystal_up_to(W, lam, length_bound)
    keep = set()
    truncated = False
    for p in pool:
        if not W.coset_leq(zcos, Coset(phi(p), J)):
            continue
        if up_path(W, z, p).length <= length_bound:
            keep.add(p)
        else:
            truncated = True
    if W.R.gcm.classify() != "finite":
        truncated = True
    return frozenset(keep), truncated


# -- lifts of paths ------------------------------------------------------------


def up_path(W: WeylGroup, z: WeylElt, p: LSPath) -> WeylElt:
    """Iterated minimal lifts of z along the direction chain, phi-end first.

    Requires z W_lam <= phi(p); each later step is automatic because the
    previous lift already lies weakly below the next coset.
    """
    J = stabilizer_nodes(W.R, p.lam)
    cur = z
    for sigma in p.dirs:
        cur = up(W, cur, Coset(sigma, J))
    return cur


def down_path(W: WeylGroup, w: WeylElt, p: LSPath) -> WeylElt:
    """Iterated maximal drops of w along the direction chain, iota-end first.

    Requires iota(p) <= w W_lam.
    """
    J = stabilizer_nodes(W.R, p.lam)
    cur = w
    for sigma in reversed(p.dirs):
        cur = down(W, cur, Coset(sigma, J))
    return cur


def pu_subset(W: WeylGroup, paths, x: WeylElt, z: WeylElt, J: frozenset) -> frozenset:
    """{p in paths : phi(p) >= z W_lam and up_path(z, p) = x}."""
    zcos = W.coset_min_rep(z, J)
    return frozenset(
        p for p in paths
        if W.coset_leq(zcos, Coset(phi(p), J)) and up_path(W, z, p) == x
    )


def pd_subset(W: WeylGroup, paths, w: WeylElt, z: WeylElt, J: frozenset) -> frozenset:
    """{p in paths : iota(p) <= w W_lam and down_path(w, p) = z}."""
    wcos = W.coset_min_rep(w, J)
    return frozenset(
        p for p in paths
        if W.coset_leq(Coset(iota(p), J), wcos) and down_path(W, w, p) == z
    )


def paths_up(W: WeylGroup, lam: Weight, w: WeylElt, z: WeylElt, crystal=None) -> frozenset:
    """Pu_{w,z}: members of the Demazure crystal of w lifting from z exactly
    to w.  Any path with up_path(z, p) = w has iota(p) = w W_lam, so filtering
    the Demazure crystal loses nothing."""
    if crystal is None:
        crystal = demazure_crystal(W, lam, w)
    J = stabilizer_nodes(W.R, lam)
    return pu_subset(W, crystal, w, z, J)


def paths_down(W: WeylGroup, lam: Weight, w: WeylElt, z: WeylElt, crystal=None) -> frozenset:
    """Pd_{w,z}: members of the Demazure crystal of w dropping from w exactly
    to z."""
    if crystal is None:
        crystal = demazure_crystal(W, lam, w)
    J = stabilizer_nodes(W.R, lam)
    return pd_subset(W, crystal, w, z, J)


# -- Chevalley rows ------------------------------------------------------------


def chevalley_dominant_ls(W: WeylGroup, lam: Weight, w: WeylElt, crystal=None) -> dict:
    """Fixed-w row for the dominant weight: z |-> sum over Pu_{w,z} of
    e^{p(1)}.  Rows with no contributing path are omitted."""
    if crystal is None:
        crystal = demazure_crystal(W, lam, w)
    J = stabilizer_nodes(W.R, lam)
    wcos = W.coset_min_rep(w, J)
    tops = sorted((p for p in crystal if Coset(iota(p), J) == wcos), key=path_key)
    rows: dict[WeylElt, LaurentPoly] = {}
    for z in sorted(interval_below(W, w), key=lambda u: u.key):
        zcos = W.coset_min_rep(z, J)
        poly: LaurentPoly = {}
        for p in tops:
            if W.coset_leq(zcos, Coset(phi(p), J)) and up_path(W, z, p) == w:
                lp_add_into(poly, lp_monomial(endpoint(W, p)))
        if poly:
            rows[z] = poly
    return rows


def chevalley_antidominant_ls(W: WeylGroup, lam: Weight, w: WeylElt, crystal=None) -> dict:
    """Fixed-w row for the antidominant weight: z |-> sum over Pd_{w,z} of
    (-1)^{l(w)-l(z)} e^{-p(1)}.  The Demazure crystal is partitioned by the
    drop of w along each path."""
    if crystal is None:
        crystal = demazure_crystal(W, lam, w)
    acc: dict[WeylElt, LaurentPoly] = {}
    for p in sorted(crystal, key=path_key):
        z = down_path(W, w, p)
        sign = -1 if (w.length - z.length) % 2 else 1
        lp_add_into(acc.setdefault(z, {}), lp_monomial(wt_neg(endpoint(W, p)), sign))
    rows: dict[WeylElt, LaurentPoly] = {}
    for z in sorted(acc, key=lambda u: u.key):
        if acc[z]:
            rows[z] = acc[z]
    return rows


# -- i-strings -----------------------------------------------------------------


@dataclass(frozen=True)
class IString:
    """A maximal f_i-chain: elements[k] = f_i^k(head)."""

    i: int
    elements: tuple

    @property
    def head(self) -> LSPath:
        return self.elements[0]

    @property
    def tail(self) -> LSPath:
        return self.elements[-1]

    @property
    def middle(self) -> tuple:
        return self.elements[1:-1]


def istring(W: WeylGroup, p: LSPath, i: int) -> IString:
    head = p
    while (q := e(W, head, i)) is not None:
        head = q
    elems = [head]
    while (q := f(W, elems[-1], i)) is not None:
        elems.append(q)
    return IString(i, tuple(elems))


def all_istrings(W: WeylGroup, paths, i: int) -> list:
    """The i-strings meeting the given set (strings may extend outside it)."""
    done: set[LSPath] = set()
    out = []
    for p in sorted(paths, key=path_key):
        if p in done:
            continue
        s = istring(W, p, i)
        done.update(s.elements)
        out.append(s)
    return out


# -- lift classification charts -------------------------------------------------

_EMPTY: frozenset = frozenset()


def _u_columns(S, h, t, mid):
    s_h = S - {h}
    s_t = S - {t}
    hh = frozenset({h})
    tt = frozenset({t})
    return [
        ("U.1.1", (S, _EMPTY, tt, _EMPTY), 1),
        ("U.1.2", (S, _EMPTY, S, _EMPTY), 2),
        ("U.1.3", (S, _EMPTY, frozenset({h, t}), mid), 3),
        ("U.2.1", (hh, s_h, _EMPTY, tt), 1),
        ("U.2.2", (hh, s_h, hh, s_h), 2),
        ("U.2.3", (hh, s_h, s_t, tt), 3),
        ("U.3.1", (_EMPTY, _EMPTY, s_t, _EMPTY), 2),
        ("U.3.2", (_EMPTY, _EMPTY, hh, mid), 3),
    ]


def _d_columns(S, h, t, mid):
    s_h = S - {h}
    s_t = S - {t}
    hh = frozenset({h})
    tt = frozenset({t})
    return [
        ("D.1.1", (S, _EMPTY, hh, _EMPTY), 1),
        ("D.1.2", (S, _EMPTY, S, _EMPTY), 2),
        ("D.1.3", (S, _EMPTY, frozenset({h, t}), mid), 3),
        ("D.2.1", (tt, s_t, _EMPTY, hh), 1),
        ("D.2.2", (tt, s_t, tt, s_t), 2),
        ("D.2.3", (tt, s_t, s_h, hh), 3),
        ("D.3.1", (_EMPTY, _EMPTY, s_h, _EMPTY), 2),
        ("D.3.2", (_EMPTY, _EMPTY, tt, mid), 3),
    ]


def _match_columns(columns, observed, size):
    labels = [name for name, pattern, least in columns if observed == pattern and size >= least]
    assert len(labels) <= 1, f"chart columns are not disjoint: {labels}"
    return labels[0] if labels else None


def classify_string(W: WeylGroup, S: IString, base: WeylElt, i: int, direction: str = "up") -> str:
    """Classify how the Deodhar lifts of an i-string behave over a base element.

    direction="up": requires s_i(base) > base and base W_lam <= phi(head); the
    four sets Pu over {lifted w, s_i w} x {base, s_i base} are matched against
    the eight U-columns.  direction="down" mirrors this with drops from the
    base (requires s_i(base) < base and base W_lam >= iota(tail)) and the
    D-columns.  When the string branches to a second lift value off the
    {w, s_i w} pair, the branch column U.3.* / D.3.* is returned and the
    coarse view is checked to match column *.1.1 / *.2.1.
    """
    assert S.i == i
    lam = S.head.lam
    J = stabilizer_nodes(W.R, lam)
    members = frozenset(S.elements)
    size = len(S.elements)
    h, t = S.head, S.tail
    mid = frozenset(S.middle)
    si = W.simple(i)
    s_base = W.mult(si, base)

    if direction == "up":
        if not s_base.length > base.length:
            raise ValueError("classification over z needs s_i z > z")
        if not W.coset_leq(W.coset_min_rep(base, J), Coset(phi(h), J)):
            raise ValueError("z W_lam <= phi(head) fails")
        w = up_path(W, base, h)
        sw = W.mult(si, w)
        assert sw.length > w.length

        def observe(x):
            sx = W.mult(si, x)
            return (
                pu_subset(W, members, x, base, J),
                pu_subset(W, members, sx, base, J),
                pu_subset(W, members, x, s_base, J),
                pu_subset(W, members, sx, s_base, J),
            )

        columns = _u_columns(members, h, t, mid)
        primary = _match_columns(columns, observe(w), size)
        branch_values = set()
        sb_cos = W.coset_min_rep(s_base, J)
        for p in S.elements[:-1]:
            if W.coset_leq(sb_cos, Coset(phi(p), J)):
                y = up_path(W, s_base, p)
                if y not in (w, sw):
                    branch_values.add(y if W.mult(si, y).length > y.length else W.mult(si, y))
        if branch_values:
            assert len(branch_values) == 1, f"more than one branch lift: {branch_values}"
            assert primary in ("U.1.1", "U.2.1"), primary
            label = _match_columns(columns, observe(branch_values.pop()), size)
            if label is None:
                raise LookupError("no branch column matches the observed sets")
            return label
        if primary is None:
            raise LookupError("no column matches the observed sets")
        return primary

    if direction == "down":
        if not s_base.length < base.length:
            raise ValueError("classification over w needs s_i w < w")
        if not W.coset_leq(Coset(iota(t), J), W.coset_min_rep(base, J)):
            raise ValueError("iota(tail) <= w W_lam fails")
        z = down_path(W, base, t)
        sz = W.mult(si, z)
        assert sz.length < z.length

        def observe_d(x):
            sx = W.mult(si, x)
            return (
                pd_subset(W, members, base, x, J),
                pd_subset(W, members, base, sx, J),
                pd_subset(W, members, s_base, x, J),
                pd_subset(W, members, s_base, sx, J),
            )

        columns = _d_columns(members, h, t, mid)
        primary = _match_columns(columns, observe_d(z), size)
        branch_values = set()
        sb_cos = W.coset_min_rep(s_base, J)
        for p in S.elements[1:]:
            if W.coset_leq(Coset(iota(p), J), sb_cos):
                y = down_path(W, s_base, p)
                if y not in (z, sz):
                    branch_values.add(y if W.mult(si, y).length < y.length else W.mult(si, y))
        if branch_values:
            assert len(branch_values) == 1, f"more than one branch drop: {branch_values}"
            assert primary in ("D.1.1", "D.2.1"), primary
            label = _match_columns(columns, observe_d(branch_values.pop()), size)
            if label is None:
                raise LookupError("no branch column matches the observed sets")
            return label
        if primary is None:
            raise LookupError("no column matches the observed sets")
        return primary

    raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")


# -- export --------------------------------------------------------------------


def crystal_dot(W: WeylGroup, paths, name: str = "crystal") -> str:
    """DOT digraph of the f_i-edges within the given vertex set."""
    order = sorted(paths, key=path_key)
    index = {p: k for k, p in enumerate(order)}
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for p in order:
        lines.append(f'  n{index[p]} [label="{format_path(p)}"];')
    for p in order:
        for i in range(W.n):
            q = f(W, p, i)
            if q is not None and q in index:
                lines.append(f'  n{index[p]} -> n{index[q]} [label="{W.R.node_names[i]}"];')
    lines.append("}")
    return "\n".join(lines)
