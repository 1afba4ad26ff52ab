"""Deodhar lifts into parabolic cosets, plus brute-force verification oracles.

up(v, tau) is the Bruhat-minimum of {w >= v : wW_J = tau}; down(w, tau) the
Bruhat-maximum of {v <= w : vW_J = tau}.  Existence and uniqueness are
classical; up is computed by a descent recursion, down by enumerating the
subword elements of one reduced word (exactly the interval [e, w]) and
asserting the maximum is unique.
"""
from __future__ import annotations

from .weyl import Coset, WeylElt, WeylGroup


def up(W: WeylGroup, v: WeylElt, tau: Coset) -> WeylElt:
    """The minimal w >= v in the coset tau; requires vW_J <= tau.

    Peel the smallest descent i of the representative of tau; with
    v' = min(v, s_i v), the map w -> s_i w is a length-preserving-minus-one
    bijection {w >= v : wW_J = tau} -> {w' >= v' : w'W_J = s_i tau}, so the
    minimum is s_i times the minimum one level down.
    """
    if not W.coset_leq(W.coset_min_rep(v, tau.J), tau):
        raise ValueError(f"{v!r} does not lie under the coset {tau!r}")
    letters: list[int] = []
    t = tau.rep
    while t.word:
        i = t.word[0]
        letters.append(i)
        if v.rho[i] < 0:
            v = W.mult(W.simple(i), v)
        t = W.mult(W.simple(i), t)
    w = v
    for i in reversed(letters):
        w = W.mult(W.simple(i), w)
    return w


def interval_below(W: WeylGroup, w: WeylElt) -> set[WeylElt]:
    """The Bruhat interval [e, w], as the set of subword elements of w.word."""
    out = {W.e}
    for i in w.word:
        out |= {W.mult(u, W.simple(i)) for u in out}
    return out


def down(W: WeylGroup, w: WeylElt, tau: Coset) -> WeylElt:
    """The maximal v <= w in the coset tau; requires wW_J >= tau.

    Enumerates the subword elements of the canonical reduced word of w (by the
    subword property this is all of [e, w]), keeps those in the coset, and
    asserts the length-maximal one dominates the rest.
    """
    if not W.coset_leq(tau, W.coset_min_rep(w, tau.J)):
        raise ValueError(f"{w!r} does not lie over the coset {tau!r}")
    candidates = [v for v in interval_below(W, w) if W.coset_min_rep(v, tau.J) == tau]
    assert candidates, "nonempty by Deodhar's theorem"
    best = max(candidates, key=lambda v: v.key)
    assert all(W.bruhat_leq(v, best) for v in candidates), (
        "Bruhat-maximum not unique; contradicts Deodhar"
    )
    return best


def up_oracle(W: WeylGroup, v: WeylElt, tau: Coset, search_bound: int) -> WeylElt:
    """Independent recomputation of up by scanning the BFS ball."""
    candidates = [
        w
        for w in W.bfs_ball(search_bound)
        if W.coset_min_rep(w, tau.J) == tau and W.bruhat_leq(v, w)
    ]
    if not candidates:
        raise ValueError(f"no candidate found within length {search_bound}")
    best = min(candidates, key=lambda w: w.key)
    assert all(W.bruhat_leq(best, w) for w in candidates), "minimum not unique"
    return best


def down_oracle(W: WeylGroup, w: WeylElt, tau: Coset) -> WeylElt:
    """Independent recomputation of down by scanning the ball under ℓ(w)."""
    candidates = [
        v
        for v in W.bfs_ball(w.length)
        if W.coset_min_rep(v, tau.J) == tau and W.bruhat_leq(v, w)
    ]
    if not candidates:
        raise ValueError(f"no element of {tau!r} lies below {w!r}")
    best = max(candidates, key=lambda v: v.key)
    assert all(W.bruhat_leq(v, best) for v in candidates), "maximum not unique"
    return best
