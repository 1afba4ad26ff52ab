"""The 0-Hecke / K-nilHecke operators T_i on the group ring of the weight
lattice, and the two ways they compute Chevalley coefficients.

A Laurent polynomial is a dict {weight: nonzero int coefficient}; the empty
dict is zero.  On a monomial with n = <alpha_i^vee, mu>:

    T_i e^mu = e^mu (e^{-alpha_i} + ... + e^{-n alpha_i})        n > 0
             = 0                                                  n = 0
             = -e^mu (1 + e^{alpha_i} + ... + e^{(-1-n) alpha_i}) n < 0

so T_i^2 = -T_i, the braid relations hold, and D_i = 1 + T_i is the Demazure
operator.  Writing T_w e^lam = sum_z b_z T_z, the b_z are the equivariant
K-Chevalley coefficients; they can be computed by composing the twisted
Leibniz rule letter by letter (chevalley_recurrence) or by the closed-form
signed-subword expansion (chevalley_explicit).
"""
from __future__ import annotations

import itertools

from .cartan import Realization, Weight, wt_add, wt_sub
from .weyl import WeylElt, WeylGroup

# {weight: coefficient}, zero coefficients never stored
LaurentPoly = dict

# {WeylElt: LaurentPoly}, zero polynomials never stored
NilHeckeCoeffs = dict

EXPLICIT_WORD_CAP = 20


def lp_monomial(mu: Weight, c: int = 1) -> LaurentPoly:
    return {mu: c} if c else {}


def lp_add_into(dst: LaurentPoly, src: LaurentPoly, sign: int = 1) -> None:
    for mu, c in src.items():
        new = dst.get(mu, 0) + sign * c
        if new:
            dst[mu] = new
        else:
            dst.pop(mu, None)


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    out = dict(f)
    lp_add_into(out, g)
    return out


def lp_sub(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    out = dict(f)
    lp_add_into(out, g, -1)
    return out


def lp_neg(f: LaurentPoly) -> LaurentPoly:
    return {mu: -c for mu, c in f.items()}


def lp_mul_monomial(f: LaurentPoly, mu: Weight, c: int = 1) -> LaurentPoly:
    return {wt_add(nu, mu): c * x for nu, x in f.items()} if c else {}


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    out: LaurentPoly = {}
    for mu, c in f.items():
        lp_add_into(out, lp_mul_monomial(g, mu, c))
    return out


def lp_act(W: WeylGroup, w: WeylElt, f: LaurentPoly) -> LaurentPoly:
    return {W.act(w, mu): c for mu, c in f.items()}


def apply_Ti(R: Realization, i: int, f: LaurentPoly) -> LaurentPoly:
    out: LaurentPoly = {}
    alpha = R.alpha[i]
    for mu, c in f.items():
        n = mu[i]
        if n > 0:
            term = mu
            for _ in range(n):
                term = wt_sub(term, alpha)
                lp_add_into(out, {term: c})
        elif n < 0:
            term = mu
            lp_add_into(out, {term: -c})
            for _ in range(-1 - n):
                term = wt_add(term, alpha)
                lp_add_into(out, {term: -c})
    return out


def apply_Di(R: Realization, i: int, f: LaurentPoly) -> LaurentPoly:
    """Demazure operator D_i = 1 + T_i."""
    return lp_add(f, apply_Ti(R, i, f))


def apply_word(R: Realization, word, f: LaurentPoly) -> LaurentPoly:
    """T_{i_1} (T_{i_2} (... T_{i_k} f)); for comparing braid words in tests."""
    for i in reversed(tuple(word)):
        f = apply_Ti(R, i, f)
    return f


def hecke_compose(W: WeylGroup, i: int, element: NilHeckeCoeffs) -> NilHeckeCoeffs:
    """Left-multiply sum_y f_y T_y by T_i.

    T_i (f T_y) = (T_i f) T_y + (s_i f) T_i T_y, and T_i T_y is T_{s_i y} when
    the length goes up, -T_y otherwise.
    """
    si = W.simple(i)
    out: NilHeckeCoeffs = {}

    def add(y: WeylElt, f: LaurentPoly, sign: int = 1) -> None:
        acc = out.setdefault(y, {})
        lp_add_into(acc, f, sign)

    for y, f in element.items():
        add(y, apply_Ti(W.R, i, f))
        twisted = lp_act(W, si, f)
        siy = W.mult(si, y)
        if siy.length > y.length:
            add(siy, twisted)
        else:
            add(y, twisted, -1)
    return {y: f for y, f in out.items() if f}


def chevalley_recurrence(W: WeylGroup, w: WeylElt, lam: Weight) -> NilHeckeCoeffs:
    """The coefficients b_z with T_w e^lam = sum_z b_z T_z, by composing the
    letters of a reduced word of w innermost-first."""
    state: NilHeckeCoeffs = {W.e: lp_monomial(lam)}
    for i in reversed(w.word):
        state = hecke_compose(W, i, state)
    return state


def _explicit_groups(W: WeylGroup, word: tuple[int, ...]):
    """Group the 2^N signed subwords of `word` by their 0-Hecke product."""
    if len(word) > EXPLICIT_WORD_CAP:
        raise ValueError(f"explicit expansion capped at {EXPLICIT_WORD_CAP} letters")
    groups: dict[WeylElt, list] = {}
    for eps in itertools.product((0, 1), repeat=len(word)):
        y = W.e
        sign = 1
        for k, i in enumerate(word):
            if eps[k]:
                yi = W.mult(y, W.simple(i))
                if yi.length > y.length:
                    y = yi
                else:
                    sign = -sign
        groups.setdefault(y, []).append((eps, sign))
    return groups


def chevalley_explicit(
    W: WeylGroup, w: WeylElt, v: WeylElt, lam: Weight, word: tuple[int, ...] | None = None
) -> LaurentPoly:
    """Coefficient of T_v in T_w e^lam by the signed-subword formula.

    Subwords eps of a reduced word of w whose surviving letters multiply to
    ±T_v contribute sign(eps) · A_eps e^lam, where A_eps applies, right to
    left, the Weyl reflection s_{i_k} at surviving positions and T_{i_k} at
    the others.
    """
    if word is None:
        word = w.word
    else:
        word = tuple(word)
        if W.from_word(word) != w or len(word) != w.length:
            raise ValueError("word is not a reduced word for w")
    total: LaurentPoly = {}
    for eps, sign in _explicit_groups(W, word).get(v, []):
        f = lp_monomial(lam)
        for k in range(len(word) - 1, -1, -1):
            i = word[k]
            if eps[k]:
                f = lp_act(W, W.simple(i), f)
            else:
                f = apply_Ti(W.R, i, f)
        lp_add_into(total, f, sign)
    return total
