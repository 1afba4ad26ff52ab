"""Generalized Cartan matrices, their realizations, weights and real coroots.

Weights live in an ambient lattice of rank N = 2n - rank(A), where n is the
number of Dynkin nodes.  Coordinates are chosen so that the first n entries
of a weight are its pairings with the simple coroots; consequently the i-th
fundamental weight is the i-th standard basis vector and a simple reflection
only touches coordinates through the root vector alpha_i.  For an untwisted
affine matrix this produces the familiar basis (Lambda_0, ..., Lambda_{n-1},
delta), with alpha_i = sum_j a[j][i] Lambda_j + [i = 0] delta.

All arithmetic is exact: entries are ints or Fractions, and Fractions with
denominator 1 are normalised back to int (the two hash identically, so mixed
tuples still behave as dict keys; normalising keeps reprs readable).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

Q = Fraction

# A weight, in the coordinates described in the module docstring.
Weight = tuple


def _num(x) -> int | Q:
    """Normalise a rational scalar: Fractions with denominator 1 become int."""
    if isinstance(x, Q):
        return int(x) if x.denominator == 1 else x
    return x


def weight(*coords) -> Weight:
    return tuple(_num(Q(c)) for c in coords)


def wt_add(u: Weight, v: Weight) -> Weight:
    return tuple(_num(a + b) for a, b in zip(u, v, strict=True))


def wt_sub(u: Weight, v: Weight) -> Weight:
    return tuple(_num(a - b) for a, b in zip(u, v, strict=True))


def wt_neg(u: Weight) -> Weight:
    return tuple(_num(-a) for a in u)


def wt_scale(c, u: Weight) -> Weight:
    c = Q(c)
    return tuple(_num(c * a) for a in u)


def is_lattice(u: Weight) -> bool:
    """True when every coordinate is an integer."""
    return all(Q(a).denominator == 1 for a in u)


def _rank(rows: list[list[Q]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    mat = [row[:] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Q(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _components(a) -> list[list[int]]:
    """Connected components of the Dynkin diagram (nodes i,j joined iff a_ij != 0)."""
    n = len(a)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in seen and (a[i][j] != 0 or a[j][i] != 0):
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(a) -> tuple[int, ...]:
    """Primitive positive integers d with d_i a_ij = d_j a_ji, or raise ValueError.

    Ratios are propagated along the Dynkin diagram; a cycle that forces an
    inconsistent ratio means the matrix is not symmetrizable.
    """
    n = len(a)
    d: list[Q | None] = [None] * n
    for comp in _components(a):
        d[comp[0]] = Q(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] == 0 and a[j][i] == 0:
                    continue
                if i == j:
                    continue
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError(f"not symmetrizable: a[{i}][{j}], a[{j}][{i}] zero-pattern mismatch")
                if a[i][j] == 0:
                    continue
                ratio = Q(a[i][j], a[j][i])  # d_j = d_i * a_ij / a_ji
                if d[j] is None:
                    d[j] = d[i] * ratio
                    stack.append(j)
                elif d[j] != d[i] * ratio:
                    raise ValueError("not symmetrizable: inconsistent cycle")
    assert all(x is not None and x > 0 for x in d)
    lcm_den = 1
    for x in d:
        lcm_den = lcm_den * x.denominator // _gcd(lcm_den, x.denominator)
    ints = [int(x * lcm_den) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class GCM:
    """A symmetrizable generalized Cartan matrix with a primitive symmetrizer."""

    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    @staticmethod
    def from_matrix(rows) -> "GCM":
        """Validate the GCM axioms and compute the symmetrizer.

        >>> GCM.from_matrix([[2, -1], [-2, 2]]).d
        (2, 1)
        """
        n = len(rows)
        a = tuple(tuple(int(x) for x in row) for row in rows)
        if any(len(row) != n for row in a):
            raise ValueError("matrix is not square")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry a[{i}][{i}] != 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError(f"off-diagonal entry a[{i}][{j}] > 0")
        return GCM(a, _symmetrizer(a))

    def classify(self) -> str:
        """Return "finite", "affine", or "indefinite".

        Finite means the symmetrized matrix is positive definite (checked by
        Sylvester's criterion with exact rationals); affine means every
        connected component is finite or carries a strictly positive rational
        null vector.
        """
        kinds = []
        for comp in _components(self.a):
            sub = [[Q(self.d[i] * self.a[i][j]) for j in comp] for i in comp]
            if _positive_definite(sub):
                kinds.append("finite")
                continue
            acomp = [[Q(self.a[i][j]) for j in comp] for i in comp]
            null = _null_vector(acomp)
            if null is not None and (all(x > 0 for x in null) or all(x < 0 for x in null)):
                kinds.append("affine")
            else:
                kinds.append("indefinite")
        if "indefinite" in kinds:
            return "indefinite"
        if "affine" in kinds:
            return "affine"
        return "finite"

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.a], "symmetrizer": list(self.d)}


def _positive_definite(sym: list[list[Q]]) -> bool:
    """Sylvester's criterion on a symmetric rational matrix."""
    n = len(sym)
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            return False
    return True


def _det(mat: list[list[Q]]) -> Q:
    mat = [row[:] for row in mat]
    n = len(mat)
    det = Q(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = Q(1) / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                c = mat[r][col] * inv
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[col])]
    return det


def _null_vector(mat: list[list[Q]]) -> list[Q] | None:
    """A nonzero rational vector u with mat @ u = 0, if the kernel is 1-dimensional."""
    n = len(mat)
    m = [row[:] for row in mat]
    if _rank(m) != n - 1:
        return None
    # Solve by elimination, fixing the free variable to 1.
    mat = [row[:] for row in mat]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Q(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(n):
            if r != rank and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    free = next(c for c in range(n) if c not in pivots)
    u = [Q(0)] * n
    u[free] = Q(1)
    for r, col in enumerate(pivots):
        u[col] = -mat[r][free]
    return u


@dataclass(frozen=True)
class Coroot:
    """A real coroot: coordinates c in the simple-coroot basis plus, in tandem,
    the ambient vector of the corresponding real root (the tandem vector is
    what a reflection needs; carrying it around sidesteps the symmetrizer).

    ``witness`` is a certificate of realness: coroot = s_{w_1} ... s_{w_k}
    applied to the simple coroot with index ``witness[-1]``.
    """

    c: tuple[int, ...]
    root: Weight
    witness: tuple[int, ...] = ()

    def __eq__(self, other):
        return isinstance(other, Coroot) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    @property
    def height(self) -> int:
        return sum(self.c)

    def is_positive(self) -> bool:
        return all(x >= 0 for x in self.c)

    def __repr__(self):
        return f"Coroot({','.join(map(str, self.c))})"


def pairing(alpha: Coroot, mu: Weight) -> int | Q:
    """<alpha, mu> for a coroot alpha; exact integer on lattice weights.

    The ambient coordinates were chosen so that pairing with the i-th simple
    coroot reads off the i-th coordinate, so this is a short dot product.
    """
    return _num(sum(ci * mu[i] for i, ci in enumerate(alpha.c) if ci))


class Realization:
    """An ambient realization of a GCM: simple roots, fundamental weights,
    the Weyl vector, and (in corank one) the null root delta.
    """

    def __init__(self, gcm: GCM, node_names: tuple[str, ...] | None = None):
        self.gcm = gcm
        n = gcm.n
        a = gcm.a
        rank = _rank([[Q(x) for x in row] for row in a])
        extra = self._completion_columns(rank)
        self.n = n
        self.N = n + len(extra)
        self.extra_columns = extra
        self.node_names = node_names or tuple(str(i) for i in range(n))
        # alpha_j: pairings (column j of a) followed by the completion coordinates.
        self.alpha = tuple(
            tuple(a[i][j] for i in range(n)) + tuple(1 if j == col else 0 for col in extra)
            for j in range(n)
        )
        self.fundamental = tuple(
            tuple(1 if k == i else 0 for k in range(self.N)) for i in range(n)
        )
        self.rho = tuple(1 if k < n else 0 for k in range(self.N))
        self.delta = self._delta()
        self.simple_coroots = tuple(
            Coroot(tuple(1 if k == i else 0 for k in range(n)), self.alpha[i], (i,))
            for i in range(n)
        )

    def _completion_columns(self, rank: int) -> tuple[int, ...]:
        """Indices of columns that receive an appended identity coordinate.

        Scanning right to left keeps the later columns in the independent set,
        so the dependent (completed) ones have the smallest indices; for an
        untwisted affine matrix that is exactly {0}, giving alpha_0 the delta
        coordinate.
        """
        a = self.gcm.a
        n = self.gcm.n
        chosen: list[list[Q]] = []
        extra = []
        for j in range(n - 1, -1, -1):
            col = [Q(a[i][j]) for i in range(n)]
            if _rank(chosen + [col]) > len(chosen):
                chosen.append(col)
            else:
                extra.append(j)
        assert len(extra) == n - rank
        return tuple(sorted(extra))

    def _delta(self) -> Weight | None:
        if self.N != self.n + 1:
            return None
        null = _null_vector([[Q(x) for x in row] for row in self.gcm.a])
        if null is None or not (all(x > 0 for x in null) or all(x < 0 for x in null)):
            return None
        if null[0] < 0:
            null = [-x for x in null]
        # delta = sum_j m_j alpha_j has zero pairing with every simple coroot.
        vec = (0,) * self.n + (null[self.extra_columns[0]],)
        scale = Q(1) / vec[self.n]
        return tuple(_num(Q(x) * scale) for x in vec)

    def zero(self) -> Weight:
        return (0,) * self.N

    def pairing_simple(self, i: int, mu: Weight):
        return mu[i]

    def simple_reflection(self, i: int, mu: Weight) -> Weight:
        """s_i(mu) = mu - <alpha_i^vee, mu> alpha_i."""
        c = mu[i]
        if c == 0:
            return mu
        return tuple(_num(x - c * y) for x, y in zip(mu, self.alpha[i]))

    def coroot_reflection(self, alpha: Coroot, mu: Weight) -> Weight:
        """s_alpha(mu) = mu - <alpha, mu> root(alpha)."""
        c = pairing(alpha, mu)
        if c == 0:
            return mu
        return tuple(_num(x - c * y) for x, y in zip(mu, alpha.root))

    def reflect_coroot(self, i: int, beta: Coroot) -> Coroot:
        """s_i(beta), acting on the coroot side; the tandem root rides along."""
        # <beta, alpha_i> = sum_j c_j a_{ji}
        c = sum(cj * self.gcm.a[j][i] for j, cj in enumerate(beta.c) if cj)
        if c == 0:
            newc = beta.c
        else:
            newc = tuple(x - c if k == i else x for k, x in enumerate(beta.c))
        return Coroot(newc, self.simple_reflection(i, beta.root), (i,) + beta.witness)

    def is_dominant(self, mu: Weight) -> bool:
        return all(mu[i] >= 0 for i in range(self.n))

    def positive_coroots_up_to(self, bound: int) -> list[Coroot]:
        """All positive real coroots of height <= bound, sorted by (height, c).

        Generated by reflecting simple coroots; a real coroot stays positive
        under s_i unless it is alpha_i^vee itself, so pruning at negatives is
        sound.
        """
        seen = {beta.c: beta for beta in self.simple_coroots if beta.height <= bound}
        frontier = list(seen.values())
        while frontier:
            new = []
            for beta in frontier:
                for i in range(self.n):
                    img = self.reflect_coroot(i, beta)
                    if img.c not in seen and img.is_positive() and img.height <= bound:
                        seen[img.c] = img
                        new.append(img)
            frontier = new
        return sorted(seen.values(), key=lambda b: (b.height, b.c))

    def positive_coroots(self) -> list[Coroot]:
        """All positive coroots; only available in finite type."""
        if self.gcm.classify() != "finite":
            raise ValueError("infinite root system; use positive_coroots_up_to")
        out = self.positive_coroots_up_to(1)
        bound = 1
        while True:
            bound *= 2
            bigger = self.positive_coroots_up_to(bound)
            if len(bigger) == len(out):
                return out
            out = bigger

    def parse_weight(self, text: str) -> Weight:
        """Parse "c_0,c_1,...[,delta=q]" into an ambient weight.

        The plain entries are coordinates on the fundamental weights in node
        order; a trailing delta=q sets the corank coordinate (corank one only).
        """
        coords: list = []
        delta_part = None
        for tok in text.split(","):
            tok = tok.strip()
            if tok.startswith("delta="):
                delta_part = Q(tok[len("delta="):])
            elif tok:
                coords.append(Q(tok))
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} fundamental coordinates, got {len(coords)}")
        if delta_part is not None and self.N != self.n + 1:
            raise ValueError("delta= coordinate requires corank one")
        extra = [Q(0)] * (self.N - self.n)
        if delta_part is not None:
            extra[0] = delta_part
        return tuple(_num(x) for x in coords + extra)

    def format_weight(self, mu: Weight) -> str:
        head = ",".join(str(x) for x in mu[: self.n])
        tail = "".join(f",delta={x}" for x in mu[self.n:] if x != 0)
        return head + tail


PRESETS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A1~": [[2, -2], [-2, 2]],
    "A2~": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
}


def realization_from_preset(name: str) -> Realization:
    """Build the realization for a named Cartan matrix.

    Finite presets use the traditional 1-based node names; affine ones start
    the numbering at the affine node 0.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    gcm = GCM.from_matrix(PRESETS[name])
    if name.endswith("~"):
        names = tuple(str(i) for i in range(gcm.n))
    else:
        names = tuple(str(i + 1) for i in range(gcm.n))
    return Realization(gcm, names)


def realization_from_json_file(path: str) -> Realization:
    """Load {"matrix": [[...]], "symmetrizer": [...]?, "nodes": [...]?} from a file."""
    with open(path) as fh:
        data = json.load(fh)
    gcm = GCM.from_matrix(data["matrix"])
    if "symmetrizer" in data:
        given = tuple(int(x) for x in data["symmetrizer"])
        scaled = _symmetrizer(gcm.a)
        ok = len(given) == gcm.n and all(
            given[i] * scaled[j] == given[j] * scaled[i] for i in range(gcm.n) for j in range(gcm.n)
        )
        if not ok or any(x <= 0 for x in given):
            raise ValueError("symmetrizer does not symmetrize the matrix")
    names = tuple(str(x) for x in data["nodes"]) if "nodes" in data else None
    if names is not None and len(names) != gcm.n:
        raise ValueError("nodes list has wrong length")
    return Realization(gcm, names)


def coroot_from_c(R: Realization, c) -> Coroot:
    """Reconstruct the Coroot with coordinates c, verifying it is real.

    A positive real coroot of height > 1 always has a simple reflection that
    lowers its height and keeps it positive, so walking downhill reaches a
    simple coroot in at most height(c) steps; anything that gets stuck or
    leaves the positive cone was not a real coroot.
    """
    c = tuple(int(x) for x in c)
    if all(x <= 0 for x in c) and any(x < 0 for x in c):
        pos = coroot_from_c(R, tuple(-x for x in c))
        return Coroot(c, wt_neg(pos.root), pos.witness)
    if not (all(x >= 0 for x in c) and any(x > 0 for x in c)):
        raise ValueError(f"{c} is not a real coroot")
    cur = c
    word: list[int] = []
    while sum(cur) > 1:
        for i in range(R.n):
            pair_i = sum(cj * R.gcm.a[j][i] for j, cj in enumerate(cur) if cj)
            if pair_i > 0:
                nxt = tuple(x - pair_i if k == i else x for k, x in enumerate(cur))
                break
        else:
            raise ValueError(f"{c} is not a real coroot")
        if any(x < 0 for x in nxt):
            raise ValueError(f"{c} is not a real coroot")
        cur = nxt
        word.append(i)
    i = cur.index(1)
    beta = R.simple_coroots[i]
    for j in reversed(word):
        beta = R.reflect_coroot(j, beta)
    assert beta.c == c
    return beta
