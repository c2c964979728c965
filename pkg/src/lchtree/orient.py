"""Oriented finite-dimensional linear algebra over the integers.

Orientations are carried as (ordered label list, sign) tokens and every
determinant is evaluated exactly over Q.  Zero-dimensional spaces are
legitimate tokens: an empty label list with sign +1 is a positively oriented
point.  This module is the substrate for the whole sign calculus: the
orientation induced through a 4-term exact sequence

    0 -> V1 --alpha--> W1 --beta--> W2 --gamma--> V2 -> 0

follows the convention: complete a basis of W1 as (alpha(v) | w-bar) and of
W2 as (u-bar | beta(w-bar)) where gamma(u-bar) is the chosen basis of V2;
the correspondence of orientation pairs (V1,V2) <-> (W1,W2) is read off from
the two completion determinants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class NotExact(Exception):
    pass


class NotTransverse(Exception):
    pass


class IndexOutOfRange(Exception):
    pass


# ---------------------------------------------------------------------------
# exact matrix helpers (rows = output coords, cols = input coords)

def _mat_mul(a, b):
    if not b:
        return ()
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols))
        for i in range(rows)
    )


def _mat_vec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def _rref(rows):
    """Reduced row echelon form over Q. Returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _rank(mat):
    if not mat or not mat[0]:
        return 0
    return len(_rref(mat)[1])


def _det_sign(mat):
    """Sign of the determinant of a square matrix, 0 if singular."""
    n = len(mat)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in mat]
    sign = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        if m[c][c] < 0:
            sign = -sign
        pv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign


def _solve(mat, target):
    """One exact solution x of mat @ x = target, or None."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [list(mat[i]) + [target[i]] for i in range(nrows)]
    red, pivots = _rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return tuple(x)


def _kernel_basis(mat):
    """Basis of ker(mat) as column vectors, deterministic, exact."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, pivots = _rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def _column_space_contains(mat, vec):
    return _solve(mat, vec) is not None


def _transpose(mat):
    if not mat:
        return ()
    return tuple(tuple(row[j] for row in mat) for j in range(len(mat[0])))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientedSpace:
    """An oriented space token: ordered basis labels plus a sign.

    sign=None marks the unknown space of an exact sequence.
    """

    labels: tuple
    sign: int | None = 1

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be pairwise distinct")
        if self.sign not in (1, -1, None):
            raise ValueError("sign must be +1, -1 or None (unknown)")

    @property
    def dim(self):
        return len(self.labels)

    def flipped(self):
        return OrientedSpace(self.labels, -self.sign)


ZERO_SPACE = OrientedSpace((), 1)


@dataclass(frozen=True)
class ExactSequence4:
    """0 -> V1 -> W1 -> W2 -> V2 -> 0 with integer matrices in the listed bases.

    alpha: dim W1 x dim V1, beta: dim W2 x dim W1, gamma: dim V2 x dim W2.
    Exactly one space may carry sign=None; induced_orientation solves for it.
    """

    v1: OrientedSpace
    w1: OrientedSpace
    w2: OrientedSpace
    v2: OrientedSpace
    alpha: tuple
    beta: tuple
    gamma: tuple

    def spaces(self):
        return (self.v1, self.w1, self.w2, self.v2)

    def check_exact(self):
        k, m1 = self.v1.dim, self.w1.dim
        m2, l = self.w2.dim, self.v2.dim
        if len(self.alpha) != m1 or (m1 and k and len(self.alpha[0]) != k):
            raise NotExact("alpha has wrong shape")
        if len(self.beta) != m2 or (m2 and m1 and len(self.beta[0]) != m1):
            raise NotExact("beta has wrong shape")
        if len(self.gamma) != l or (l and m2 and len(self.gamma[0]) != m2):
            raise NotExact("gamma has wrong shape")
        ra = _rank(self.alpha) if k else 0
        rb = _rank(self.beta) if m1 else 0
        rg = _rank(self.gamma) if m2 else 0
        if ra != k:
            raise NotExact("alpha not injective")
        if rg != l:
            raise NotExact("gamma not surjective")
        if ra != m1 - rb:
            raise NotExact("im alpha != ker beta (rank)")
        if rb != m2 - rg:
            raise NotExact("im beta != ker gamma (rank)")
        if k and m2:
            comp = _mat_mul(self.beta, self.alpha)
            if any(x != 0 for row in comp for x in row):
                raise NotExact("beta o alpha != 0")
        if m1 and l:
            comp = _mat_mul(self.gamma, self.beta)
            if any(x != 0 for row in comp for x in row):
                raise NotExact("gamma o beta != 0")


def _std_basis(n):
    return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]


def induced_orientation(seq: ExactSequence4, rng: random.Random | None = None) -> OrientedSpace:
    """Orient the unique unknown space of the sequence by the Phi convention.

    The result is independent of the internal completion choices; pass an rng
    to randomize those choices (used by the well-definedness tests).
    """
    seq.check_exact()
    unknowns = [i for i, s in enumerate(seq.spaces()) if s.sign is None]
    if len(unknowns) != 1:
        raise NotExact("exactly one space must be unknown")
    uidx = unknowns[0]

    k, m1 = seq.v1.dim, seq.w1.dim
    m2, l = seq.w2.dim, seq.v2.dim
    m = m1 - k  # = dim of the completion w-bar

    # u-bar: vectors of W2 with gamma(u_j) = e_j in V2's basis.
    ubar = []
    ker_g = _kernel_basis(seq.gamma) if m2 else []
    for j in range(l):
        target = tuple(Fraction(int(i == j)) for i in range(l))
        u = _solve(seq.gamma, target)
        if u is None:
            raise NotExact("gamma not surjective (solve failed)")
        if rng is not None and ker_g:
            u = list(u)
            for kv in ker_g:
                c = rng.randint(-2, 2)
                u = [a + c * b for a, b in zip(u, kv)]
            u = tuple(u)
        ubar.append(u)

    # w-bar: complete im(alpha) to a basis of W1.
    alpha_cols = [tuple(seq.alpha[i][j] for i in range(m1)) for j in range(k)]
    candidates = _std_basis(m1)
    if rng is not None:
        rng.shuffle(candidates)
    wbar = []
    span = [list(c) for c in alpha_cols]
    for cand in candidates:
        if len(wbar) == m:
            break
        trial = span + [list(cand)]
        if _rank(trial) == len(trial):
            wbar.append(cand)
            span = trial
    if len(wbar) != m:
        raise NotExact("failed to complete im(alpha)")
    if rng is not None and alpha_cols:
        mixed = []
        for w in wbar:
            w = list(w)
            for ac in alpha_cols:
                c = rng.randint(-2, 2)
                w = [a + c * b for a, b in zip(w, ac)]
            mixed.append(tuple(w))
        wbar = mixed

    d1 = _det_sign([list(col) for col in zip(*(alpha_cols + wbar))]) if m1 else 1
    beta_w = [_mat_vec(seq.beta, w) for w in wbar]
    d2 = _det_sign([list(col) for col in zip(*(ubar + beta_w))]) if m2 else 1
    if d1 == 0 or d2 == 0:
        raise NotExact("degenerate completion")

    signs = [s.sign for s in seq.spaces()]
    # Convention: sign(V1) * sign(V2) = d1 * d2 * sign(W1) * sign(W2).
    prod_known = d1 * d2
    for i, s in enumerate(signs):
        if i != uidx:
            prod_known *= s
    solved = prod_known  # each sign is +-1, so the unknown equals the product
    space = seq.spaces()[uidx]
    return OrientedSpace(space.labels, solved)


def koszul_reorder_sign(block_dims, permutation) -> int:
    """Sign for reordering graded blocks: (-1)^{sum over inverted pairs of d_a*d_b}.

    permutation[i] = original index of the block placed at slot i.
    """
    n = len(block_dims)
    if sorted(permutation) != list(range(n)):
        raise IndexOutOfRange("not a permutation of the blocks")
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            if permutation[i] > permutation[j]:
                total += block_dims[permutation[i]] * block_dims[permutation[j]]
    return -1 if total % 2 else 1


def conformal_reindex_sign(m: int, j: int) -> int:
    """Sign relating t_1^...t_j-hat...^t_{m-1} to the reference t_2^...^t_{m-1}."""
    if m < 3 or not (1 <= j <= m - 1):
        raise IndexOutOfRange(f"need m >= 3 and 1 <= j <= m-1, got m={m}, j={j}")
    return -1 if (j - 1) % 2 else 1


def _primitive(vec):
    from math import gcd
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def intersection_orientation(u_space: OrientedSpace, v_space: OrientedSpace,
                             ambient: OrientedSpace,
                             rng: random.Random | None = None) -> OrientedSpace:
    """Orientation of U cap V induced by 0 -> UcapV -> [U,V] -> R^n -> 0.

    Subspace basis labels must be integer coordinate tuples in the ambient
    basis; the maps are v |-> (v, v) and (u, w) |-> w - u.
    """
    n = ambient.dim
    u_vecs = [tuple(x) for x in u_space.labels]
    v_vecs = [tuple(x) for x in v_space.labels]
    if any(len(v) != n for v in u_vecs + v_vecs):
        raise ValueError("subspace vectors must live in the ambient space")
    if _rank(_transpose(tuple(u_vecs + v_vecs))) != n:
        raise NotTransverse("U + V does not span the ambient space")

    # ker [U | -V] gives the intersection: x = U a = V b.
    cols = [tuple(v) for v in u_vecs] + [tuple(-x for x in v) for v in v_vecs]
    mat = _transpose(tuple(cols)) if cols else ()
    kb = _kernel_basis(mat) if cols else []
    inter_vecs = []
    for coeff in kb:
        a = coeff[: len(u_vecs)]
        x = tuple(sum(a[i] * u_vecs[i][d] for i in range(len(u_vecs))) for d in range(n))
        inter_vecs.append(_primitive(x))

    dim_i = len(u_vecs) + len(v_vecs) - n
    if len(inter_vecs) != dim_i:
        raise NotTransverse("intersection dimension mismatch")

    # alpha columns: intersection vector expressed as (coords in U, coords in V).
    alpha_cols = []
    for coeff in kb:
        a = list(coeff[: len(u_vecs)])
        b = list(coeff[len(u_vecs):])
        alpha_cols.append(tuple(a + b))
    alpha = _transpose(tuple(alpha_cols)) if alpha_cols else tuple(
        () for _ in range(len(u_vecs) + len(v_vecs)))
    if not alpha_cols:
        alpha = tuple(() for _ in range(len(u_vecs) + len(v_vecs)))

    # beta: (u, w) |-> w - u in ambient coordinates.
    beta_cols = [tuple(-x for x in v) for v in u_vecs] + [tuple(v) for v in v_vecs]
    beta = _transpose(tuple(beta_cols))

    w1_labels = tuple(("U", i) for i in range(len(u_vecs))) + tuple(
        ("V", i) for i in range(len(v_vecs)))
    seq = ExactSequence4(
        v1=OrientedSpace(tuple(inter_vecs), None),
        w1=OrientedSpace(w1_labels, u_space.sign * v_space.sign),
        w2=OrientedSpace(tuple(range(n)), ambient.sign),
        v2=ZERO_SPACE,
        alpha=alpha,
        beta=beta,
        gamma=tuple(),
    )
    return induced_orientation(seq, rng=rng)
