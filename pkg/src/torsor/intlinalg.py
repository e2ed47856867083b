"""Exact integer and rational linear algebra helpers.

Everything here is exact: integer matrices use Python ints (arbitrary
precision), rational work uses fractions.Fraction.  Matrices are lists of
lists, row-major.  Sizes are desk scale, so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(independent_rows(rows))


def independent_rows(rows: Sequence[Sequence[int]]) -> list:
    """Indices of a maximal linearly independent subset of rows (greedy)."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    kept: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for r, p in zip(reduced, pivots):
            if v[p]:
                f = v[p] / r[p]
                for j in range(ncols):
                    v[j] -= f * r[j]
        pivot = next((j for j in range(ncols) if v[j]), None)
        if pivot is not None:
            reduced.append(v)
            pivots.append(pivot)
            kept.append(idx)
    return kept


def solve_exact(a_rows: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list]:
    """Solve A x = b exactly over the rationals.

    Returns the unique solution as Fractions if the columns of A are
    independent and the system is consistent, otherwise None.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(a_rows[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(row, m) if aug[i][col]), None)
        if piv is None:
            return None  # dependent columns: solution not unique even if consistent
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if row < n:
        return None
    for i in range(row, m):
        if aug[i][n]:
            return None  # inconsistent
    return [aug[i][n] for i in range(n)]


def in_row_space(a_rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether v lies in the rational row space of A."""
    base = rank(a_rows)
    return rank(list(a_rows) + [list(v)]) == base


def matmul_vec(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in rows]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _addmul_col(m, dst, src, k):
    for row in m:
        row[dst] += k * row[src]


def _scale_col(m, i, k):
    for row in m:
        row[i] *= k


def smith_normal_form(rows: Sequence[Sequence[int]], n: int):
    """Smith normal form of the lattice spanned by the given rows of Z^n.

    Returns (diag, V, Vinv) where diag is the length-n list of diagonal
    entries (d_1 | d_2 | ... , trailing zeros if the lattice has deficient
    rank) and V, Vinv are unimodular n x n integer matrices such that
    z -> z @ V maps the lattice onto the diagonal lattice span{d_i e_i}.
    """
    a = [list(map(int, r)) for r in rows]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        if i == j:
            return
        _swap_cols(a, i, j)
        _swap_cols(V, i, j)
        # inverse of a column swap is the same swap on the other side
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def addmul_col(dst, src, k):
        if k == 0:
            return
        _addmul_col(a, dst, src, k)
        _addmul_col(V, dst, src, k)
        # (col_dst += k col_src) inverts to (row_src -= k row_dst)
        Vinv[src] = [x - k * y for x, y in zip(Vinv[src], Vinv[dst])]

    def negate_col(i):
        _scale_col(a, i, -1)
        _scale_col(V, i, -1)
        Vinv[i] = [-x for x in Vinv[i]]

    nrows = len(a)
    t = 0
    while t < min(nrows, n):
        # pick the nonzero entry of smallest magnitude in the working block
        best = None
        for i in range(t, nrows):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        swap_cols(t, bj)
        # clear the pivot row and column
        dirty = False
        for i in range(t + 1, nrows):
            q = a[i][t] // a[t][t]
            if q:
                for j in range(t, n):
                    a[i][j] -= q * a[t][j]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, n):
            q = a[t][j] // a[t][t]
            addmul_col(j, t, -q)
            if a[t][j]:
                dirty = True
        if dirty:
            continue  # remainders left, redo with a smaller pivot
        if a[t][t] < 0:
            negate_col(t)
        t += 1

    diag = [a[i][i] if i < min(nrows, n) else 0 for i in range(n)]
    # enforce the divisibility chain d_i | d_{i+1} (zeros sink to the end)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            di, dj = diag[i], diag[i + 1]
            if di == 0 and dj != 0:
                _swap_diag(diag, V, Vinv, i)
                changed = True
            elif di and dj and dj % di:
                diag[i], diag[i + 1] = _snf_pair(V, Vinv, i, di, dj)
                changed = True
    return diag, V, Vinv


def _snf_pair(V, Vinv, i, di, dj):
    """Rewrite the diagonal block (di, dj) as (gcd, lcm), updating V, Vinv.

    Right-multiplies by the unimodular T = [[x, -dj/g], [y, di/g]] where
    x*di + y*dj = g; this maps span{di e_i, dj e_j} onto span{g e_i, l e_j}.
    """
    from math import gcd

    g = gcd(di, dj)
    x, y = _bezout(di, dj)
    l = di * dj // g
    T = ((x, -dj // g), (y, di // g))
    Ti = ((di // g, dj // g), (-y, x))  # T^{-1}, det(T) = 1
    j = i + 1
    for row in V:
        ci, cj = row[i], row[j]
        row[i] = ci * T[0][0] + cj * T[1][0]
        row[j] = ci * T[0][1] + cj * T[1][1]
    ri = Vinv[i][:]
    rj = Vinv[j][:]
    Vinv[i] = [Ti[0][0] * a + Ti[0][1] * b for a, b in zip(ri, rj)]
    Vinv[j] = [Ti[1][0] * a + Ti[1][1] * b for a, b in zip(ri, rj)]
    return g, l


def _swap_diag(diag, V, Vinv, i):
    j = i + 1
    diag[i], diag[j] = diag[j], diag[i]
    _swap_cols(V, i, j)
    Vinv[i], Vinv[j] = Vinv[j], Vinv[i]


def _bezout(a: int, b: int):
    """x, y with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


# Fourier-Motzkin elimination for exact feasibility of linear inequalities.

def fm_feasible_point(constraints: Sequence, nvars: int) -> Optional[list]:
    """Find x in Q^nvars with coeffs . x >= rhs for every (coeffs, rhs).

    Returns a list of Fractions, or None if the system is infeasible.
    Plain Fourier-Motzkin with duplicate pruning; fine for desk sizes.
    """
    system = []
    for coeffs, rhs in constraints:
        system.append(([Fraction(c) for c in coeffs], Fraction(rhs)))

    stack = []  # per eliminated variable: (lowers, uppers) in terms of later vars
    for var in range(nvars):
        # variables are eliminated front to back, so the current variable is
        # always coefficient 0 of the shrunken rows
        lowers = []  # x_var >= expr
        uppers = []  # x_var <= expr
        rest = []
        for coeffs, rhs in system:
            c = coeffs[0]
            tail = coeffs[1:]
            if c == 0:
                rest.append((tail, rhs))
            elif c > 0:
                # x >= (rhs - tail.x)/c
                lowers.append(([-t / c for t in tail], rhs / c))
            else:
                # x <= (rhs - tail.x)/c with c<0 flips to upper bound
                uppers.append(([-t / c for t in tail], rhs / c))
        stack.append((lowers, uppers))
        new_system = list(rest)
        for lo_c, lo_r in lowers:
            for up_c, up_r in uppers:
                # lo_r + lo_c.x <= up_r + up_c.x
                coeffs = [u - l for l, u in zip(lo_c, up_c)]
                new_system.append((coeffs, lo_r - up_r))
        # prune duplicates; keep the strongest rhs per normalized direction
        seen = {}
        pruned = []
        for coeffs, rhs in new_system:
            key = tuple(coeffs)
            if key in seen:
                idx = seen[key]
                if rhs > pruned[idx][1]:
                    pruned[idx] = (list(key), rhs)
            else:
                seen[key] = len(pruned)
                pruned.append((list(key), rhs))
        system = pruned

    for coeffs, rhs in system:
        if rhs > 0:
            return None

    # back-substitute a feasible point
    point: list[Fraction] = []
    for var in range(nvars - 1, -1, -1):
        lowers, uppers = stack[var]
        lo = None
        up = None
        for c, r in lowers:
            val = r + sum(ci * xi for ci, xi in zip(c, point))
            lo = val if lo is None or val > lo else lo
        for c, r in uppers:
            val = r + sum(ci * xi for ci, xi in zip(c, point))
            up = val if up is None or val < up else up
        if lo is None and up is None:
            x = Fraction(0)
        elif lo is None:
            x = up
        elif up is None:
            x = lo
        else:
            x = (lo + up) / 2
        point.insert(0, x)
    return point


def clear_denominators(vec: Iterable[Fraction]) -> list:
    """Scale a rational vector to the primitive integer vector, same direction."""
    vec = [Fraction(v) for v in vec]
    from math import gcd, lcm

    denom = 1
    for v in vec:
        denom = lcm(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints
