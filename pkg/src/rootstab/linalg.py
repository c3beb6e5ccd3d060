"""Small exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Nothing here touches floating
point; sizes are tiny (a few dozen at most) so plain Python loops are fine.
"""

from fractions import Fraction


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def bilinear(gram, u, v):
    return dot(u, matvec(gram, v))


def is_symmetric(a):
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def congruence_diagonalize(a):
    """Symmetric Gaussian reduction.

    Returns ``(diag, p)`` with ``p^T a p = diag(diag)`` and ``p`` invertible.
    A zero pivot with a nonzero off-diagonal entry is repaired by the
    congruence move ``e_i <- e_i + e_j`` (which makes the pivot ``2 a_ij``).
    """
    n = len(a)
    m = [row[:] for row in frac_matrix(a)]
    p = identity(n)

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    def add_to(i, j, c):
        # basis change e_i <- e_i + c*e_j
        for k in range(n):
            m[i][k] += c * m[j][k]
        for k in range(n):
            m[k][i] += c * m[k][j]
        for row in p:
            row[i] += c * row[j]

    diag = []
    for i in range(n):
        if m[i][i] == 0:
            j = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if m[i][j] != 0), None)
                if j is not None:
                    add_to(i, j, Fraction(1))
        piv = m[i][i]
        if piv != 0:
            for j in range(i + 1, n):
                if m[j][i] != 0:
                    add_to(j, i, -m[j][i] / piv)
        diag.append(piv)
    return diag, p


def inertia(a):
    """Exact (positive, negative, zero) counts of a symmetric matrix."""
    diag, _ = congruence_diagonalize(a)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg


def rref(a):
    m = [row[:] for row in frac_matrix(a)]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a, ncols=None):
    """Exact basis of ``{x : a x = 0}`` as a list of vectors."""
    if not a:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    cols = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def det(a):
    m = [row[:] for row in frac_matrix(a)]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def solve(a, b):
    """Unique solution of ``a x = b`` for square invertible ``a``."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(frac_matrix(a), frac_matrix([b])[0])]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [m[i][n] for i in range(n)]
