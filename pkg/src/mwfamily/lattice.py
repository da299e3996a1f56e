"""Small exact integer-lattice helpers (column echelon form, kernels)."""

from fractions import Fraction

__all__ = ["column_echelon", "integer_kernel", "lattice_basis", "solve_rational"]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_echelon(A, ncols):
    """Unimodular column reduction: returns (AU, U, rank) with AU in echelon form."""
    A = [list(row) for row in A]
    m = len(A)
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for M in (A, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    pc = 0
    for i in range(m):
        if pc >= ncols:
            break
        for k in range(pc + 1, ncols):
            x, y = A[i][pc], A[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(pc, k, s, t, -y // g, x // g)
        if A[i][pc] != 0:
            if A[i][pc] < 0:
                _negate_col(A, U, pc)
            pc += 1
    return A, U, pc


def _negate_col(A, U, j):
    for M in (A, U):
        for row in M:
            row[j] = -row[j]


def integer_kernel(A, ncols):
    """Z-basis of {v in Z^ncols : A v = 0}."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, U, rank = column_echelon(A, ncols)
    return [[U[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def lattice_basis(vectors, dim):
    """Z-basis of the lattice spanned by integer vectors in Z^dim."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    A = [[v[i] for v in vectors] for i in range(dim)]
    AU, _, rank = column_echelon(A, len(vectors))
    basis = [[AU[i][j] for i in range(dim)] for j in range(rank)]
    # Hermite reduction: entries above each pivot reduced into [0, pivot)
    for j, v in enumerate(basis):
        p = next(i for i, x in enumerate(v) if x)
        for k in range(j):
            q = basis[k][p] // v[p]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], v)]
    return basis


def solve_rational(M, b):
    """Solve M x = b over Q for square invertible M."""
    n = len(M)
    a = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(M, b)]
    for i in range(n):
        piv = next(r for r in range(i, n) if a[r][i] != 0)
        a[i], a[piv] = a[piv], a[i]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i] / a[i][i]
                for c in range(i, n + 1):
                    a[r][c] -= f * a[i][c]
    return [a[i][n] / a[i][i] for i in range(n)]
