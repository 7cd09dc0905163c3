"""Exact integer and rational linear algebra kernels.

Everything here runs over Python ints and Fractions: Smith/Hermite normal
forms for lattice questions, a phase-I simplex over exact rationals, and a
complete branch-and-bound for nonnegative integer feasibility.  The
branch-and-bound is made terminating by the Borosh-Treybig bound: if
``A x = b`` has a solution in nonnegative integers it has one whose entries
are at most ``(ncols+1) * D`` where ``D`` bounds the subdeterminants of the
augmented matrix (we use a Hadamard-style product of column norms).
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_basis(rows: list[list[int]]) -> list[list[int]]:
    """Row-echelon basis (Hermite-style) of the lattice spanned by ``rows``."""
    if not rows:
        return []
    k = len(rows[0])
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    pivot_row = 0
    for col in range(k):
        idx = None
        for i in range(pivot_row, len(work)):
            if work[i][col]:
                idx = i
                break
        if idx is None:
            continue
        work[pivot_row], work[idx] = work[idx], work[pivot_row]
        for i in range(pivot_row + 1, len(work)):
            while work[i][col]:
                g, s, t = xgcd(work[pivot_row][col], work[i][col])
                a, b = work[pivot_row][col], work[i][col]
                new_top = [s * x + t * y for x, y in zip(work[pivot_row], work[i])]
                new_bot = [
                    -(b // g) * x + (a // g) * y
                    for x, y in zip(work[pivot_row], work[i])
                ]
                work[pivot_row], work[i] = new_top, new_bot
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-x for x in work[pivot_row]]
        pivot_row += 1
    basis = [r for r in work[:pivot_row] if any(r)]
    return basis


def smith_normal_form(
    rows: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (S, U, V) with U*A*V = S diagonal, diagonal divisibility chain."""
    m = len(rows)
    k = len(rows[0]) if m else 0
    A = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def row_op(i: int, j: int, a: int, b: int, c: int, d: int):
        # rows i,j <- (a*ri + b*rj, c*ri + d*rj); ad - bc = +-1
        A[i], A[j] = (
            [a * x + b * y for x, y in zip(A[i], A[j])],
            [c * x + d * y for x, y in zip(A[i], A[j])],
        )
        U[i], U[j] = (
            [a * x + b * y for x, y in zip(U[i], U[j])],
            [c * x + d * y for x, y in zip(U[i], U[j])],
        )

    def col_op(i: int, j: int, a: int, b: int, c: int, d: int):
        for row in A:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]
        for row in V:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]

    t = 0
    while t < min(m, k):
        # find a pivot
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_op(t, pi, 0, 1, 1, 0)
        if pj != t:
            col_op(t, pj, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    if b % a == 0:
                        row_op(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, u = xgcd(a, b)
                        row_op(t, i, s, u, -(b // g), a // g)
            for j in range(t + 1, k):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    if b % a == 0:
                        col_op(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, u = xgcd(a, b)
                        col_op(t, j, s, u, -(b // g), a // g)
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            if any(A[t][j] for j in range(t + 1, k)):
                continue
            # divisibility: A[t][t] must divide every remaining entry
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, k):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def integer_solve(rows: list[list[int]], b: list[int]) -> list[int] | None:
    """One integer solution x of A x = b, or None if none exists."""
    m = len(rows)
    if m == 0:
        return []
    k = len(rows[0])
    S, U, V = smith_normal_form(rows)
    c = [sum(U[i][j] * b[j] for j in range(m)) for i in range(m)]
    y = [0] * k
    for i in range(m):
        d = S[i][i] if i < k else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return [sum(V[i][j] * y[j] for j in range(k)) for i in range(k)]


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0}."""
    m = len(rows)
    if m == 0:
        return []
    k = len(rows[0])
    S, _U, V = smith_normal_form(rows)
    basis = []
    for j in range(k):
        d = S[j][j] if j < m else 0
        if d == 0:
            basis.append([V[i][j] for i in range(k)])
    return basis


def invert_unimodular(M: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    k = len(M)
    aug = [[Fraction(M[i][j]) for j in range(k)] + [Fraction(int(i == j)) for j in range(k)]
           for i in range(k)]
    for col in range(k):
        piv = next(i for i in range(col, k) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    inv = []
    for i in range(k):
        row = []
        for j in range(k):
            v = aug[i][k + j]
            if v.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(v))
        inv.append(row)
    return inv


def rational_solve(rows, b) -> tuple[str, list[Fraction] | None]:
    """Solve A x = b over Q.

    Returns ("inconsistent", None), ("unique", x), or ("underdetermined", x0)
    where x0 is one particular solution.
    """
    m = len(rows)
    k = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(b[i])] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(k):
        piv = None
        for i in range(r, m):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][col]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][k] != 0:
            return "inconsistent", None
    x = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        x[col] = aug[i][k]
    if len(pivots) == k:
        return "unique", x
    return "underdetermined", x


def lp_feasible(
    rows: list[list[Fraction]],
    b: list[Fraction],
    upper: list[Fraction | None],
) -> tuple[bool, list[Fraction] | None]:
    """Exact phase-I simplex for {A x = b, 0 <= x, x_i <= upper_i}.

    Returns (feasible, x) with x a basic feasible point when feasible.
    Bland's rule guarantees termination.
    """
    n = len(upper)
    eq_rows = [list(r) for r in rows]
    eq_b = list(b)
    for i in range(len(eq_rows)):
        if eq_b[i] < 0:
            eq_rows[i] = [-x for x in eq_rows[i]]
            eq_b[i] = -eq_b[i]
    bound_idx = [i for i in range(n) if upper[i] is not None]
    m_eq = len(eq_rows)
    m_bd = len(bound_idx)
    m = m_eq + m_bd
    nslack = m_bd
    nart = m_eq
    width = n + nslack + nart
    T = [[Fraction(0)] * (width + 1) for _ in range(m)]
    basis = [0] * m
    for i in range(m_eq):
        for j in range(n):
            T[i][j] = eq_rows[i][j]
        T[i][n + nslack + i] = Fraction(1)
        T[i][width] = eq_b[i]
        basis[i] = n + nslack + i
    for r, i in enumerate(bound_idx):
        row = m_eq + r
        T[row][i] = Fraction(1)
        T[row][n + r] = Fraction(1)
        T[row][width] = Fraction(upper[i])
        basis[row] = n + r
    # objective: minimize sum of artificials -> reduced row = sum of eq rows
    z = [Fraction(0)] * (width + 1)
    for i in range(m_eq):
        for j in range(width + 1):
            z[j] += T[i][j]
    for j in range(n + nslack, width):
        z[j] = Fraction(0)

    while True:
        enter = None
        for j in range(n + nslack):  # artificials never re-enter
            if z[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded in phase I cannot happen (objective bounded below by 0)
            raise RuntimeError("phase-I simplex reported unbounded")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, T[leave])]
        basis[leave] = enter

    if z[width] != 0:
        return False, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][width]
    return True, x


def _borosh_treybig_cap(rows: list[list[int]], b: list[int]) -> int:
    """Box bound for nonnegative integer solutions of A x = b."""
    n = len(rows[0]) if rows else 0
    cap = 1
    cols = [[r[j] for r in rows] for j in range(n)] + [list(b)]
    for col in cols:
        s = sum(abs(x) for x in col)
        if s > 1:
            cap *= s
    return (n + 1) * cap


def nonneg_integer_solve(rows: list[list[int]], b: list[int]) -> list[int] | None:
    """Complete decision for {x in Z^n : A x = b, x >= 0}; returns a witness."""
    n = len(rows[0]) if rows else 0
    if n == 0:
        return [] if all(v == 0 for v in b) else None
    if all(v == 0 for v in b):
        return [0] * n
    if integer_solve(rows, b) is None:
        return None
    status, x = rational_solve(rows, b)
    if status == "inconsistent":
        return None
    if status == "unique":
        assert x is not None
        if all(v.denominator == 1 and v >= 0 for v in x):
            return [int(v) for v in x]
        return None

    cap = _borosh_treybig_cap(rows, b)
    frac_rows = [[Fraction(v) for v in r] for r in rows]

    def node_feasible(lo: list[int], hi: list[int | None]):
        shifted_b = [
            Fraction(b[i]) - sum(Fraction(rows[i][j]) * lo[j] for j in range(n))
            for i in range(len(rows))
        ]
        upper = [
            None if hi[j] is None else Fraction(hi[j] - lo[j]) for j in range(n)
        ]
        ok, y = lp_feasible(frac_rows, shifted_b, upper)
        if not ok:
            return None
        assert y is not None
        return [lo[j] + y[j] for j in range(n)]

    stack: list[tuple[list[int], list[int | None]]] = [([0] * n, [None] * n)]
    while stack:
        lo, hi = stack.pop()
        if any(hi[j] is not None and lo[j] > hi[j] for j in range(n)):
            continue
        x = node_feasible(lo, hi)
        if x is None:
            continue
        frac_j = None
        for j in range(n):
            if x[j].denominator != 1:
                frac_j = j
                break
        if frac_j is None:
            return [int(v) for v in x]
        f = x[frac_j]
        lo_up = list(lo)
        lo_up[frac_j] = max(lo[frac_j], int(f) + 1)
        hi_up = list(hi)
        if hi_up[frac_j] is None:
            hi_up[frac_j] = cap
        hi_dn = list(hi)
        hi_dn[frac_j] = int(f)
        if f > 0:
            stack.append((lo_up, hi_up))
            stack.append((list(lo), hi_dn))
        else:
            stack.append((list(lo), hi_dn))
            stack.append((lo_up, hi_up))
    return None
