"""Dense exact linear algebra on lists of rows.

Over GF(p) this is ordinary Gauss-Jordan on machine residues.  Over Q rows
are scaled to integers and reduced fraction-free: a row update is
``pivot*row - a*pivot_row`` followed by division by the row content, so
entries stay small and no rational arithmetic happens until the final
normalisation of pivots.
"""

from fractions import Fraction
from math import gcd

from .errors import ShapeMismatch


def zeros(m, n, field):
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(n, field):
    out = zeros(n, n, field)
    for i in range(n):
        out[i][i] = field.one
    return out


def matmul(a, b, inner, ncols, field):
    """Product of an m x inner and an inner x ncols matrix."""
    if any(len(r) != inner for r in a) or len(b) != inner:
        raise ShapeMismatch("inner dimensions differ")
    z = field.zero
    out = []
    for row in a:
        acc = [z] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a, v, field):
    z = field.zero
    out = []
    for row in a:
        s = z
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def transpose(a, nrows, ncols):
    return [[a[i][j] for i in range(nrows)] for j in range(ncols)]


def _rref_mod(rows, ncols, p):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [(x * inv) % p for x in rows[r]]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r:
                a = rows[i][c]
                if a:
                    ri = rows[i]
                    rows[i] = [(x - a * y) % p for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _content_reduce(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _rref_fraction_free(rows, ncols):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        best = None
        for i in range(r, len(rows)):
            x = rows[i][c]
            if x and (best is None or abs(x) < best):
                piv, best = i, abs(x)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        pv = pr[c]
        for i in range(len(rows)):
            if i != r:
                a = rows[i][c]
                if a:
                    g = gcd(a, pv)
                    s, t = pv // g, a // g
                    rows[i] = _content_reduce([s * x - t * y for x, y in zip(rows[i], pr)])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for i, c in enumerate(pivots):
        pv = rows[i][c]
        out.append([Fraction(x, pv) for x in rows[i]])
    return out, pivots


def _to_int_row(row):
    den = 1
    for x in row:
        d = x.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    return _content_reduce([x.numerator * (den // x.denominator) for x in row])


def rref(rows, ncols, field):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows, each
    with a 1 in its pivot column.
    """
    for row in rows:
        if len(row) != ncols:
            raise ShapeMismatch(f"row of length {len(row)}, expected {ncols}")
    rows = [row for row in rows if any(row)]
    if not rows or ncols == 0:
        return [], []
    if field.is_prime_field:
        from .scalars import Mod
        p = field.p
        red, piv = _rref_mod([[int(x) for x in row] for row in rows], ncols, p)
        return [[Mod(x, p) for x in row] for row in red], piv
    return _rref_fraction_free([_to_int_row(row) for row in rows], ncols)


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[1])


def nullspace(rows, ncols, field):
    """Basis of ``{x : A x = 0}``, one vector per free column, in column order.

    The vector for free column ``j`` has a 1 at ``j`` and zeros at every
    other free column, so coordinates of a kernel element in this basis are
    just its entries at the free columns.
    """
    red, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [field.zero] * ncols
        v[j] = field.one
        for i, c in enumerate(pivots):
            x = red[i][j]
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def free_columns(rows, ncols, field):
    pivots = set(rref(rows, ncols, field)[1])
    return [j for j in range(ncols) if j not in pivots]


def solve(rows, ncols, b, field):
    """Some ``x`` with ``A x = b``, or None when ``b`` is outside the image."""
    if len(b) != len(rows):
        raise ShapeMismatch("right-hand side length differs from row count")
    aug = [list(r) + [y] for r, y in zip(rows, b)]
    red, pivots = rref(aug, ncols + 1, field)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def column_space(cols, nrows, field):
    """Independent subset-free basis of the span of ``cols`` (vectors of length nrows).

    Returns the reduced spanning vectors (rows of the RREF of the stacked
    vectors), which are independent.
    """
    red, _ = rref([list(c) for c in cols], nrows, field)
    return red


def is_invertible(a, n, field):
    return rank(a, n, field) == n


def inverse(a, n, field):
    aug = [list(a[i]) + [field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]
