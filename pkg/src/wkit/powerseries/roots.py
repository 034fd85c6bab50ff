"""Newton-type solvers in the truncated series ring: k-th roots and implicit functions."""

from ..errors import (
    BadBranch,
    NoConstantRoot,
    NonInfinitesimalArgument,
    SingularJacobian,
    WrongArity,
)
from .series import FormalSeries, divide_by_unit
from .weierstrass import substitute


def _relabel(f, order):
    return FormalSeries._raw(
        f.nvars, order, {a: c for a, c in f.terms.items() if sum(a) <= order}, f.field, False
    )


def hensel_root_series(f, k, root=None):
    """g with g**k == f modulo degree order and g(0) == root.

    ``root`` defaults to the field's preferred k-th root of f(0).  Newton's
    step g <- g - (g**k - f)/(k g**(k-1)) doubles the X-adic precision.
    """
    if k < 1:
        raise ValueError("k must be positive")
    field = f.field
    c0 = f.constant_term()
    if field.is_zero(c0):
        raise NoConstantRoot("f(0) = 0 has no unit k-th root")
    if root is None:
        root = field.kth_root(c0, k)
        if root is None:
            raise NoConstantRoot(f"f(0) = {field.format(c0)} is not a {k}-th power in {field.name}")
    else:
        root = field.coerce(root)
        if not field.is_zero(root ** k - c0):
            raise BadBranch(f"{field.format(root)}^{k} != f(0)")
    g = FormalSeries.constant(root, f.nvars, 0, field)
    if k == 1:
        return f
    prec = 0
    while prec < f.order:
        prec = min(2 * prec + 1, f.order)
        g = _relabel(g, prec)
        fk = _relabel(f, prec)
        gk1 = g ** (k - 1)
        g = g - divide_by_unit(gk1 * g - fk, gk1.scale(k))
    return _relabel(g, f.order)


def _solve_linear(matrix, field):
    """Inverse of a square matrix over the coefficient field (Gauss-Jordan)."""
    n = len(matrix)
    rows = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not field.is_zero(rows[r][col])), None)
        if pivot is None:
            raise SingularJacobian("Jacobian in Y at the origin is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = field.one / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not field.is_zero(rows[r][col]):
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [row[n:] for row in rows]


def implicit_solve(fs):
    """Solve f_i(X, y(X)) = 0 for y with y(0) = 0.

    The f_i live in m + n variables, the last n of which are the unknowns Y.
    Each chord step y <- y - J0^{-1} f(X, y) with the constant Jacobian J0
    fixes at least one more degree.
    """
    fs = list(fs)
    n = len(fs)
    if n == 0:
        raise WrongArity("need at least one equation")
    total = fs[0].nvars
    if any(f.nvars != total for f in fs) or n > total:
        raise WrongArity(f"{n} equations cannot be solved for {n} unknowns among {total} variables")
    m = total - n
    field = fs[0].field
    order = min(f.order for f in fs)
    for f in fs:
        if not field.is_zero(f.constant_term()):
            raise NonInfinitesimalArgument("equations must vanish at the origin")

    def unit_vec(i):
        a = [0] * total
        a[i] = 1
        return tuple(a)

    jac = [[f.coefficient(unit_vec(m + j)) for j in range(n)] for f in fs]
    jinv = _solve_linear(jac, field)
    if m == 0:
        return [FormalSeries.zero(0, order, field) for _ in range(n)]
    xs = [FormalSeries.variable(i, m, order, field) for i in range(1, m + 1)]
    ys = [FormalSeries.zero(m, order, field) for _ in range(n)]
    for _ in range(order + 1):
        vals = [substitute(f, xs + ys) for f in fs]
        if all(v.is_zero() for v in vals):
            break
        ys = [
            ys[i] - sum((vals[j].scale(jinv[i][j]) for j in range(n)), FormalSeries.zero(m, order, field))
            for i in range(n)
        ]
    return [y._like(y.terms, exact=False) for y in ys]
