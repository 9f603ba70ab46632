"""Independent rank oracle: Gaussian elimination over the fraction field.

Entries are (numerator, denominator) polynomial pairs handled with plain
fraction arithmetic.  Deliberately shares nothing with the module engine so
the two rank computations are genuinely separate routes.
"""

from taucover.polys import Poly

Frac = tuple[Poly, Poly]


def frac_of_ring_elem(x) -> Frac:
    den = Poly.one(x.ring.field)
    for pi, mult in zip(x.ring.inverted, x.dens):
        den = den * pi**mult
    return (x.num, den)


def _cancel(fr: Frac) -> Frac:
    num, den = fr
    if num.is_zero():
        return (num, Poly.one(den.field))
    g = num.gcd(den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc_inv = den.lc().inv()
    return (num.scale(lc_inv), den.scale(lc_inv))


def _sub(a: Frac, b: Frac) -> Frac:
    return _cancel((a[0] * b[1] - b[0] * a[1], a[1] * b[1]))


def _mul(a: Frac, b: Frac) -> Frac:
    return _cancel((a[0] * b[0], a[1] * b[1]))


def _div(a: Frac, b: Frac) -> Frac:
    return _cancel((a[0] * b[1], a[1] * b[0]))


def fraction_field_rank(rows: list[list[Frac]]) -> int:
    """Row-echelon rank of a matrix of polynomial fractions."""
    rows = [[_cancel(x) for x in row] for row in rows]
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    pivot_col = 0
    while rank < nrows and pivot_col < ncols:
        pivot_row = None
        for i in range(rank, nrows):
            if not rows[i][pivot_col][0].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][pivot_col]
        for i in range(rank + 1, nrows):
            entry = rows[i][pivot_col]
            if entry[0].is_zero():
                continue
            factor = _div(entry, pivot)
            rows[i] = [
                _sub(x, _mul(factor, p)) for x, p in zip(rows[i], rows[rank])
            ]
        rank += 1
        pivot_col += 1
    return rank
