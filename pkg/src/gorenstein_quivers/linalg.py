"""Exact linear algebra over the rationals.

Thin helpers around sympy's sparse ``DomainMatrix`` over ``QQ`` (gmpy2 backed).
Vectors are column matrices; subspaces are given by matrices whose columns form
a basis. Every helper accepts zero-sized shapes.
"""
from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import sdm_irref, sdm_nullspace_from_rref

__all__ = [
    "QQ",
    "DomainMatrix",
    "qq",
    "zeros",
    "eye",
    "from_rows",
    "from_dict",
    "to_rows",
    "kernel",
    "rank",
    "column_space",
    "complement",
    "solve",
    "is_invertible",
    "hstack",
    "vstack",
    "column",
    "is_zero",
]


def qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def zeros(rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix({}, (rows, cols), QQ)


def eye(n: int) -> DomainMatrix:
    return DomainMatrix({i: {i: QQ(1)} for i in range(n)}, (n, n), QQ)


def from_dict(entries: dict, rows: int, cols: int) -> DomainMatrix:
    """Build from ``{(i, j): value}``; zero values are dropped."""
    data: dict[int, dict[int, object]] = {}
    for (i, j), v in entries.items():
        v = qq(v)
        if v:
            data.setdefault(i, {})[j] = v
    return DomainMatrix(data, (rows, cols), QQ)


def from_rows(rows: list, ncols: int | None = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return from_dict(
        {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v},
        nrows,
        ncols,
    )


def to_rows(a: DomainMatrix) -> list[list[Fraction]]:
    r, c = a.shape
    out = [[Fraction(0)] * c for _ in range(r)]
    for i, row in a.to_sparse().rep.items():
        for j, v in row.items():
            out[i][j] = Fraction(int(v.numerator), int(v.denominator))
    return out


def column(values) -> DomainMatrix:
    return from_dict({(i, 0): v for i, v in enumerate(values) if v}, len(values), 1)


def is_zero(a: DomainMatrix) -> bool:
    return not a.to_sparse().rep


def hstack(mats: list[DomainMatrix], rows: int) -> DomainMatrix:
    """Concatenate columns; ``rows`` fixes the shape when ``mats`` is empty."""
    data: dict[int, dict[int, object]] = {}
    off = 0
    for m in mats:
        assert m.shape[0] == rows, (m.shape, rows)
        for i, row in m.to_sparse().rep.items():
            tgt = data.setdefault(i, {})
            for j, v in row.items():
                tgt[j + off] = v
        off += m.shape[1]
    return DomainMatrix(data, (rows, off), QQ)


def vstack(mats: list[DomainMatrix], cols: int) -> DomainMatrix:
    data: dict[int, dict[int, object]] = {}
    off = 0
    for m in mats:
        assert m.shape[1] == cols, (m.shape, cols)
        for i, row in m.to_sparse().rep.items():
            data[i + off] = dict(row)
        off += m.shape[0]
    return DomainMatrix(data, (off, cols), QQ)


def block_diag(mats: list[DomainMatrix]) -> DomainMatrix:
    data: dict[int, dict[int, object]] = {}
    r0 = c0 = 0
    for m in mats:
        for i, row in m.to_sparse().rep.items():
            data[i + r0] = {j + c0: v for j, v in row.items()}
        r0 += m.shape[0]
        c0 += m.shape[1]
    return DomainMatrix(data, (r0, c0), QQ)


def _irref(a: DomainMatrix):
    # the plain sparse elimination; DomainMatrix.rref adds costly dispatch for tiny inputs
    return sdm_irref(a.to_sparse().rep)


def kernel(a: DomainMatrix) -> DomainMatrix:
    """Basis of the null space as the columns of an ``ncols x k`` matrix."""
    r, c = a.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0 or is_zero(a):
        return eye(c)
    rref, pivots, nonzero = _irref(a)
    vectors, _ = sdm_nullspace_from_rref(rref, QQ.one, c, pivots, nonzero)
    data: dict[int, dict[int, object]] = {}
    for j, vec in enumerate(vectors):
        for i, v in vec.items():
            data.setdefault(i, {})[j] = v
    return DomainMatrix(data, (c, len(vectors)), QQ)


def rank(a: DomainMatrix) -> int:
    r, c = a.shape
    if r == 0 or c == 0:
        return 0
    return len(_irref(a)[1])


def _pivots(a: DomainMatrix) -> tuple[int, ...]:
    r, c = a.shape
    if r == 0 or c == 0:
        return ()
    return tuple(_irref(a)[1])


def column_space(a: DomainMatrix) -> DomainMatrix:
    """A basis of the column space, chosen among the columns of ``a``."""
    piv = _pivots(a)
    return a.extract(list(range(a.shape[0])), list(piv)) if piv else zeros(a.shape[0], 0)


def complement(u: DomainMatrix) -> DomainMatrix:
    """Standard basis vectors completing the independent columns of ``u``."""
    n, k = u.shape
    piv = _pivots(hstack([u, eye(n)], n))
    extra = [p - k for p in piv if p >= k]
    return from_dict({(e, j): 1 for j, e in enumerate(extra)}, n, len(extra))


def solve(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Unique ``x`` with ``a x = b`` for ``a`` of full column rank.

    Raises ``ValueError`` when ``b`` is not in the column space of ``a``.
    """
    n, k = a.shape
    l = b.shape[1]
    if k == 0:
        if not is_zero(b):
            raise ValueError("right-hand side outside the column space")
        return zeros(0, l)
    # one elimination of [a | b]: the first k pivots must be 0..k-1, and none may fall in b
    rref, pivots, _ = _irref(hstack([a, b], n))
    if list(pivots[:k]) != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    if len(pivots) > k:
        raise ValueError("right-hand side outside the column space")
    data = {}
    for i in range(k):
        row = {j - k: v for j, v in rref.get(i, {}).items() if j >= k}
        if row:
            data[i] = row
    return DomainMatrix(data, (k, l), QQ)


def is_invertible(a: DomainMatrix) -> bool:
    r, c = a.shape
    if r != c:
        return False
    if r == 0:
        return True
    return a.to_dense().det() != 0
