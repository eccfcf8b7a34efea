"""Dense matrices over F_p and exact Gaussian elimination.

Entries are stored as reduced Python ints, row-major; individual entries are
handed out as :class:`FieldElement`. Square :class:`MatrixF` values model group
elements; ``rref``/``nullspace`` also accept rectangular row lists, which is
how the linear systems of the attacks are posed.
"""
from __future__ import annotations

from dataclasses import dataclass
from operator import mul
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ModulusMismatch, SingularMatrix
from .gfp import FieldElement, check_modulus, inv_mod

MAX_DIM = 64

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, slots=True)
class MatrixF:
    n: int
    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.p)
        if not 1 <= self.n <= MAX_DIM:
            raise DimensionMismatch(f"dimension {self.n} outside [1, {MAX_DIM}]")
        if len(self.entries) != self.n * self.n:
            raise DimensionMismatch(f"{len(self.entries)} entries for a {self.n}x{self.n} matrix")
        object.__setattr__(self, "entries", tuple(int(x) % self.p for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> MatrixF:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix rows must form a square")
        return cls(n, p, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixF:
        return cls(n, p, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, n: int, p: int) -> MatrixF:
        return cls(n, p, (0,) * (n * n))

    @classmethod
    def scalar(cls, value: int, n: int, p: int) -> MatrixF:
        return cls(n, p, tuple(value if i == j else 0 for i in range(n) for j in range(n)))

    def rows(self) -> Rows:
        n = self.n
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.entries[i * self.n + j], self.p)

    def _check_compatible(self, other: MatrixF):
        if self.p != other.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __matmul__(self, other: MatrixF) -> MatrixF:
        return mat_mul(self, other)

    def __add__(self, other: MatrixF) -> MatrixF:
        self._check_compatible(other)
        return MatrixF(self.n, self.p, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: MatrixF) -> MatrixF:
        self._check_compatible(other)
        return MatrixF(self.n, self.p, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, k) -> MatrixF:
        k = int(k)
        return MatrixF(self.n, self.p, tuple(k * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"MatrixF(p={self.p}, {self.to_lists()})"


def mat_mul(a: MatrixF, b: MatrixF) -> MatrixF:
    a._check_compatible(b)
    p = a.p
    cols = list(zip(*b.rows()))
    out = [sum(map(mul, row, col)) % p for row in a.rows() for col in cols]
    return MatrixF(a.n, p, tuple(out))


def linear_combination(coeffs: Iterable, mats: Sequence[MatrixF]) -> MatrixF:
    """sum(c_i * M_i); coefficients may be ints or FieldElements."""
    first = mats[0]
    acc = [0] * len(first.entries)
    for c, m in zip(coeffs, mats):
        c = int(c)
        if c:
            acc = [x + c * y for x, y in zip(acc, m.entries)]
    return MatrixF(first.n, first.p, tuple(acc))


# -- elimination ---------------------------------------------------------------

@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form of a (possibly rectangular) matrix.

    ``transform`` is the square matrix T, one row per input row, with
    T @ A == rref.
    """

    rref: Rows
    pivots: tuple[int, ...]
    transform: Rows
    p: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _as_rows(a, p) -> tuple[list[list[int]], int]:
    if isinstance(a, MatrixF):
        if p is not None and p != a.p:
            raise ModulusMismatch(f"F_{a.p} vs F_{p}")
        return [list(r) for r in a.rows()], a.p
    if p is None:
        raise TypeError("modulus p is required for raw row input")
    check_modulus(p)
    rows = [[int(x) % p for x in r] for r in a]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("ragged rows")
    return rows, p


def _eliminate(rows: list[list[int]], p: int, ncols: int) -> list[int]:
    """In-place Gauss-Jordan over the first ``ncols`` columns; returns pivots."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        src = next((i for i in range(r, nrows) if rows[i][col]), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        inv = inv_mod(rows[r][col], p)
        prow = rows[r] = [x * inv % p for x in rows[r]]
        for i in range(nrows):
            k = rows[i][col]
            if i != r and k:
                rows[i] = [(x - k * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
    return pivots


def rref(a, p: int | None = None) -> RrefResult:
    """Row-reduce ``a`` (a MatrixF, or a sequence of int rows together with ``p``)."""
    rows, p = _as_rows(a, p)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [r + [int(i == j) for j in range(nrows)] for i, r in enumerate(rows)]
    pivots = _eliminate(aug, p, ncols)
    return RrefResult(
        rref=tuple(tuple(r[:ncols]) for r in aug),
        pivots=tuple(pivots),
        transform=tuple(tuple(r[ncols:]) for r in aug),
        p=p,
    )


def rank(a, p: int | None = None) -> int:
    rows, p = _as_rows(a, p)
    return len(_eliminate(rows, p, len(rows[0]) if rows else 0))


def is_invertible(a: MatrixF) -> bool:
    return rank(a) == a.n


def nullspace(a, p: int | None = None) -> list[tuple[int, ...]]:
    """Basis of {v : a v = 0}; one vector per free column, free entry set to 1."""
    rows, p = _as_rows(a, p)
    ncols = len(rows[0]) if rows else 0
    pivots = _eliminate(rows, p, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free] % p
        basis.append(tuple(v))
    return basis


def mat_inv(a: MatrixF) -> MatrixF:
    n, p = a.n, a.p
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a.rows())]
    pivots = _eliminate(aug, p, n)
    if len(pivots) != n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    return MatrixF(n, p, tuple(x for r in aug for x in r[n:]))


def mat_pow_signed(a: MatrixF, e: int) -> MatrixF:
    if e < 0:
        a = mat_inv(a)
        e = -e
    result = MatrixF.identity(a.n, a.p)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


class Echelon:
    """Incrementally maintained reduced echelon basis of a row space.

    Every stored row is fully reduced (zero in all other pivot columns), so
    membership and coordinates of a vector are read off its pivot entries in
    one pass. ``coords`` tracks each stored row as a combination of the
    vectors admitted so far, in admission order.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        self.coords: list[list[int]] = []

    def __len__(self):
        return len(self.rows)

    def _residual(self, vec: Sequence[int]) -> list[int]:
        p = self.p
        res = [int(x) % p for x in vec]
        if len(res) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(res)}, expected {self.ncols}")
        for row, pc in zip(self.rows, self.pivots):
            k = res[pc]
            if k:
                res = [(x - k * y) % p for x, y in zip(res, row)]
        return res

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self._residual(vec))

    def coordinates(self, vec: Sequence[int]) -> list[int] | None:
        """Coefficients over the admitted vectors, or None if ``vec`` is outside the span."""
        if any(self._residual(vec)):
            return None
        p = self.p
        out = [0] * len(self.rows)
        for coord, pc in zip(self.coords, self.pivots):
            k = vec[pc] % p
            if k:
                out = [(x + k * y) % p for x, y in zip(out, coord)]
        return out

    def add(self, vec: Sequence[int]) -> bool:
        """Admit ``vec`` if it raises the rank; returns whether it did."""
        p = self.p
        res = self._residual(vec)
        pc = next((i for i, x in enumerate(res) if x), None)
        if pc is None:
            return False
        k_new = len(self.rows)
        coord = [0] * (k_new + 1)
        coord[k_new] = 1
        for old, opc in zip(self.coords, self.pivots):
            k = vec[opc] % p
            if k:
                for j, y in enumerate(old):
                    coord[j] = (coord[j] - k * y) % p
        inv = inv_mod(res[pc], p)
        res = [x * inv % p for x in res]
        coord = [x * inv % p for x in coord]
        for i, row in enumerate(self.rows):
            self.coords[i].append(0)
            k = row[pc]
            if k:
                self.rows[i] = [(x - k * y) % p for x, y in zip(row, res)]
                self.coords[i] = [(x - k * y) % p for x, y in zip(self.coords[i], coord)]
        self.rows.append(res)
        self.pivots.append(pc)
        self.coords.append(coord)
        return True

    def as_rref(self) -> RrefResult:
        """Snapshot as an RrefResult whose transform maps admitted vectors to rref rows."""
        order = sorted(range(len(self.rows)), key=self.pivots.__getitem__)
        return RrefResult(
            rref=tuple(tuple(self.rows[i]) for i in order),
            pivots=tuple(self.pivots[i] for i in order),
            transform=tuple(tuple(self.coords[i]) for i in order),
            p=self.p,
        )
