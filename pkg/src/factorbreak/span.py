"""Bases of Lin(<g>), Lin(<g> c <h>) and Lin(<g><h>) with exponent tags.

A basis element carries the pair (u, v) saying it equals g^u @ c @ h^v, where
c is the basis anchor. Attacks rely on those tags to swap the anchor for a
different middle factor after solving for coordinates.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NotInSpan, SingularMatrix
from .gfp import FieldElement
from .matgfp import Echelon, MatrixF, RrefResult, is_invertible, mat_mul


def vectorize(m: MatrixF) -> tuple[int, ...]:
    return m.entries


def unvectorize(vec: Sequence[int], n: int, p: int) -> MatrixF:
    if len(vec) != n * n:
        raise DimensionMismatch(f"vector of length {len(vec)} does not fold into {n}x{n}")
    return MatrixF(n, p, tuple(vec))


@dataclass(frozen=True)
class BasisElement:
    u: int
    v: int
    mat: MatrixF


@dataclass(frozen=True, eq=False)
class TaggedBasis:
    g: MatrixF
    h: MatrixF
    anchor: MatrixF
    elements: tuple[BasisElement, ...]
    _echelon: Echelon

    @property
    def dimension(self) -> int:
        return len(self.elements)

    @property
    def echelon(self) -> RrefResult:
        return self._echelon.as_rref()

    def matrices(self) -> list[MatrixF]:
        return [e.mat for e in self.elements]

    def contains(self, m: MatrixF) -> bool:
        return self._echelon.contains(vectorize(m))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _require_invertible(*mats: MatrixF):
    for m in mats:
        if not is_invertible(m):
            raise SingularMatrix("generator must be invertible")


def cyclic_span_basis(g: MatrixF) -> TaggedBasis:
    """Basis I, g, ..., g^k of Lin(<g>), stopping at the first dependent power."""
    _require_invertible(g)
    n, p = g.n, g.p
    ident = MatrixF.identity(n, p)
    ech = Echelon(n * n, p)
    elements = []
    power, u = ident, 0
    while ech.add(vectorize(power)):
        elements.append(BasisElement(u, 0, power))
        power = mat_mul(g, power)
        u += 1
    return TaggedBasis(g, ident, ident, tuple(elements), ech)


def monomial_closure_basis(g: MatrixF, h: MatrixF, c: MatrixF) -> TaggedBasis:
    """Basis of the smallest subspace holding c, closed under g @ . and . @ h.

    Breadth-first from (0, 0, c): every admitted element proposes its g-step
    then its h-step, and a proposal is admitted iff it raises the rank. Since
    g and h are invertible the result also absorbs negative powers, so it
    spans every g^i @ c @ h^j with i, j in Z.
    """
    _require_invertible(g, h)
    n, p = g.n, g.p
    cap = n * n + 1
    ech = Echelon(n * n, p)
    elements: list[BasisElement] = []
    queue: deque[BasisElement] = deque()

    def admit(u, v, m):
        if ech.add(vectorize(m)):
            e = BasisElement(u, v, m)
            elements.append(e)
            queue.append(e)
            if len(elements) > cap:
                raise RuntimeError("span basis exceeded n^2 + 1 elements")

    admit(0, 0, c)
    while queue:
        e = queue.popleft()
        admit(e.u + 1, e.v, mat_mul(g, e.mat))
        admit(e.u, e.v + 1, mat_mul(e.mat, h))
    return TaggedBasis(g, h, c, tuple(elements), ech)


def express_in_span(basis: TaggedBasis, target: MatrixF) -> list[FieldElement]:
    """Unique coefficients a_i with target == sum a_i * e_i."""
    coords = basis._echelon.coordinates(vectorize(target))
    if coords is None:
        raise NotInSpan("target is not a linear combination of the basis")
    return [FieldElement(a, target.p) for a in coords]


def tagged_powers(g: MatrixF, exponents) -> dict[int, MatrixF]:
    """g^e for each requested nonnegative e, computed by one running product."""
    wanted = sorted(set(exponents))
    out = {}
    acc, at = MatrixF.identity(g.n, g.p), 0
    for e in wanted:
        for _ in range(e - at):
            acc = mat_mul(acc, g)
        at = e
        out[e] = acc
    return out
