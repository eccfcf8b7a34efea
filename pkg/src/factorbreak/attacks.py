"""Passive attacks that recover plaintexts and shared keys by linear algebra.

Every entry point takes only public or intercepted objects (PublicKey,
Ciphertext, KexToken); nothing here can reach a PrivateKey.

* span method: find an invertible f in Lin(<g>) with f c h == h f c, then
  strip the blinding factor as (f c1) (f c)^-1.
* linear decomposition: write c1 in a tagged basis of Lin(<g> c <h>) and
  re-evaluate the same combination with c replaced by the identity.
* key exchange: write one token in a basis of Lin(<g><h>) and re-evaluate the
  combination around the other token.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import EmptySolutionSpace, NoInvertibleCombination
from .factor_scheme import Ciphertext, KexToken, PublicKey
from .matgfp import MatrixF, is_invertible, linear_combination, mat_inv, mat_mul, nullspace
from .rng import draw_entries
from .span import (
    TaggedBasis,
    cyclic_span_basis,
    express_in_span,
    monomial_closure_basis,
    tagged_powers,
    vectorize,
)

DEFAULT_MAX_ATTEMPTS = 64

SPAN = "span"
LINDECOMP = "lindecomp"
LINDECOMP_KEX = "lindecomp-kex"


@dataclass(frozen=True)
class CommutationSolutionSpace:
    ambient: TaggedBasis
    solutions: tuple[MatrixF, ...]

    @property
    def dimension(self) -> int:
        return len(self.solutions)


@dataclass(frozen=True)
class AttackReport:
    """Outcome of one attack run.

    ``success`` stays None until someone holding the ground truth grades the
    report with :meth:`graded`.
    """

    method: str
    recovered: MatrixF
    span_dimension: int
    sampling_attempts: int = 0
    elapsed: float = 0.0
    success: bool | None = None

    def graded(self, truth: MatrixF) -> AttackReport:
        return replace(self, success=self.recovered == truth)


def solve_commutation_system(pub: PublicKey) -> CommutationSolutionSpace:
    """All f = sum a_i g^i with f c h == h f c, as a basis of matrices.

    One unknown per power in the cyclic basis; each unknown contributes the
    column vec(g^i c h - h g^i c) of an n^2 x dim homogeneous system.
    """
    ambient = cyclic_span_basis(pub.g)
    columns = []
    for e in ambient:
        ec = mat_mul(e.mat, pub.c)
        columns.append(vectorize(mat_mul(ec, pub.h) - mat_mul(pub.h, ec)))
    system = [list(row) for row in zip(*columns)]
    kernel = nullspace(system, pub.p)
    if not kernel:
        raise EmptySolutionSpace("no nonzero f solves f c h = h f c")
    powers = ambient.matrices()
    return CommutationSolutionSpace(ambient, tuple(linear_combination(a, powers) for a in kernel))


def sample_invertible_combination(solutions: Sequence[MatrixF], rng,
                                  max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> tuple[MatrixF, int]:
    """Draw uniform coefficients until the combination is invertible."""
    if not solutions:
        raise ValueError("need at least one matrix to combine")
    p = solutions[0].p
    for attempt in range(1, max_attempts + 1):
        f = linear_combination(draw_entries(rng, len(solutions), p), solutions)
        if is_invertible(f):
            return f, attempt
    raise NoInvertibleCombination(f"{max_attempts} consecutive singular combinations")


def invertibility_frequency(solutions: Sequence[MatrixF], rng, draws: int) -> tuple[int, int]:
    """(invertible draws, total draws) for single uniform combinations."""
    p = solutions[0].p
    hits = 0
    for _ in range(draws):
        f = linear_combination(draw_entries(rng, len(solutions), p), solutions)
        hits += is_invertible(f)
    return hits, draws


def span_attack_decrypt(pub: PublicKey, ct: Ciphertext, rng,
                        max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> AttackReport:
    start = time.perf_counter()
    space = solve_commutation_system(pub)
    f, attempts = sample_invertible_combination(space.solutions, rng, max_attempts)
    # f commutes with g and f c commutes with h, so f c1 = (g^x' h^y') f c
    mask = mat_mul(mat_mul(f, ct.c1), mat_inv(mat_mul(f, pub.c)))
    m = mat_mul(mat_inv(mask), ct.c2)
    return AttackReport(SPAN, m, space.ambient.dimension, attempts, time.perf_counter() - start)


def _reassemble(basis: TaggedBasis, coeffs, middle: MatrixF) -> MatrixF:
    """sum a_i g^u_i @ middle @ h^v_i over the tagged basis."""
    gp = tagged_powers(basis.g, (e.u for e in basis))
    hp = tagged_powers(basis.h, (e.v for e in basis))
    terms = [mat_mul(mat_mul(gp[e.u], middle), hp[e.v]) for e in basis]
    return linear_combination(coeffs, terms)


def lindecomp_attack_decrypt(pub: PublicKey, ct: Ciphertext) -> AttackReport:
    start = time.perf_counter()
    basis = monomial_closure_basis(pub.g, pub.h, pub.c)
    alpha = express_in_span(basis, ct.c1)
    mask = _reassemble(basis, alpha, MatrixF.identity(pub.n, pub.p))
    m = mat_mul(mat_inv(mask), ct.c2)
    return AttackReport(LINDECOMP, m, basis.dimension, 0, time.perf_counter() - start)


def lindecomp_attack_kex(g: MatrixF, h: MatrixF, token_a: KexToken, token_b: KexToken) -> AttackReport:
    start = time.perf_counter()
    basis = monomial_closure_basis(g, h, MatrixF.identity(g.n, g.p))
    alpha = express_in_span(basis, token_a.t)
    key = _reassemble(basis, alpha, token_b.t)
    return AttackReport(LINDECOMP_KEX, key, basis.dimension, 0, time.perf_counter() - start)
