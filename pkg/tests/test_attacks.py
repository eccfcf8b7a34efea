import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from factorbreak.attacks import (
    DEFAULT_MAX_ATTEMPTS, invertibility_frequency, lindecomp_attack_decrypt, lindecomp_attack_kex,
    sample_invertible_combination, solve_commutation_system, span_attack_decrypt,
)
from factorbreak.errors import NoInvertibleCombination, NotInSpan
from factorbreak.factor_scheme import (
    Ciphertext, KexToken, PublicKey, decrypt, encrypt, keygen, kex_shared, kex_token,
)
from factorbreak.matgfp import Echelon, MatrixF, is_invertible, mat_inv, mat_pow_signed, rank
from factorbreak.span import cyclic_span_basis

from conftest import G_ROWS, H_ROWS, mat


def test_commutation_solution_ex1(ex1):
    # exhaustive search over f = a I + b g: the solutions form one line through 2I + g
    sols = oracle.commutation_solutions(G_ROWS, [[0, 2], [3, 1]], H_ROWS, 7, 2)
    assert len(sols) == 7
    assert ((2, 1), [[3, 1], [0, 3]]) in sols
    space = solve_commutation_system(ex1["pub"])
    assert space.solutions == (mat([[3, 1], [0, 3]]),)
    assert space.ambient.dimension == 2
    assert mat_pow_signed(ex1["g"], -2) == mat([[3, 1], [0, 3]]).scale(5)


def test_commutation_with_commuting_generators():
    g = mat(G_ROWS)
    h = mat_pow_signed(g, 3)
    pub = PublicKey(g, h, mat([[4, 1], [0, 4]]))
    space = solve_commutation_system(pub)
    assert space.dimension == space.ambient.dimension == 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11, 101]), st.integers(2, 4), st.integers(0, 2**32))
def test_solution_space_properties(p, n, seed):
    rng = np.random.default_rng(seed)
    g, h = _pair(rng, n, p)
    pub, priv = keygen(g, h, rng, exponent_bound=200)
    space = solve_commutation_system(pub)
    c = pub.c
    for f in space.solutions:
        assert f @ c @ h == h @ f @ c
    assert rank([f.entries for f in space.solutions], p) == space.dimension
    # g^-x solves the equation and lies in the spanned solution space
    ech = Echelon(n * n, p)
    for f in space.solutions:
        ech.add(f.entries)
    assert ech.contains(mat_pow_signed(g, -priv.x).entries)


def test_sampler_examples(rng):
    ident = MatrixF.identity(2, 7)
    f, attempts = sample_invertible_combination([ident], rng)
    assert is_invertible(f) and attempts >= 1
    m = mat([[3, 1], [0, 3]])
    for _ in range(20):
        f, attempts = sample_invertible_combination([m], rng)
        assert f in [m.scale(b) for b in range(1, 7)]
    with pytest.raises(NoInvertibleCombination):
        sample_invertible_combination([mat([[0, 1], [0, 0]])], rng, max_attempts=64)


def test_sampler_counts_attempts():
    # over F_3 only beta != 0 works; the attempt count must equal draws up to the first nonzero
    m = MatrixF.identity(2, 3)
    rng = np.random.default_rng(3)
    _, attempts = sample_invertible_combination([m], rng)
    replay = np.random.default_rng(3)
    draws = 0
    while True:
        draws += 1
        if int(replay.integers(0, 3, size=1)[0]):
            break
    assert attempts == draws


def test_span_attack_ex1(ex1, rng):
    f = mat([[3, 1], [0, 3]])
    pub, ct = ex1["pub"], ex1["ct"]
    assert f @ pub.c == mat([[3, 0], [2, 3]])
    assert f @ ct.c1 == mat([[1, 3], [5, 3]])
    assert (f @ ct.c1) @ mat_inv(f @ pub.c) == mat([[2, 1], [1, 1]])
    report = span_attack_decrypt(pub, ct, rng)
    assert report.recovered == ex1["m"]
    assert report.method == "span" and report.sampling_attempts >= 1
    assert report.span_dimension == 2
    assert report.graded(ex1["m"]).success is True


def test_span_attack_unblinded(ex1, rng):
    ct = encrypt(ex1["pub"], ex1["m"], blinding=(0, 0))
    assert span_attack_decrypt(ex1["pub"], ct, rng).recovered == ct.c2


def test_lindecomp_attack_ex1(ex1):
    report = lindecomp_attack_decrypt(ex1["pub"], ex1["ct"])
    assert report.recovered == ex1["m"]
    assert report.span_dimension == 4 and report.sampling_attempts == 0
    ct = encrypt(ex1["pub"], ex1["m"], blinding=(0, 0))
    assert lindecomp_attack_decrypt(ex1["pub"], ct).recovered == ct.c2


def test_lindecomp_rejects_foreign_ciphertext():
    # Lin(<g> c <h>) is a proper subspace for diagonal generators, so junk falls outside it
    g = mat([[2, 0], [0, 4]])
    h = mat([[3, 0], [0, 5]])
    pub = PublicKey(g, h, MatrixF.identity(2, 7))
    with pytest.raises(NotInSpan):
        lindecomp_attack_decrypt(pub, Ciphertext(mat([[0, 1], [0, 0]]), MatrixF.identity(2, 7)))


def test_kex_attack_ex1():
    g, h = mat(G_ROWS), mat(H_ROWS)
    ta, tb = KexToken(mat([[2, 1], [1, 1]])), KexToken(mat([[3, 2], [1, 1]]))
    key = mat([[0, 3], [2, 1]])
    assert lindecomp_attack_kex(g, h, ta, tb).recovered == key
    assert lindecomp_attack_kex(g, h, tb, ta).recovered == key
    ident = KexToken(MatrixF.identity(2, 7))
    assert lindecomp_attack_kex(g, h, ident, tb).recovered == tb.t


def _pair(rng, n, p, unitriangular=False):
    # UT_2 is abelian, so unitriangular pairs need n >= 3
    assert not (unitriangular and n < 3)
    while True:
        mats = []
        for _ in range(2):
            e = [int(v) for v in rng.integers(0, p, n * n)]
            if unitriangular:
                e = [1 if i == j else (e[i * n + j] if j > i else 0) for i in range(n) for j in range(n)]
            mats.append(MatrixF(n, p, tuple(e)))
        a, b = mats
        if is_invertible(a) and is_invertible(b) and a @ b != b @ a:
            return a, b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11, 101, 1009]), st.integers(2, 4), st.booleans(), st.integers(0, 2**32))
def test_oracle_equivalence(p, n, unitri, seed):
    rng = np.random.default_rng(seed)
    g, h = _pair(rng, n, p, unitri and n >= 3)
    pub, priv = keygen(g, h, rng, exponent_bound=5000)
    m = MatrixF(n, p, tuple(int(v) for v in rng.integers(0, p, n * n)))
    ct = encrypt(pub, m, rng, exponent_bound=5000)
    honest = decrypt(priv, ct)
    assert lindecomp_attack_decrypt(pub, ct).recovered == honest == m
    if p > n:
        assert span_attack_decrypt(pub, ct, rng).recovered == honest
    x1, y1, x2, y2 = (int(v) for v in rng.integers(-300, 300, 4))
    ta, tb = kex_token(g, h, x1, y1), kex_token(g, h, x2, y2)
    key = kex_shared(x1, y1, tb, g, h)
    assert lindecomp_attack_kex(g, h, ta, tb).recovered == key == kex_shared(x2, y2, ta, g, h)
    assert lindecomp_attack_kex(g, h, tb, ta).recovered == key


def test_invertibility_frequency_scalar_line(rng):
    hits, draws = invertibility_frequency([MatrixF.identity(3, 11)], rng, 2000)
    # exactly beta != 0 succeeds: rate 10/11, allow 4 sigma
    assert abs(hits / draws - 10 / 11) < 4 * (10 / 121 / 2000) ** 0.5


def test_cyclic_ambient_matches_space(ex1):
    space = solve_commutation_system(ex1["pub"])
    assert [e.mat for e in space.ambient] == cyclic_span_basis(ex1["g"]).matrices()


def test_default_attempt_cap():
    assert DEFAULT_MAX_ATTEMPTS == 64
