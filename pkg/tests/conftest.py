import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from factorbreak.factor_scheme import encrypt, keygen
from factorbreak.matgfp import MatrixF

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

PRIMES = [3, 5, 7, 11, 13, 101, 1009, 65537, 2147483647]

# golden micro-instance EX1
P = 7
G_ROWS = [[1, 1], [0, 1]]
H_ROWS = [[1, 0], [1, 1]]
X, Y = 2, 3
BLIND = (1, 1)
M_ROWS = [[2, 0], [0, 4]]


def mat(rows, p=P):
    return MatrixF.from_rows(rows, p)


@pytest.fixture
def ex1():
    g, h = mat(G_ROWS), mat(H_ROWS)
    pub, priv = keygen(g, h, x=X, y=Y)
    m = mat(M_ROWS)
    ct = encrypt(pub, m, blinding=BLIND)
    return dict(g=g, h=h, pub=pub, priv=priv, m=m, ct=ct)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@st.composite
def matrices(draw, n=None, p=None, invertible=False):
    """Random matrix; invertible ones are built as P @ L @ U so shrinking never stalls."""
    p = p or draw(st.sampled_from(PRIMES))
    n = n or draw(st.integers(1, 4))
    entry = st.integers(0, p - 1)
    if not invertible:
        return MatrixF(n, p, tuple(draw(st.lists(entry, min_size=n * n, max_size=n * n))))
    perm = draw(st.permutations(range(n)))
    lower = [[1 if i == j else (draw(entry) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [[draw(st.integers(1, p - 1)) if i == j else (draw(entry) if j > i else 0)
              for j in range(n)] for i in range(n)]
    pm = MatrixF.from_rows([[int(perm[i] == j) for j in range(n)] for i in range(n)], p)
    return pm @ MatrixF.from_rows(lower, p) @ MatrixF.from_rows(upper, p)


@st.composite
def matrix_pairs(draw, invertible=False, count=2):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, 4))
    return tuple(draw(matrices(n=n, p=p, invertible=invertible)) for _ in range(count))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert it."""

    def check(name, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
