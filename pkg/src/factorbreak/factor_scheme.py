"""The honest parties: FACTOR composition, the ElGamal-type cryptosystem over a
matrix group, and the matching Diffie-Hellman-type key exchange."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CommutingGenerators, DimensionMismatch, ModulusMismatch
from .matgfp import MatrixF, mat_inv, mat_mul, mat_pow_signed
from .rng import draw_int

DEFAULT_EXPONENT_BOUND = 2**16


@dataclass(frozen=True)
class PublicKey:
    g: MatrixF
    h: MatrixF
    c: MatrixF

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def p(self) -> int:
        return self.g.p


@dataclass(frozen=True)
class PrivateKey:
    """Exponents are kept for reporting only; decryption uses gx and hy."""

    x: int
    y: int
    gx: MatrixF
    hy: MatrixF


@dataclass(frozen=True)
class Ciphertext:
    c1: MatrixF
    c2: MatrixF


class Role(str, Enum):
    INITIATOR = "initiator"
    RESPONDER = "responder"


@dataclass(frozen=True)
class KexToken:
    t: MatrixF
    role: Role = Role.INITIATOR


def factor_compose(g: MatrixF, x: int, h: MatrixF, y: int) -> MatrixF:
    return mat_mul(mat_pow_signed(g, x), mat_pow_signed(h, y))


def commute(a: MatrixF, b: MatrixF) -> bool:
    return mat_mul(a, b) == mat_mul(b, a)


def _check_pair(g: MatrixF, h: MatrixF):
    if g.p != h.p:
        raise ModulusMismatch(f"F_{g.p} vs F_{h.p}")
    if g.n != h.n:
        raise DimensionMismatch(f"{g.n}x{g.n} vs {h.n}x{h.n}")


def keygen(g, h, rng=None, *, exponent_bound=DEFAULT_EXPONENT_BOUND, x=None, y=None):
    """Draw x, y uniformly from [1, exponent_bound] unless given; publish g^x h^y.

    <g> and <h> are not checked for trivial intersection.
    """
    _check_pair(g, h)
    if commute(g, h):
        raise CommutingGenerators("g and h commute")
    if x is None:
        x = draw_int(rng, 1, exponent_bound)
    if y is None:
        y = draw_int(rng, 1, exponent_bound)
    gx = mat_pow_signed(g, x)
    hy = mat_pow_signed(h, y)
    return PublicKey(g, h, mat_mul(gx, hy)), PrivateKey(x, y, gx, hy)


def encrypt(pub: PublicKey, m: MatrixF, rng=None, *, exponent_bound=DEFAULT_EXPONENT_BOUND,
            blinding: tuple[int, int] | None = None) -> Ciphertext:
    """c1 = g^x' c h^y', c2 = g^x' h^y' m with fresh blinding exponents (x', y')."""
    if m.n != pub.n:
        raise DimensionMismatch(f"message is {m.n}x{m.n}, key is {pub.n}x{pub.n}")
    if m.p != pub.p:
        raise ModulusMismatch(f"F_{m.p} vs F_{pub.p}")
    if blinding is None:
        blinding = (draw_int(rng, 1, exponent_bound), draw_int(rng, 1, exponent_bound))
    bx, by = blinding
    gb = mat_pow_signed(pub.g, bx)
    hb = mat_pow_signed(pub.h, by)
    c1 = mat_mul(mat_mul(gb, pub.c), hb)
    c2 = mat_mul(mat_mul(gb, hb), m)
    return Ciphertext(c1, c2)


def decrypt(priv: PrivateKey, ct: Ciphertext) -> MatrixF:
    mask = mat_mul(mat_mul(mat_inv(priv.gx), ct.c1), mat_inv(priv.hy))
    return mat_mul(mat_inv(mask), ct.c2)


def kex_token(g: MatrixF, h: MatrixF, x: int, y: int, role: Role = Role.INITIATOR) -> KexToken:
    return KexToken(factor_compose(g, x, h, y), Role(role))


def kex_shared(x: int, y: int, peer: KexToken, g: MatrixF, h: MatrixF) -> MatrixF:
    """g^x @ peer @ h^y; both sides land on g^(x1+x2) h^(y1+y2)."""
    return mat_mul(mat_mul(mat_pow_signed(g, x), peer.t), mat_pow_signed(h, y))
