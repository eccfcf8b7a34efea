"""Linear-algebra attacks on FACTOR-based matrix-group cryptography.

Honest parties live in :mod:`factorbreak.factor_scheme`; the adversary in
:mod:`factorbreak.attacks`; exact F_p linear algebra in :mod:`factorbreak.gfp`,
:mod:`factorbreak.matgfp` and :mod:`factorbreak.span`.
"""
from .attacks import (
    AttackReport,
    CommutationSolutionSpace,
    lindecomp_attack_decrypt,
    lindecomp_attack_kex,
    sample_invertible_combination,
    solve_commutation_system,
    span_attack_decrypt,
)
from .factor_scheme import (
    Ciphertext,
    KexToken,
    PrivateKey,
    PublicKey,
    decrypt,
    encrypt,
    factor_compose,
    keygen,
    kex_shared,
    kex_token,
)
from .gfp import FieldElement, ff_inv, ff_pow
from .matgfp import MatrixF, mat_inv, mat_mul, mat_pow_signed, nullspace, rref
from .span import cyclic_span_basis, express_in_span, monomial_closure_basis

__version__ = "0.1.0"
