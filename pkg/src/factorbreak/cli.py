"""Command-line front end.

Exit codes: 0 success, 2 an attack failed (or disagreed with --expect),
3 unreadable input or an invalid instance spec.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import attacks, wire
from .bench import Family, Instance, InstanceSpec, gen_instance, run_trials
from .errors import FactorBreakError, InvalidSpec, ParseError
from .factor_scheme import (
    DEFAULT_EXPONENT_BOUND,
    Ciphertext,
    KexToken,
    PrivateKey,
    PublicKey,
    Role,
    decrypt,
    encrypt,
    keygen,
    kex_shared,
    kex_token,
)
from .matgfp import MatrixF
from .rng import draw_int, make_rng

EXIT_OK = 0
EXIT_ATTACK_FAILED = 2
EXIT_BAD_INPUT = 3


class AttackFailed(Exception):
    pass


def _read(path, expect):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return wire.parse(text, expect)


def _emit(obj, path=None):
    text = wire.serialize(obj)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    spec = InstanceSpec(args.p, args.n, args.family, seed=args.seed)
    spec.validate()
    g, h = gen_instance(spec, make_rng(args.seed))
    _emit(Instance(g, h, spec.family), args.out)


def cmd_keygen(args):
    inst = _read(args.instance, Instance)
    pub, priv = keygen(inst.g, inst.h, make_rng(args.seed), exponent_bound=args.exponent_bound,
                       x=args.x, y=args.y)
    _emit(pub, args.pub_out)
    _emit(priv, args.priv_out)


def cmd_encrypt(args):
    pub = _read(args.pub, PublicKey)
    m = _read(args.message, MatrixF)
    blinding = tuple(args.blinding) if args.blinding else None
    _emit(encrypt(pub, m, make_rng(args.seed), exponent_bound=args.exponent_bound, blinding=blinding),
          args.out)


def cmd_decrypt(args):
    _emit(decrypt(_read(args.priv, PrivateKey), _read(args.ct, Ciphertext)), args.out)


def cmd_kex(args):
    inst = _read(args.instance, Instance)
    rng = make_rng(args.seed)
    x1, y1, x2, y2 = (draw_int(rng, 1, args.exponent_bound) for _ in range(4))
    tok_a = kex_token(inst.g, inst.h, x1, y1, Role.INITIATOR)
    tok_b = kex_token(inst.g, inst.h, x2, y2, Role.RESPONDER)
    key_a = kex_shared(x1, y1, tok_b, inst.g, inst.h)
    key_b = kex_shared(x2, y2, tok_a, inst.g, inst.h)
    if key_a != key_b:
        raise AssertionError("honest parties disagree on the shared key")
    if args.token_a:
        _emit(tok_a, args.token_a)
    if args.token_b:
        _emit(tok_b, args.token_b)
    _emit(key_a, args.out)


def cmd_attack(args):
    if args.method == "kex":
        if not (args.instance and args.token_a and args.token_b):
            raise InvalidSpec("--method kex needs --instance, --token-a and --token-b")
        inst = _read(args.instance, Instance)
        tok_a, tok_b = _read(args.token_a, KexToken), _read(args.token_b, KexToken)
        run = lambda: attacks.lindecomp_attack_kex(inst.g, inst.h, tok_a, tok_b)  # noqa: E731
    else:
        if not (args.pub and args.ct):
            raise InvalidSpec(f"--method {args.method} needs --pub and --ct")
        pub, ct = _read(args.pub, PublicKey), _read(args.ct, Ciphertext)
        if args.method == "span":
            if pub.p <= pub.n:
                raise InvalidSpec(f"span method needs p > n (got p={pub.p}, n={pub.n})")
            run = lambda: attacks.span_attack_decrypt(pub, ct, make_rng(args.seed))  # noqa: E731
        else:
            run = lambda: attacks.lindecomp_attack_decrypt(pub, ct)  # noqa: E731
    expected = _read(args.expect, MatrixF) if args.expect else None
    try:
        report = run()
    except FactorBreakError as exc:
        raise AttackFailed(f"{type(exc).__name__}: {exc}") from None
    if expected is not None:
        report = report.graded(expected)
    _emit(report if args.json else report.recovered, args.out)
    if report.success is False:
        raise AttackFailed("recovered value differs from --expect")


def cmd_trials(args):
    spec = InstanceSpec(args.p, args.n, args.family, args.exponent_bound, args.seed)
    summary = run_trials(spec, args.count, args.method, workers=args.workers)
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        d = summary.to_dict()
        print(f"p={spec.p} n={spec.n} family={spec.family.value} seed={spec.seed} trials={summary.trials}")
        for method in summary.methods:
            print(f"  {method:10s} {summary.successes[method]}/{summary.trials}")
        for name, (lo, mean, hi) in summary.dimensions.items():
            print(f"  dim[{name}] min={lo} mean={mean:.2f} max={hi}")
        if {"span", "lindecomp"} <= set(summary.methods):
            print(f"  span==lindecomp on {summary.span_lindecomp_agreement} trials")
        if "span" in summary.methods:
            print(f"  sampling attempts mean={d['mean_sampling_attempts']:.3f} max={summary.max_sampling_attempts}"
                  f" invertible-draw frequency={d['invertibility_frequency']:.4f}")
        print(f"  wall clock {summary.wall_clock['total']:.2f}s")
    if not summary.all_succeeded():
        raise AttackFailed("some trials failed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factorbreak", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(sp):
        sp.add_argument("--p", type=int, required=True, help="prime modulus")
        sp.add_argument("--n", type=int, required=True, help="matrix dimension")
        sp.add_argument("--family", choices=[f.value for f in Family], default=Family.GENERAL_LINEAR.value)

    def seed_flag(sp):
        sp.add_argument("--seed", type=int, default=0)

    def bound_flag(sp):
        sp.add_argument("--exponent-bound", type=int, default=DEFAULT_EXPONENT_BOUND)

    sp = sub.add_parser("gen", help="generate a random (g, h) instance")
    instance_flags(sp)
    seed_flag(sp)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("keygen", help="draw a key pair for an instance")
    sp.add_argument("--instance", required=True)
    seed_flag(sp)
    bound_flag(sp)
    sp.add_argument("--x", type=int)
    sp.add_argument("--y", type=int)
    sp.add_argument("--pub-out")
    sp.add_argument("--priv-out")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--message", required=True, help="matrix document")
    seed_flag(sp)
    bound_flag(sp)
    sp.add_argument("--blinding", type=int, nargs=2, metavar=("X", "Y"))
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt")
    sp.add_argument("--priv", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("kex", help="run an honest key exchange and print the shared key")
    sp.add_argument("--instance", required=True)
    seed_flag(sp)
    bound_flag(sp)
    sp.add_argument("--token-a")
    sp.add_argument("--token-b")
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_kex)

    sp = sub.add_parser("attack", help="recover a plaintext or shared key from public data")
    sp.add_argument("--method", choices=("span", "lindecomp", "kex"), required=True)
    sp.add_argument("--pub")
    sp.add_argument("--ct")
    sp.add_argument("--instance")
    sp.add_argument("--token-a")
    sp.add_argument("--token-b")
    sp.add_argument("--expect", help="matrix document holding the true value")
    seed_flag(sp)
    sp.add_argument("--json", action="store_true", help="emit the full attack report")
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("trials", help="batch of seeded attack trials")
    instance_flags(sp)
    seed_flag(sp)
    bound_flag(sp)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--method", nargs="+", choices=("span", "lindecomp", "kex"),
                    default=["span", "lindecomp"])
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_trials)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except AttackFailed as exc:
        print(f"attack failed: {exc}", file=sys.stderr)
        return EXIT_ATTACK_FAILED
    except (FactorBreakError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
