"""Random instance generation and batched attack trials."""
from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from statistics import fmean

from . import attacks
from .errors import FactorBreakError, GenerationExhausted, InvalidSpec, NoInvertibleCombination
from .factor_scheme import DEFAULT_EXPONENT_BOUND, Role, commute, decrypt, encrypt, keygen, kex_shared, kex_token
from .gfp import check_modulus
from .matgfp import MAX_DIM, MatrixF, is_invertible
from .rng import draw_entries, draw_int, make_rng
from .span import cyclic_span_basis

MAX_REJECTIONS = 1000
METHODS = ("span", "lindecomp", "kex")

# stream ids under (seed, trial index)
_INSTANCE_STREAM = 0
_ATTACK_STREAM = 1


class Family(str, Enum):
    GENERAL_LINEAR = "general-linear"
    UNITRIANGULAR = "upper-unitriangular"


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    n: int
    family: Family = Family.GENERAL_LINEAR
    exponent_bound: int = DEFAULT_EXPONENT_BOUND
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))

    def validate(self, methods=()):
        try:
            check_modulus(self.p)
        except (TypeError, ValueError) as exc:
            raise InvalidSpec(str(exc)) from None
        if not 2 <= self.n <= MAX_DIM:
            raise InvalidSpec(f"n={self.n} outside [2, {MAX_DIM}]")
        if self.exponent_bound < 1:
            raise InvalidSpec("exponent_bound must be positive")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must be a 64-bit unsigned integer")
        unknown = set(methods) - set(METHODS)
        if unknown:
            raise InvalidSpec(f"unknown methods {sorted(unknown)}")
        # the invertibility bound 1 - n/p says nothing once p <= n
        if "span" in methods and self.p <= self.n:
            raise InvalidSpec(f"span method needs p > n (got p={self.p}, n={self.n})")


@dataclass(frozen=True)
class Instance:
    g: MatrixF
    h: MatrixF
    family: Family = Family.GENERAL_LINEAR

    @property
    def n(self):
        return self.g.n

    @property
    def p(self):
        return self.g.p


def _random_matrix(spec, rng) -> MatrixF:
    n, p = spec.n, spec.p
    if spec.family is Family.UNITRIANGULAR:
        entries = [int(i == j) for i in range(n) for j in range(n)]
        upper = [i * n + j for i in range(n) for j in range(i + 1, n)]
        for idx, val in zip(upper, draw_entries(rng, len(upper), p)):
            entries[idx] = val
        return MatrixF(n, p, tuple(entries))
    return MatrixF(n, p, draw_entries(rng, n * n, p))


def gen_instance(spec: InstanceSpec, rng) -> tuple[MatrixF, MatrixF]:
    """Random invertible, non-commuting (g, h) from the spec's family."""
    rejections = 0

    def sample():
        nonlocal rejections
        while True:
            m = _random_matrix(spec, rng)
            if spec.family is Family.UNITRIANGULAR or is_invertible(m):
                return m
            rejections += 1
            if rejections >= MAX_REJECTIONS:
                raise GenerationExhausted(f"{MAX_REJECTIONS} rejected draws")

    while True:
        g, h = sample(), sample()
        if not commute(g, h):
            return g, h
        rejections += 1
        if rejections >= MAX_REJECTIONS:
            raise GenerationExhausted(f"{MAX_REJECTIONS} rejected draws (generators keep commuting)")


@dataclass(frozen=True)
class MethodOutcome:
    method: str
    success: bool
    span_dimension: int = 0
    sampling_attempts: int = 0
    error: str | None = None
    elapsed: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class TrialRecord:
    index: int
    n: int
    cyclic_dimension: int
    outcomes: tuple[MethodOutcome, ...]
    span_lindecomp_agree: bool | None = None

    def outcome(self, method):
        return next((o for o in self.outcomes if o.method == method), None)


def _attempt(method, fn) -> tuple[MethodOutcome, MatrixF | None]:
    try:
        report, truth = fn()
    except FactorBreakError as exc:
        attempts = attacks.DEFAULT_MAX_ATTEMPTS if isinstance(exc, NoInvertibleCombination) else 0
        return MethodOutcome(method, False, sampling_attempts=attempts,
                             error=f"{type(exc).__name__}: {exc}"), None
    return MethodOutcome(method, report.recovered == truth, report.span_dimension,
                         report.sampling_attempts, None, report.elapsed), report.recovered


def run_trial(spec: InstanceSpec, index: int, methods) -> TrialRecord:
    """One independent trial; all randomness derives from (spec.seed, index)."""
    rng = make_rng(spec.seed, index, _INSTANCE_STREAM)
    attacker_rng = make_rng(spec.seed, index, _ATTACK_STREAM)
    try:
        g, h = gen_instance(spec, rng)
    except GenerationExhausted as exc:
        err = f"GenerationExhausted: {exc}"
        return TrialRecord(index, spec.n, 0, tuple(MethodOutcome(m, False, error=err) for m in methods))

    bound = spec.exponent_bound
    outcomes = []
    recovered = {}
    if "span" in methods or "lindecomp" in methods:
        pub, priv = keygen(g, h, rng, exponent_bound=bound)
        m = MatrixF(spec.n, spec.p, draw_entries(rng, spec.n * spec.n, spec.p))
        ct = encrypt(pub, m, rng, exponent_bound=bound)
        if decrypt(priv, ct) != m:
            raise AssertionError("honest decryption failed; scheme implementation is broken")
        if "span" in methods:
            out, recovered["span"] = _attempt(
                "span", lambda: (attacks.span_attack_decrypt(pub, ct, attacker_rng), m))
            outcomes.append(out)
        if "lindecomp" in methods:
            out, recovered["lindecomp"] = _attempt(
                "lindecomp", lambda: (attacks.lindecomp_attack_decrypt(pub, ct), m))
            outcomes.append(out)
    if "kex" in methods:
        x1, y1, x2, y2 = (draw_int(rng, 1, bound) for _ in range(4))
        tok_a = kex_token(g, h, x1, y1, Role.INITIATOR)
        tok_b = kex_token(g, h, x2, y2, Role.RESPONDER)
        key_a = kex_shared(x1, y1, tok_b, g, h)
        key_b = kex_shared(x2, y2, tok_a, g, h)

        def run_kex():
            report = attacks.lindecomp_attack_kex(g, h, tok_a, tok_b)
            # the eavesdropper must match both sides, which must also agree
            return report, (key_a if key_a == key_b else None)

        out, _ = _attempt("kex", run_kex)
        outcomes.append(out)

    agree = None
    if "span" in recovered and "lindecomp" in recovered:
        agree = recovered["span"] is not None and recovered["span"] == recovered["lindecomp"]
    return TrialRecord(index, spec.n, cyclic_span_basis(g).dimension, tuple(outcomes), agree)


def _dims(values):
    return (min(values), fmean(values), max(values)) if values else None


@dataclass(frozen=True)
class TrialSummary:
    spec: InstanceSpec
    methods: tuple[str, ...]
    trials: int
    successes: dict
    span_lindecomp_agreement: int
    dimensions: dict
    dimension_bound_violations: int
    sharper_bound_exceedances: dict
    sampling_draws: int
    invertible_draws: int
    max_sampling_attempts: int
    records: tuple[TrialRecord, ...] = field(repr=False)
    wall_clock: dict = field(default_factory=dict, compare=False)

    @property
    def invertibility_frequency(self) -> float | None:
        return self.invertible_draws / self.sampling_draws if self.sampling_draws else None

    @property
    def mean_sampling_attempts(self) -> float | None:
        span_trials = self.trials if "span" in self.methods else 0
        return self.sampling_draws / span_trials if span_trials else None

    def success_rate(self, method) -> float:
        return self.successes[method] / self.trials

    def all_succeeded(self) -> bool:
        return all(v == self.trials for v in self.successes.values())

    def to_dict(self) -> dict:
        return {
            "p": self.spec.p,
            "n": self.spec.n,
            "family": self.spec.family.value,
            "seed": self.spec.seed,
            "exponent_bound": self.spec.exponent_bound,
            "trials": self.trials,
            "methods": list(self.methods),
            "successes": dict(self.successes),
            "span_lindecomp_agreement": self.span_lindecomp_agreement,
            "dimensions": {k: list(v) for k, v in self.dimensions.items()},
            "dimension_bound_violations": self.dimension_bound_violations,
            "sharper_bound_exceedances": dict(self.sharper_bound_exceedances),
            "mean_sampling_attempts": self.mean_sampling_attempts,
            "max_sampling_attempts": self.max_sampling_attempts,
            "invertibility_frequency": self.invertibility_frequency,
            "failures": [
                {"trial": r.index, "method": o.method, "error": o.error}
                for r in self.records for o in r.outcomes if not o.success
            ],
            "wall_clock": dict(self.wall_clock),
        }


def summarize(spec, methods, records, wall=None) -> TrialSummary:
    records = tuple(sorted(records, key=lambda r: r.index))
    n = spec.n
    successes = Counter({m: 0 for m in methods})
    dims = {"cyclic": [r.cyclic_dimension for r in records if r.cyclic_dimension]}
    violations = sum(r.cyclic_dimension > n for r in records)
    sharper = Counter(cyclic=sum(r.cyclic_dimension > n - 1 for r in records))
    draws = hits = max_attempts = 0
    elapsed = {m: [] for m in methods}
    for r in records:
        for o in r.outcomes:
            successes[o.method] += o.success
            elapsed[o.method].append(o.elapsed)
            if o.method == "span":
                draws += o.sampling_attempts
                hits += o.error is None
                max_attempts = max(max_attempts, o.sampling_attempts)
            elif o.span_dimension:
                dims.setdefault(o.method, []).append(o.span_dimension)
                violations += o.span_dimension > n * n
                sharper[o.method] += o.span_dimension > (n - 1) ** 2
    wall = dict(wall or {})
    wall.update({f"mean_{m}": fmean(v) for m, v in elapsed.items() if v})
    return TrialSummary(
        spec=spec,
        methods=tuple(methods),
        trials=len(records),
        successes=dict(successes),
        span_lindecomp_agreement=sum(bool(r.span_lindecomp_agree) for r in records),
        dimensions={k: _dims(v) for k, v in dims.items() if v},
        dimension_bound_violations=violations,
        sharper_bound_exceedances=dict(sharper),
        sampling_draws=draws,
        invertible_draws=hits,
        max_sampling_attempts=max_attempts,
        records=records,
        wall_clock=wall,
    )


def run_trials(spec: InstanceSpec, count: int, methods=("span", "lindecomp"), workers: int = 1) -> TrialSummary:
    """Run ``count`` seeded trials; the summary does not depend on ``workers``."""
    methods = tuple(m for m in METHODS if m in set(methods))
    if count < 1:
        raise InvalidSpec("count must be at least 1")
    if not methods:
        raise InvalidSpec("no methods requested")
    spec.validate(methods)
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(run_trial, [spec] * count, range(count), [methods] * count,
                                    chunksize=max(1, count // (4 * workers))))
    else:
        records = [run_trial(spec, i, methods) for i in range(count)]
    return summarize(spec, methods, records, {"total": time.perf_counter() - start})
