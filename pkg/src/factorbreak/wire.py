"""JSON wire format for instances, keys, ciphertexts, tokens and reports.

Every document is a single JSON object whose first key is ``kind``, followed
by ``p`` and ``n`` and then the kind-specific fields in the order listed in
``FIELDS``. Matrices are row-major nested arrays of ints in [0, p).
Serialization is byte-stable: one line, fixed key order, trailing newline.
"""
from __future__ import annotations

import json

from .attacks import AttackReport
from .bench import Family, Instance
from .errors import ParseError
from .factor_scheme import Ciphertext, KexToken, PrivateKey, PublicKey, Role
from .gfp import check_modulus
from .matgfp import MAX_DIM, MatrixF

FIELDS = {
    "matrix": ("m",),
    "instance": ("family", "g", "h"),
    "public_key": ("g", "h", "c"),
    "private_key": ("x", "y", "gx", "hy"),
    "ciphertext": ("c1", "c2"),
    "kex_token": ("role", "t"),
    "attack_report": ("method", "recovered", "success", "span_dimension", "sampling_attempts", "elapsed"),
}

_KINDS = {
    MatrixF: "matrix",
    Instance: "instance",
    PublicKey: "public_key",
    PrivateKey: "private_key",
    Ciphertext: "ciphertext",
    KexToken: "kex_token",
    AttackReport: "attack_report",
}


def _mat(m: MatrixF):
    return m.to_lists()


def to_dict(obj) -> dict:
    kind = _KINDS.get(type(obj))
    if kind is None:
        raise TypeError(f"no wire form for {type(obj).__name__}")
    if kind == "matrix":
        n, p, body = obj.n, obj.p, {"m": _mat(obj)}
    elif kind == "instance":
        n, p, body = obj.n, obj.p, {"family": obj.family.value, "g": _mat(obj.g), "h": _mat(obj.h)}
    elif kind == "public_key":
        n, p, body = obj.n, obj.p, {"g": _mat(obj.g), "h": _mat(obj.h), "c": _mat(obj.c)}
    elif kind == "private_key":
        n, p = obj.gx.n, obj.gx.p
        body = {"x": obj.x, "y": obj.y, "gx": _mat(obj.gx), "hy": _mat(obj.hy)}
    elif kind == "ciphertext":
        n, p, body = obj.c1.n, obj.c1.p, {"c1": _mat(obj.c1), "c2": _mat(obj.c2)}
    elif kind == "kex_token":
        n, p, body = obj.t.n, obj.t.p, {"role": Role(obj.role).value, "t": _mat(obj.t)}
    else:
        n, p = obj.recovered.n, obj.recovered.p
        body = {
            "method": obj.method,
            "recovered": _mat(obj.recovered),
            "success": obj.success,
            "span_dimension": obj.span_dimension,
            "sampling_attempts": obj.sampling_attempts,
            "elapsed": obj.elapsed,
        }
    out = {"kind": kind, "p": p, "n": n}
    out.update((k, body[k]) for k in FIELDS[kind])
    return out


def serialize(obj) -> str:
    return json.dumps(to_dict(obj)) + "\n"


def _int(doc, key, *, low=None, high=None):
    if key not in doc:
        raise ParseError("missing", field=key)
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"expected integer, got {v!r}", field=key)
    if (low is not None and v < low) or (high is not None and v > high):
        raise ParseError(f"{v} outside [{low}, {high}]", field=key)
    return v


def _matrix(doc, key, n, p) -> MatrixF:
    if key not in doc:
        raise ParseError("missing", field=key)
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows", field=key)
    flat = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must hold {n} entries", field=key)
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"entry ({i},{j}) is not an integer: {v!r}", field=key)
            if not 0 <= v < p:
                raise ParseError(f"entry ({i},{j}) = {v} outside [0, {p})", field=key)
            flat.append(v)
    return MatrixF(n, p, tuple(flat))


def from_dict(doc) -> object:
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    kind = doc.get("kind")
    if kind not in FIELDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind")
    p = _int(doc, "p")
    try:
        check_modulus(p)
    except ValueError as exc:
        raise ParseError(str(exc), field="p") from None
    n = _int(doc, "n", low=1, high=MAX_DIM)
    extra = set(doc) - {"kind", "p", "n", *FIELDS[kind]}
    if extra:
        raise ParseError(f"unexpected keys {sorted(extra)}")

    def mat(key):
        return _matrix(doc, key, n, p)

    if kind == "matrix":
        return mat("m")
    if kind == "instance":
        try:
            family = Family(doc.get("family"))
        except ValueError:
            raise ParseError(f"unknown family {doc.get('family')!r}", field="family") from None
        return Instance(mat("g"), mat("h"), family)
    if kind == "public_key":
        return PublicKey(mat("g"), mat("h"), mat("c"))
    if kind == "private_key":
        return PrivateKey(_int(doc, "x"), _int(doc, "y"), mat("gx"), mat("hy"))
    if kind == "ciphertext":
        return Ciphertext(mat("c1"), mat("c2"))
    if kind == "kex_token":
        try:
            role = Role(doc.get("role"))
        except ValueError:
            raise ParseError(f"unknown role {doc.get('role')!r}", field="role") from None
        return KexToken(mat("t"), role)
    success = doc.get("success")
    if success is not None and not isinstance(success, bool):
        raise ParseError("expected true, false or null", field="success")
    elapsed = doc.get("elapsed")
    if not isinstance(elapsed, (int, float)) or isinstance(elapsed, bool):
        raise ParseError("expected a number", field="elapsed")
    method = doc.get("method")
    if not isinstance(method, str):
        raise ParseError("expected a string", field="method")
    return AttackReport(
        method=method,
        recovered=mat("recovered"),
        span_dimension=_int(doc, "span_dimension", low=0),
        sampling_attempts=_int(doc, "sampling_attempts", low=0),
        elapsed=float(elapsed),
        success=success,
    )


def parse(text: str, expect: type | None = None):
    """Parse one wire document; ``expect`` optionally pins the resulting type."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    obj = from_dict(doc)
    if expect is not None and not isinstance(obj, expect):
        raise ParseError(f"expected {_KINDS[expect]}, got {doc['kind']}", field="kind")
    return obj
