"""JSON interchange for operators, kets and verification reports.

Reals are written with 17 significant digits so doubles survive a round
trip; output is byte-for-byte deterministic for identical inputs.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .operators import Operator, as_operator


class MalformedInput(ValueError):
    """Bad JSON text or a document that does not match the expected schema."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


def format_real(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _pair(z: complex) -> str:
    return f"[{format_real(z.real)}, {format_real(z.imag)}]"


def _string(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def operator_to_json(op: Operator) -> str:
    op = as_operator(op)
    entries = ", ".join(_pair(z) for z in op.ravel())
    return f'{{"dim": {op.shape[0]}, "entries": [{entries}]}}\n'


def ket_to_json(psi) -> str:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    amps = ", ".join(_pair(z) for z in psi)
    return f'{{"dim": {psi.shape[0]}, "amplitudes": [{amps}]}}\n'


def report_to_json(report) -> str:
    residuals = ", ".join(f"{_string(k)}: {format_real(v)}" for k, v in report.residuals.items())
    phases = ", ".join(f"{_string(k)}: {_pair(complex(v))}" for k, v in report.realized_phases.items())
    parts = [
        f'"check": {_string(report.check_name)}',
        f'"passed": {"true" if report.passed else "false"}',
        f'"tolerance": {format_real(report.tolerance)}',
        f'"residuals": {{{residuals}}}',
        f'"phases": {{{phases}}}',
    ]
    if report.diagnostic:
        parts.append(f'"diagnostic": {_string(report.diagnostic)}')
    return "{" + ", ".join(parts) + "}\n"


def _loads(text: str | bytes):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc.reason}", exc.start) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        # exc.pos counts characters; report bytes
        offset = len(text[: exc.pos].encode("utf-8"))
        raise MalformedInput(f"malformed JSON: {exc.msg}", offset) from None


def _complex_list(values, count: int, what: str) -> np.ndarray:
    if not isinstance(values, list) or len(values) != count:
        raise MalformedInput(f"expected {count} {what}, got {len(values) if isinstance(values, list) else type(values).__name__}")
    out = np.empty(count, dtype=np.complex128)
    for i, pair in enumerate(values):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise MalformedInput(f"{what} {i} is not a [re, im] pair")
        out[i] = complex(pair[0], pair[1])
    return out


def operator_from_json(text: str | bytes) -> Operator:
    doc = _loads(text)
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise MalformedInput('operator JSON needs "dim" and "entries"')
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MalformedInput(f"invalid dim {dim!r}")
    return _complex_list(doc["entries"], dim * dim, "entries").reshape(dim, dim)


def ket_from_json(text: str | bytes) -> np.ndarray:
    doc = _loads(text)
    if not isinstance(doc, dict) or "dim" not in doc or "amplitudes" not in doc:
        raise MalformedInput('ket JSON needs "dim" and "amplitudes"')
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MalformedInput(f"invalid dim {dim!r}")
    return _complex_list(doc["amplitudes"], dim, "amplitudes")


def read_operator(path) -> Operator:
    with open(path, "rb") as fh:
        return operator_from_json(fh.read())


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)

