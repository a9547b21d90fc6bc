"""Built-in example sequences and the text formats for sequence files.

Real sequences are written log-domain by default (header line ``log:``)
so that blow-ups like exp(+-(n+1)) stay representable as text; fuzzy
sequences are one ``mu,nu`` pair per line. All generators produce
indices 0..n_max inclusive.
"""

import math
from pathlib import Path
from typing import Callable, Sequence

from .mcore import LogReal
from .ifn import IFN

__all__ = [
    "GeneratorError",
    "generate",
    "generator_kind",
    "list_generators",
    "write_real_sequence",
    "read_real_sequence",
    "write_ifn_sequence",
    "read_ifn_sequence",
]

LOG_HEADER = "log:"


class GeneratorError(ValueError):
    """Unknown generator id or invalid generator parameters."""


def _ex1(n: int, params: dict) -> LogReal:
    # Alternating exponential blow-up exp(+-(n+1)), kept in log-domain.
    return LogReal.from_log((n + 1.0) if n % 2 == 0 else -(n + 1.0))


def _ex2(n: int, params: dict) -> LogReal:
    # 2 on even indices, 1/2 on odd ones.
    return LogReal.from_log(math.log(2.0) if n % 2 == 0 else -math.log(2.0))


def _constant(n: int, params: dict) -> LogReal:
    c = params.get("c", 1.0)
    if not c > 0:
        raise GeneratorError(f"constant generator needs c > 0, got {c}")
    return LogReal.of(c)


def _exp_decay(n: int, params: dict) -> LogReal:
    # exp(c / (n+1)) -> 1; the standard slowly-settling positive sequence.
    c = params.get("c", 1.0)
    return LogReal.from_log(c / (n + 1.0))


def _linear(n: int, params: dict) -> LogReal:
    return LogReal.of(n + 1.0)


def _nonunique(n: int, params: dict) -> IFN:
    # Drifts up to (1/2, 1/3) along the constant-score line mu - nu = 1/6.
    return IFN(0.5 - 1.0 / (n + 3.0), 1.0 / 3.0 - 1.0 / (n + 3.0))


def _ex3_ifn(n: int, params: dict) -> IFN:
    # Components hop between exponent 1 and 3 of the base pair (1/2, 1/3).
    e = (-1.0) ** n + 2.0
    return IFN(1.0 - 0.5**e, (1.0 / 3.0) ** e)


def _ex4_ifn(n: int, params: dict) -> IFN:
    e = (-1.0) ** n + 2.0
    return IFN((1.0 / 9.0) ** e, 1.0 - 0.25**e)


_REGISTRY: dict[str, tuple[str, Callable, frozenset[str]]] = {
    "ex1": ("real", _ex1, frozenset()),
    "ex2": ("real", _ex2, frozenset()),
    "constant": ("real", _constant, frozenset({"c"})),
    "exp-decay": ("real", _exp_decay, frozenset({"c"})),
    "linear": ("real", _linear, frozenset()),
    "nonunique": ("ifn", _nonunique, frozenset()),
    "ex3-ifn": ("ifn", _ex3_ifn, frozenset()),
    "ex4-ifn": ("ifn", _ex4_ifn, frozenset()),
}


def _parse_spec(spec: str) -> tuple[str, dict]:
    name, _, tail = spec.partition(":")
    params: dict[str, float] = {}
    if tail:
        for item in tail.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise GeneratorError(
                    f"generator parameter {item!r} must look like key=value"
                )
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise GeneratorError(f"generator parameter {item!r} is not numeric")
    return name, params


def list_generators() -> list[str]:
    return sorted(_REGISTRY)


def _lookup(spec: str) -> tuple[str, Callable, dict]:
    name, params = _parse_spec(spec)
    if name not in _REGISTRY:
        raise GeneratorError(
            f"unknown generator {name!r}; available: {', '.join(list_generators())}"
        )
    kind, fn, allowed = _REGISTRY[name]
    unknown = set(params) - allowed
    if unknown:
        raise GeneratorError(
            f"generator {name!r} does not take parameter(s) {sorted(unknown)}"
        )
    return kind, fn, params


def generator_kind(spec: str) -> str:
    """'real' or 'ifn' for a generator spec like 'constant:c=3'."""
    return _lookup(spec)[0]


def generate(spec: str, n_max: int) -> list:
    """Materialize a named sequence for indices 0..n_max inclusive."""
    _, fn, params = _lookup(spec)
    if n_max < 0:
        raise GeneratorError(f"n_max must be nonnegative, got {n_max}")
    return [fn(n, params) for n in range(n_max + 1)]


def write_real_sequence(path: str | Path, seq: Sequence[LogReal]) -> None:
    """One log value per line under a 'log:' header."""
    lines = [LOG_HEADER]
    lines.extend(repr(u.log_value) for u in seq)
    Path(path).write_text("\n".join(lines) + "\n")


def read_real_sequence(path: str | Path) -> list[LogReal]:
    """Read either plain positive decimals or log-domain values."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"sequence file {path} is empty")
    if lines[0] == LOG_HEADER:
        return [LogReal.from_log(float(ln)) for ln in lines[1:]]
    return [LogReal.of(float(ln)) for ln in lines]


def write_ifn_sequence(path: str | Path, seq: Sequence[IFN]) -> None:
    """One 'mu,nu' pair per line."""
    lines = [f"{a.mu!r},{a.nu!r}" for a in seq]
    Path(path).write_text("\n".join(lines) + "\n")


def read_ifn_sequence(path: str | Path) -> list[IFN]:
    out = []
    for i, ln in enumerate(Path(path).read_text().splitlines()):
        ln = ln.strip()
        if not ln:
            continue
        parts = ln.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {i + 1} of {path} is not a 'mu,nu' pair: {ln!r}")
        out.append(IFN(float(parts[0]), float(parts[1])))
    if not out:
        raise ValueError(f"sequence file {path} is empty")
    return out
