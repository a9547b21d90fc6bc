"""Shared test helpers: definition-level IFN mean folds and generators
for sequences those folds can evaluate without float underflow."""

import math

from gmtauber.ifn import (
    ADD_IDENTITY,
    MUL_IDENTITY,
    IFN,
    add,
    multiply,
    power,
    scalar_mul,
)


def fold_ifwa(seq, p_values, n):
    """Oracle for the averaging mean: scalar multiples joined by addition."""
    total = ADD_IDENTITY
    for a, pk in zip(seq[: n + 1], p_values[: n + 1]):
        total = add(total, scalar_mul(pk, a))
    return scalar_mul(1.0 / math.fsum(p_values[: n + 1]), total)


def fold_ifwg(seq, p_values, n):
    """Oracle for the geometric mean: powers joined by multiplication."""
    total = MUL_IDENTITY
    for a, pk in zip(seq[: n + 1], p_values[: n + 1]):
        total = multiply(total, power(a, pk))
    return power(total, 1.0 / math.fsum(p_values[: n + 1]))


def random_fold_sequence(rng) -> tuple[list[IFN], list[float]]:
    """Sequences the definition-level folds can represent in floats.

    The fold carries mu through 1 - mu (dually nu through 1 - nu), so
    the running products (1-mu_k)^{p_k} must stay well above the ulp of
    1.0; the component amplitude shrinks with the sequence length to
    keep the total log-mass of the products bounded.
    """
    length = int(rng.integers(1, 51))
    cap = min(0.9, 1.0 - math.exp(-10.0 / (1.5 * length)))
    seq = []
    for _ in range(length):
        mu = rng.uniform(0.02, cap)
        nu = rng.uniform(0.02, min(cap, 1.0 - mu - 0.01))
        seq.append(IFN(mu, nu))
    p = [float(rng.uniform(0.2, 1.5))] + [
        float(rng.uniform(0.05, 1.5)) for _ in range(length - 1)
    ]
    return seq, p
