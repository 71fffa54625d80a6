"""Discrete time-fractional operators as superpositions of weight tables.

The continuous operator is a nonnegative superposition of tempered
fractional derivatives over orders alpha in (0, 1): a single order, a
finite positive combination, or a weighted integral discretized by
quadrature.  Each participating order alpha_i contributes the convolution

    (b_i / tau^alpha_i) * sum_j g_j^(i) w^(n-j),

so the assembled operator is a list of (scale, table) pairs sharing one
tempering rate sigma and one step size tau.  The j = 0 term multiplies the
unknown w^n and is exposed as ``zero_weight`` for the implicit solve; the
lagged part is evaluated by :func:`apply_history`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import CoefficientTable, FracParams, bdf_g_coefficients, check_order
from .errors import ParameterDomainError


@dataclass(frozen=True)
class SingleTerm:
    """One fractional order; alpha = 1 admitted as the classical limit."""

    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterDomainError(
                f"single-term order must lie in (0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class MultiTerm:
    """Positive combination sum_i b_i * D^(alpha_i) with decreasing orders."""

    terms: tuple[tuple[float, float], ...]   # (b_i, alpha_i)

    def __post_init__(self) -> None:
        if not self.terms:
            raise ParameterDomainError("multi-term operator needs at least one term")
        prev = 1.0
        for b, alpha in self.terms:
            if b <= 0.0:
                raise ParameterDomainError(f"term weights must be > 0, got {b!r}")
            if not 0.0 < alpha < 1.0:
                raise ParameterDomainError(
                    f"multi-term orders must lie in (0, 1), got {alpha!r}")
            if alpha >= prev:
                raise ParameterDomainError(
                    "multi-term orders must be strictly decreasing")
            prev = alpha


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for integrals over the order variable on (0, 1)."""

    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.weights) or not self.nodes:
            raise ParameterDomainError("quadrature needs matching, nonempty nodes/weights")
        for a in self.nodes:
            if not 0.0 < a < 1.0:
                raise ParameterDomainError(
                    f"quadrature nodes must lie strictly inside (0, 1), got {a!r}")

    @staticmethod
    def gauss_legendre(n: int = 16) -> "QuadratureRule":
        """Gauss-Legendre rule mapped to (0, 1); interior nodes avoid the
        degenerate endpoints alpha = 0 (identity) and alpha = 1 (classical)."""
        if n < 1:
            raise ParameterDomainError(f"node count must be >= 1, got {n!r}")
        xs, ws = np.polynomial.legendre.leggauss(n)
        return QuadratureRule(nodes=tuple((xs + 1.0) / 2.0), weights=tuple(ws / 2.0))

    @staticmethod
    def from_points(nodes, weights) -> "QuadratureRule":
        return QuadratureRule(nodes=tuple(float(a) for a in nodes),
                              weights=tuple(float(w) for w in weights))


@dataclass(frozen=True)
class DistributedOrder:
    """Integral over orders with a nonnegative weight function."""

    weight: Callable[[float], float]
    quadrature: QuadratureRule


@dataclass(frozen=True)
class FractionalOperatorSpec:
    """A variant (single/multi/distributed) plus the shared tempering rate."""

    variant: SingleTerm | MultiTerm | DistributedOrder
    sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma < 0.0:
            raise ParameterDomainError(f"sigma must be >= 0, got {self.sigma!r}")


#: Named weight functions for distributed-order problems.  Each entry maps
#: keyword parameters to a callable alpha -> weight.  The Dirac comb is not
#: listed here: a point-mass weight has no density, so configs request it
#: by name and it is realized exactly as the equivalent multi-term variant.
WEIGHT_FUNCTIONS: dict[str, Callable[..., Callable[[float], float]]] = {
    "constant": lambda c=1.0: (lambda alpha: float(c)),
    "power": lambda p=1.0, c=1.0: (lambda alpha: float(c) * alpha ** float(p)),
}


@dataclass(frozen=True)
class DiscreteTimeOperator:
    """Assembled discrete operator: sum_i scale_i * (g^(i) convolution)."""

    k: int
    tau: float
    sigma: float
    scales: tuple[float, ...]
    tables: tuple[CoefficientTable, ...]

    @property
    def zero_weight(self) -> float:
        """Coefficient multiplying w^n in the implicit step; always > 0."""
        return sum(s * t.g[0] for s, t in zip(self.scales, self.tables))


def discretize(spec: FractionalOperatorSpec, k: int, tau: float,
               N: int) -> DiscreteTimeOperator:
    """Assemble weight tables covering j = 0..N for every participating order."""
    check_order(k)
    if tau <= 0.0:
        raise ParameterDomainError(f"tau must be > 0, got {tau!r}")
    if N < 1:
        raise ParameterDomainError(f"N must be >= 1, got {N!r}")
    v = spec.variant
    if isinstance(v, SingleTerm):
        pairs = [(1.0, v.alpha)]
    elif isinstance(v, MultiTerm):
        pairs = [(b, alpha) for b, alpha in v.terms]
    elif isinstance(v, DistributedOrder):
        pairs = []
        for a, wq in zip(v.quadrature.nodes, v.quadrature.weights):
            mu = float(v.weight(a))
            if mu < 0.0:
                raise ParameterDomainError(
                    f"distributed-order weight is negative at alpha={a!r}: {mu!r}")
            if wq * mu != 0.0:
                pairs.append((wq * mu, a))
        if not pairs:
            raise ParameterDomainError("distributed-order weight vanishes at all nodes")
    else:
        raise ParameterDomainError(f"unknown operator variant: {v!r}")
    scales = []
    tables = []
    for b, alpha in pairs:
        params = FracParams(alpha=alpha, sigma=spec.sigma, tau=tau)
        scales.append(b * tau ** (-alpha))
        tables.append(bdf_g_coefficients(k, params, N))
    return DiscreteTimeOperator(k=k, tau=tau, sigma=spec.sigma,
                                scales=tuple(scales), tables=tuple(tables))


def apply_history(op: DiscreteTimeOperator, history, n: int):
    """Lagged part sum_i scale_i sum_{j=1}^{n} g_j^(i) w^(n-j).

    ``history`` holds w^0 .. w^(n-1) (oldest first); the j = 0 term is
    excluded since it belongs to the implicit solve.  Accepts scalar or
    vector states; returns the same shape as one state.
    """
    W = np.asarray(history, dtype=float)
    if W.shape[0] != n:
        raise ParameterDomainError(
            f"history must hold exactly n={n} states, got {W.shape[0]}")
    out = np.zeros(W.shape[1:] if W.ndim > 1 else ())
    if n == 0:
        return out
    rev = W[::-1]
    for s, t in zip(op.scales, op.tables):
        out = out + s * (t.g[1:n + 1] @ rev)
    return out


def operator_spec_from_dict(d: dict) -> FractionalOperatorSpec:
    """Build an operator spec from a parsed config mapping.

    Recognized layouts (unknown keys rejected)::

        {"variant": "single_term", "alpha": 0.5, "sigma": 0.0}
        {"variant": "multi_term", "terms": [[2.0, 0.8], [1.0, 0.3]], "sigma": 0.0}
        {"variant": "distributed_order", "weight": "constant",
         "weight_params": {"c": 1.0}, "nodes": 16, "sigma": 0.0}
        {"variant": "distributed_order", "weight": "dirac_comb",
         "weight_params": {"terms": [[2.0, 0.8], [1.0, 0.3]]}, "sigma": 0.0}

    A ``dirac_comb`` weight is realized exactly as the equivalent
    multi-term operator.
    """
    if not isinstance(d, dict) or "variant" not in d:
        raise ParameterDomainError("operator config must be a mapping with a 'variant' key")
    variant = d["variant"]
    sigma = float(d.get("sigma", 0.0))
    allowed = {
        "single_term": {"variant", "sigma", "alpha"},
        "multi_term": {"variant", "sigma", "terms"},
        "distributed_order": {"variant", "sigma", "weight", "weight_params", "nodes"},
    }
    if variant not in allowed:
        raise ParameterDomainError(f"unknown operator variant {variant!r}")
    unknown = set(d) - allowed[variant]
    if unknown:
        raise ParameterDomainError(f"unknown operator config keys: {sorted(unknown)}")
    if variant == "single_term":
        return FractionalOperatorSpec(SingleTerm(alpha=float(d["alpha"])), sigma=sigma)
    if variant == "multi_term":
        terms = tuple((float(b), float(a)) for b, a in d["terms"])
        return FractionalOperatorSpec(MultiTerm(terms=terms), sigma=sigma)
    name = d.get("weight", "constant")
    params = dict(d.get("weight_params", {}))
    if name == "dirac_comb":
        terms = tuple((float(b), float(a)) for b, a in params.get("terms", ()))
        return FractionalOperatorSpec(MultiTerm(terms=terms), sigma=sigma)
    if name not in WEIGHT_FUNCTIONS:
        raise ParameterDomainError(
            f"unknown weight function {name!r}; known: "
            f"{sorted(WEIGHT_FUNCTIONS) + ['dirac_comb']}")
    weight = WEIGHT_FUNCTIONS[name](**params)
    rule = QuadratureRule.gauss_legendre(int(d.get("nodes", 16)))
    return FractionalOperatorSpec(DistributedOrder(weight=weight, quadrature=rule),
                                  sigma=sigma)
