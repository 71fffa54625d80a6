"""Corrected k-step time stepping for the tempered subdiffusion model.

The scheme marches  w^n = u^n - e^(-sigma*n*tau) rho  (so w^0 = 0) through

    P_tau w^n + A w^n = -e^(-sigma*n*tau) (1 + a_n) A rho,

where P_tau is the assembled discrete time operator and the starting
corrections a_1..a_{k-1} repair the order loss caused by the weak
singularity of the solution at t = 0 (a_n = 0 for n >= k, and identically
when corrections are disabled).  Each step solves one SPD system
(zero_weight*I + A); the matrix is constant across steps and factored once.

Spatial operators: a positive scalar, the 1D Dirichlet Laplacian on a
uniform interior grid (Thomas solves), or a general dense SPD matrix
(Cholesky).  All of them expose the energy norm |A^(1/2) v| and its dual,
which the stability experiments use.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .coefficients import check_alpha, check_order
from .errors import ParameterDomainError
from .operators import (DiscreteTimeOperator, FractionalOperatorSpec, SingleTerm,
                        apply_history, discretize, operator_spec_from_dict)
from .special import exact_scalar_solution

#: Starting corrections a_1..a_{k-1}, exact rationals.
_CORRECTIONS = {
    1: (),
    2: (Fraction(1, 2),),
    3: (Fraction(11, 12), Fraction(-5, 12)),
    4: (Fraction(31, 24), Fraction(-7, 6), Fraction(3, 8)),
    5: (Fraction(1181, 720), Fraction(-177, 80), Fraction(341, 240),
        Fraction(-251, 720)),
    6: (Fraction(2837, 1440), Fraction(-2543, 720), Fraction(17, 5),
        Fraction(-1201, 720), Fraction(95, 288)),
}


def correction_weights(k: int) -> tuple[Fraction, ...]:
    """Starting corrections a_1..a_{k-1} for order k (empty for k = 1)."""
    check_order(k)
    return _CORRECTIONS[k]


# ---------------------------------------------------------------------------
# Spatial operators
# ---------------------------------------------------------------------------

class ScalarOperator:
    """A = lam > 0 acting on one degree of freedom."""

    def __init__(self, value: float):
        if value <= 0.0:
            raise ParameterDomainError(f"scalar operator must be > 0, got {value!r}")
        self.value = float(value)

    @property
    def dim(self) -> int:
        return 1

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.value * np.asarray(v, dtype=float)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return np.asarray(rhs, dtype=float) / self.value

    def shifted_solver(self, shift: float):
        denom = shift + self.value
        return lambda rhs: np.asarray(rhs, dtype=float) / denom

    def energy_norm(self, v) -> float:
        return math.sqrt(self.value) * float(np.linalg.norm(v))

    def dual_norm(self, v) -> float:
        return float(np.linalg.norm(v)) / math.sqrt(self.value)


class _ThomasFactorization:
    """LU factorization of a tridiagonal system, reusable across solves."""

    def __init__(self, sub: np.ndarray, diag: np.ndarray, sup: np.ndarray):
        n = len(diag)
        piv = np.empty(n)
        mult = np.empty(max(n - 1, 0))
        piv[0] = diag[0]
        for i in range(n - 1):
            if piv[i] == 0.0:
                raise ParameterDomainError("tridiagonal system is singular")
            mult[i] = sub[i] / piv[i]
            piv[i + 1] = diag[i + 1] - mult[i] * sup[i]
        self._piv, self._mult, self._sup = piv, mult, sup

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        n = len(self._piv)
        y = np.array(rhs, dtype=float)
        for i in range(1, n):
            y[i] -= self._mult[i - 1] * y[i - 1]
        x = y
        x[-1] /= self._piv[-1]
        for i in range(n - 2, -1, -1):
            x[i] = (x[i] - self._sup[i] * x[i + 1]) / self._piv[i]
        return x


class TridiagonalLaplacian:
    """Second-order 1D Dirichlet Laplacian on (0, L): stencil (-1, 2, -1)/h^2.

    Interior points only; h = L/(size+1).  Eigenvalues are known in closed
    form, (4/h^2) sin^2(i*pi*h/(2L)), which the tests use for validation.
    """

    def __init__(self, size: int, length: float = 1.0):
        if size < 1:
            raise ParameterDomainError(f"size must be >= 1, got {size!r}")
        if length <= 0.0:
            raise ParameterDomainError(f"length must be > 0, got {length!r}")
        self.size = int(size)
        self.length = float(length)
        self.h = self.length / (self.size + 1)
        self._main = 2.0 / self.h ** 2
        self._off = -1.0 / self.h ** 2

    @property
    def dim(self) -> int:
        return self.size

    def grid(self) -> np.ndarray:
        """Interior grid points h, 2h, ..., size*h."""
        return self.h * np.arange(1, self.size + 1)

    def eigenvalues(self) -> np.ndarray:
        i = np.arange(1, self.size + 1)
        return (4.0 / self.h ** 2) * np.sin(i * math.pi * self.h / (2.0 * self.length)) ** 2

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        out = self._main * v
        out[1:] += self._off * v[:-1]
        out[:-1] += self._off * v[1:]
        return out

    def shifted_solver(self, shift: float):
        n = self.size
        fac = _ThomasFactorization(np.full(n - 1, self._off),
                                   np.full(n, self._main + shift),
                                   np.full(n - 1, self._off))
        return fac.solve

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return self.shifted_solver(0.0)(rhs)

    def energy_norm(self, v) -> float:
        return math.sqrt(max(float(np.dot(v, self.matvec(v))), 0.0))

    def dual_norm(self, v) -> float:
        return math.sqrt(max(float(np.dot(v, self.solve(v))), 0.0))


class DenseSPDOperator:
    """A general symmetric positive definite matrix, Cholesky-backed."""

    def __init__(self, matrix: np.ndarray):
        A = np.asarray(matrix, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ParameterDomainError("matrix must be square")
        if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(A).max())):
            raise ParameterDomainError("matrix must be symmetric")
        if np.linalg.eigvalsh(A)[0] <= 0.0:
            raise ParameterDomainError("matrix must be positive definite")
        self.matrix = A
        self._base_factor = cho_factor(A)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self._base_factor, np.asarray(rhs, dtype=float))

    def shifted_solver(self, shift: float):
        fac = cho_factor(self.matrix + shift * np.eye(self.dim))
        return lambda rhs: cho_solve(fac, np.asarray(rhs, dtype=float))

    def energy_norm(self, v) -> float:
        return math.sqrt(max(float(np.dot(v, self.matvec(v))), 0.0))

    def dual_norm(self, v) -> float:
        return math.sqrt(max(float(np.dot(v, self.solve(v))), 0.0))


# ---------------------------------------------------------------------------
# Problem and scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubdiffusionProblem:
    """Spatial operator, initial datum, horizon and time-operator spec."""

    A: object
    rho: np.ndarray
    T: float
    time_op: FractionalOperatorSpec

    def __post_init__(self) -> None:
        rho = np.atleast_1d(np.asarray(self.rho, dtype=float))
        object.__setattr__(self, "rho", rho)
        if self.T <= 0.0:
            raise ParameterDomainError(f"T must be > 0, got {self.T!r}")
        if rho.shape != (self.A.dim,):
            raise ParameterDomainError(
                f"rho has shape {rho.shape}, operator dimension is {self.A.dim}")

    @property
    def sigma(self) -> float:
        return self.time_op.sigma


def scalar_problem(lam: float, alpha: float, sigma: float = 0.0,
                   rho: float = 1.0, T: float = 1.0) -> SubdiffusionProblem:
    """Convenience constructor for the scalar single-term model."""
    return SubdiffusionProblem(A=ScalarOperator(lam), rho=np.array([rho]),
                               T=T, time_op=FractionalOperatorSpec(
                                   SingleTerm(alpha=alpha), sigma=sigma))


@dataclass(frozen=True)
class SolveResult:
    """Trajectory and per-step linear-solve residuals of one march."""

    times: np.ndarray
    u: np.ndarray              # (N+1, dim); row 0 is rho
    w: np.ndarray              # u minus the decaying initial layer
    residuals: np.ndarray      # relative residual per step (0 at n = 0)
    k: int
    tau: float
    corrected: bool
    sigma: float

    @property
    def N(self) -> int:
        return len(self.times) - 1

    @property
    def terminal(self) -> np.ndarray:
        return self.u[-1]


def step_solve(problem: SubdiffusionProblem, k: int, N: int,
               corrected: bool = True,
               op: DiscreteTimeOperator | None = None) -> SolveResult:
    """March the corrected scheme over N uniform steps.

    The implicit matrix (zero_weight*I + A) is factored once.  An already
    assembled ``op`` may be passed to amortize weight generation across
    repeated solves with identical (k, tau, spec).
    """
    check_order(k)
    if N < k:
        raise ParameterDomainError(f"need N >= k = {k}, got N = {N}")
    tau = problem.T / N
    if op is None:
        op = discretize(problem.time_op, k, tau, N)
    elif op.k != k or abs(op.tau - tau) > 1e-15 * tau:
        raise ParameterDomainError("supplied operator does not match (k, tau)")
    shift = op.zero_weight
    if shift <= 0.0:
        raise ParameterDomainError(f"zero weight must be > 0, got {shift!r}")
    A = problem.A
    solve_shifted = A.shifted_solver(shift)
    acorr = [float(a) for a in correction_weights(k)] if corrected else []
    rho = problem.rho
    Arho = A.matvec(rho)
    decay = np.exp(-problem.sigma * tau * np.arange(N + 1))
    dim = A.dim
    w = np.zeros((N + 1, dim))
    residuals = np.zeros(N + 1)
    for n in range(1, N + 1):
        hist = apply_history(op, w[:n], n)
        a_n = acorr[n - 1] if n - 1 < len(acorr) else 0.0
        rhs = -decay[n] * (1.0 + a_n) * Arho - hist
        w[n] = solve_shifted(rhs)
        res = shift * w[n] + A.matvec(w[n]) - rhs
        residuals[n] = float(np.linalg.norm(res)) / max(float(np.linalg.norm(rhs)), 1e-300)
    u = w + decay[:, None] * rho
    times = tau * np.arange(N + 1)
    for arr in (times, u, w, residuals):
        arr.setflags(write=False)
    return SolveResult(times=times, u=u, w=w, residuals=residuals, k=k,
                       tau=tau, corrected=corrected, sigma=problem.sigma)


def spatial_from_dict(d: dict):
    """Build a spatial operator from a parsed config mapping.

    Recognized layouts (unknown keys rejected)::

        {"variant": "scalar", "value": 1.0}
        {"variant": "tridiagonal", "size": 64, "length": 1.0}
        {"variant": "dense_spd", "matrix": [[...], ...]}
    """
    if not isinstance(d, dict) or "variant" not in d:
        raise ParameterDomainError("spatial config must be a mapping with a 'variant' key")
    variant = d["variant"]
    allowed = {"scalar": {"variant", "value"},
               "tridiagonal": {"variant", "size", "length"},
               "dense_spd": {"variant", "matrix"}}
    if variant not in allowed:
        raise ParameterDomainError(f"unknown spatial variant {variant!r}")
    unknown = set(d) - allowed[variant]
    if unknown:
        raise ParameterDomainError(f"unknown spatial config keys: {sorted(unknown)}")
    if variant == "scalar":
        return ScalarOperator(float(d["value"]))
    if variant == "tridiagonal":
        return TridiagonalLaplacian(int(d["size"]), float(d.get("length", 1.0)))
    return DenseSPDOperator(np.asarray(d["matrix"], dtype=float))


def _rho_from_config(value, A) -> np.ndarray:
    """Initial datum: a number, a list, or {"profile": "sin", "amplitude": a}
    (the lowest Dirichlet mode on a tridiagonal grid)."""
    if isinstance(value, dict):
        unknown = set(value) - {"profile", "amplitude"}
        if unknown:
            raise ParameterDomainError(f"unknown rho keys: {sorted(unknown)}")
        if value.get("profile") != "sin":
            raise ParameterDomainError(f"unknown rho profile {value.get('profile')!r}")
        if not isinstance(A, TridiagonalLaplacian):
            raise ParameterDomainError("the 'sin' profile needs a tridiagonal operator")
        amp = float(value.get("amplitude", 1.0))
        return amp * np.sin(math.pi * A.grid() / A.length)
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    return arr


def problem_from_dict(d: dict) -> SubdiffusionProblem:
    """Build a full problem from a parsed config mapping.

    Expected keys: ``operator`` (see operator_spec_from_dict), ``spatial``
    (see spatial_from_dict), ``rho`` and ``T``.  Unknown keys rejected.
    """
    if not isinstance(d, dict):
        raise ParameterDomainError("problem config must be a mapping")
    unknown = set(d) - {"operator", "spatial", "rho", "T"}
    if unknown:
        raise ParameterDomainError(f"unknown problem config keys: {sorted(unknown)}")
    for key in ("operator", "spatial", "rho", "T"):
        if key not in d:
            raise ParameterDomainError(f"problem config is missing {key!r}")
    A = spatial_from_dict(d["spatial"])
    return SubdiffusionProblem(A=A, rho=_rho_from_config(d["rho"], A),
                               T=float(d["T"]),
                               time_op=operator_spec_from_dict(d["operator"]))


# ---------------------------------------------------------------------------
# Convergence measurement against the scalar closed form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceReport:
    """Terminal errors and successive observed orders on a refinement path."""

    k: int
    alpha: float
    sigma: float
    lam: float
    corrected: bool
    N_list: tuple[int, ...]
    errors: tuple[float, ...]
    orders: tuple[float, ...]
    precision: int | None

    @property
    def observed_order(self) -> float:
        """Order estimate from the two finest grids."""
        return self.orders[-1]


def convergence_harness(k: int, alpha: float, sigma: float, lam: float,
                        N_list, corrected: bool = True, rho: float = 1.0,
                        T: float = 1.0,
                        precision: int | None = None) -> ConvergenceReport:
    """Measure terminal errors of the scalar scheme along a refinement path.

    ``precision`` selects the arithmetic: None runs the production float64
    stepper; an integer runs the mpmath twin at that many digits (needed to
    observe orders k >= 5, whose errors drop below the float64 floor on
    fine grids).
    """
    check_order(k)
    check_alpha(alpha)
    N_list = tuple(int(n) for n in N_list)
    if len(N_list) < 2 or any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ParameterDomainError("N_list must be strictly increasing, length >= 2")
    errors = []
    if precision is None:
        for N in N_list:
            res = step_solve(scalar_problem(lam, alpha, sigma, rho, T), k, N,
                             corrected=corrected)
            exact = exact_scalar_solution(lam, alpha, sigma, rho, T)
            errors.append(abs(float(res.terminal[0]) - exact))
    else:
        from .highprec import terminal_error_mp
        for N in N_list:
            errors.append(terminal_error_mp(k, alpha, sigma, lam, rho, T, N,
                                            corrected=corrected, dps=precision))
    orders = []
    for e0, e1 in zip(errors, errors[1:]):
        if e0 > 0.0 and e1 > 0.0:
            orders.append(math.log2(e0 / e1))
        else:
            orders.append(math.inf)
    return ConvergenceReport(k=k, alpha=alpha, sigma=sigma, lam=lam,
                             corrected=corrected, N_list=N_list,
                             errors=tuple(errors), orders=tuple(orders),
                             precision=precision)


# ---------------------------------------------------------------------------
# Perturbation stability experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbationRecord:
    """Energy-norm growth ratios of perturbed runs at one grid size."""

    k: int
    N: int
    ratios_sq: tuple[float, ...]      # (1/N) sum_n ||eps^n||^2 / ||eps^0||^2
    ratios_lin: tuple[float, ...]     # tau sum_n ||eps^n|| / (T ||eps^0||)

    @property
    def max_sq(self) -> float:
        return max(self.ratios_sq)

    @property
    def max_lin(self) -> float:
        return max(self.ratios_lin)


def stability_experiment(problem: SubdiffusionProblem, k: int, N: int,
                         perturbations: int = 10, seed: int = 0,
                         amplitude: float = 1.0) -> PerturbationRecord:
    """Run base and perturbed solves, returning bounded-growth ratios.

    Each perturbation draws a Gaussian eps^0, reruns the scheme from
    rho + eps^0, and measures the difference trajectory in the energy norm.
    """
    base = step_solve(problem, k, N)
    rng = np.random.default_rng(seed)
    A = problem.A
    tau = problem.T / N
    ratios_sq = []
    ratios_lin = []
    for _ in range(perturbations):
        eps0 = amplitude * rng.standard_normal(A.dim)
        pert = dataclasses.replace(problem, rho=problem.rho + eps0)
        res = step_solve(pert, k, N)
        diff = res.u - base.u
        norms = np.array([A.energy_norm(diff[n]) for n in range(1, N + 1)])
        e0 = A.energy_norm(eps0)
        ratios_sq.append(float(np.sum(norms ** 2)) / (N * e0 ** 2))
        ratios_lin.append(tau * float(np.sum(norms)) / (problem.T * e0))
    return PerturbationRecord(k=k, N=N, ratios_sq=tuple(ratios_sq),
                              ratios_lin=tuple(ratios_lin))


@dataclass(frozen=True)
class RefinementStabilityReport:
    """Perturbation ratios across a refinement path, with a bounded verdict."""

    k: int
    records: tuple[PerturbationRecord, ...]
    growth_factor: float

    @property
    def bounded(self) -> bool:
        first, last = self.records[0], self.records[-1]
        return (last.max_sq <= self.growth_factor * first.max_sq
                and last.max_lin <= self.growth_factor * first.max_lin)


def stability_refinement(problem: SubdiffusionProblem, k: int, N_list,
                         perturbations: int = 10, seed: int = 0,
                         growth_factor: float = 2.0) -> RefinementStabilityReport:
    """Repeat the perturbation experiment on successively finer grids.

    The same seed is used at every grid size so the drawn perturbations
    match across the refinement and the ratios are directly comparable.
    """
    records = tuple(stability_experiment(problem, k, N, perturbations, seed)
                    for N in N_list)
    return RefinementStabilityReport(k=k, records=records,
                                     growth_factor=growth_factor)
