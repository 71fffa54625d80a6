"""Numerical certification of the positivity and A-stability properties.

Two quantitative properties underpin the energy analysis of the multiplier
scheme:

* Positivity (P).  The trigonometric polynomial
  1 - sum_j mu_j e^(-sigma*j*tau) cos(jx)  must be strictly positive.  It
  splits as  c_k + f(x)  where f is the generating function of the
  symmetrized band Toeplitz matrix built from the multipliers and c_k is
  the energy constant (1/2, 1/2, 1/4, 1/24 for k = 3..6).  The
  Grenander-Szego theorem sandwiches the Toeplitz eigenvalues between the
  extrema of f, so a nonnegative f certifies the quadratic-form lower
  bound  sum_n <w^n, w^n - sum_j mu_j e^(-sigma*j*tau) w^(n-j)>
  >= c_k sum_n ||w^n||^2.

* A-stability (A).  The composite series q(zeta) = g(zeta)/mu(zeta) must
  satisfy |arg q| <= pi/2 on the unit circle, equivalently Re q >= 0,
  which in turn makes the convolution quadratic form
  sum_n (sum_j q_j v^(n-j), v^n) nonnegative.  The argument is computed
  from the factored form

      q = (1 - z)^alpha * R_k(z)^alpha / prod_i (1 - c_i z)^(m_i),
      z = e^(-sigma*tau) e^(ix),

  as  alpha*theta_1 + alpha*theta_2 + (reciprocal-factor angles), which is
  continuous on (0, pi] and avoids principal-branch ambiguity.

Everything here is checked two ways where possible: closed-form extremum
locations against dense-grid searches, Toeplitz eigenvalues against the
generating-function sandwich, and the argument bound against direct
random-sequence quadratic forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coefficients import check_alpha, check_order
from .errors import GridTooCoarseError, InternalConsistencyError, ParameterDomainError
from .multipliers import QTable, multiplier_set

#: Energy constants c_k of the multiplier lower bound.
ENERGY_CONSTANTS = {3: Fraction(1, 2), 4: Fraction(1, 2),
                    5: Fraction(1, 4), 6: Fraction(1, 24)}

#: Diagonal entry of the symmetrized band matrix; equals 1 - c_k.
_BAND_DIAGONAL = {3: Fraction(1, 2), 4: Fraction(1, 2),
                  5: Fraction(3, 4), 6: Fraction(23, 24)}

# Residual polynomial R_k with (1 - z) * R_k(z) equal to the BDF-k
# characteristic polynomial (ascending powers).
_RESIDUAL = {
    3: (Fraction(11, 6), Fraction(-7, 6), Fraction(1, 3)),
    4: (Fraction(25, 12), Fraction(-23, 12), Fraction(13, 12), Fraction(-1, 4)),
    5: (Fraction(137, 60), Fraction(-163, 60), Fraction(137, 60),
        Fraction(-63, 60), Fraction(1, 5)),
    6: (Fraction(147, 60), Fraction(-213, 60), Fraction(237, 60),
        Fraction(-163, 60), Fraction(62, 60), Fraction(-1, 6)),
}

# Linear factors (c, multiplicity) with prod (1 - c*z)^mult == mu(z).
_RECIPROCAL_FACTORS = {
    3: ((Fraction(1, 2), 1),),
    4: ((Fraction(1, 2), 1),),
    5: ((Fraction(1, 2), 2),),
    6: ((Fraction(3, 5), 1), (Fraction(1, 2), 1), (Fraction(1, 3), 1)),
}


def _check_multiplier_order(k: int) -> int:
    check_order(k)
    if k < 3:
        raise ParameterDomainError(
            f"multiplier-based stability analysis applies to k in (3..6), got {k}")
    return k


# ---------------------------------------------------------------------------
# Positivity side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigPolynomial:
    """Even trigonometric polynomial t_0 + sum_j t_j cos(jx)."""

    coeffs: tuple[float, ...]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, self.coeffs[0])
        for j, t in enumerate(self.coeffs[1:], start=1):
            out += t * np.cos(j * x)
        return out

    def negated(self) -> "TrigPolynomial":
        return TrigPolynomial(tuple(-t for t in self.coeffs))


def positivity_generating_function(k: int, sigma: float = 0.0,
                                   tau: float = 1.0) -> TrigPolynomial:
    """Generating function of the symmetrized multiplier band matrix.

    f(x) = d_k - sum_j mu_j e^(-sigma*j*tau) cos(jx) with the per-order
    diagonal d_k = 1 - c_k.
    """
    _check_multiplier_order(k)
    damp = math.exp(-sigma * tau)
    mu = multiplier_set(k).mu_float
    coeffs = [float(_BAND_DIAGONAL[k])]
    coeffs += [-m * damp ** j for j, m in enumerate(mu, start=1)]
    return TrigPolynomial(tuple(coeffs))


def _golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b] to width tol in x."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = float(f(c)), float(f(d))
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = float(f(d))
    x = (a + b) / 2.0
    return x, float(f(x))


def trig_min(f: TrigPolynomial, grid_size: int = 4096,
             refine_tol: float = 1e-10) -> tuple[float, float]:
    """Global minimum of an even trig polynomial over [0, pi].

    Dense grid scan followed by golden-section refinement in the winning
    grid cell.  grid_size must be at least 1024 so no oscillation of a
    degree <= 6 polynomial can hide between grid points.
    """
    if grid_size < 1024:
        raise ParameterDomainError(f"grid_size must be >= 1024, got {grid_size}")
    x = np.linspace(0.0, math.pi, grid_size + 1)
    v = f(x)
    i = int(np.argmin(v))
    a = x[max(i - 1, 0)]
    b = x[min(i + 1, grid_size)]
    xr, fr = _golden_section(f, a, b, refine_tol)
    if v[i] < fr:
        return float(x[i]), float(v[i])
    return xr, fr


def trig_max(f: TrigPolynomial, grid_size: int = 4096,
             refine_tol: float = 1e-10) -> tuple[float, float]:
    """Global maximum over [0, pi], via trig_min of the negated polynomial."""
    x, v = trig_min(f.negated(), grid_size, refine_tol)
    return x, -v


def toeplitz_band(k: int, sigma: float, tau: float, N: int) -> np.ndarray:
    """Lower-triangular band Toeplitz matrix of the multiplier form.

    Entry (i, i-j) holds -mu_j e^(-sigma*j*tau) for j = 0..k with the
    convention mu_0 = -(1 - c_k), i.e. the diagonal carries 1 - c_k.
    """
    _check_multiplier_order(k)
    if N < 1:
        raise ParameterDomainError(f"N must be >= 1, got {N}")
    damp = math.exp(-sigma * tau)
    entries = [float(_BAND_DIAGONAL[k])]
    entries += [-m * damp ** j
                for j, m in enumerate(multiplier_set(k).mu_float, start=1)]
    L = np.zeros((N, N))
    for j, e in enumerate(entries):
        if j >= N:
            break
        idx = np.arange(j, N)
        L[idx, idx - j] = e
    return L


@dataclass(frozen=True)
class ToeplitzEigenCheck:
    """Eigenvalue sandwich record for one symmetrized band matrix."""

    k: int
    sigma: float
    tau: float
    N: int
    lambda_min: float
    lambda_max: float
    f_min: float
    f_max: float
    tol: float

    @property
    def sandwiched(self) -> bool:
        return (self.f_min - self.tol <= self.lambda_min
                and self.lambda_max <= self.f_max + self.tol)

    @property
    def positive_definite(self) -> bool:
        return self.lambda_min > 0.0


def toeplitz_eigencheck(k: int, sigma: float, tau: float, N: int,
                        tol: float = 1e-10) -> ToeplitzEigenCheck:
    """Verify f_min <= lambda_min <= lambda_max <= f_max for the
    symmetrized band matrix of dimension N.

    A violation beyond ``tol`` raises InternalConsistencyError: the
    sandwich is a theorem for these matrices (for N <= k it follows by
    Cauchy interlacing with a larger section), so failure means a bug.
    """
    if N < 1:
        raise ParameterDomainError(f"N must be >= 1, got {N}")
    L = toeplitz_band(k, sigma, tau, N)
    H = (L + L.T) / 2.0
    ev = np.linalg.eigvalsh(H)
    f = positivity_generating_function(k, sigma, tau)
    _, f_min = trig_min(f)
    _, f_max = trig_max(f)
    result = ToeplitzEigenCheck(k=k, sigma=sigma, tau=tau, N=N,
                                lambda_min=float(ev[0]), lambda_max=float(ev[-1]),
                                f_min=f_min, f_max=f_max, tol=tol)
    if not result.sandwiched:
        raise InternalConsistencyError(
            f"eigenvalue sandwich violated for k={k}, N={N}: "
            f"[{result.lambda_min}, {result.lambda_max}] vs "
            f"[{f_min}, {f_max}] (tol {tol})")
    return result


@dataclass(frozen=True)
class EnergyCheck:
    """Result of the direct multiplier energy inequality evaluation."""

    k: int
    trials: int
    min_slack: float
    tol: float
    witness: np.ndarray | None

    @property
    def verdict(self) -> bool:
        return self.min_slack >= -self.tol


def multiplier_energy_check(k: int, sigma: float = 0.0, tau: float = 1.0,
                            N: int = 50, trials: int = 1000, seed: int = 0,
                            dim: int = 1, tol: float = 1e-10) -> EnergyCheck:
    """Evaluate sum_n <w^n, w^n - sum_j mu_j e^(-sigma*j*tau) w^(n-j)>
    minus c_k sum_n |w^n|^2 for seeded Gaussian sequences.

    Entries with index <= 0 are zero.  Returns the worst slack over all
    trials; a negative slack beyond tolerance would contradict the
    positive-definiteness certified by the Toeplitz analysis, so the
    failing sequence is kept as a witness.
    """
    _check_multiplier_order(k)
    rng = np.random.default_rng(seed)
    damp = math.exp(-sigma * tau)
    mu = multiplier_set(k).mu_float
    ck = float(ENERGY_CONSTANTS[k])
    W = rng.standard_normal((trials, N, dim))
    V = W.copy()
    for j, m in enumerate(mu, start=1):
        V[:, j:, :] -= m * damp ** j * W[:, :-j, :]
    lhs = np.einsum("tnd,tnd->t", W, V)
    rhs = ck * np.einsum("tnd,tnd->t", W, W)
    slack = lhs - rhs
    worst = int(np.argmin(slack))
    min_slack = float(slack[worst])
    witness = W[worst].copy() if min_slack < -tol else None
    return EnergyCheck(k=k, trials=trials, min_slack=min_slack, tol=tol,
                       witness=witness)


@dataclass(frozen=True)
class QuadraticFormCheck:
    """Result of the convolution quadratic-form nonnegativity evaluation."""

    k: int
    trials: int
    min_value: float
    min_scaled: float
    tol: float
    witness: np.ndarray | None

    @property
    def verdict(self) -> bool:
        return self.min_scaled >= -self.tol


def quadrature_positivity_check(q: QTable, N: int, trials: int = 1000,
                                seed: int = 0, dim: int = 1,
                                tol: float = 1e-10) -> QuadraticFormCheck:
    """Evaluate sum_n (sum_{j<n} q_j v^(n-j), v^n) for seeded Gaussian
    sequences and check it stays nonnegative up to a scaled tolerance.

    This is the discrete consequence of |arg q| <= pi/2 that the solver's
    energy estimate rests on.
    """
    if q.J < N - 1:
        raise ParameterDomainError(f"q covers j <= {q.J}, need j <= {N - 1}")
    rng = np.random.default_rng(seed)
    qv = q.q[:N]
    Q = np.zeros((N, N))
    for j in range(N):
        idx = np.arange(j, N)
        Q[idx, idx - j] = qv[j]
    V = rng.standard_normal((trials, N, dim))
    QV = np.einsum("nm,tmd->tnd", Q, V)
    vals = np.einsum("tnd,tnd->t", QV, V)
    scale = float(np.abs(qv).sum()) * np.einsum("tnd,tnd->t", V, V)
    scaled = vals / np.maximum(scale, 1.0)
    worst = int(np.argmin(scaled))
    witness = V[worst].copy() if scaled[worst] < -tol else None
    return QuadraticFormCheck(k=q.k, trials=trials, min_value=float(vals[worst]),
                              min_scaled=float(scaled[worst]), tol=tol,
                              witness=witness)


# ---------------------------------------------------------------------------
# A-stability side: factored argument of q on the unit circle
# ---------------------------------------------------------------------------

def _residual_values(k: int, z: np.ndarray) -> np.ndarray:
    coeffs = [float(c) for c in _RESIDUAL[k]]
    out = np.full_like(z, coeffs[-1], dtype=complex)
    for c in reversed(coeffs[:-1]):
        out = out * z + c
    return out


def _factored_angles(k: int, x: np.ndarray, damp: float):
    """Component angles of the factored q at z = damp * e^(ix).

    Returns (theta1, theta2, recip) where theta1 = arg(1 - z), theta2 is
    the continuous argument of the residual polynomial, and recip holds
    one angle array per distinct reciprocal linear factor (multiplicity
    folded in).  At damp == 1, theta1 uses the closed form (x - pi)/2,
    which extends continuously to x = 0 where arg(1 - z) is undefined.
    """
    x = np.asarray(x, dtype=float)
    z = damp * np.exp(1j * x)
    if damp == 1.0:
        theta1 = (x - math.pi) / 2.0
    else:
        theta1 = np.angle(1.0 - z)
    theta2 = np.unwrap(np.angle(_residual_values(k, z)))
    recip = tuple(-mult * np.angle(1.0 - float(c) * z)
                  for c, mult in _RECIPROCAL_FACTORS[k])
    return theta1, theta2, recip


@dataclass(frozen=True)
class ArgumentSweep:
    """Argument of q(e^(ix)) traced over a grid in (0, pi]."""

    k: int
    alpha: float
    sigma: float
    tau: float
    grid: np.ndarray
    arg_values: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    reciprocal_angles: tuple[np.ndarray, ...]
    max_arg: float
    min_arg: float
    limit_at_zero: float

    @property
    def max_abs_arg(self) -> float:
        return max(abs(self.max_arg), abs(self.min_arg))


def argument_sweep(k: int, alpha: float, sigma: float = 0.0, tau: float = 1.0,
                   grid_size: int = 8192) -> ArgumentSweep:
    """Trace arg q(e^(ix)) over x in (0, pi] via the factored decomposition.

    x = 0 is excluded: at sigma = 0 the series g vanishes at zeta = 1 and
    the argument is undefined there; the one-sided limit -alpha*pi/2 is
    recorded separately.  Any residual jump above pi/2 between adjacent
    grid points raises GridTooCoarseError.
    """
    _check_multiplier_order(k)
    check_alpha(alpha)
    if grid_size < 16:
        raise ParameterDomainError(f"grid_size must be >= 16, got {grid_size}")
    damp = math.exp(-sigma * tau)
    x = np.linspace(math.pi / grid_size, math.pi, grid_size)
    theta1, theta2, recip = _factored_angles(k, x, damp)
    arg = alpha * theta1 + alpha * theta2 + sum(recip)
    jump = float(np.max(np.abs(np.diff(arg)))) if grid_size > 1 else 0.0
    if jump > math.pi / 2.0:
        raise GridTooCoarseError(
            f"argument jump {jump:.3f} > pi/2 between grid points "
            f"(k={k}, alpha={alpha}, grid_size={grid_size})")
    limit = -alpha * math.pi / 2.0 if sigma * tau == 0.0 else 0.0
    for a in (theta1, theta2, arg) + recip:
        a.setflags(write=False)
    x.setflags(write=False)
    return ArgumentSweep(k=k, alpha=alpha, sigma=sigma, tau=tau, grid=x,
                         arg_values=arg, theta1=theta1, theta2=theta2,
                         reciprocal_angles=recip,
                         max_arg=float(arg.max()), min_arg=float(arg.min()),
                         limit_at_zero=limit)


def q_boundary_values(k: int, alpha: float, x: np.ndarray, sigma: float = 0.0,
                      tau: float = 1.0) -> np.ndarray:
    """q evaluated on the unit circle via the factored magnitude/argument."""
    _check_multiplier_order(k)
    check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    damp = math.exp(-sigma * tau)
    z = damp * np.exp(1j * x)
    theta1, theta2, recip = _factored_angles(k, x, damp)
    arg = alpha * theta1 + alpha * theta2 + sum(recip)
    mag = (np.abs(1.0 - z) * np.abs(_residual_values(k, z))) ** alpha
    for c, mult in _RECIPROCAL_FACTORS[k]:
        mag = mag / np.abs(1.0 - float(c) * z) ** mult
    return mag * np.exp(1j * arg)


# ---------------------------------------------------------------------------
# Reference extremum constants of the argument bound analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremumRecord:
    """One verified constant: an extremum value against its bound."""

    name: str
    y: float | None
    x: float | None
    value: float
    bound: float
    kind: str                    # "above" / "below": one-sided bound; "root": |value| <= bound
    y_ref: float | None = None
    x_ref: float | None = None

    @property
    def satisfied(self) -> bool:
        if self.kind == "above":
            return self.value > self.bound
        if self.kind == "below":
            return self.value < self.bound
        return abs(self.value) <= self.bound

    @property
    def margin(self) -> float:
        if self.kind == "above":
            return self.value - self.bound
        if self.kind == "below":
            return self.bound - self.value
        return self.bound - abs(self.value)

    def location_error(self) -> float:
        if self.y_ref is None or self.y is None:
            return 0.0
        return abs(self.y - self.y_ref)


@dataclass(frozen=True)
class ExtremaReport:
    """All verified constants for one order, plus boundary angle values."""

    k: int
    records: tuple[ExtremumRecord, ...]
    angle_at_zero: float
    angle_at_pi: float

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied for r in self.records)


# Derivative numerators h(y), y = cos x, of the untempered composite angle
# sum; their roots in (-1, 1) locate the interior critical points.
_SLOPE_NUMERATOR = {
    3: (-88, 262, -230, 65),
    4: (450, -1601, 1949, -862, 82),
    5: (-9864, 42348, -66272, 43988, -8407, -1343),
    6: (793800, -6314580, 20885463, -37146627, 38067828,
        -21920022, 5908998, -72525, -199635),
}

# Reference root locations (y, x) and the interior-minimum bounds.
_SLOPE_ROOT_REFS = {
    4: ((0.1288, 1.4416), (0.76042, 0.7068)),
    5: ((-0.0996, 1.6705), (0.6531, 0.8591)),
    6: ((-0.1391, 1.7103), (0.5015, 1.0455)),
}
_INTERIOR_MIN_BOUND = {4: -1.37, 5: -1.33, 6: -1.566}

# k = 6 reciprocal-angle slope numerator and its reference root, bounding
# delta(x) = theta3 + theta4 + theta5 away from pi/2.
_RECIP_SLOPE_NUMERATOR = (135, -429, 420, -120)
_RECIP_SLOPE_ROOT_REF = (0.5041, 1.0425)
_RECIP_MAX_BOUND = 1.5

# k = 6 band-minimum cubic in xi = cos x and its closed-form minimizer.
_BAND_MIN_CUBIC = (Fraction(-2, 5), Fraction(4, 3), Fraction(-17, 15), Fraction(7, 24))
_BAND_MIN_BOUND = 0.004785

# k = 3 slope-numerator cubic minimum: positive slope certificate.
_SLOPE_MIN_BOUND_K3 = 2.02


def _newton_polish(coeffs_desc, x0: float, steps: int = 4) -> float:
    p = np.asarray(coeffs_desc, dtype=float)
    dp = np.polyder(p)
    x = float(x0)
    for _ in range(steps):
        d = np.polyval(dp, x)
        if d == 0.0:
            break
        x -= np.polyval(p, x) / d
    return x


def _real_roots_in(coeffs_desc, lo: float, hi: float,
                   imag_tol: float = 1e-8) -> list[float]:
    """Real roots inside (lo, hi): companion-matrix eigenvalues, polished."""
    roots = np.roots(np.asarray(coeffs_desc, dtype=float))
    out = []
    for r in roots:
        if abs(r.imag) < imag_tol and lo < r.real < hi:
            out.append(_newton_polish(coeffs_desc, r.real))
    return sorted(out)


def composite_angle(k: int, x) -> np.ndarray:
    """Untempered composite angle theta1 + theta2 + reciprocal angles.

    This is the alpha -> 1 worst case of arg q at sigma = 0, defined (by
    continuous extension) on the closed interval [0, pi].
    """
    _check_multiplier_order(k)
    theta1, theta2, recip = _factored_angles(k, np.atleast_1d(x), 1.0)
    return theta1 + theta2 + sum(recip)


def reciprocal_angle_sum(k: int, x) -> np.ndarray:
    """Sum of the reciprocal-factor angles (the positive part of arg q)."""
    _check_multiplier_order(k)
    _, _, recip = _factored_angles(k, np.atleast_1d(x), 1.0)
    return sum(recip)


def lower_bound_extrema(k: int) -> ExtremaReport:
    """Locate and verify every reference extremum constant for order k.

    Covers, per order: the slope-numerator roots in (-1, 1) with their
    x-locations, the interior minimum of the composite angle against its
    bound, the k = 6 reciprocal-angle maximum against 1.5, and the k = 6
    band-minimum cubic against 0.004785 at its closed-form minimizer.
    """
    _check_multiplier_order(k)
    records: list[ExtremumRecord] = []

    if k == 3:
        # Interior critical point of the slope-numerator cubic, closed form.
        y_star = (131.0 - math.sqrt(1981.0)) / 132.0
        h = _SLOPE_NUMERATOR[3]
        roots = _real_roots_in(np.polyder(np.asarray(h, dtype=float)), -1.0, 1.0)
        y_num = roots[0] if roots else y_star
        if abs(y_num - y_star) > 1e-10:
            raise InternalConsistencyError(
                f"closed-form critical point {y_star} vs numeric {y_num}")
        records.append(ExtremumRecord(
            name="slope-numerator minimum (k=3)",
            y=y_star, x=math.acos(y_star),
            value=float(np.polyval(np.asarray(h, dtype=float), y_star)),
            bound=_SLOPE_MIN_BOUND_K3, kind="above", y_ref=0.65524))
    else:
        h = np.asarray(_SLOPE_NUMERATOR[k], dtype=float)
        roots = _real_roots_in(h, -1.0, 1.0)
        refs = _SLOPE_ROOT_REFS[k]
        if len(roots) != len(refs):
            raise InternalConsistencyError(
                f"expected {len(refs)} slope roots in (-1,1) for k={k}, "
                f"found {len(roots)}")
        for (y_ref, x_ref), y in zip(refs, roots):
            records.append(ExtremumRecord(
                name=f"slope-numerator root near y={y_ref} (k={k})",
                y=y, x=math.acos(y), value=float(np.polyval(h, y)),
                bound=1e-6, kind="root", y_ref=y_ref, x_ref=x_ref))
        # The smaller root (larger x) is the interior minimum of the angle sum.
        y1 = roots[0]
        x1 = math.acos(y1)
        g_min = float(composite_angle(k, x1)[0])
        records.append(ExtremumRecord(
            name=f"interior angle minimum (k={k})",
            y=y1, x=x1, value=g_min,
            bound=_INTERIOR_MIN_BOUND[k], kind="above",
            y_ref=refs[0][0], x_ref=refs[0][1]))

    if k == 6:
        rroots = _real_roots_in(_RECIP_SLOPE_NUMERATOR, -1.0, 1.0)
        if len(rroots) != 1:
            raise InternalConsistencyError(
                f"expected 1 reciprocal-slope root in (-1,1), found {len(rroots)}")
        y1 = rroots[0]
        x1 = math.acos(y1)
        records.append(ExtremumRecord(
            name="reciprocal angle maximum (k=6)",
            y=y1, x=x1, value=float(reciprocal_angle_sum(6, x1)[0]),
            bound=_RECIP_MAX_BOUND, kind="below",
            y_ref=_RECIP_SLOPE_ROOT_REF[0], x_ref=_RECIP_SLOPE_ROOT_REF[1]))

        xi_star = (20.0 - math.sqrt(94.0)) / 18.0
        cubic = np.asarray([float(c) for c in _BAND_MIN_CUBIC])
        crit = _real_roots_in(np.polyder(cubic), -1.0, 1.0)
        candidates = [xi_star] + crit + [-1.0, 1.0]
        values = [float(np.polyval(cubic, c)) for c in candidates]
        if min(values) < float(np.polyval(cubic, xi_star)) - 1e-12:
            raise InternalConsistencyError(
                "band-minimum cubic not minimized at its closed-form point")
        records.append(ExtremumRecord(
            name="band-minimum cubic (k=6)",
            y=xi_star, x=math.acos(xi_star),
            value=float(np.polyval(cubic, xi_star)),
            bound=_BAND_MIN_BOUND, kind="above"))

    g0 = float(composite_angle(k, 0.0)[0])
    gpi = float(composite_angle(k, math.pi)[0])
    return ExtremaReport(k=k, records=tuple(records),
                         angle_at_zero=g0, angle_at_pi=gpi)


# ---------------------------------------------------------------------------
# Combined report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    """Verdicts and key numbers for both properties at one parameter set."""

    k: int
    alpha: float
    sigma: float
    tau: float
    property_p: dict
    property_a: dict
    tolerances: dict

    @property
    def verdict(self) -> bool:
        return bool(self.property_p["verdict"] and self.property_a["verdict"])

    def to_dict(self) -> dict:
        return {
            "schema": "fracbdf-stability-report-v1",
            "k": self.k, "alpha": self.alpha,
            "sigma": self.sigma, "tau": self.tau,
            "property_p": self.property_p,
            "property_a": self.property_a,
            "tolerances": self.tolerances,
            "verdict": "PASS" if self.verdict else "FAIL",
        }


def stability_report(k: int, alpha: float, sigma: float = 0.0, tau: float = 1.0,
                     grid_size: int = 8192,
                     matrix_sizes: tuple[int, ...] = (10, 50, 200, 400),
                     arg_tol: float = 1e-9,
                     eigen_tol: float = 1e-10) -> StabilityReport:
    """Run the positivity and A-stability checks for one parameter set."""
    f = positivity_generating_function(k, sigma, tau)
    x_min, f_min = trig_min(f, grid_size=max(grid_size, 1024))
    ck = float(ENERGY_CONSTANTS[k])
    toeplitz = []
    sandwich_ok = True
    pd_ok = True
    for N in matrix_sizes:
        chk = toeplitz_eigencheck(k, sigma, tau, N, tol=eigen_tol)
        sandwich_ok &= chk.sandwiched
        if k == 6:
            pd_ok &= chk.positive_definite
        toeplitz.append({"N": N, "lambda_min": chk.lambda_min,
                         "lambda_max": chk.lambda_max,
                         "f_min": chk.f_min, "f_max": chk.f_max})
    p_verdict = (f_min >= -1e-12) and (ck + f_min > 0.0) and sandwich_ok and pd_ok
    property_p = {
        "f_min": f_min, "x_min": x_min,
        "positivity_polynomial_min": ck + f_min,
        "energy_constant": ck,
        "toeplitz": toeplitz,
        "verdict": bool(p_verdict),
    }
    sweep = argument_sweep(k, alpha, sigma, tau, grid_size)
    i_ext = int(np.argmax(np.abs(sweep.arg_values)))
    a_verdict = sweep.max_abs_arg <= math.pi / 2.0 + arg_tol
    property_a = {
        "max_abs_arg": sweep.max_abs_arg,
        "max_arg": sweep.max_arg, "min_arg": sweep.min_arg,
        "extremum_x": float(sweep.grid[i_ext]),
        "limit_at_zero": sweep.limit_at_zero,
        "half_pi": math.pi / 2.0,
        "verdict": bool(a_verdict),
    }
    tolerances = {"argument": arg_tol, "eigen_sandwich": eigen_tol,
                  "f_min_floor": 1e-12}
    return StabilityReport(k=k, alpha=alpha, sigma=sigma, tau=tau,
                           property_p=property_p, property_a=property_a,
                           tolerances=tolerances)
