"""Numerics for the extended point-vortex balance system.

Evaluates residuals of the coupled system in positions z, conjugate
variables w, inverse-difference variables Z, W and multiplier lambda,
solves it for real configurations by damped Gauss-Newton, classifies
stationary configurations, checks the conserved identities, and maps
synthetic singular sequences onto two-colored diagrams by fitting the
decay order of every component.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .diagram import Diagram, validate


class CollisionError(ValueError):
    """Two positions coincide (or nearly so): inverse differences blow up."""


class NoConvergenceError(RuntimeError):
    """The solver exhausted its attempt budget."""


class AmbiguousExponentError(ValueError):
    """A fitted order exponent sits on the edge of the decision band."""


@dataclass(frozen=True)
class Configuration:
    """A point of the extended system (not necessarily a solution)."""

    gamma: tuple
    z: tuple
    w: tuple
    Z: tuple  # row-major n x n, antisymmetric, zero diagonal
    W: tuple
    lam: complex

    @property
    def n(self) -> int:
        return len(self.gamma)

    def z_array(self) -> np.ndarray:
        return np.array(self.z, dtype=complex)

    def w_array(self) -> np.ndarray:
        return np.array(self.w, dtype=complex)

    def Z_matrix(self) -> np.ndarray:
        return np.array(self.Z, dtype=complex).reshape(self.n, self.n)

    def W_matrix(self) -> np.ndarray:
        return np.array(self.W, dtype=complex).reshape(self.n, self.n)

    @property
    def is_real(self) -> bool:
        return bool(np.allclose(self.z_array(), np.conj(self.w_array()), rtol=0, atol=1e-12))

    def to_json(self) -> dict:
        pack = lambda xs: [[x.real, x.imag] for x in xs]
        return {
            "gamma": list(self.gamma),
            "z": pack(self.z),
            "w": pack(self.w),
            "lambda": [self.lam.real, self.lam.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Configuration":
        unpack = lambda xs: [complex(re, im) for re, im in xs]
        return make_configuration(
            data["gamma"],
            unpack(data["z"]),
            unpack(data["w"]),
            complex(data["lambda"][0], data["lambda"][1]),
        )


def _difference_matrices(z, w, min_separation=1e-13):
    n = len(z)
    Z = np.zeros((n, n), dtype=complex)
    W = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            zjk = z[k] - z[j]
            wjk = w[k] - w[j]
            if abs(zjk) < min_separation or abs(wjk) < min_separation:
                raise CollisionError(f"vertices {j+1},{k+1} coincide")
            Z[j, k] = 1.0 / wjk
            W[j, k] = 1.0 / zjk
    return Z, W


def make_configuration(gamma, z, w=None, lam=1.0 + 0.0j) -> Configuration:
    """Build a Configuration, deriving w (conjugate), Z and W."""
    z = [complex(v) for v in z]
    w = [v.conjugate() for v in z] if w is None else [complex(v) for v in w]
    Z, W = _difference_matrices(z, w)
    return Configuration(
        tuple(float(g) for g in gamma),
        tuple(z),
        tuple(w),
        tuple(Z.flatten()),
        tuple(W.flatten()),
        complex(lam),
    )


def velocities(z, gamma) -> np.ndarray:
    """V_n = sum over j of Gamma_j / conj(z_n - z_j)."""
    z = np.asarray(z, dtype=complex)
    n = len(z)
    V = np.zeros(n, dtype=complex)
    for m in range(n):
        for j in range(n):
            if j == m:
                continue
            diff = z[m] - z[j]
            if abs(diff) < 1e-13:
                raise CollisionError(f"vertices {j+1},{m+1} coincide")
            V[m] += gamma[j] / diff.conjugate()
    return V


def residual(c: Configuration) -> float:
    """Max-norm residual of the full extended system at `c`."""
    n = c.n
    z, w = c.z_array(), c.w_array()
    Z, W = c.Z_matrix(), c.W_matrix()
    worst = 0.0
    for m in range(n):
        bal_z = c.lam * z[m] - sum(c.gamma[j] * Z[j, m] for j in range(n) if j != m)
        bal_w = c.lam.conjugate() * w[m] - sum(c.gamma[j] * W[j, m] for j in range(n) if j != m)
        worst = max(worst, abs(bal_z), abs(bal_w))
    for j in range(n):
        for k in range(j + 1, n):
            zjk = z[k] - z[j]
            wjk = w[k] - w[j]
            if abs(zjk) < 1e-13 or abs(wjk) < 1e-13:
                raise CollisionError(f"vertices {j+1},{k+1} coincide")
            worst = max(
                worst,
                abs(Z[j, k] * wjk - 1.0),
                abs(W[j, k] * zjk - 1.0),
                abs(Z[j, k] + Z[k, j]),
                abs(W[j, k] + W[k, j]),
            )
    return float(worst)


# -- solver ----------------------------------------------------------------


def _real_system(x: np.ndarray, gamma, lam: complex) -> np.ndarray:
    n = len(gamma)
    z = x[:n] + 1j * x[n:]
    V = velocities(z, gamma)
    F = lam * z - V
    pin = (z[1] - z[0]).imag  # rotation gauge
    return np.concatenate([F.real, F.imag, [pin]])


def solve(
    gamma,
    lam: complex = 1.0 + 0.0j,
    seed: int = 0,
    attempts: int = 24,
    tol: float = 1e-12,
    max_iter: int = 120,
    trace: list | None = None,
) -> Configuration:
    """Find a real normalized configuration for the given strengths.

    Damped Gauss-Newton from randomized starts; attempts run in seed order
    and the first success wins, so results are reproducible.  Raises
    NoConvergenceError when the budget is exhausted.  When `trace` is a
    list it receives the accepted residual norms of the winning attempt.
    """
    gamma = [float(g) for g in gamma]
    if any(g == 0 for g in gamma):
        raise ValueError("all vortex strengths must be nonzero")
    n = len(gamma)
    lam = complex(lam)
    for attempt in range(attempts):
        rng = np.random.default_rng(seed * 1009 + attempt)
        x = rng.standard_normal(2 * n) * 1.2
        attempt_trace: list = [] if trace is not None else None
        try:
            x = _gauss_newton(x, gamma, lam, tol, max_iter, attempt_trace)
        except (CollisionError, np.linalg.LinAlgError):
            continue
        if x is None:
            continue
        z = x[:n] + 1j * x[n:]
        # Fix the remaining rotation sign and re-center exactly.
        z12 = z[1] - z[0]
        if abs(z12) > 1e-13:
            z = z * (abs(z12) / z12)
        try:
            config = make_configuration(gamma, z, None, lam)
            if residual(config) < tol:
                if trace is not None:
                    trace.extend(attempt_trace)
                return config
        except CollisionError:
            continue
    raise NoConvergenceError(f"no solution after {attempts} attempts")


def _gauss_newton(x, gamma, lam, tol, max_iter, trace=None):
    n = len(gamma)
    try:
        F = _real_system(x, gamma, lam)
    except CollisionError:
        return None
    norm = np.linalg.norm(F, np.inf)
    if trace is not None:
        trace.append(float(norm))
    for _ in range(max_iter):
        if norm < tol / 4:
            return x
        J = _jacobian(x, gamma, lam)
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        alpha = 1.0
        while alpha > 1e-8:
            try:
                F_new = _real_system(x + alpha * step, gamma, lam)
            except CollisionError:
                alpha /= 2
                continue
            new_norm = np.linalg.norm(F_new, np.inf)
            if new_norm < norm:  # accepted steps decrease the residual
                x = x + alpha * step
                F, norm = F_new, new_norm
                if trace is not None:
                    trace.append(float(norm))
                break
            alpha /= 2
        else:
            return None
    return x if norm < tol / 4 else None


def _jacobian(x, gamma, lam, h=1e-7):
    m = len(x)
    F0 = _real_system(x, gamma, lam)
    J = np.zeros((len(F0), m))
    for i in range(m):
        dx = np.zeros(m)
        dx[i] = h
        J[:, i] = (_real_system(x + dx, gamma, lam) - _real_system(x - dx, gamma, lam)) / (2 * h)
    return J


# -- classification --------------------------------------------------------

STATIONARY_KINDS = (
    "equilibrium",
    "rigidly-translating",
    "relative-equilibrium",
    "collapse",
    "non-stationary",
)


def classify(z, gamma, rtol: float = 1e-8) -> str:
    """Stationary type of a collision-free configuration.

    Fits the best multiplier and center in least squares and applies the
    defining dichotomies with thresholds relative to the velocity scale.
    """
    z = np.asarray(z, dtype=complex)
    V = velocities(z, gamma)
    vscale = np.max(np.abs(V))
    zscale = max(np.max(np.abs(z - np.mean(z))), 1.0)
    if vscale <= rtol * zscale:
        return "equilibrium"
    const = np.mean(V)
    if np.max(np.abs(V - const)) <= rtol * vscale:
        return "rigidly-translating"
    A = np.column_stack([z, np.ones(len(z))])
    coef, *_ = np.linalg.lstsq(A, V, rcond=None)
    lam_fit, offset = coef
    if np.max(np.abs(A @ coef - V)) > rtol * vscale:
        return "non-stationary"
    if abs(lam_fit.imag) <= rtol * abs(lam_fit):
        return "relative-equilibrium"
    return "collapse"


@dataclass(frozen=True)
class IdentityReport:
    moment_z: float
    moment_w: float
    angular: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(max(self.moment_z, self.moment_w, self.angular) < self.tolerance)


def check_identities(c: Configuration, tol: float = 1e-9) -> IdentityReport:
    """Conserved identities of solutions: vanishing vorticity moments and
    the multiplier-angular-momentum tie."""
    g = np.array(c.gamma)
    z, w = c.z_array(), c.w_array()
    L = sum(
        c.gamma[j] * c.gamma[k] for j in range(c.n) for k in range(j + 1, c.n)
    )
    return IdentityReport(
        float(abs(np.sum(g * z))),
        float(abs(np.sum(g * w))),
        float(abs(c.lam * np.sum(g * z * w) - L)),
        tol,
    )


# -- singular-sequence probe ------------------------------------------------


@dataclass(frozen=True)
class OrderExponent:
    value: float
    confidence: float  # max abs fit residual in log-log coordinates


@dataclass(frozen=True)
class SingularSequenceSample:
    """Configurations along a decreasing-epsilon sequence."""

    points: tuple  # of (epsilon, Configuration)

    def __post_init__(self):
        eps = [e for e, _ in self.points]
        if len(eps) < 4:
            raise ValueError("need at least four samples")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilon must decrease strictly")
        if eps[0] / eps[-1] < 2:
            raise ValueError("epsilon must decrease by at least a factor of 2 overall")

    @classmethod
    def from_jsonl(cls, text: str) -> "SingularSequenceSample":
        points = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            unpack = lambda xs: [complex(re, im) for re, im in xs]
            z = unpack(data["z"])
            w = unpack(data["w"])
            gamma = data.get("gamma", [1.0] * len(z))
            points.append((float(data["epsilon"]), make_configuration(gamma, z, w)))
        return cls(tuple(points))

    def to_jsonl(self) -> str:
        lines = []
        for eps, c in self.points:
            pack = lambda xs: [[x.real, x.imag] for x in xs]
            lines.append(
                json.dumps(
                    {"epsilon": eps, "gamma": list(c.gamma), "z": pack(c.z), "w": pack(c.w)},
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + "\n"


def fit_exponent(eps, values) -> OrderExponent:
    """Least-squares slope of log|value| against log(epsilon)."""
    xs = np.log(np.asarray(eps, dtype=float))
    ys = np.log(np.abs(np.asarray(values, dtype=complex)))
    A = np.column_stack([xs, np.ones(len(xs))])
    coef, *_ = np.linalg.lstsq(A, ys, rcond=None)
    fit = A @ coef
    return OrderExponent(float(coef[0]), float(np.max(np.abs(fit - ys))))


def _decide_maximal(alpha: OrderExponent, tol: float, what: str) -> bool:
    dist = abs(alpha.value + 2.0)
    if dist <= tol:
        return True
    if dist <= 2 * tol:
        raise AmbiguousExponentError(
            f"{what}: exponent {alpha.value:.3f} within the ambiguous band around -2"
        )
    return False


def probe(sample: SingularSequenceSample, tol: float = 0.15) -> Diagram:
    """Recover the two-colored diagram encoded by a singular sequence.

    Fits order exponents for every vertex coordinate and every inverse
    difference; order exactly -2 (within `tol`) marks circles and strokes.
    Exponents inside the doubled band raise AmbiguousExponentError rather
    than guessing.
    """
    eps = [e for e, _ in sample.points]
    configs = [c for _, c in sample.points]
    n = configs[0].n
    for e, c in sample.points:
        for norm_val in (
            max(np.max(np.abs(c.z_array())), np.max(np.abs(c.Z_matrix()))),
            max(np.max(np.abs(c.w_array())), np.max(np.abs(c.W_matrix()))),
        ):
            if abs(math.log(norm_val) - math.log(e**-2)) > tol * abs(math.log(e**2)) + 1.0:
                raise ValueError(f"sample at epsilon={e} violates the max-norm normalization")
    z_circles = [
        v + 1
        for v in range(n)
        if _decide_maximal(fit_exponent(eps, [c.z[v] for c in configs]), tol, f"z_{v+1}")
    ]
    w_circles = [
        v + 1
        for v in range(n)
        if _decide_maximal(fit_exponent(eps, [c.w[v] for c in configs]), tol, f"w_{v+1}")
    ]
    z_strokes = []
    w_strokes = []
    for j in range(n):
        for k in range(j + 1, n):
            zjk = fit_exponent(eps, [c.Z_matrix()[j, k] for c in configs])
            wjk = fit_exponent(eps, [c.W_matrix()[j, k] for c in configs])
            if _decide_maximal(zjk, tol, f"Z_{j+1}{k+1}"):
                z_strokes.append((j + 1, k + 1))
            if _decide_maximal(wjk, tol, f"W_{j+1}{k+1}"):
                w_strokes.append((j + 1, k + 1))
    d = Diagram(n, z_strokes, w_strokes, z_circles, w_circles)
    report = validate(d)
    if not report.valid:
        raise ValueError(f"probed diagram violates the rules: {report.failures}")
    return d


def synthetic_sequence(d: Diagram, eps_list=None, gamma=None) -> SingularSequenceSample:
    """An order-faithful sequence realizing the stroke/circle pattern of `d`.

    Vertices in one closeness class share a center and differ by order
    eps^2; circled classes sit at order eps^-2, others at order one.  The
    construction is deterministic and keeps both max norms at exactly
    eps^-2.
    """
    from .diagram import components

    if eps_list is None:
        eps_list = [2.0**-k for k in range(4, 13)]
    gamma = list(gamma) if gamma is not None else [1.0] * d.n
    report = validate(d)
    if not report.valid:
        raise ValueError(f"cannot realize an invalid diagram: {report.failures}")

    def build_vector(stroke_color: str, circle_color: str, eps: float):
        # Positions of the `circle_color` coordinate: classes are the
        # components of the opposite-color strokes.
        comps = components(d.strokes(stroke_color), d.n)
        values = [0j] * d.n
        circled_seen = 0
        plain_seen = 0
        for t, comp in enumerate(comps):
            members = sorted(comp)
            circled = members[0] in d.circles(circle_color)
            angle = cmath.exp(1j * (0.37 + 2 * math.pi * t / 9.0))
            if circled:
                center = (1.0 - 0.12 * circled_seen) * eps**-2 * angle
                circled_seen += 1
            else:
                center = (1.7 + 0.6 * plain_seen) * angle
                plain_seen += 1
            offset_dir = cmath.exp(1j * (1.1 + 2 * math.pi * t / 7.0))
            for rank, v in enumerate(members):
                values[v - 1] = center + rank * eps**2 * offset_dir
        return values

    points = []
    for eps in eps_list:
        z = build_vector("w", "z", eps)
        w = build_vector("z", "w", eps)
        points.append((eps, make_configuration(gamma, z, w)))
    return SingularSequenceSample(tuple(points))
