"""Vorticity expressions and real feasibility of constraint ledgers.

Builds the subset vorticity sums and angular momenta that diagram lemmas
emit, and decides whether a ledger of polynomial equalities plus
disequalities admits real vortex strengths, producing machine-checkable
certificates for the infeasible direction and exact rational witnesses
for the feasible one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import (
    DEFAULT_VARS,
    GREVLEX,
    MonomialOrder,
    Polynomial,
    groebner_basis,
    parse_polynomial,
    reduces_to_zero,
)

N_VORTICES = 5
MAX_VORTICES = 8
GAMMA_VARS = tuple(f"G{i}" for i in range(1, MAX_VORTICES + 1))


def gamma_var(i: int) -> Polynomial:
    return Polynomial.variable(f"G{i}")


def gamma_sum(J) -> Polynomial:
    """Total vorticity of the subset J: sum of G_j over J."""
    J = sorted(set(J))
    if not J:
        raise ValueError("empty vertex subset")
    terms = {}
    for j in J:
        exps = [0] * len(DEFAULT_VARS)
        exps[DEFAULT_VARS.index(f"G{j}")] = 1
        terms[tuple(exps)] = Fraction(1)
    return Polynomial(terms, DEFAULT_VARS, _clean=False)


def angular_momentum(J) -> Polynomial:
    """Vortex angular momentum of the subset J: sum of G_j*G_k, j < k in J."""
    J = sorted(set(J))
    if len(J) < 2:
        raise ValueError("angular momentum needs at least two vertices")
    terms = {}
    for j, k in itertools.combinations(J, 2):
        exps = [0] * len(DEFAULT_VARS)
        exps[DEFAULT_VARS.index(f"G{j}")] = 1
        exps[DEFAULT_VARS.index(f"G{k}")] = 1
        terms[tuple(exps)] = Fraction(1)
    return Polynomial(terms, DEFAULT_VARS, _clean=False)


def total_vorticity(n: int = N_VORTICES) -> Polynomial:
    return gamma_sum(range(1, n + 1))


def total_angular_momentum(n: int = N_VORTICES) -> Polynomial:
    return angular_momentum(range(1, n + 1))


@dataclass(frozen=True)
class ConstraintLedger:
    """Equalities (= 0) and disequalities (!= 0) on the vortex strengths.

    Every single vorticity variable is always required nonzero; the
    constructor inserts them if missing.
    """

    equalities: tuple[Polynomial, ...] = ()
    nonzeros: tuple[Polynomial, ...] = ()
    n: int = N_VORTICES

    def __post_init__(self):
        eqs = tuple(dict.fromkeys(p for p in self.equalities if p))
        base = tuple(gamma_var(i) for i in range(1, self.n + 1))
        extra = tuple(dict.fromkeys(p for p in self.nonzeros if p and p not in base))
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "nonzeros", base + extra)

    def with_equalities(self, more) -> "ConstraintLedger":
        return ConstraintLedger(self.equalities + tuple(more), self.nonzeros, self.n)

    def to_json(self) -> dict:
        return {
            "equalities": [p.to_text() for p in self.equalities],
            "nonzeros": [p.to_text() for p in self.nonzeros],
        }

    @classmethod
    def from_json(cls, data: dict, n: int = N_VORTICES) -> "ConstraintLedger":
        return cls(
            tuple(parse_polynomial(t) for t in data.get("equalities", ())),
            tuple(parse_polynomial(t) for t in data.get("nonzeros", ())),
            n,
        )


@dataclass(frozen=True)
class Certificate:
    """Re-checkable witness of infeasibility.

    `polynomial` lies in the equality ideal (normal form 0 against its
    Groebner basis); `kind` names the real-arithmetic argument that makes
    its vanishing contradict the nonzero constraints.
    """

    kind: str  # direct-disequality | vanishing-monomial | sum-of-squares | saturation-unit
    polynomial: Polynomial
    subset: tuple[int, ...] = ()
    multiplier: Polynomial | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "polynomial": self.polynomial.to_text()}
        if self.subset:
            out["subset"] = list(self.subset)
        if self.multiplier is not None:
            out["multiplier"] = self.multiplier.to_text()
        return out


@dataclass(frozen=True)
class Verdict:
    kind: str  # Feasible | Infeasible | Unknown
    witness: dict | None = None
    certificate: Certificate | None = None

    @property
    def feasible(self) -> bool:
        return self.kind == "Feasible"

    @property
    def infeasible(self) -> bool:
        return self.kind == "Infeasible"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = {k: str(v) for k, v in sorted(self.witness.items())}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


WITNESS_POOL = tuple(
    Fraction(v)
    for v in (1, -1, 2, -2, 3, -3, Fraction(1, 2), -Fraction(1, 2), Fraction(1, 3), -Fraction(1, 3), Fraction(5, 2), -Fraction(5, 2))
)


def satisfies(ledger: ConstraintLedger, assignment: dict) -> bool:
    """Exact check: all equalities vanish, all disequalities do not."""
    return all(p.evaluate(assignment) == 0 for p in ledger.equalities) and all(
        q.evaluate(assignment) != 0 for q in ledger.nonzeros
    )


def _linear_in(p: Polynomial, var: str, partial: dict):
    """Coefficients (a, b) with p = a*var + b after substituting `partial`.

    Returns None when the substituted polynomial has degree > 1 in `var`.
    """
    idx = p.ring.index(var)
    a = Fraction(0)
    b = Fraction(0)
    for m, c in p.terms.items():
        val = c
        for i, e in enumerate(m):
            if i == idx or not e:
                continue
            val *= Fraction(partial[p.ring[i]]) ** e
        if m[idx] == 0:
            b += val
        elif m[idx] == 1:
            a += val
        else:
            return None
    return a, b


def _solve_last_variable(ledger: ConstraintLedger, sample: dict, var: str):
    """Try to complete `sample` by solving every equality for `var`."""
    partial = dict(sample)
    partial.pop(var, None)
    value = None
    for p in ledger.equalities:
        lin = _linear_in(p, var, partial)
        if lin is None:
            return None
        a, b = lin
        if a == 0:
            if b != 0:
                return None
            continue
        candidate = -b / a
        if value is None:
            value = candidate
        elif value != candidate:
            return None
    if value is None or value == 0:
        return None
    full = dict(partial)
    full[var] = value
    return full if satisfies(ledger, full) else None


def _search_witness(ledger: ConstraintLedger, attempts: int, seed: int):
    rng = random.Random(seed)
    gammas = [f"G{i}" for i in range(1, ledger.n + 1)]
    for _ in range(attempts):
        sample = {g: rng.choice(WITNESS_POOL) for g in gammas}
        if satisfies(ledger, sample):
            return sample
        for var in reversed(gammas):
            full = _solve_last_variable(ledger, sample, var)
            if full is not None:
                return full
    return None


def _monomial(exps: dict) -> Polynomial:
    e = [0] * len(DEFAULT_VARS)
    for name, p in exps.items():
        e[DEFAULT_VARS.index(name)] = p
    return Polynomial({tuple(e): Fraction(1)}, DEFAULT_VARS, _clean=False)


def _certificate_search(ledger: ConstraintLedger, basis, order: MonomialOrder):
    # (a) a polynomial required nonzero lies in the equality ideal.
    for q in ledger.nonzeros:
        if reduces_to_zero(q, basis, order):
            return Certificate("direct-disequality", q)
    gammas = [f"G{i}" for i in range(1, ledger.n + 1)]
    # (b) a monomial in the (nonzero) vorticities lies in the ideal: some
    # vorticity would vanish.  Squarefree subsets first, then a small grid
    # of higher exponents.
    for size in (1, 2, 3):
        for S in itertools.combinations(range(1, ledger.n + 1), size):
            m = _monomial({f"G{i}": 1 for i in S})
            if reduces_to_zero(m, basis, order):
                return Certificate("vanishing-monomial", m, subset=S)
    for exps in itertools.product(range(3), repeat=ledger.n):
        deg = sum(exps)
        if not 2 <= deg <= 4 or max(exps) < 2:
            continue
        m = _monomial({g: e for g, e in zip(gammas, exps) if e})
        if reduces_to_zero(m, basis, order):
            subset = tuple(i for i, e in enumerate(exps, start=1) if e)
            return Certificate("vanishing-monomial", m, subset=subset)
    # (c) a sum of squares of monomials lies in the ideal: over the reals
    # each part vanishes, forcing some vorticity to zero.
    multipliers = [_monomial({})]
    multipliers += [_monomial({g: 1}) for g in gammas]
    multipliers += [
        _monomial({gammas[j]: 1, gammas[k]: 1}) for j in range(ledger.n) for k in range(j + 1, ledger.n)
    ]
    multipliers += [_monomial({g: 2}) for g in gammas]
    for mult in multipliers:
        for size in range(1, ledger.n + 1):
            for S in itertools.combinations(range(1, ledger.n + 1), size):
                candidate = Polynomial.zero()
                for i in S:
                    part = gamma_var(i) * mult
                    candidate = candidate + part * part
                if reduces_to_zero(candidate, basis, order):
                    return Certificate("sum-of-squares", candidate, subset=S, multiplier=mult)
    return None


def decide(
    ledger: ConstraintLedger,
    order: MonomialOrder = GREVLEX,
    attempts: int = 200,
    seed: int = 0,
    rabinowitsch: bool = False,
) -> Verdict:
    """Decide real feasibility of `ledger` with a certificate or witness.

    Infeasible verdicts carry a polynomial of the equality ideal whose
    vanishing contradicts the nonzero constraints over the reals; Feasible
    verdicts carry an exact rational witness.  Unknown is an honest third
    outcome, never silently coerced.
    """
    quick = _search_witness(ledger, min(attempts, 40), seed)
    if quick is not None:
        return Verdict("Feasible", witness=quick)
    if ledger.equalities:
        basis = groebner_basis(ledger.equalities, order)
        cert = _certificate_search(ledger, basis, order)
        if cert is not None:
            return Verdict("Infeasible", certificate=cert)
        if rabinowitsch:
            cert = _saturation_probe(ledger, order)
            if cert is not None:
                return Verdict("Infeasible", certificate=cert)
    witness = _search_witness(ledger, attempts, seed + 1)
    if witness is not None:
        return Verdict("Feasible", witness=witness)
    return Verdict("Unknown")


def _saturation_probe(ledger: ConstraintLedger, order: MonomialOrder):
    """Rabinowitsch-style probe (experimental, off by default): adjoin
    1 - a*prod(nonzeros) and test whether the ideal becomes trivial.
    Proves only complex infeasibility of the strict system; kept out of the
    default path so that certificates stay human-auditable."""
    aux = Polynomial.variable("a")
    prod = Polynomial.constant(1)
    for q in ledger.nonzeros:
        prod = prod * q
    gens = list(ledger.equalities) + [Polynomial.constant(1) - aux * prod]
    basis = groebner_basis(gens, order)
    one = Polynomial.constant(1)
    if reduces_to_zero(one, basis, order):
        return Certificate("saturation-unit", one)
    return None


def verify_certificate(
    ledger: ConstraintLedger, certificate: Certificate, order: MonomialOrder = GREVLEX
) -> bool:
    """Independently re-check an infeasibility certificate.

    Recomputes a Groebner basis from the reversed generator list (a
    different Buchberger run), re-reduces the exhibited polynomial, and
    checks that the certificate's shape actually carries the claimed
    real-arithmetic contradiction.
    """
    allowed = {f"G{i}" for i in range(1, ledger.n + 1)}
    if certificate.kind == "direct-disequality":
        if certificate.polynomial not in ledger.nonzeros:
            return False
    elif certificate.kind == "vanishing-monomial":
        if len(certificate.polynomial.terms) != 1:
            return False
        if not certificate.polynomial.variables() <= allowed:
            return False
    elif certificate.kind == "sum-of-squares":
        rebuilt = Polynomial.zero()
        mult = certificate.multiplier if certificate.multiplier is not None else Polynomial.constant(1)
        for i in certificate.subset:
            part = gamma_var(i) * mult
            rebuilt = rebuilt + part * part
        if rebuilt != certificate.polynomial:
            return False
        if not mult.variables() <= allowed:
            return False
        if not set(certificate.subset) <= set(range(1, ledger.n + 1)):
            return False
    elif certificate.kind == "saturation-unit":
        return _saturation_probe(ledger, order) is not None
    else:
        return False
    if not ledger.equalities:
        return False
    basis = groebner_basis(tuple(reversed(ledger.equalities)), order)
    return reduces_to_zero(certificate.polynomial, basis, order)
