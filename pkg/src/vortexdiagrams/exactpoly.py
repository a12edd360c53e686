"""Exact multivariate polynomial arithmetic over the rationals.

Sparse dict-of-terms polynomials with Buchberger-style Groebner bases,
multivariate division (normal forms) and ideal membership.  Sized for the
small rings this project needs (eight variables, low degree); coefficients
are always exact `Fraction`s so that identities proved here are proofs,
not float coincidences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
import json
import re

DEFAULT_VARS = ("a", "b", "c", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8")

ZERO = Fraction(0)
ONE = Fraction(1)


class ResourceLimitError(RuntimeError):
    """Raised when a basis computation exceeds its configured budget."""


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: graded reverse lexicographic or lexicographic.

    `priority` lists variable names from most to least significant.
    """

    kind: str = "grevlex"
    priority: tuple[str, ...] = DEFAULT_VARS

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order kind {self.kind!r}")

    def key_fn(self, ring: tuple[str, ...]):
        """Return a sort key function on exponent tuples of `ring`.

        Larger key = larger monomial.
        """
        perm = tuple(ring.index(v) for v in self.priority if v in ring)
        if len(perm) != len(ring):
            raise ValueError("order priority does not cover the ring variables")
        return _order_key(self.kind, perm)


@lru_cache(maxsize=None)
def _order_key(kind: str, perm: tuple[int, ...]):
    if kind == "lex":
        def key(exps, _perm=perm):
            return tuple(exps[i] for i in _perm)
    else:
        rev = tuple(reversed(perm))

        def key(exps, _rev=rev):
            return (sum(exps), tuple(-exps[i] for i in _rev))
    return key


GREVLEX = MonomialOrder("grevlex", DEFAULT_VARS)
LEX = MonomialOrder("lex", DEFAULT_VARS)


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(m1, m2))


def _mono_divides(m1: tuple, m2: tuple) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def _mono_div(m1: tuple, m2: tuple) -> tuple:
    return tuple(a - b for a, b in zip(m1, m2))


def _mono_lcm(m1: tuple, m2: tuple) -> tuple:
    return tuple(max(a, b) for a, b in zip(m1, m2))


class Polynomial:
    """Immutable sparse polynomial: map exponent tuple -> nonzero Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, terms=None, ring: tuple[str, ...] = DEFAULT_VARS, _clean=True):
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif _clean:
            clean = {}
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(m)] = c
            self.terms = clean
        else:
            self.terms = terms
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring=DEFAULT_VARS) -> "Polynomial":
        return cls({}, ring, _clean=False)

    @classmethod
    def constant(cls, value, ring=DEFAULT_VARS) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return cls.zero(ring)
        return cls({(0,) * len(ring): c}, ring, _clean=False)

    @classmethod
    def variable(cls, name: str, ring=DEFAULT_VARS) -> "Polynomial":
        i = ring.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(ring)))
        return cls({exps: ONE}, ring, _clean=False)

    # -- ring operations ------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.ring)
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            nc = res.get(m, ZERO) + c
            if nc:
                res[m] = nc
            else:
                res.pop(m, None)
        return Polynomial(res, self.ring, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.ring, _clean=False)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return Polynomial.zero(self.ring)
            return Polynomial({m: cc * c for m, cc in self.terms.items()}, self.ring, _clean=False)
        self._check(other)
        res: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = res.get(m, ZERO) + c1 * c2
                if nc:
                    res[m] = nc
                else:
                    del res[m]
        return Polynomial(res, self.ring, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.ring)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- structure ------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key_fn(self.ring))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return Polynomial({m: c / lc for m, c in self.terms.items()}, self.ring, _clean=False)

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring[i])
        return used

    def evaluate(self, assignment: dict) -> Fraction:
        """Exact evaluation at a full rational assignment name -> value."""
        point = [Fraction(assignment.get(v, 0)) for v in self.ring]
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term *= point[i] ** e
            total += term
        return total

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        key = order.key_fn(self.ring)
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    # -- serialization ----------------------------------------------------

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms(order):
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring[i])
                elif e > 1:
                    factors.append(f"{self.ring[i]}^{e}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            chunks.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json_terms(self, order: MonomialOrder = GREVLEX) -> list[dict]:
        out = []
        for m, c in self.sorted_terms(order):
            exps = {self.ring[i]: e for i, e in enumerate(m) if e}
            out.append({"coeff": str(c), "exps": exps})
        return out

    def __repr__(self):
        return f"Polynomial({self.to_text()})"


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+(?:/\d+)?)?\s*"
    r"(?P<vars>(?:\*?\s*[A-Za-zΓ][A-Za-z0-9]*(?:\^\d+)?\s*)*)"
)


def parse_polynomial(text, ring: tuple[str, ...] = DEFAULT_VARS) -> Polynomial:
    """Parse the text form ``3/2*G1^2*G2 - G3 + 1`` or a JSON term list.

    Greek gamma aliases (``Γ1``) are accepted for the ``G`` variables.
    """
    if isinstance(text, list):
        terms: dict = {}
        for item in text:
            c = Fraction(item["coeff"])
            exps = [0] * len(ring)
            for name, e in item["exps"].items():
                exps[ring.index(_normalize_var(name))] += int(e)
            m = tuple(exps)
            terms[m] = terms.get(m, ZERO) + c
        return Polynomial(terms, ring)
    text = text.strip()
    if text.startswith("["):
        return parse_polynomial(json.loads(text), ring)
    if text in ("0", ""):
        return Polynomial.zero(ring)
    terms = {}
    pos = 0
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial at: {text[pos:]!r}")
        sign = -1 if match.group("sign") == "-" else 1
        coeff = Fraction(match.group("coeff")) if match.group("coeff") else ONE
        exps = [0] * len(ring)
        for piece in re.findall(r"[A-Za-zΓ][A-Za-z0-9]*(?:\^\d+)?", match.group("vars") or ""):
            if "^" in piece:
                name, power = piece.split("^")
                e = int(power)
            else:
                name, e = piece, 1
            exps[ring.index(_normalize_var(name))] += e
        m = tuple(exps)
        c = terms.get(m, ZERO) + sign * coeff
        if c:
            terms[m] = c
        else:
            terms.pop(m, None)
        pos = match.end()
    return Polynomial(terms, ring, _clean=False)


def _normalize_var(name: str) -> str:
    return "G" + name[1:] if name.startswith("Γ") else name


# -- division and normal forms ------------------------------------------


def normal_form(p: Polynomial, basis, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of `p` under multivariate division by `basis`.

    No term of the result is divisible by any basis leading term, and
    ``p - result`` lies in the ideal generated by `basis` (exact division,
    no scalar slack).
    """
    divisors = []
    key = order.key_fn(p.ring)
    for g in basis:
        if g:
            lm = g.leading_monomial(order)
            divisors.append((lm, g.terms[lm], g.terms))
    work = dict(p.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, gterms in divisors:
            if _mono_divides(lm, m):
                q = _mono_div(m, lm)
                factor = c / lc
                for mg, cg in gterms.items():
                    if mg is lm or mg == lm:
                        continue
                    mm = _mono_mul(mg, q)
                    nc = work.get(mm, ZERO) - factor * cg
                    if nc:
                        work[mm] = nc
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return Polynomial(remainder, p.ring, _clean=False)


# -- integer kernel for basis computation --------------------------------
#
# Buchberger runs on content-stripped integer polynomials: remainders are
# the same up to a nonzero rational scalar, which zero-tests and leading
# monomials do not see, and Python int arithmetic is much faster than
# Fraction churn.


def _to_int_terms(p: Polynomial) -> dict:
    if not p.terms:
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = {m: int(c * den) for m, c in p.terms.items()}
    content = 0
    for c in terms.values():
        content = gcd(content, c)
    if content > 1:
        terms = {m: c // content for m, c in terms.items()}
    return terms


def _int_strip(terms: dict) -> dict:
    content = 0
    for c in terms.values():
        content = gcd(content, c)
    if content > 1:
        return {m: c // content for m, c in terms.items()}
    return terms


def _int_reduce(terms: dict, divisors, key, counter=None) -> dict:
    """Pseudo-reduction of integer `terms` by `divisors`; full tail reduction.

    Returns a remainder equal to a nonzero rational multiple of the exact
    normal form.
    """
    work = dict(terms)
    remainder: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, gterms in divisors:
            if _mono_divides(lm, m):
                if counter is not None:
                    counter["reductions"] += 1
                    if counter["reductions"] > counter["max_reductions"]:
                        raise ResourceLimitError(
                            f"pair reduction budget exceeded ({counter['max_reductions']})"
                        )
                q = _mono_div(m, lm)
                d = gcd(c, lc)
                scale, factor = lc // d, c // d
                if scale != 1:
                    for k in work:
                        work[k] *= scale
                    for k in remainder:
                        remainder[k] *= scale
                for mg, cg in gterms.items():
                    if mg == lm:
                        continue
                    mm = _mono_mul(mg, q)
                    nc = work.get(mm, 0) - factor * cg
                    if nc:
                        work[mm] = nc
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return _int_strip(remainder)


def _int_spoly(f: dict, g: dict, lmf: tuple, lmg: tuple) -> dict:
    lcm = _mono_lcm(lmf, lmg)
    cf, cg = f[lmf], g[lmg]
    d = gcd(cf, cg)
    mf, mg = _mono_div(lcm, lmf), _mono_div(lcm, lmg)
    sf, sg = cg // d, cf // d
    res: dict = {}
    for m, c in f.items():
        res[_mono_mul(m, mf)] = c * sf
    for m, c in g.items():
        mm = _mono_mul(m, mg)
        nc = res.get(mm, 0) - c * sg
        if nc:
            res[mm] = nc
        else:
            res.pop(mm, None)
    return res


def groebner_basis(
    gens,
    order: MonomialOrder = GREVLEX,
    max_basis_terms: int = 50_000,
    max_pair_reductions: int = 200_000,
) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Buchberger with normal (smallest-lcm) pair selection and both classic
    pair-pruning criteria.  Output generators are monic, tails fully
    reduced, sorted by leading monomial: deterministic for a given input.
    Raises ResourceLimitError when the configured budgets are exceeded.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    key = order.key_fn(ring)
    counter = {"reductions": 0, "max_reductions": max_pair_reductions}

    basis: list[dict] = []
    lms: list[tuple] = []

    def divisors():
        return [(lms[i], basis[i][lms[i]], basis[i]) for i in range(len(basis))]

    for g in gens:
        r = _int_reduce(_to_int_terms(g), divisors(), key, counter)
        if r:
            basis.append(r)
            lms.append(max(r, key=key))

    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def coprime(i, j):
        return all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j]))

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        if coprime(i, j):
            continue
        lcm_ij = _mono_lcm(lms[i], lms[j])
        if any(
            k != i and k != j
            and _mono_divides(lms[k], lcm_ij)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        s = _int_spoly(basis[i], basis[j], lms[i], lms[j])
        r = _int_reduce(s, divisors(), key, counter)
        if r:
            basis.append(r)
            lms.append(max(r, key=key))
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))
            if sum(len(b) for b in basis) > max_basis_terms:
                raise ResourceLimitError(f"basis term budget exceeded ({max_basis_terms})")

    # Interreduce: drop generators whose lead is divisible by another lead,
    # then reduce each survivor against the rest (its lead is irreducible
    # among minimal leads, so full reduction just cleans the tail).
    keep = [
        i
        for i in range(len(basis))
        if not any(j != i and _mono_divides(lms[j], lms[i]) for j in range(len(basis)))
    ]
    minimal = [(lms[i], basis[i]) for i in keep]
    reduced: list[dict] = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [(l, t[l], t) for k, (l, t) in enumerate(minimal) if k != idx]
        reduced.append(_int_reduce(terms, others, key))
    polys = []
    for terms in reduced:
        lm = max(terms, key=key)
        lc = Fraction(terms[lm])
        polys.append(
            Polynomial({m: Fraction(c) / lc for m, c in terms.items()}, ring, _clean=False)
        )
    polys.sort(key=lambda p: key(p.leading_monomial(order)))
    return polys


def reduces_to_zero(p: Polynomial, basis, order: MonomialOrder = GREVLEX) -> bool:
    """Fast zero-test for the normal form of `p` against `basis`."""
    if not p:
        return True
    if not basis:
        return False
    key = order.key_fn(p.ring)
    ints = [_to_int_terms(g) for g in basis if g]
    divisors = [(max(t, key=key), t[max(t, key=key)], t) for t in ints]
    return not _int_reduce(_to_int_terms(p), divisors, key)


def ideal_member(p: Polynomial, gens, order: MonomialOrder = GREVLEX, **budgets) -> bool:
    """True iff `p` lies in the ideal generated by `gens`."""
    basis = groebner_basis(gens, order, **budgets)
    return reduces_to_zero(p, basis, order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    lmf, lmg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = _mono_lcm(lmf, lmg)
    tf = Polynomial({_mono_div(lcm, lmf): 1 / f.leading_coefficient(order)}, f.ring, _clean=False)
    tg = Polynomial({_mono_div(lcm, lmg): 1 / g.leading_coefficient(order)}, g.ring, _clean=False)
    return tf * f - tg * g
