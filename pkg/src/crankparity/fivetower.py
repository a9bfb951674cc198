"""The 5-adic tower: eta quotients, hauptmodul polynomials, and the ladder.

Three weight-0 eta quotients drive the congruence family modulo powers of 5:

    multiplier   eta(t)^3 eta(50t)^2 / (eta(2t)^2 eta(25t)^3)    on level 50
    hauptmodul   eta(t)^2 eta(10t)^4 / (eta(2t)^4 eta(5t)^2)     on level 10
    newton quotient  eta(t) eta(50t)^2 / (eta(2t)^2 eta(25t))    on level 50

The keystone identity is  multiplier | U_5 == 5 * hauptmodul.  Every series
in the tower reduces to a Laurent polynomial in the hauptmodul G = q + ...
(found by triangular elimination from the lowest exponent up, with the
residual required to vanish identically to the working truncation), which
turns U_5 and P |-> (multiplier * P)|U_5 into integer matrices A and B on
the basis G, G^2, G^3, ...

The ladder

    L_0 = 1,   L_{2a+1} = (multiplier * L_{2a}) | U_5,   L_{2a+2} = L_{2a+1} | U_5

is computed both by series recursion and by the vector forms
(5,0,0,...) (AB)^a  /  (5,0,0,...) (AB)^a A, and the two must agree.  The
5-adic valuations of the matrix entries and ladder entries are what the
congruence family rests on, and are exported for direct verification.

Truncations are budgeted backward from the requested ladder depth and
refuse to start if the multiplier series would exceed a coefficient ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import cranks
from .series import (
    EtaQuotientSpec,
    IntLaurentSeries,
    apply_U,
    eta_quotient,
    pentagonal_product,
)


class NotHauptmodulPolynomialError(ArithmeticError):
    """Triangular elimination left a nonzero residual: the series is not a
    hauptmodul polynomial in the requested degree window (or the truncation
    was too small to close the reduction)."""


class LadderConsistencyError(AssertionError):
    """Series recursion and matrix product gave different ladder vectors."""


class BudgetExceededError(RuntimeError):
    """The requested depth needs more series coefficients than allowed."""


LADDER_MULTIPLIER_SPEC = EtaQuotientSpec(((1, 3), (2, -2), (50, 2), (25, -3)))
HAUPTMODUL_SPEC = EtaQuotientSpec(((1, 2), (2, -4), (10, 4), (5, -2)))
NEWTON_QUOTIENT_SPEC = EtaQuotientSpec(((1, 1), (2, -2), (50, 2), (25, -1)))

COEFFICIENT_CEILING = 10 ** 6

_cache: dict[str, IntLaurentSeries] = {}


def _cached(name: str, spec: EtaQuotientSpec, trunc: int) -> IntLaurentSeries:
    cur = _cache.get(name)
    if cur is None or cur.trunc < trunc:
        cur = eta_quotient(spec, trunc)
        _cache[name] = cur
    return cur.truncate(trunc) if cur.trunc > trunc else cur


def ladder_multiplier(trunc: int) -> IntLaurentSeries:
    """The level-50 quotient multiplying odd ladder steps; q + O(q^2)."""
    return _cached("multiplier", LADDER_MULTIPLIER_SPEC, trunc)


def hauptmodul(trunc: int) -> IntLaurentSeries:
    """The level-10 hauptmodul G; q + O(q^2)."""
    return _cached("hauptmodul", HAUPTMODUL_SPEC, trunc)


def newton_quotient(trunc: int) -> IntLaurentSeries:
    """The auxiliary quotient phi whose powers feed Newton's identities;
    q^3 + O(q^4)."""
    return _cached("newton", NEWTON_QUOTIENT_SPEC, trunc)


def newton_power_u5(mu: int, order: int) -> IntLaurentSeries:
    """phi^mu | U_5, exact below q^order (mu may be negative)."""
    return apply_U(5, eta_quotient(NEWTON_QUOTIENT_SPEC ** mu,
                                   5 * (order - 1) + 1))


def multiplier_newton_power_u5(mu: int, order: int) -> IntLaurentSeries:
    """(multiplier * phi^mu) | U_5, exact below q^order."""
    t = 5 * (order - 1) + 1
    # phi^mu has offset 3*mu, which eats into the product truncation when
    # mu is negative; pad the multiplier accordingly
    prod = (ladder_multiplier(t + max(0, -3 * mu))
            * eta_quotient(NEWTON_QUOTIENT_SPEC ** mu, t))
    return apply_U(5, prod)


# ---------------------------------------------------------------------------
# Laurent polynomials in the hauptmodul
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HauptmodulPoly:
    """sum_j c_j G^j with integer (or, transiently, rational) coefficients."""

    coeffs: tuple

    def __init__(self, coeffs):
        items = dict(coeffs)
        object.__setattr__(
            self, "coeffs",
            tuple(sorted((j, c) for j, c in items.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __getitem__(self, j: int):
        return dict(self.coeffs).get(j, 0)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for _, c in self.coeffs)

    def to_integer(self) -> "HauptmodulPoly":
        if not self.is_integral():
            raise ValueError(f"non-integral coefficients: {self.coeffs}")
        return HauptmodulPoly({j: int(c) for j, c in self.coeffs})

    def __add__(self, other: "HauptmodulPoly") -> "HauptmodulPoly":
        out = dict(self.coeffs)
        for j, c in other.coeffs:
            out[j] = out.get(j, 0) + c
        return HauptmodulPoly(out)

    def __sub__(self, other: "HauptmodulPoly") -> "HauptmodulPoly":
        out = dict(self.coeffs)
        for j, c in other.coeffs:
            out[j] = out.get(j, 0) - c
        return HauptmodulPoly(out)

    def __mul__(self, other):
        if isinstance(other, HauptmodulPoly):
            out: dict = {}
            for i, a in self.coeffs:
                for j, b in other.coeffs:
                    out[i + j] = out.get(i + j, 0) + a * b
            return HauptmodulPoly(out)
        return HauptmodulPoly({j: c * other for j, c in self.coeffs})

    __rmul__ = __mul__

    def scale(self, factor: Fraction) -> "HauptmodulPoly":
        return HauptmodulPoly({j: c * factor for j, c in self.coeffs})

    def evaluate(self, order: int) -> IntLaurentSeries:
        """Expand sum c_j G^j as a q-series exact below q^order."""
        jmin = min((j for j, _ in self.coeffs), default=0)
        powers = _haupt_powers(jmin, max((j for j, _ in self.coeffs),
                                         default=0), order)
        total = IntLaurentSeries.zero(order)
        for j, c in self.coeffs:
            total = total + powers[j].truncate(order) * c
        return total


def _haupt_powers(jmin: int, jmax: int, order: int) -> dict[int, IntLaurentSeries]:
    """G^j for jmin <= j <= jmax, each exact below q^order."""
    base_trunc = order + 1 + max(0, -jmin)
    g = hauptmodul(base_trunc)
    powers = {0: IntLaurentSeries.one(order)}
    cur = IntLaurentSeries.one(base_trunc)
    for j in range(1, max(jmax, 1) + 1):
        cur = cur * g
        powers[j] = cur
    if jmin < 0:
        ginv = g.reciprocal()
        cur = IntLaurentSeries.one(base_trunc)
        for j in range(1, -jmin + 1):
            cur = cur * ginv
            powers[-j] = cur
    return powers


def reduce_to_hauptmodul(x: IntLaurentSeries, jmin: int, jmax: int,
                         exact: bool = True) -> HauptmodulPoly:
    """Write x as sum_{jmin <= j <= jmax} c_j G^j by eliminating from the
    lowest exponent upward (G^j = q^j + ..., so the system is triangular).

    With ``exact`` the residual must vanish identically to x's truncation;
    otherwise only the prefix up to min(jmax, trunc - 1) is extracted, which
    is still exact for those coefficients.
    """
    val = x.valuation()
    if val is not None and val < jmin:
        raise NotHauptmodulPolynomialError(
            f"series has exponent {val} below the window start {jmin}")
    top = min(jmax, x.trunc - 1)
    if exact and top < jmax:
        raise NotHauptmodulPolynomialError(
            f"truncation {x.trunc} cannot close a degree-{jmax} reduction")
    powers = _haupt_powers(jmin, top, x.trunc)
    residual = x
    coeffs = {}
    for j in range(jmin, top + 1):
        c = residual.coeff(j)
        if c:
            coeffs[j] = c
            residual = residual - powers[j].truncate(x.trunc) * c
    if exact and residual.valuation() is not None:
        raise NotHauptmodulPolynomialError(
            f"nonzero residual starting at q^{residual.valuation()}: not a "
            f"hauptmodul polynomial on [{jmin}, {jmax}] (or truncation "
            "too small)")
    return HauptmodulPoly(coeffs)


# ---------------------------------------------------------------------------
# transfer matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def u_matrix_rows(imax: int) -> dict[int, dict[int, int]]:
    """Row i: G^i | U_5 = sum_j a_ij G^j, 1 <= i <= imax, full width 5i,
    reduced with zero-residual certification and a verified zero constant
    term."""
    order = 5 * imax + 10
    g = hauptmodul(5 * order + 1)
    rows = {}
    cur = g
    for i in range(1, imax + 1):
        if i > 1:
            cur = cur * g
        poly = reduce_to_hauptmodul(apply_U(5, cur).truncate(order), 0, 5 * i)
        row = poly.as_dict()
        if row.get(0):
            raise NotHauptmodulPolynomialError(
                f"G^{i}|U_5 has constant term {row[0]}; expected none")
        rows[i] = {j: c for j, c in row.items() if j}
    return rows


@lru_cache(maxsize=None)
def v_matrix_rows(imax: int) -> dict[int, dict[int, int]]:
    """Row i: (multiplier * G^i) | U_5 = sum_j b_ij G^j, full width 5i+1."""
    order = 5 * imax + 11
    g = hauptmodul(5 * order + 1)
    mult = ladder_multiplier(5 * order + 1)
    rows = {}
    cur = mult
    for i in range(1, imax + 1):
        cur = cur * g
        poly = reduce_to_hauptmodul(apply_U(5, cur).truncate(order),
                                    0, 5 * i + 1)
        row = poly.as_dict()
        if row.get(0):
            raise NotHauptmodulPolynomialError(
                f"(multiplier*G^{i})|U_5 has constant term {row[0]}")
        rows[i] = {j: c for j, c in row.items() if j}
    return rows


@lru_cache(maxsize=None)
def _v_rows_partial(row_max: int, jmax: int) -> dict[int, dict[int, int]]:
    """Columns <= jmax of the V matrix for rows 1..row_max.  Rows with
    i >= 5*jmax contribute nothing to those columns because the series
    (multiplier * G^i)|U_5 starts at q^ceil((i+1)/5)."""
    order = jmax + 4
    g = hauptmodul(5 * order + 1)
    mult = ladder_multiplier(5 * order + 1)
    rows: dict[int, dict[int, int]] = {}
    cur = mult
    for i in range(1, row_max + 1):
        cur = cur * g
        if (i + 1) > 5 * jmax:
            rows[i] = {}
            continue
        poly = reduce_to_hauptmodul(apply_U(5, cur).truncate(order),
                                    0, jmax, exact=False)
        rows[i] = poly.as_dict()
    return rows


def compute_transfer_matrices(imax: int) -> tuple[dict, dict]:
    """(A, B) as row dicts {i: {j: entry}} for 1 <= i <= imax."""
    return u_matrix_rows(imax), v_matrix_rows(imax)


def _vec_mat(vec: dict[int, int], rows: dict[int, dict[int, int]]
             ) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, vi in vec.items():
        if not vi:
            continue
        row = rows[i]
        for j, rij in row.items():
            out[j] = out.get(j, 0) + vi * rij
    return {j: c for j, c in out.items() if c}


# ---------------------------------------------------------------------------
# Newton's identities for the quotient phi
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def newton_sigma_polys(order: int = 40) -> tuple[HauptmodulPoly, ...]:
    """Elementary symmetric polynomials sigma_1..sigma_5 (in G) of the five
    functions phi((tau + lam)/5), recovered from the power sums
    p_mu = 5 * (phi^mu | U_5) via Newton's identities.

    Validated by checking that the degree-5 recurrence they define,

        phi^mu|U_5 = sigma_1 phi^(mu-1)|U_5 - sigma_2 phi^(mu-2)|U_5 + ...
                     + sigma_5 phi^(mu-5)|U_5,

    reproduces directly computed series at mu = 5, 6, 7, -5 and -6.
    """
    power_sums = {}
    for mu in range(1, 6):
        poly = reduce_to_hauptmodul(newton_power_u5(mu, order), 0, 3 * mu)
        power_sums[mu] = poly * 5
    elementary: list[HauptmodulPoly] = [HauptmodulPoly({0: 1})]
    for k in range(1, 6):
        acc = HauptmodulPoly({})
        for i in range(1, k + 1):
            term = elementary[k - i] * power_sums[i]
            acc = acc + term if i % 2 else acc - term
        sigma = acc.scale(Fraction(1, k)).to_integer()
        elementary.append(sigma)
    sigmas = tuple(elementary[1:])

    for mu in (5, 6, 7, -5, -6):
        lhs = newton_power_u5(mu, order)
        rhs = IntLaurentSeries.zero(order)
        for i, sigma in enumerate(sigmas, start=1):
            term = sigma.evaluate(order) * newton_power_u5(mu - i, order)
            rhs = rhs + (term if i % 2 else -term)
        check_to = min(lhs.trunc, rhs.trunc)
        if not lhs.eq_to_order(rhs, check_to):
            raise AssertionError(
                f"Newton recurrence failed to reproduce phi^{mu}|U_5")
    return sigmas


# ---------------------------------------------------------------------------
# the ladder
# ---------------------------------------------------------------------------

@dataclass
class LadderState:
    """One rung: its series, and its hauptmodul-polynomial prefix."""

    nu: int
    series: IntLaurentSeries
    gpoly: HauptmodulPoly


def required_multiplier_trunc(alpha_max: int, top_trunc: int) -> int:
    """Multiplier truncation needed so L_(2*alpha_max+1) is exact below
    q^top_trunc, walking the recursion backward."""
    need = top_trunc
    f_need = 1
    for a in range(alpha_max, -1, -1):
        prod_t = 5 * (need - 1) + 1
        if a == 0:
            f_need = max(f_need, prod_t)
        else:
            f_need = max(f_need, prod_t - 1)
            need = 5 * (prod_t - 2) + 1
    return f_need


@lru_cache(maxsize=None)
def ladder(alpha_max: int, jmax: int = 11,
           ceiling: int = COEFFICIENT_CEILING) -> list[LadderState]:
    """Rungs L_0 .. L_(2*alpha_max+1) by series recursion, cross-checked
    against the matrix vector forms on the first jmax coefficients.

    Cached; callers must treat the returned states as read-only."""
    if alpha_max < 0:
        raise ValueError("alpha_max must be >= 0")
    f_trunc = required_multiplier_trunc(alpha_max, jmax + 1)
    if f_trunc > ceiling:
        raise BudgetExceededError(
            f"ladder depth alpha={alpha_max} needs {f_trunc} multiplier "
            f"coefficients, above the ceiling {ceiling}")
    mult = ladder_multiplier(f_trunc)
    states = [LadderState(0, IntLaurentSeries.one(f_trunc),
                          HauptmodulPoly({0: 1}))]
    cur = states[0].series
    for a in range(alpha_max + 1):
        odd = apply_U(5, mult * cur)
        states.append(LadderState(2 * a + 1, odd, _rung_poly(odd, jmax)))
        if a < alpha_max:
            even = apply_U(5, odd)
            states.append(LadderState(2 * a + 2, even,
                                      _rung_poly(even, jmax)))
            cur = even

    _check_matrix_agreement(states, alpha_max, jmax)
    return states


def _rung_poly(series: IntLaurentSeries, jmax: int) -> HauptmodulPoly:
    poly = reduce_to_hauptmodul(series, 0, min(jmax, series.trunc - 1),
                                exact=False)
    if poly[0]:
        raise NotHauptmodulPolynomialError(
            f"ladder rung has constant term {poly[0]}; expected none")
    return poly


def ladder_vectors(alpha_max: int, jmax: int = 11) -> dict[int, dict[int, int]]:
    """Matrix-route rungs: nu -> {j: l_j(nu)}, exact for j <= jmax.

    Every step except the last is taken with fully certified matrix rows;
    the final step may use the banded V matrix because rows beyond 5*jmax
    provably contribute nothing to columns <= jmax.
    """
    vec = {1: 5}
    vectors = {1: dict(vec)}
    for a in range(alpha_max):
        a_rows = u_matrix_rows(max(vec))
        vec = _vec_mat(vec, a_rows)
        vectors[2 * a + 2] = dict(vec)
        last = a == alpha_max - 1
        if last:
            b_rows = _v_rows_partial(max(vec), jmax)
        else:
            b_rows = v_matrix_rows(max(vec))
        vec = _vec_mat(vec, b_rows)
        vectors[2 * a + 3] = dict(vec)
    return vectors


def _check_matrix_agreement(states: list[LadderState], alpha_max: int,
                            jmax: int) -> None:
    if alpha_max < 1:
        return
    vectors = ladder_vectors(alpha_max, jmax)
    for state in states:
        if state.nu == 0:
            continue
        want = vectors.get(state.nu)
        if want is None:
            continue
        got = state.gpoly.as_dict()
        top = min(jmax, state.series.trunc - 1)
        for j in range(1, top + 1):
            if got.get(j, 0) != want.get(j, 0):
                raise LadderConsistencyError(
                    f"rung {state.nu}, G^{j}: series gives {got.get(j, 0)}, "
                    f"matrices give {want.get(j, 0)}")


def five_adic(n: int) -> int:
    """5-adic valuation; raises on 0 (its valuation is infinite)."""
    if n == 0:
        raise ValueError("the 5-adic valuation of 0 is infinite")
    v = 0
    while n % 5 == 0:
        n //= 5
        v += 1
    return v


def ladder_subsequence_check(alpha: int, terms: int,
                             ceiling: int = COEFFICIENT_CEILING) -> bool:
    """Verify, coefficientwise below q^terms, that

        L_(2a+1) = (q^10;q^10)^2/(q^5;q^5)^3
                   * sum_{n>=1} c(5^(2a+1) n - 1 - 5^2 - ... - 5^(2a)) q^n

    where c(m) is the crank-parity coefficient."""
    if alpha < 0 or terms < 2:
        raise ValueError("need alpha >= 0 and terms >= 2")
    step = 5 ** (2 * alpha + 1)
    delta = sum(5 ** (2 * i) for i in range(alpha + 1))
    g_need = step * (terms - 1) - delta + 1
    f_need = required_multiplier_trunc(alpha, terms)
    if max(g_need, f_need) > ceiling:
        raise BudgetExceededError(
            f"subsequence check alpha={alpha}, terms={terms} needs "
            f"{max(g_need, f_need)} coefficients, above ceiling {ceiling}")

    mult = ladder_multiplier(f_need)
    cur = IntLaurentSeries.one(f_need)
    rung = None
    for _ in range(alpha + 1):
        rung = apply_U(5, mult * cur)
        cur = apply_U(5, rung)

    g = cranks.crank_parity_series(g_need)
    sub = IntLaurentSeries.from_terms(
        {n: g.coeff(step * n - delta) for n in range(1, terms)}, terms)
    prefactor = (pentagonal_product(10, terms) ** 2
                 / pentagonal_product(5, terms) ** 3)
    rhs = prefactor * sub
    order = min(terms, rung.trunc, rhs.trunc)
    return rung.eq_to_order(rhs, order)
