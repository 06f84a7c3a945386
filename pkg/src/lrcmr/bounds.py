"""Field-size and length bounds for optimal LRCs and MR codes, in exact
integer arithmetic.

Fractional powers never touch floating point: ``Q >= B**(2/r)`` is tested
as ``Q**(r/2) >= B`` and floors of ``(N/D) * q**(E/T)`` are found by binary
search on cross-multiplied integer inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import (
    DistanceTooSmall,
    EpsilonTooLarge,
    EvenR,
    HypothesisViolation,
    OddR,
    OutOfRange,
)
from .gf import prime_factors


@dataclass(frozen=True)
class PrimePowerResult:
    value: int
    base: int | None
    exponent: int | None

    @property
    def is_prime_power(self) -> bool:
        return self.base is not None

    def __bool__(self) -> bool:
        return self.is_prime_power


def is_prime_power(x: int) -> PrimePowerResult:
    if x < 2:
        raise OutOfRange(f"{x} < 2")
    ps = prime_factors(x)
    if len(ps) != 1:
        return PrimePowerResult(x, None, None)
    p, e, y = ps[0], 0, x
    while y > 1:
        y //= p
        e += 1
    return PrimePowerResult(x, p, e)


def iroot_ceil(B: int, e: int) -> int:
    """Least ``Q >= 1`` with ``Q**e >= B``."""
    if B <= 1:
        return 1
    lo, hi = 1, 1
    while hi**e < B:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**e >= B:
            hi = mid
        else:
            lo = mid + 1
    return lo


def psi(B: int, root_exponent: int = 1) -> int:
    """Smallest prime power ``Q`` with ``Q**root_exponent >= B``."""
    if B < 1 or root_exponent < 1:
        raise ValueError("need B >= 1 and root_exponent >= 1")
    Q = max(2, iroot_ceil(B, root_exponent))
    while not is_prime_power(Q):
        Q += 1
    return Q


def floor_scaled_power(num: int, den: int, base: int, e_num: int, e_den: int) -> int:
    """``floor((num/den) * base**(e_num/e_den))`` for positive ``num, den, base, e_den``."""
    if num <= 0 or den <= 0 or base <= 0 or e_den <= 0:
        raise ValueError("positive operands required")
    pos, neg = max(e_num, 0), max(-e_num, 0)
    rhs = num**e_den * base**pos

    def fits(y: int) -> bool:
        return (y * den) ** e_den * base**neg <= rhs

    hi = 1
    while fits(hi):
        hi *= 2
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


# -- new bound ----------------------------------------------------------------


@dataclass(frozen=True)
class NotApplicable:
    reason: str

    def __bool__(self) -> bool:
        return False


def field_bound_new(n: int, k: int, r: int, delta: int) -> int | NotApplicable:
    """Least admissible field size for an optimal ``[n, k]`` LRC with
    ``(r, delta)``-locality, ``n = m(r+delta-1)``, ``k = u*r``, ``u >= 2``."""
    a = r + delta - 1
    if n % a:
        return NotApplicable(f"r + delta - 1 = {a} does not divide n = {n}")
    if k % r:
        return NotApplicable(f"r = {r} does not divide k = {k}")
    m, u = n // a, k // r
    if u < 2:
        return NotApplicable(f"u = k/r = {u} < 2")
    if r % 2 == 0:
        if m < u + 1:
            return NotApplicable(f"even r needs m >= u + 1, got m = {m}, u = {u}")
        B = (u + 1) * ((2 * r + 2 * delta - 2) // r) - 1
        return psi(B, r // 2)
    if m < u + 2:
        return NotApplicable(f"odd r needs m >= u + 2, got m = {m}, u = {u}")
    return psi(u * u, r + 1)


def lemma_even_check(q: int, r: int, delta: int, u: int) -> bool:
    """``(u+1) * floor((2r+2delta-2)/r) <= q**(r/2) + 1``."""
    if r % 2:
        raise OddR("this inequality is for even r")
    return (u + 1) * ((2 * r + 2 * delta - 2) // r) <= q ** (r // 2) + 1


def lemma_odd_check(q: int, r: int, u: int) -> bool:
    """``u <= q**((r+1)/2)``."""
    if r % 2 == 0:
        raise EvenR("this inequality is for odd r")
    return u <= q ** ((r + 1) // 2)


def lrc_bound(n: int, k: int, r: int, delta: int) -> int:
    return n - k + 1 - (-(-k // r) - 1) * (delta - 1)


def reduce_parameters(n: int, k: int, d: int, r: int, delta: int, epsilon: int) -> tuple[int, int, int]:
    """Shrink an optimal ``[n, k, d]`` profile by ``epsilon`` repair sets."""
    a = r + delta - 1
    if d <= r + delta:
        raise DistanceTooSmall(f"need d > r + delta = {r + delta}, got {d}")
    cap = -(-(d - 1) // a) - 1
    if epsilon < 0 or epsilon > cap:
        raise EpsilonTooLarge(f"epsilon must lie in [0, {cap}]")
    out = (n - epsilon * a, k, d - epsilon * a)
    if lrc_bound(n, k, r, delta) == d:
        assert lrc_bound(out[0], k, r, delta) == out[2], "reduction left the bound"
    return out


def mr_field_floor_r2(n: int) -> int:
    """Field-size floor ``n - 1`` for ``(n, 2, 2, delta, q)``-MR codes."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return n - 1


# -- cited bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class OrderValue:
    """A bound evaluated with every hidden constant set to 1."""

    value: int
    order_estimate: bool
    case: str

    def to_json(self) -> dict:
        return {"value": self.value, "order_estimate": self.order_estimate, "case": self.case}


def length_bound_prior(q: int, d: int, r: int, delta: int, k: int) -> OrderValue:
    """Largest length of an optimal LRC allowed by the prior length bounds.

    ``delta > 2`` evaluates the explicit formula; ``delta = 2`` only has an
    order-level form and is returned with ``order_estimate`` set.
    """
    u, v = divmod(k, r)
    a = r + delta - 1
    if delta == 2:
        if d < 5 or k <= r:
            raise HypothesisViolation("needs d >= 5 and k > r")
        if v and k < 2 * r * r + 2 * r - (2 * r - 1) * v:
            raise HypothesisViolation("needs r | k or k >= 2r^2 + 2r - (2r-1)(k mod r)")
        res = d % 4 or 4
        top = 4 * (d - 2) if res in (1, 2) else 4 * (d - 3)
        # d * q**(top/(d-res) - 1)
        val = floor_scaled_power(d, 1, q, top - (d - res), d - res)
        return OrderValue(val, True, f"delta=2, d mod 4 class {res}")
    t = (d - 1) // delta
    if t < 2:
        raise HypothesisViolation(f"t = floor((d-1)/delta) = {t} < 2")
    if not (v == 0 or u >= 2 * (r - v + 1)):
        raise HypothesisViolation(f"needs v = 0 or u >= 2(r-v+1); u = {u}, v = {v}")
    wu = (d - 1 + v) // a
    T = t - 1 if t % 2 else t
    val = floor_scaled_power(T * a, 2 * r * (q - 1), q, 2 * wu * r - 2 * v, T)
    return OrderValue(val, False, f"delta>2, t = {t} {'odd' if t % 2 else 'even'}")


def gm_field_estimate(n: int, r: int, h: int, delta: int, m: int) -> OrderValue:
    """Order-level field-size floor for ``(n, r, h, delta, q)``-MR codes."""
    if h < 2 or m < 2:
        raise HypothesisViolation("needs h >= 2 and m >= 2")
    if m >= h:
        return OrderValue(n * r ** min(delta - 1, h - 2), True, "m >= h")
    if h % m == 0:
        if (delta - 1) * m <= h * m - 2 * h:
            val = floor_scaled_power(n, 1, n, m * (delta - 1), h)
            return OrderValue(val, True, "m < h, m | h, delta-1 <= h - 2h/m")
        return OrderValue(n ** (m - 1), True, "m < h, m | h, delta-1 > h - 2h/m")
    c = -(-h // m)
    e_num = min(delta - 1, h - 2 * c)
    val = floor_scaled_power(n, 1, r, e_num, c)
    return OrderValue(val, True, "general exponent min(delta-1, h-2*ceil(h/m))/ceil(h/m)")


# -- verdicts -------------------------------------------------------------------


@dataclass
class FieldVerdict:
    verdict: str  # optimal | gap | below_bound | not_applicable
    bound_new: int | None
    floor_r2: int | None
    gap: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "bound_new": self.bound_new,
            "floor_r2": self.floor_r2,
            "gap": self.gap,
            "notes": self.notes,
        }


def optimal_field_size_verdict(n: int, k: int, r: int, delta: int, q: int, mr: bool = False) -> FieldVerdict:
    """Compare ``q`` with the exact field-size floors.

    ``mr`` adds the ``q >= n - 1`` floor, valid only for ``(n, 2, 2, delta, q)``-MR codes.
    """
    notes: list[str] = []
    b = field_bound_new(n, k, r, delta)
    bound = b if isinstance(b, int) else None
    if bound is None:
        notes.append(b.reason)
    elif r % 2 == 0 and r > 2:
        notes.append("even r read as least prime power Q with Q^(r/2) >= B")
    floor = None
    if mr and r == 2:
        a = r + delta - 1
        if n % a == 0 and (n // a) * r - k == 2:
            floor = mr_field_floor_r2(n)
        else:
            notes.append("q >= n-1 floor skipped: parameters are not (n,2,2,delta) MR")
    lows = [x for x in (bound, floor) if x is not None]
    if not lows:
        return FieldVerdict("not_applicable", bound, floor, [], notes)
    low = max(lows)
    if q < low:
        return FieldVerdict("below_bound", bound, floor, [], notes)
    gap = [Q for Q in range(low, q) if is_prime_power(Q)]
    return FieldVerdict("gap" if gap else "optimal", bound, floor, gap, notes)


CSV_COLUMNS = ("n", "k", "r", "delta", "q", "bound_new", "floor_r2", "verdict", "notes")


def verdict_row(n: int, k: int, r: int, delta: int, q: int, mr: bool = False) -> dict:
    v = optimal_field_size_verdict(n, k, r, delta, q, mr)
    return {
        "n": n, "k": k, "r": r, "delta": delta, "q": q,
        "bound_new": "" if v.bound_new is None else v.bound_new,
        "floor_r2": "" if v.floor_r2 is None else v.floor_r2,
        "verdict": v.verdict,
        "notes": "; ".join(v.notes + ([f"gap {v.gap}"] if v.gap else [])),
    }


def sweep_cyclic_mr(q_max: int, b_max: int, r_values, delta_values) -> list[dict]:
    """One row per admissible cyclic-MR parameter set ``(q, b, r, delta)``."""
    rows = []
    for q in range(2, q_max + 1):
        if not is_prime_power(q):
            continue
        for b in range(1, b_max + 1):
            Q = q**b
            n = Q - 1
            for r in r_values:
                for delta in delta_values:
                    a = r + delta - 1
                    if n % a or not any(b % bp == 0 and (q**bp - 1) % a == 0 for bp in range(1, b + 1)):
                        continue
                    m = n // a
                    if gcd(delta, m) != 1 or m * r - 2 < 1:
                        continue
                    rows.append(verdict_row(n, m * r - 2, r, delta, Q, mr=True))
    return rows
