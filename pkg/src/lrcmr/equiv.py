"""Coordinate permutations of Z_n: multipliers, the coset-wise family
Psi(n, a), the cyclifying permutation of the quasi-cyclic MR code, and the
necessary condition for permutation to a cyclic code."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Iterator, Sequence

import numpy as np

from .codes import LinearCode, cyclic_shift
from .errors import (
    CaseViolation,
    HypothesisViolation,
    LengthMismatch,
    NotResiduePermutation,
    NotUnit,
    SchemaError,
    TooLarge,
)
from .gf import prime_factors
from .locality import normalize_k
from .matrix import GfMatrix
from .mr import MrParams

PSI_SEARCH_LIMIT = 10**6


def units(a: int) -> list[int]:
    """``{1 <= t <= a : gcd(t, a) = 1}``."""
    return [t for t in range(1, a + 1) if gcd(t, a) == 1]


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


@dataclass(frozen=True)
class PermSpec:
    kind: str  # "multiplier" | "psi"
    n: int
    t: int | tuple[int, ...]
    z: tuple[int, ...] | None = None
    a: int | None = None

    @property
    def m(self) -> int | None:
        return None if self.a is None else self.n // self.a

    def mapping(self) -> np.ndarray:
        """``ell[j]`` for ``j`` in ``Z_n``."""
        n = self.n
        if self.kind == "multiplier":
            return (np.arange(n, dtype=np.int64) * self.t) % n
        m = self.m
        out = np.empty(n, dtype=np.int64)
        for i in range(m):
            for x in range(self.a):
                out[x * m + i] = (x * m * self.t[i] + self.z[i]) % n
        return out

    def to_json(self) -> dict:
        if self.kind == "multiplier":
            return {"kind": "multiplier", "n": self.n, "t": self.t}
        return {"kind": "psi", "n": self.n, "a": self.a, "t": list(self.t), "z": list(self.z)}

    @staticmethod
    def from_json(obj: dict) -> PermSpec:
        try:
            if obj["kind"] == "multiplier":
                return make_multiplier(int(obj["n"]), int(obj["t"]))
            if obj["kind"] == "psi":
                return make_psi(int(obj["n"]), int(obj["a"]), obj["t"], obj["z"])
        except KeyError as exc:
            raise SchemaError(f"permutation JSON lacks {exc}") from None
        raise SchemaError(f"unknown permutation kind {obj.get('kind')!r}")


def make_multiplier(n: int, t: int) -> PermSpec:
    if gcd(t, n) != 1:
        raise NotUnit(f"gcd({t}, {n}) != 1")
    return PermSpec("multiplier", n, int(t) % n)


def make_psi(n: int, a: int, t_vec: Sequence[int], z_vec: Sequence[int]) -> PermSpec:
    """``x*m + i -> (x*m*t_i + z_i) mod n``."""
    if a < 1 or n % a:
        raise ValueError(f"a = {a} must divide n = {n}")
    m = n // a
    t_vec, z_vec = tuple(int(t) for t in t_vec), tuple(int(z) for z in z_vec)
    if len(t_vec) != m or len(z_vec) != m:
        raise LengthMismatch(f"t and z need length m = {m}")
    for t in t_vec:
        if gcd(t, a) != 1:
            raise NotUnit(f"gcd({t}, {a}) != 1")
    if sorted(z % m for z in z_vec) != list(range(m)):
        raise NotResiduePermutation(f"z mod {m} = {[z % m for z in z_vec]} is not a permutation")
    P = PermSpec("psi", n, t_vec, z_vec, a)
    ell = P.mapping()
    assert len(set(ell.tolist())) == n
    for i in range(m):
        assert {int(ell[x * m + i]) % m for x in range(a)} == {z_vec[i] % m}
    return P


def identity_psi(n: int, a: int) -> PermSpec:
    m = n // a
    return make_psi(n, a, [1] * m, list(range(m)))


def apply_perm(C: LinearCode, perm: PermSpec) -> LinearCode:
    """New coordinate ``j`` carries old coordinate ``ell(j)``."""
    if perm.n != C.n:
        raise LengthMismatch(f"permutation of Z_{perm.n} applied to length {C.n}")
    ell = perm.mapping().tolist()
    return LinearCode(C.field, C.H.columns(ell), C.G.columns(ell), None, dict(C.meta))


def inverse_mapping(ell: Sequence[int]) -> list[int]:
    inv = [0] * len(ell)
    for j, v in enumerate(ell):
        inv[int(v)] = j
    return inv


def _cyclic_under(H: GfMatrix, G: GfMatrix, ell: Sequence[int]) -> bool:
    Gp = GfMatrix(G.field, cyclic_shift(G.data[:, ell]))
    return (H.columns(ell) @ Gp.T).is_zero()


# -- sufficient condition -----------------------------------------------------


def solve_tau(P: MrParams) -> int | None:
    """Least ``tau`` in ``[0, a)`` with ``delta*m*tau = delta (mod a)``."""
    for tau in range(P.a):
        if (P.delta * P.m * tau - P.delta) % P.a == 0:
            return tau
    return None


def cyclifying_perm(P: MrParams) -> PermSpec | None:
    """Psi permutation with ``t = 1`` and ``z_i = i + m*tau*i`` that makes the
    quasi-cyclic MR code cyclic, or ``None`` when ``gcd(m, a/gcd(a, delta)) != 1``."""
    if P.r < 3:
        raise HypothesisViolation("the permutation result assumes r >= 3")
    if gcd(P.m, P.a // gcd(P.a, P.delta)) != 1:
        return None
    tau = solve_tau(P)
    assert tau is not None
    return make_psi(P.n, P.a, [1] * P.m, [i + P.m * tau * i for i in range(P.m)])


# -- necessary condition ------------------------------------------------------


@dataclass
class NecessaryVerdict:
    verdict: str  # permutable_maybe | not_permutable | hypotheses_unmet
    failing: list[str] = field(default_factory=list)
    facts: list[str] = field(default_factory=list)
    gcd_m_a: int = 0

    @property
    def report(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        lines += [f"unmet: {s}" for s in self.failing]
        lines += [f"fact: {s}" for s in self.facts]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "failing": self.failing, "facts": self.facts,
                "gcd_m_a": self.gcd_m_a, "report": self.report}


def delta_r_case(delta: int, r: int) -> int | None:
    """Which of the three admissible ``(delta, r)`` cases holds, if any."""
    if delta >= 4 and r >= 5:
        return 1
    if delta == 3 and r >= 4:
        return 2
    if delta == 2 and r >= 3 and r % 2 == 1:
        return 3
    return None


def necessary_verdict(P: MrParams) -> NecessaryVerdict:
    """Checks every hypothesis before using ``gcd(m, a) | delta`` as a
    necessary condition; never claims a permutation exists."""
    a, m, r, d, q = P.a, P.m, P.r, P.delta, P.q
    failing: list[str] = []
    u, v = normalize_k(P.k, r)
    if u < 2 * (r - v + 1):
        failing.append(f"k = {P.k} = {u}*{r} + {v} needs u >= 2(r-v+1) = {2 * (r - v + 1)}, got u = {u}")
    ga = gcd(a, euler_phi(a))
    if not (a == 4 or ga == 1):
        failing.append(f"a = {a} is not 4 and gcd({a},phi({a})) = {ga} != 1")
    bprime = next((bp for bp in range(1, P.b + 1) if q**bp - 1 == a), None)
    if bprime is None or P.n % a:
        failing.append(f"a = {a} is not of the form {q}^b' - 1 dividing n = {P.n}")
    if delta_r_case(d, r) is None:
        failing.append(f"(delta, r) = ({d}, {r}) is outside the three admissible cases")
    g = gcd(m, a)
    divides = d % g == 0
    fact = (f"gcd(m,a) = gcd({m},{a}) = {g} divides delta = {d}" if divides
            else f"gcd(m,a) = gcd({m},{a}) = {g} does not divide delta = {d}")
    if failing:
        return NecessaryVerdict("hypotheses_unmet", failing, [fact + " (advisory only)"], g)
    return NecessaryVerdict("permutable_maybe" if divides else "not_permutable", [], [fact], g)


# -- tau oracle ---------------------------------------------------------


def prop_tau_oracle(a: int, r: int, delta: int, tau: int, tau_prime: int, check_case: bool = True) -> bool:
    """Whether ``{i*tau : i < delta} <= {i*tau' : i <= delta}`` (mod ``a``) forces ``tau = tau'``."""
    if a != r + delta - 1:
        raise ValueError("need a = r + delta - 1")
    if check_case and delta_r_case(delta, r) is None:
        raise CaseViolation(f"(delta, r) = ({delta}, {r}) is outside the three cases")
    if gcd(tau, a) != 1 or gcd(tau_prime, a) != 1:
        raise NotUnit("tau and tau' must be units mod a")
    small = {i * tau % a for i in range(1, delta)}
    big = {i * tau_prime % a for i in range(1, delta + 1)}
    return not small <= big or (tau - tau_prime) % a == 0


def prop_tau_scan(a: int, r: int, delta: int, check_case: bool = True) -> list[tuple[int, int]]:
    """Unit pairs ``(tau, tau')`` violating the implication."""
    us = units(a)
    return [(t, tp) for t in us for tp in us if not prop_tau_oracle(a, r, delta, t, tp, check_case)]


# -- brute force ----------------------------------------------------------------


def psi_size(n: int, a: int) -> int:
    m = n // a
    return euler_phi(a) ** m * factorial(m) * a**m


def iter_psi(n: int, a: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``(t, z)`` pairs in lexicographic order, ``z_i`` in ``[0, n)``."""
    m = n // a
    us = units(a)
    zs = [z for z in itertools.product(range(n), repeat=m) if len({x % m for x in z}) == m]
    for t in itertools.product(us, repeat=m):
        for z in zs:
            yield t, z


def brute_force_psi_search(C: LinearCode, a: int, limit: int = PSI_SEARCH_LIMIT) -> PermSpec | None:
    """First ``ell`` in Psi(n, a), in ``(t, z)`` order, that makes ``C`` cyclic."""
    hit = next(psi_hits(C, a, limit), None)
    return None if hit is None else make_psi(C.n, a, *hit)


def psi_hits(C: LinearCode, a: int, limit: int = PSI_SEARCH_LIMIT) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    n = C.n
    if n % a:
        raise ValueError(f"a = {a} must divide n = {n}")
    if psi_size(n, a) > limit:
        raise TooLarge(f"|Psi({n},{a})| = {psi_size(n, a)} exceeds {limit}")
    m = n // a
    for t, z in iter_psi(n, a):
        ell = [0] * n
        for i in range(m):
            for x in range(a):
                ell[x * m + i] = (x * m * t[i] + z[i]) % n
        if _cyclic_under(C.H, C.G, ell):
            yield t, z


def count_psi_hits(C: LinearCode, a: int, limit: int = PSI_SEARCH_LIMIT) -> tuple[int, int]:
    """``(number of cyclifying members, |Psi(n, a)|)``."""
    return sum(1 for _ in psi_hits(C, a, limit)), psi_size(C.n, a)


def cyclicity_preserving_perms(C: LinearCode) -> list[tuple[int, ...]]:
    """Every ``ell`` in ``S_n`` with ``C_ell`` cyclic (tiny ``n`` only)."""
    if C.n > 8:
        raise TooLarge("full S_n scan limited to n <= 8")
    return [p for p in itertools.permutations(range(C.n)) if _cyclic_under(C.H, C.G, list(p))]
