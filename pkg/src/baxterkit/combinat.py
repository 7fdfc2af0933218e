"""Baxter numbers, Baxter and Hoggatt polynomials, and a brute-force oracle.

All generators return exact integer data; polynomials are :class:`Poly`
in the variable t.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, prod

from .errors import DomainError, ResourceError
from .polycore import Poly

ENUMERATION_CAP = 10


@dataclass(frozen=True)
class BaxterCoefficientTable:
    """D_{n,1}, ..., D_{n,n} as a tuple (index k - 1 holds D_{n,k})."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


@dataclass(frozen=True)
class HoggattSpec:
    n: int
    m: int
    q: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.q < 1:
            raise DomainError(f"Hoggatt parameters must be positive, got {self}")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def baxter_coefficient(n: int, k: int) -> int:
    """D_{n,k}: Baxter permutations of [n] with k - 1 descents."""
    _check_n(n)
    if k < 1 or k > n:
        return 0
    num = 2 * comb(n + 1, k - 1) * comb(n + 1, k) * comb(n + 1, k + 1)
    den = n * (n + 1) ** 2
    q, r = divmod(num, den)
    assert r == 0, (n, k)
    return q


def baxter_table(n: int) -> BaxterCoefficientTable:
    _check_n(n)
    return BaxterCoefficientTable(n, tuple(baxter_coefficient(n, k) for k in range(1, n + 1)))


def baxter_number(n: int) -> int:
    _check_n(n)
    return sum(baxter_coefficient(n, k) for k in range(1, n + 1))


def baxter_polynomial(n: int) -> Poly:
    return Poly(baxter_table(n).coeffs)


def f_poly(n: int, m: int) -> Poly:
    """F_{n,m}(t) = sum_k C(n,k) C(n,k+1) ... C(n,k+m-1) t^k."""
    if m < 1 or n < 0:
        raise DomainError(f"F_(n,m) needs n >= 0 and m >= 1, got ({n}, {m})")
    return Poly(prod(comb(n, k + i) for i in range(m)) for k in range(0, n - m + 2))


def g_poly(n: int, m: int) -> Poly:
    """Auxiliary G_{n,m} = F_{n,1} * F_{n-1,m-1} (Hadamard product)."""
    return f_poly(n, 1).hadamard(f_poly(n - 1, m - 1))


def hoggatt_coefficient(n: int, m: int, k: int) -> int:
    """Number of plane partitions in a k x (n-1-k) x m box."""
    if k < 0 or k > n - 1:
        return 0
    big = n + m - 2
    num = prod(comb(big, k + i) for i in range(m))
    den = prod(comb(big, j) for j in range(1, m))
    q, r = divmod(num, den)
    assert r == 0, (n, m, k)
    return q


def hoggatt_polynomial(n: int, m: int) -> Poly:
    """H_n^[m](1, t), degree n - 1 with positive integer coefficients."""
    HoggattSpec(n, m)
    return Poly(hoggatt_coefficient(n, m, k) for k in range(n))


def hoggatt_sum(n: int, m: int) -> int:
    """H_n^[m](1, 1), summed with the term ratio c_{k+1}/c_k = prod_i (N-k-i)/(k+i+1), N = n+m-2."""
    HoggattSpec(n, m)
    big = n + m - 2
    term, total = 1, 1
    for k in range(n - 1):
        num = den = 1
        for i in range(m):
            num *= big - k - i
            den *= k + i + 1
        term = term * num // den
        total += term
    return total


def plane_partition_box(k: int, l: int, m: int, q: int) -> int:
    """Sum of q^|pi| over plane partitions in a k x l x m box, for integer q >= 1.

    MacMahon's box product; q = 1 falls back to the binomial-product count.
    An empty box (k*l*m == 0) contributes the single empty partition.
    """
    if min(k, l, m) < 0:
        raise DomainError("box dimensions must be nonnegative")
    if k * l * m == 0:
        return 1
    if q == 1:
        return hoggatt_coefficient(k + l + 1, m, k)
    num = 1
    den = 1
    for i in range(1, k + 1):
        for j in range(1, l + 1):
            for h in range(1, m + 1):
                num *= q ** (i + j + h - 1) - 1
                den *= q ** (i + j + h - 2) - 1
    val, r = divmod(num, den)
    assert r == 0
    return val


def hoggatt_qt(n: int, m: int, q: int) -> Poly:
    """H_n^[m](q, t) at an integer q >= 1, as a polynomial in t."""
    HoggattSpec(n, m, q)
    return Poly(
        q ** (m * comb(k + 1, 2)) * plane_partition_box(k, n - 1 - k, m, q)
        for k in range(n)
    )


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# brute-force oracle

def is_baxter(perm) -> bool:
    """Reject any i < j < k - 1 with pi_i pi_j pi_{j+1} pi_k forming 3-14-2 or 2-41-3."""
    n = len(perm)
    for j in range(1, n - 2):
        a, b = perm[j], perm[j + 1]
        lo_, hi_ = (b, a) if a > b else (a, b)
        for i in range(j):
            x = perm[i]
            if not lo_ < x < hi_:
                continue
            for k in range(j + 2, n):
                y = perm[k]
                if a > b:
                    # pi_{j+1} < pi_i < pi_k < pi_j
                    if x < y < a:
                        return False
                else:
                    # pi_j < pi_k < pi_i < pi_{j+1}
                    if a < y < x:
                        return False
    return True


def descents(perm) -> int:
    return sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


def _count_block(args):
    n, first = args
    counts = [0] * n
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in itertools.permutations(rest):
        perm = (first,) + tail
        if is_baxter(perm):
            counts[descents(perm)] += 1
    return counts


def enumerate_baxter_descents(n: int, *, cap: int = ENUMERATION_CAP, workers: int = 1) -> BaxterCoefficientTable:
    """Count Baxter permutations of [n] by descents, by exhaustive search.

    The permutation space is split by first letter; with ``workers > 1`` the
    blocks run in separate processes and are merged in a fixed order.
    """
    _check_n(n)
    if n > cap:
        raise ResourceError(f"enumeration of S_{n} exceeds the cap n <= {cap}")
    jobs = [(n, first) for first in range(1, n + 1)]
    if workers > 1 and n >= 7:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_count_block, jobs))
    else:
        blocks = [_count_block(j) for j in jobs]
    totals = [sum(col) for col in zip(*blocks)]
    return BaxterCoefficientTable(n, tuple(totals))
