"""Mask polynomials and cyclotomic criteria for integer tiles.

A finite set A of integers has a mask polynomial A(z) = sum z^(a - min A)
with 0/1 coefficients.  Whether A tiles the integers is tightly linked to
which cyclotomic polynomials divide A(z): for |A| prime there is an exact
criterion, and in general the two classical conditions (T1) and (T2) on
the prime-power cyclotomic divisors bracket the answer from both sides.

All polynomial arithmetic here is exact over Python integers; polynomials
are dense coefficient tuples, constant term first.  No floating point is
used anywhere: cyclotomic coefficients leave {-1, 0, 1} from index 105 on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError

Poly = tuple  # dense integer coefficients, constant term first


def poly_trim(coeffs: Sequence[int]) -> Poly:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return poly_trim(out)


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Exact synthetic division by a monic divisor."""
    if not den or den[-1] != 1:
        raise InputError("divisor must be monic")
    rem = list(num)
    dq = len(num) - len(den)
    if dq < 0:
        return (), poly_trim(rem)
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + len(den) - 1]
        if c:
            quot[i] = c
            for j, cd in enumerate(den):
                rem[i + j] -= c * cd
    return poly_trim(quot), poly_trim(rem)


def poly_divides(den: Poly, num: Poly) -> bool:
    _, rem = poly_divmod(num, den)
    return rem == ()


@dataclass(frozen=True)
class MaskPolynomial:
    """0/1-coefficient polynomial of a finite integer set, constant term 1."""

    coeffs: Poly

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise InputError("mask polynomial needs constant term 1")
        if any(c not in (0, 1) for c in self.coeffs):
            raise InputError("mask polynomial coefficients must be 0 or 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def size(self) -> int:
        """Value at 1 = number of elements of the underlying set."""
        return sum(self.coeffs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "degree": self.degree}


def normalize_set(a_set: Iterable[int]) -> tuple[int, ...]:
    """Sorted, deduplicated, translated to start at 0."""
    elems = sorted(set(int(a) for a in a_set))
    if not elems:
        raise InputError("empty set")
    base = elems[0]
    return tuple(a - base for a in elems)


def mask_polynomial(a_set: Iterable[int]) -> MaskPolynomial:
    """Mask polynomial of a nonempty finite set, exponents a - min(A)."""
    exps = normalize_set(a_set)
    coeffs = [0] * (exps[-1] + 1)
    for e in exps:
        coeffs[e] = 1
    return MaskPolynomial(tuple(coeffs))


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, exact integer coefficients."""
    if d < 1:
        raise InputError("cyclotomic index must be >= 1")
    num: Poly = tuple([-1] + [0] * (d - 1) + [1])  # z^d - 1
    for e in range(1, d):
        if d % e == 0:
            num, rem = poly_divmod(num, cyclotomic(e))
            assert rem == ()
    return num


def euler_phi(d: int) -> int:
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def prime_power_base(d: int) -> int | None:
    """p if d = p^alpha for a prime p and alpha >= 1, else None."""
    if d < 2:
        return None
    p = 2
    n = d
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n  # d itself prime


def is_prime(n: int) -> bool:
    return n >= 2 and prime_power_base(n) == n


@dataclass(frozen=True)
class CyclotomicIndexSets:
    """Indices d >= 2 whose cyclotomic polynomial divides the mask, and the
    prime-power subset of those."""

    r_set: tuple[int, ...]
    s_set: tuple[int, ...]

    def to_json(self) -> dict:
        return {"R": list(self.r_set), "S": list(self.s_set)}


def compute_index_sets(a_set: Iterable[int]) -> CyclotomicIndexSets:
    """All d >= 2 with cyclotomic(d) dividing the mask polynomial.

    A divisor of degree phi(d) cannot exceed the mask degree, and
    phi(d) >= sqrt(d/2), so d <= 2*deg^2 + 2 bounds the scan.
    """
    mask = mask_polynomial(a_set)
    if mask.size < 2:
        raise InputError("index sets need a set of size >= 2")
    deg = mask.degree
    r_set = []
    for d in range(2, 2 * deg * deg + 3):
        if euler_phi(d) <= deg and poly_divides(cyclotomic(d), mask.coeffs):
            r_set.append(d)
    s_set = [d for d in r_set if prime_power_base(d) is not None]
    return CyclotomicIndexSets(tuple(r_set), tuple(s_set))


def check_T1(a_set: Iterable[int]) -> bool:
    """Size condition: the mask evaluated at 1 (i.e. |A|) equals the product
    of the primes underlying the prime-power divisor indices.  Necessary
    for A to tile the integers."""
    mask = mask_polynomial(a_set)
    sets = compute_index_sets(a_set)
    prod = 1
    for d in sets.s_set:
        prod *= prime_power_base(d)
    return mask.size == prod


def check_T2(a_set: Iterable[int]) -> bool:
    """Product condition: every product of prime powers from S with pairwise
    distinct primes must again be a divisor index in R.

    Same-prime products are excluded: with them the condition fails even
    for known tiles, so the distinct-prime reading is the usable one.
    Together with the size condition this is sufficient for tiling.
    """
    sets = compute_index_sets(a_set)
    r = set(sets.r_set)
    by_prime: dict[int, list[int]] = {}
    for d in sets.s_set:
        by_prime.setdefault(prime_power_base(d), []).append(d)
    primes = sorted(by_prime)

    def rec(i: int, prod: int, chosen: int) -> bool:
        if i == len(primes):
            return chosen == 0 or prod in r
        if not rec(i + 1, prod, chosen):
            return False
        return all(rec(i + 1, prod * d, chosen + 1) for d in by_prime[primes[i]])

    return rec(0, 1, 0)


def newman_prime_test(a_set: Iterable[int]) -> bool:
    """Exact tiling criterion for sets of prime cardinality p: the set tiles
    the integers iff some cyclotomic polynomial of prime-power index p^k
    divides its mask polynomial."""
    mask = mask_polynomial(a_set)
    p = mask.size
    if not is_prime(p):
        raise InputError(f"cardinality {p} is not prime")
    deg = mask.degree
    k = 1
    while euler_phi(p**k) <= deg:
        if poly_divides(cyclotomic(p**k), mask.coeffs):
            return True
        k += 1
    return False


def analyze(a_set: Iterable[int]) -> dict:
    """One-stop report used by the CLI: mask, index sets, both conditions,
    and the prime-cardinality criterion when it applies."""
    elems = sorted(set(int(a) for a in a_set))
    mask = mask_polynomial(elems)
    sets = compute_index_sets(elems)
    report = {
        "set": elems,
        "mask": mask.to_json(),
        "index_sets": sets.to_json(),
        "T1": check_T1(elems),
        "T2": check_T2(elems),
    }
    if is_prime(mask.size):
        report["newman"] = newman_prime_test(elems)
    return report
