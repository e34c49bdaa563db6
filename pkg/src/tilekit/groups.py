"""Exact arithmetic, metrics and ball enumeration for the supported groups.

Supported groups and their element normal forms:

* free groups  F_k   -- reduced words, stored as tuples of signed generator
  indices (1..k for generators, negative for inverses);
* free abelian Z^d   -- integer vectors, stored as tuples of length d;
* the integers Z     -- plain ints;
* finite cyclic Z_n  -- residues in [0, n).

All operations are pure functions over immutable values; callers may use
them from concurrent workers without coordination.

Text syntax for free-group elements: lowercase letters are generators
('a' = first generator), uppercase their inverses, "" is the identity.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapExceededError, InputError, KindMismatchError

FREE = "free"
FREE_ABELIAN = "free_abelian"
INTEGERS = "integers"
CYCLIC = "cyclic"

#: Ball enumerations refuse beyond this many elements unless overridden.
DEFAULT_ELEMENT_CAP = 10**8

Element = object  # int for Z and Z_n, tuple[int, ...] for words and vectors
Word = tuple


def element_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("TILEKIT_ELEMENT_CAP")
    return int(env) if env else DEFAULT_ELEMENT_CAP


@dataclass(frozen=True)
class GroupSpec:
    """Which concrete group elements live in.

    kind is one of "free", "free_abelian", "integers", "cyclic";
    rank applies to the first two, modulus to the last.
    """

    kind: str
    rank: int | None = None
    modulus: int | None = None

    def __post_init__(self):
        if self.kind in (FREE, FREE_ABELIAN):
            if not isinstance(self.rank, int) or self.rank < 1:
                raise InputError(f"{self.kind} group needs rank >= 1")
            if self.kind == FREE and self.rank > 26:
                raise InputError("free rank > 26 exceeds the letter alphabet")
            if self.modulus is not None:
                raise InputError("rank-based groups take no modulus")
        elif self.kind == INTEGERS:
            if self.rank is not None or self.modulus is not None:
                raise InputError("the integers take no parameters")
        elif self.kind == CYCLIC:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise InputError("cyclic group needs modulus >= 2")
            if self.rank is not None:
                raise InputError("cyclic groups take no rank")
        else:
            raise InputError(f"unknown group kind: {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind in (FREE, FREE_ABELIAN):
            return {"kind": self.kind, "rank": self.rank}
        if self.kind == CYCLIC:
            return {"kind": self.kind, "modulus": self.modulus}
        return {"kind": self.kind}

    @staticmethod
    def from_json(data: dict) -> "GroupSpec":
        return GroupSpec(data["kind"], data.get("rank"), data.get("modulus"))


def free_group(rank: int) -> GroupSpec:
    return GroupSpec(FREE, rank=rank)


def free_abelian(rank: int) -> GroupSpec:
    return GroupSpec(FREE_ABELIAN, rank=rank)


def integers() -> GroupSpec:
    return GroupSpec(INTEGERS)


def cyclic(modulus: int) -> GroupSpec:
    return GroupSpec(CYCLIC, modulus=modulus)


# ---------------------------------------------------------------------------
# reduced-word arithmetic (free groups)

def reduce_word(letters: Sequence[int]) -> Word:
    """Cancel adjacent letter/inverse pairs until none remain."""
    out: list[int] = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def multiply_words(x: Word, y: Word) -> Word:
    i = len(x)
    j = 0
    ny = len(y)
    while i > 0 and j < ny and x[i - 1] == -y[j]:
        i -= 1
        j += 1
    return x[:i] + y[j:]


def invert_word(x: Word) -> Word:
    return tuple(-v for v in reversed(x))


def word_cancellation(x: Word, y: Word) -> int:
    """Length of the segment erased when concatenating reduced words,
    so that |xy| = |x| + |y| - 2c."""
    c = 0
    i = len(x) - 1
    n = min(len(x), len(y))
    while c < n and x[i - c] == -y[c]:
        c += 1
    return c


def word_power(x: Word, n: int) -> Word:
    if n == 0:
        return ()
    base = x if n > 0 else invert_word(x)
    out = base
    for _ in range(abs(n) - 1):
        out = multiply_words(out, base)
    return out


def is_cyclically_reduced(x: Word) -> bool:
    return len(x) == 0 or x[0] != -x[-1]


def has_period_at_most(x: Word, max_period: int) -> bool:
    """True if some shift period p <= max_period repeats through x."""
    n = len(x)
    for p in range(1, min(max_period, n - 1) + 1):
        if all(x[i] == x[i + p] for i in range(n - p)):
            return True
    return False


def word_from_str(text: str, rank: int) -> Word:
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            v = ord(ch) - ord("a") + 1
        elif "A" <= ch <= "Z":
            v = -(ord(ch) - ord("A") + 1)
        else:
            raise InputError(f"bad letter {ch!r} in word {text!r}")
        if abs(v) > rank:
            raise InputError(f"letter {ch!r} exceeds rank {rank}")
        letters.append(v)
    word = tuple(letters)
    if word != reduce_word(word):
        raise InputError(f"word {text!r} is not reduced")
    return word


def word_to_str(word: Word) -> str:
    out = []
    for v in word:
        if v > 0:
            out.append(chr(ord("a") + v - 1))
        else:
            out.append(chr(ord("A") - v - 1))
    return "".join(out)


def _letter_key(v: int) -> int:
    # a < a^-1 < b < b^-1 < ...
    return 2 * (abs(v) - 1) + (1 if v < 0 else 0)


def _letters_in_order(rank: int) -> list[int]:
    out = []
    for g in range(1, rank + 1):
        out.append(g)
        out.append(-g)
    return out


# ---------------------------------------------------------------------------
# generic operations

def identity(spec: GroupSpec) -> Element:
    if spec.kind == FREE:
        return ()
    if spec.kind == FREE_ABELIAN:
        return (0,) * spec.rank
    return 0


def validate_element(spec: GroupSpec, g: Element) -> None:
    if spec.kind == FREE:
        if not isinstance(g, tuple) or any(
            not isinstance(v, int) or v == 0 or abs(v) > spec.rank for v in g
        ):
            raise KindMismatchError(f"not a word over rank {spec.rank}: {g!r}")
        if g != reduce_word(g):
            raise KindMismatchError(f"word not reduced: {g!r}")
    elif spec.kind == FREE_ABELIAN:
        if (
            not isinstance(g, tuple)
            or len(g) != spec.rank
            or any(not isinstance(v, int) for v in g)
        ):
            raise KindMismatchError(f"not a vector of rank {spec.rank}: {g!r}")
    elif spec.kind == INTEGERS:
        if not isinstance(g, int):
            raise KindMismatchError(f"not an integer: {g!r}")
    else:
        if not isinstance(g, int) or not 0 <= g < spec.modulus:
            raise KindMismatchError(
                f"not a residue modulo {spec.modulus}: {g!r}"
            )


def multiply(spec: GroupSpec, g: Element, h: Element) -> Element:
    if spec.kind == FREE:
        return multiply_words(g, h)
    if spec.kind == FREE_ABELIAN:
        return tuple(a + b for a, b in zip(g, h))
    if spec.kind == INTEGERS:
        return g + h
    return (g + h) % spec.modulus


def inverse(spec: GroupSpec, g: Element) -> Element:
    if spec.kind == FREE:
        return invert_word(g)
    if spec.kind == FREE_ABELIAN:
        return tuple(-a for a in g)
    if spec.kind == INTEGERS:
        return -g
    return (-g) % spec.modulus


def power(spec: GroupSpec, g: Element, n: int) -> Element:
    if spec.kind == FREE:
        return word_power(g, n)
    if spec.kind == FREE_ABELIAN:
        return tuple(n * a for a in g)
    if spec.kind == INTEGERS:
        return n * g
    return (n * g) % spec.modulus


def length(spec: GroupSpec, g: Element) -> int:
    """Word length with respect to the standard generating set."""
    if spec.kind == FREE:
        return len(g)
    if spec.kind == FREE_ABELIAN:
        return sum(abs(a) for a in g)
    if spec.kind == INTEGERS:
        return abs(g)
    return min(g, spec.modulus - g)


def distance(spec: GroupSpec, g: Element, h: Element) -> int:
    """Left-invariant metric d(g, h) = |g^-1 h|."""
    return length(spec, multiply(spec, inverse(spec, g), h))


def sort_key(spec: GroupSpec, g: Element):
    """Total order used for deterministic enumeration: length first, then a
    fixed lexicographic tie-break on normal forms."""
    if spec.kind == FREE:
        return (len(g), tuple(_letter_key(v) for v in g))
    if spec.kind == FREE_ABELIAN:
        return (length(spec, g), g)
    if spec.kind == INTEGERS:
        return (abs(g), g)
    return (length(spec, g), g)


def cancellation(spec: GroupSpec, x: Element, y: Element) -> int:
    """c with |xy| = |x| + |y| - 2c; free groups only."""
    if spec.kind != FREE:
        raise InputError("cancellation is defined for free groups only")
    return word_cancellation(x, y)


def tripod_center(spec: GroupSpec, p0: Element, p1: Element, p2: Element) -> Element:
    """The median of three vertices of the tree Cayley graph: the unique m
    with d(pi, m) + d(m, pj) = d(pi, pj) for every pair."""
    if spec.kind != FREE:
        raise InputError("tripod_center is defined for free groups only")
    d01 = distance(spec, p0, p1)
    d02 = distance(spec, p0, p2)
    d12 = distance(spec, p1, p2)
    l0 = (d01 + d02 - d12) // 2
    path = multiply_words(invert_word(p0), p1)
    return multiply_words(p0, path[:l0])


def generators(spec: GroupSpec) -> list[Element]:
    """The standard symmetric generating set."""
    if spec.kind == FREE:
        return [(v,) for v in _letters_in_order(spec.rank)]
    if spec.kind == FREE_ABELIAN:
        out = []
        for i in range(spec.rank):
            for s in (1, -1):
                vec = [0] * spec.rank
                vec[i] = s
                out.append(tuple(vec))
        return out
    if spec.kind == INTEGERS:
        return [1, -1]
    gens = [1 % spec.modulus, (-1) % spec.modulus]
    return sorted(set(gens))


def neighbors(spec: GroupSpec, g: Element) -> list[Element]:
    """Cayley-graph neighbours g*s for standard generators s."""
    return [multiply(spec, g, s) for s in generators(spec)]


# ---------------------------------------------------------------------------
# balls

def ball_size(spec: GroupSpec, radius: int) -> int:
    if radius < 0:
        raise InputError("radius must be >= 0")
    if spec.kind == FREE:
        k = spec.rank
        if radius == 0:
            return 1
        if k == 1:
            return 2 * radius + 1
        q = 2 * k - 1
        return 1 + 2 * k * (q**radius - 1) // (q - 1)
    if spec.kind == FREE_ABELIAN:
        d = spec.rank
        return sum(
            2**j * math.comb(d, j) * math.comb(radius, j)
            for j in range(0, min(d, radius) + 1)
        )
    if spec.kind == INTEGERS:
        return 2 * radius + 1
    return min(spec.modulus, 2 * radius + 1)


def _check_cap(spec: GroupSpec, radius: int, cap: int | None) -> None:
    size = ball_size(spec, radius)
    limit = element_cap(cap)
    if size > limit:
        raise CapExceededError(
            f"ball of radius {radius} has {size} elements, over the cap {limit}"
        )


def _free_words_of_length(rank: int, n: int) -> Iterator[Word]:
    """All reduced words of length exactly n, lexicographically by letter key."""
    letters = _letters_in_order(rank)
    word: list[int] = []

    def rec(depth: int) -> Iterator[Word]:
        if depth == n:
            yield tuple(word)
            return
        for v in letters:
            if word and word[-1] == -v:
                continue
            word.append(v)
            yield from rec(depth + 1)
            word.pop()

    yield from rec(0)


def _vectors_of_length(rank: int, n: int) -> list[tuple]:
    """All integer vectors with L1 norm exactly n, sorted."""
    out: list[tuple] = []
    vec = [0] * rank

    def rec(i: int, remaining: int):
        if i == rank - 1:
            for v in (-remaining, remaining) if remaining else (0,):
                vec[i] = v
                out.append(tuple(vec))
            vec[i] = 0
            return
        for mag in range(remaining + 1):
            for v in (-mag, mag) if mag else (0,):
                vec[i] = v
                rec(i + 1, remaining - mag)
        vec[i] = 0

    rec(0, n)
    out.sort()
    return out


def iter_ball(spec: GroupSpec, radius: int, cap: int | None = None) -> Iterator[Element]:
    """Yield all elements of length <= radius in the canonical order,
    without materializing the ball."""
    _check_cap(spec, radius, cap)
    if spec.kind == FREE:
        for n in range(radius + 1):
            yield from _free_words_of_length(spec.rank, n)
    elif spec.kind == FREE_ABELIAN:
        for n in range(radius + 1):
            yield from _vectors_of_length(spec.rank, n)
    elif spec.kind == INTEGERS:
        yield 0
        for n in range(1, radius + 1):
            yield -n
            yield n
    else:
        elems = [g for g in range(spec.modulus) if length(spec, g) <= radius]
        elems.sort(key=lambda g: sort_key(spec, g))
        yield from elems


def ball(spec: GroupSpec, radius: int, cap: int | None = None) -> list[Element]:
    """All elements of length <= radius, sorted by the canonical order."""
    return list(iter_ball(spec, radius, cap))


def sphere(spec: GroupSpec, radius: int, cap: int | None = None) -> list[Element]:
    """All elements of length exactly radius, in canonical order."""
    _check_cap(spec, radius, cap)
    if spec.kind == FREE:
        return list(_free_words_of_length(spec.rank, radius))
    return [g for g in iter_ball(spec, radius, cap) if length(spec, g) == radius]


# ---------------------------------------------------------------------------
# JSON element syntax

def element_to_json(spec: GroupSpec, g: Element):
    if spec.kind == FREE:
        return word_to_str(g)
    if spec.kind == FREE_ABELIAN:
        return list(g)
    return g


def element_from_json(spec: GroupSpec, data) -> Element:
    if spec.kind == FREE:
        if not isinstance(data, str):
            raise InputError(f"free-group element must be a string: {data!r}")
        return word_from_str(data, spec.rank)
    if spec.kind == FREE_ABELIAN:
        if not isinstance(data, list):
            raise InputError(f"vector element must be a list: {data!r}")
        g = tuple(int(v) for v in data)
    else:
        g = int(data)
    validate_element(spec, g)
    return g
