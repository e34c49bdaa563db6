"""Tiles, truncation verification, sound refutation, and the Z decision.

A tile is a finite subset F (|F| >= 2) of a group whose pairwise-disjoint
left shifts g*F can cover the whole group.  On infinite groups tile-hood
is not decidable in general, so this module offers:

* exact verification of a proposed partial tiling on a ball;
* a sound refuter: exhaustive search for a disjoint cover of a ball, where
  failure proves the set is not a tile (shifts of any global tiling
  restrict to such a cover), while success proves nothing;
* a deterministic greedy cover for producing candidate partial tilings;
* a complete decision procedure for subsets of the integers;
* the standard tile families used as fixtures throughout the test-suite.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import groups as G
from .errors import (
    BudgetExhaustedError,
    InputError,
    UndecidedAtCapError,
)
from .groups import Element, GroupSpec

#: Backtracking searches give up (soundly, reporting "unknown") past this.
DEFAULT_NODE_BUDGET = 10**7

#: decide_z_tile refuses once its window automaton would exceed this many
#: states; 2**21 accommodates diameters up to 20.
DEFAULT_STATE_CAP = 2**21


def node_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("TILEKIT_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class Tile:
    """A finite candidate tile: at least two distinct valid elements."""

    spec: GroupSpec
    elements: tuple

    def __post_init__(self):
        seen = set(self.elements)
        if len(seen) != len(self.elements):
            raise InputError("tile elements must be distinct")
        if len(self.elements) < 2:
            raise InputError("a tile needs at least two elements")
        for g in self.elements:
            G.validate_element(self.spec, g)
        ordered = tuple(sorted(self.elements, key=lambda g: G.sort_key(self.spec, g)))
        object.__setattr__(self, "elements", ordered)

    @classmethod
    def from_iterable(cls, spec: GroupSpec, elems: Iterable[Element]) -> "Tile":
        return cls(spec, tuple(dict.fromkeys(elems)))

    @property
    def diameter(self) -> int:
        return max(
            G.distance(self.spec, a, b)
            for a in self.elements
            for b in self.elements
        )

    @property
    def max_length(self) -> int:
        return max(G.length(self.spec, g) for g in self.elements)

    def shift(self, center: Element) -> list:
        return [G.multiply(self.spec, center, f) for f in self.elements]

    def to_json(self) -> dict:
        return {
            "group": self.spec.to_json(),
            "elements": [G.element_to_json(self.spec, g) for g in self.elements],
        }

    @staticmethod
    def from_json(data: dict) -> "Tile":
        spec = GroupSpec.from_json(data["group"])
        elems = [G.element_from_json(spec, e) for e in data["elements"]]
        return Tile.from_iterable(spec, elems)


@dataclass(frozen=True)
class PartialTiling:
    """Shift centers plus the radius of the region the cover is meant for."""

    tile: Tile
    centers: tuple
    region_radius: int

    def __post_init__(self):
        if len(set(self.centers)) != len(self.centers):
            raise InputError("centers must be pairwise distinct")
        for c in self.centers:
            G.validate_element(self.tile.spec, c)

    def to_json(self) -> dict:
        spec = self.tile.spec
        data = self.tile.to_json()
        data["centers"] = [G.element_to_json(spec, c) for c in self.centers]
        data["region_radius"] = self.region_radius
        return data

    @staticmethod
    def from_json(data: dict) -> "PartialTiling":
        tile = Tile.from_json(data)
        spec = tile.spec
        centers = tuple(G.element_from_json(spec, c) for c in data["centers"])
        return PartialTiling(tile, centers, int(data["region_radius"]))


@dataclass(frozen=True)
class TileVerdict:
    """Outcome of a tiling decision or refutation attempt."""

    verdict: str  # "is_tile" | "not_tile" | "unknown"
    refutation_radius: int | None = None
    max_radius: int | None = None
    budget_exhausted: bool = False
    period: int | None = None
    complement: tuple | None = None
    note: str | None = None

    def to_json(self) -> dict:
        data: dict = {"verdict": self.verdict}
        if self.verdict == "not_tile":
            if self.refutation_radius is not None:
                data["refutation_radius"] = self.refutation_radius
            if self.note:
                data["note"] = self.note
        elif self.verdict == "unknown":
            data["max_radius"] = self.max_radius
            data["budget_exhausted"] = self.budget_exhausted
        elif self.verdict == "is_tile":
            if self.period is not None:
                data["period"] = self.period
                data["complement"] = list(self.complement)
            if self.note:
                data["note"] = self.note
        return data


@dataclass(frozen=True)
class CoverReport:
    disjoint: bool
    covered: bool
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covered

    def to_json(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "covered": self.covered,
            "violations": list(self.violations),
        }


# ---------------------------------------------------------------------------
# verification

def verify_partial_tiling(
    pt: PartialTiling,
    core_radius: int,
    cap: int | None = None,
    max_violations: int = 20,
) -> CoverReport:
    """Check a partial tiling element-by-element.

    disjoint: no element lies in two of the placed shifts (anywhere, not
    just inside the region).  covered: every element of the ball of
    core_radius lies in some shift.  Violating elements are reported up to
    max_violations, rendered in the element text syntax.
    """
    if core_radius > pt.region_radius:
        raise InputError("core_radius exceeds the asserted region radius")
    spec = pt.tile.spec
    covered: set = set()
    violations: list = []
    disjoint = True
    for c in pt.centers:
        for e in pt.tile.shift(c):
            if e in covered:
                disjoint = False
                if len(violations) < max_violations:
                    violations.append(("overlap", G.element_to_json(spec, e)))
            else:
                covered.add(e)
    covered_ok = True
    for e in G.iter_ball(spec, core_radius, cap):
        if e not in covered:
            covered_ok = False
            if len(violations) < max_violations:
                violations.append(("uncovered", G.element_to_json(spec, e)))
    return CoverReport(disjoint, covered_ok, tuple(violations))


# ---------------------------------------------------------------------------
# sound refutation by exact cover

def bounded_refute(
    tile: Tile,
    radius: int,
    budget: int | None = None,
    cap: int | None = None,
) -> TileVerdict:
    """Exhaustively search for pairwise-disjoint shifts covering the whole
    ball of the given radius (shifts may spill outside it).

    Any global tiling restricts to such a cover, so exhausting the search
    without one soundly proves "not a tile".  Finding a cover, or running
    out of budget, yields "unknown" -- never "is a tile".

    Branching is on the least uncovered ball element; every shift through
    it is a candidate.  All shifts are precomputed and interned as
    bitmasks so the search itself is pure integer arithmetic.
    """
    spec = tile.spec
    targets = G.ball(spec, radius, cap)
    n = len(targets)
    bit_of: dict = {e: i for i, e in enumerate(targets)}
    inverses = [G.inverse(spec, f) for f in tile.elements]

    def intern(e) -> int:
        b = bit_of.get(e)
        if b is None:
            b = len(bit_of)
            bit_of[e] = b
        return b

    # candidate shift masks per target element, deduplicated
    candidates: list[list[int]] = []
    for x in targets:
        masks = []
        for finv in inverses:
            center = G.multiply(spec, x, finv)
            mask = 0
            for e in tile.shift(center):
                mask |= 1 << intern(e)
            masks.append(mask)
        # identical masks can arise in small cyclic groups
        candidates.append(list(dict.fromkeys(masks)))

    limit = node_budget(budget)
    nodes = 0

    def solve(occupied: int) -> bool:
        # branch on the uncovered element with fewest feasible shifts;
        # an element with none refutes the whole branch immediately
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise BudgetExhaustedError
        best: list[int] | None = None
        for i in range(n):
            if occupied >> i & 1:
                continue
            feasible = [m for m in candidates[i] if occupied & m == 0]
            if not feasible:
                return False
            if best is None or len(feasible) < len(best):
                best = feasible
                if len(best) == 1:
                    break
        if best is None:
            return True
        return any(solve(occupied | mask) for mask in best)

    try:
        found = solve(0)
    except (BudgetExhaustedError, RecursionError):
        return TileVerdict("unknown", max_radius=radius, budget_exhausted=True)
    if found:
        return TileVerdict("unknown", max_radius=radius)
    return TileVerdict("not_tile", refutation_radius=radius)


# ---------------------------------------------------------------------------
# deterministic greedy cover

def greedy_cover(tile: Tile, radius: int, cap: int | None = None) -> PartialTiling:
    """First-fit cover of the ball: walk elements in canonical order; for
    each uncovered x place the first shift x*f^-1*F (f in tile order) that
    stays disjoint from everything placed; skip x if none fits."""
    spec = tile.spec
    occupied: set = set()
    centers: list = []
    inverses = [G.inverse(spec, f) for f in tile.elements]
    for x in G.iter_ball(spec, radius, cap):
        if x in occupied:
            continue
        for finv in inverses:
            center = G.multiply(spec, x, finv)
            shift = tile.shift(center)
            if any(e in occupied for e in shift):
                continue
            occupied.update(shift)
            centers.append(center)
            break
    return PartialTiling(tile, tuple(centers), radius)


# ---------------------------------------------------------------------------
# complete decision for subsets of Z

def search_complement(
    a_set: Sequence[int], modulus: int, budget: int | None = None
) -> tuple | None:
    """Backtracking search for D with A (+) D covering Z_N exactly once.

    A must contain 0; D is normalized to contain 0 (translating any
    solution achieves that).  Returns the complement as a sorted tuple,
    or None if none exists (or the node budget ran out).
    """
    a_mod = sorted({a % modulus for a in a_set})
    if len(a_mod) != len(set(a_set)):
        return None
    if modulus % len(a_mod) != 0:
        return None
    covered = bytearray(modulus)
    chosen: list[int] = []
    limit = node_budget(budget)
    nodes = 0

    def place(d: int) -> bool:
        cells = [(a + d) % modulus for a in a_mod]
        if any(covered[c] for c in cells):
            return False
        for c in cells:
            covered[c] = 1
        chosen.append(d)
        return True

    def unplace():
        d = chosen.pop()
        for a in a_mod:
            covered[(a + d) % modulus] = 0

    def solve(start: int) -> bool:
        nonlocal nodes
        x = start
        while x < modulus and covered[x]:
            x += 1
        if x == modulus:
            return True
        nodes += 1
        if nodes > limit:
            raise BudgetExhaustedError
        for a in a_mod:
            d = (x - a) % modulus
            if place(d):
                if solve(x + 1):
                    return True
                unplace()
        return False

    if not place(0):
        return None
    try:
        if solve(0):
            return tuple(sorted(chosen))
    except BudgetExhaustedError:
        return None
    return None


def _window_automaton_decide(a_norm: tuple, state_cap: int) -> tuple | None:
    """Decide tiling of Z by cycle detection in the forced-placement
    window automaton.

    Processing cells left to right, the least uncovered cell must be the
    minimum of the tile that covers it, so the evolution of the coverage
    window is a partial function on 2^(diam+1) states.  Bi-infinite
    tilings correspond exactly to cycles of that function; a cycle of
    length N yields a period-N certificate.  Returns (N, complement) or
    None when no cycle exists (the set is not a tile).
    """
    diam = a_norm[-1]
    width = diam + 1
    nstates = 1 << width
    if nstates > state_cap:
        raise UndecidedAtCapError(
            f"window automaton needs {nstates} states, over the cap {state_cap}"
        )
    mask = 0
    for a in a_norm:
        mask |= 1 << a
    colors = bytearray(nstates)  # 0 new, 1 on current path, 2 resolved
    for s0 in range(nstates):
        if colors[s0]:
            continue
        path: list[int] = []
        pos: dict[int, int] = {}
        s = s0
        while True:
            c = colors[s]
            if c == 2:
                break
            if c == 1:
                # cycle found: steps from first visit of s onwards
                cycle = path[pos[s]:]
                n = len(cycle)
                dset = tuple(i for i, st in enumerate(cycle) if not st & 1)
                _verify_cyclic_cover(a_norm, n, dset)
                return n, dset
            colors[s] = 1
            pos[s] = len(path)
            path.append(s)
            if s & 1:
                s >>= 1
            elif s & mask:
                break  # forced placement collides: dead end
            else:
                s = (s | mask) >> 1
        for st in path:
            colors[st] = 2
    return None


def _verify_cyclic_cover(a_norm: tuple, modulus: int, dset: tuple) -> None:
    counts = bytearray(modulus)
    for d in dset:
        for a in a_norm:
            counts[(a + d) % modulus] += 1
    if any(c != 1 for c in counts):
        raise AssertionError("extracted periodic certificate failed to re-verify")


def decide_z_tile(
    a_set: Iterable[int],
    state_cap: int | None = None,
    budget: int | None = None,
) -> TileVerdict:
    """Decide whether a finite set of integers tiles Z.  Always decisive
    within the cap: "is_tile" comes with a periodic certificate (period N
    and complement D with A (+) D = Z_N, re-verified before returning),
    "not_tile" after an exhaustive sweep of the window automaton.

    Tilings of Z by a finite set are periodic with period at most
    2^diameter, so the sweep is a complete decision; diameters whose
    state space exceeds the cap raise UndecidedAtCapError instead of
    guessing.
    """
    a_norm = tuple(_normalize_int_set(a_set))
    if len(a_norm) < 2:
        raise InputError("a tile of Z needs at least two elements")
    cap = state_cap if state_cap is not None else DEFAULT_STATE_CAP
    # small-period certificates first: cheap and gives compact complements
    diam = a_norm[-1]
    quick_bound = min(2**diam, 64)
    m = len(a_norm)
    for n in range(m, quick_bound + 1, m):
        dset = search_complement(a_norm, n, budget)
        if dset is not None:
            return TileVerdict("is_tile", period=n, complement=dset)
    result = _window_automaton_decide(a_norm, cap)
    if result is None:
        return TileVerdict(
            "not_tile",
            note=f"no periodic tiling with period up to 2^{diam}",
        )
    n, dset = result
    return TileVerdict("is_tile", period=n, complement=dset)


def _normalize_int_set(a_set: Iterable[int]) -> list[int]:
    elems = sorted(set(int(a) for a in a_set))
    if not elems:
        raise InputError("empty set")
    return [a - elems[0] for a in elems]


# ---------------------------------------------------------------------------
# elementary families

def element_order(spec: GroupSpec, g: Element) -> int | None:
    """Order of g; None means infinite."""
    if g == G.identity(spec):
        return 1
    if spec.kind == G.CYCLIC:
        import math

        return spec.modulus // math.gcd(g, spec.modulus)
    return None  # free, free abelian and Z are torsion-free


def two_element_tile_test(spec: GroupSpec, g: Element) -> bool:
    """Whether {identity, g} is a tile: true iff g has infinite or even
    order."""
    if g == G.identity(spec):
        raise InputError("two-element test needs a non-identity element")
    order = element_order(spec, g)
    return order is None or order % 2 == 0


def _hnf_columns(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Column Hermite form: lower-triangular with positive diagonal.

    Integer column operations only; the input columns must span a
    finite-index sublattice.
    """
    d = len(matrix)
    cols = [[matrix[i][j] for i in range(d)] for j in range(d)]
    for i in range(d):
        # clear row i across columns > i by gcd steps
        for j in range(i + 1, d):
            while cols[j][i] != 0:
                if cols[i][i] == 0 or abs(cols[j][i]) < abs(cols[i][i]):
                    cols[i], cols[j] = cols[j], cols[i]
                    continue
                q = cols[i][i] // cols[j][i]
                for k in range(d):
                    cols[i][k] -= q * cols[j][k]
                cols[i], cols[j] = cols[j], cols[i]
        if cols[i][i] == 0:
            raise InputError("matrix is singular")
        if cols[i][i] < 0:
            cols[i] = [-v for v in cols[i]]
    return cols


def _det(matrix: Sequence[Sequence[int]]) -> int:
    d = len(matrix)
    if d == 1:
        return matrix[0][0]
    total = 0
    for j in range(d):
        if matrix[0][j] == 0:
            continue
        minor = [
            [matrix[i][k] for k in range(d) if k != j] for i in range(1, d)
        ]
        total += (-1) ** j * matrix[0][j] * _det(minor)
    return total


def reduce_mod_lattice(vec: Sequence[int], hnf_cols: list[list[int]]) -> tuple:
    """Canonical coset representative inside the fundamental box
    0 <= v_i < h_ii of the Hermite basis."""
    d = len(vec)
    v = list(vec)
    for i in range(d):
        q = v[i] // hnf_cols[i][i]
        if q:
            for k in range(i, d):
                v[k] -= q * hnf_cols[i][k]
    return tuple(v)


def transversal_tile(rank: int, matrix: Sequence[Sequence[int]]) -> Tile:
    """Coset representatives of the sublattice of Z^d spanned by the
    columns of a nonsingular integer matrix: one representative per coset,
    |det| elements total, chosen canonically from the Hermite fundamental
    box."""
    if len(matrix) != rank or any(len(row) != rank for row in matrix):
        raise InputError(f"need a {rank}x{rank} matrix")
    det = _det(matrix)
    if det == 0:
        raise InputError("matrix is singular")
    cols = _hnf_columns(matrix)
    diag = [cols[i][i] for i in range(rank)]
    reps: list[tuple] = []
    vec = [0] * rank

    def rec(i: int):
        if i == rank:
            reps.append(tuple(vec))
            return
        for v in range(diag[i]):
            vec[i] = v
            rec(i + 1)
        vec[i] = 0

    rec(0)
    assert len(reps) == abs(det)
    spec = G.free_abelian(rank)
    return Tile.from_iterable(spec, reps)


def lattice_centers(
    matrix: Sequence[Sequence[int]], coeff_range: int
) -> list[tuple]:
    """Lattice points sum(c_j * column_j) with |c_j| <= coeff_range; the
    natural center set for a transversal tile, truncated."""
    d = len(matrix)
    cols = [[matrix[i][j] for i in range(d)] for j in range(d)]
    out = []
    coeffs = [0] * d

    def rec(j: int):
        if j == d:
            vec = tuple(
                sum(coeffs[t] * cols[t][i] for t in range(d)) for i in range(d)
            )
            out.append(vec)
            return
        for c in range(-coeff_range, coeff_range + 1):
            coeffs[j] = c
            rec(j + 1)
        coeffs[j] = 0

    rec(0)
    return sorted(set(out))


# ---------------------------------------------------------------------------
# named fixtures

def named_fixture(name: str, spec: GroupSpec, param: int) -> Tile:
    """Standard families by name.

    Free groups: "ball" (radius param), "punctured_ball" (ball minus the
    identity), "sphere" (radius param, a tile iff the radius is 1).
    Free abelian: "ball" (L1 ball) and "box" ({0..n-1}^d).
    """
    if spec.kind == G.FREE:
        if name == "ball":
            return Tile.from_iterable(spec, G.ball(spec, param))
        if name == "punctured_ball":
            elems = [g for g in G.ball(spec, param) if g != ()]
            return Tile.from_iterable(spec, elems)
        if name == "sphere":
            elems = G.sphere(spec, param)
            if len(elems) < 2:
                raise InputError(f"sphere of radius {param} is too small")
            return Tile.from_iterable(spec, elems)
        raise InputError(f"unknown free-group fixture {name!r}")
    if spec.kind == G.FREE_ABELIAN:
        if name == "ball":
            return Tile.from_iterable(spec, G.ball(spec, param))
        if name == "box":
            if param < 2 and spec.rank == 1:
                raise InputError("box side must give at least two elements")
            reps: list[tuple] = []
            vec = [0] * spec.rank

            def rec(i: int):
                if i == spec.rank:
                    reps.append(tuple(vec))
                    return
                for v in range(param):
                    vec[i] = v
                    rec(i + 1)
                vec[i] = 0

            rec(0)
            return Tile.from_iterable(spec, reps)
        raise InputError(f"unknown abelian fixture {name!r}")
    raise InputError(f"no named fixtures for group kind {spec.kind!r}")


def parse_fixture(text: str) -> Tile:
    """Parse "name:kind:rank:param" fixture descriptors, e.g.
    "sphere:free:2:2" or "box:zd:2:2"."""
    parts = text.split(":")
    if len(parts) != 4:
        raise InputError(f"fixture descriptor needs 4 fields: {text!r}")
    name, kind, rank_s, param_s = parts
    try:
        rank, param = int(rank_s), int(param_s)
    except ValueError as exc:
        raise InputError(f"bad fixture numbers in {text!r}") from exc
    if kind == "free":
        spec = G.free_group(rank)
    elif kind == "zd":
        spec = G.free_abelian(rank)
    else:
        raise InputError(f"unknown fixture group kind {kind!r}")
    return named_fixture(name, spec, param)


def random_connected_set(spec: GroupSpec, size: int, seed: int) -> Tile:
    """A connected subset of the Cayley graph containing the identity,
    grown reproducibly from the seed."""
    if spec.kind != G.FREE:
        raise InputError("random connected sets are built in free groups")
    if size < 2:
        raise InputError("a tile needs at least two elements")
    rng = random.Random(seed)
    current = {G.identity(spec)}
    while len(current) < size:
        frontier = sorted(
            {
                nb
                for g in current
                for nb in G.neighbors(spec, g)
                if nb not in current
            },
            key=lambda g: G.sort_key(spec, g),
        )
        current.add(rng.choice(frontier))
    return Tile.from_iterable(spec, current)


def is_connected(tile: Tile) -> bool:
    """Breadth-first connectivity check in the Cayley graph."""
    elems = set(tile.elements)
    start = next(iter(elems))
    seen = {start}
    queue = [start]
    while queue:
        g = queue.pop()
        for nb in G.neighbors(tile.spec, g):
            if nb in elems and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen == elems
