import random

import pytest

from tilekit import groups as G
from tilekit import tiling as T
from tilekit.errors import InputError, UndecidedAtCapError

F2 = G.free_group(2)
Z = G.integers()
Z2 = G.free_abelian(2)


def w(text):
    return G.word_from_str(text, 2)


def z_tile(*elems):
    return T.Tile.from_iterable(Z, elems)


class TestTileModel:
    def test_canonical_order_and_dedup(self):
        tile = T.Tile.from_iterable(Z, [3, 0, 1])
        assert tile.elements == (0, -0 + 1, 3)

    def test_cardinality_rule(self):
        with pytest.raises(InputError):
            T.Tile.from_iterable(Z, [5])

    def test_duplicates_rejected(self):
        with pytest.raises(InputError):
            T.Tile(Z, (0, 0, 1))

    def test_json_roundtrip(self):
        tile = T.named_fixture("ball", F2, 1)
        assert T.Tile.from_json(tile.to_json()) == tile
        pt = T.PartialTiling(tile, ((), w("aa")), 3)
        assert T.PartialTiling.from_json(pt.to_json()) == pt


class TestVerifyPartialTiling:
    def test_parity_tiling_of_z(self):
        tile = z_tile(0, 1)
        centers = tuple(c for c in range(-10, 11) if c % 2 == 0)
        pt = T.PartialTiling(tile, centers, 10)
        report = T.verify_partial_tiling(pt, 8)
        assert report.disjoint and report.covered

    def test_uncovered_detected(self):
        tile = z_tile(0, 1, 3)
        pt = T.PartialTiling(tile, (0,), 1)
        report = T.verify_partial_tiling(pt, 1)
        assert report.disjoint
        assert not report.covered
        assert ("uncovered", -1) in report.violations

    def test_overlap_detected(self):
        tile = z_tile(0, 1)
        pt = T.PartialTiling(tile, (0, 1), 1)
        report = T.verify_partial_tiling(pt, 0)
        assert not report.disjoint

    def test_greedy_ball_cover_rechecked(self):
        tile = T.named_fixture("ball", F2, 1)
        pt = T.greedy_cover(tile, 6)
        report = T.verify_partial_tiling(pt, 4)
        assert report.disjoint and report.covered
        # independent recheck, element by element
        covered = {}
        for c in pt.centers:
            for e in tile.shift(c):
                assert e not in covered
                covered[e] = c
        for e in G.ball(F2, 4):
            assert e in covered

    def test_core_beyond_region_rejected(self):
        tile = z_tile(0, 1)
        pt = T.PartialTiling(tile, (0,), 2)
        with pytest.raises(InputError):
            T.verify_partial_tiling(pt, 5)


class TestBoundedRefute:
    def test_z_non_tile(self):
        verdict = T.bounded_refute(z_tile(0, 1, 3), 4)
        assert verdict.verdict == "not_tile"
        assert verdict.refutation_radius == 4

    def test_sphere_two_refuted(self):
        tile = T.named_fixture("sphere", F2, 2)
        assert T.bounded_refute(tile, 3).verdict == "not_tile"

    def test_ball_one_not_refuted(self):
        tile = T.named_fixture("ball", F2, 1)
        verdict = T.bounded_refute(tile, 3)
        assert verdict.verdict == "unknown"
        assert not verdict.budget_exhausted

    def test_budget_flag(self):
        tile = T.named_fixture("ball", F2, 2)
        verdict = T.bounded_refute(tile, 4, budget=10)
        assert verdict.verdict == "unknown"
        assert verdict.budget_exhausted


class TestGreedyCover:
    def test_z_pair_tile(self):
        pt = T.greedy_cover(z_tile(0, 1), 6)
        report = T.verify_partial_tiling(pt, 6)
        assert report.disjoint and report.covered
        assert all(c % 2 == 0 for c in pt.centers)

    def test_non_tile_leaves_gaps(self):
        pt = T.greedy_cover(z_tile(0, 1, 3), 6)
        report = T.verify_partial_tiling(pt, 3)
        assert report.disjoint
        assert not report.covered

    def test_greedy_always_disjoint(self):
        for tile in [
            T.named_fixture("ball", F2, 1),
            T.named_fixture("sphere", F2, 2),
            z_tile(0, 1, 3),
            z_tile(0, 2),
        ]:
            pt = T.greedy_cover(tile, 5)
            assert T.verify_partial_tiling(pt, 0).disjoint

    def test_deterministic(self):
        tile = T.named_fixture("ball", F2, 1)
        assert T.greedy_cover(tile, 5) == T.greedy_cover(tile, 5)


class TestDecideZTile:
    def test_paper_triples(self):
        assert T.decide_z_tile({0, 1, 5}).verdict == "is_tile"
        assert T.decide_z_tile({0, 1, 3}).verdict == "not_tile"

    def test_progression(self):
        verdict = T.decide_z_tile({0, 1, 2, 3})
        assert verdict.verdict == "is_tile"
        assert verdict.period == 4

    def test_certificates_reverify(self):
        rng = random.Random(11)
        for _ in range(40):
            a = sorted(rng.sample(range(0, 9), rng.randrange(2, 5)))
            verdict = T.decide_z_tile(a)
            if verdict.verdict == "is_tile":
                n, d = verdict.period, verdict.complement
                base = min(a)
                counts = [0] * n
                for x in a:
                    for t in d:
                        counts[(x - base + t) % n] += 1
                assert all(c == 1 for c in counts)

    def test_not_tile_cross_checked_by_refuter(self):
        for a in [(0, 1, 3), (0, 2, 3), (0, 1, 4)]:
            if T.decide_z_tile(a).verdict == "not_tile":
                verdict = T.bounded_refute(z_tile(*a), 2 * max(a))
                assert verdict.verdict == "not_tile"

    def test_mod_three_family(self):
        for x in range(2, 21):
            verdict = T.decide_z_tile({0, 1, x})
            expected = "is_tile" if x % 3 == 2 else "not_tile"
            assert verdict.verdict == expected, (x, verdict)

    def test_shift_invariance(self):
        rng = random.Random(7)
        for _ in range(25):
            a = sorted(rng.sample(range(0, 10), rng.randrange(2, 5)))
            t = rng.randrange(-30, 30)
            v1 = T.decide_z_tile(a).verdict
            v2 = T.decide_z_tile([x + t for x in a]).verdict
            assert v1 == v2

    def test_cap(self):
        with pytest.raises(UndecidedAtCapError):
            T.decide_z_tile({0, 1, 30}, state_cap=2**10)

    def test_cardinality_rule(self):
        with pytest.raises(InputError):
            T.decide_z_tile({3})

    def test_half_line_only_tile(self):
        # {0,1,5} tiles Z but no tiling has an aligned cut, so the
        # certificate must come from the cycle sweep, not greedy growth.
        verdict = T.decide_z_tile({0, 1, 5})
        assert verdict.verdict == "is_tile"
        assert verdict.period % 3 == 0


class TestTwoElementTest:
    def test_examples(self):
        assert T.two_element_tile_test(G.cyclic(4), 1) is True
        assert T.two_element_tile_test(G.cyclic(3), 1) is False
        assert T.two_element_tile_test(F2, w("ab")) is True

    def test_identity_rejected(self):
        with pytest.raises(InputError):
            T.two_element_tile_test(F2, ())

    def test_against_exhaustive_search(self):
        # brute-force oracle: {0, g} tiles Z_n iff a complement exists
        for n in range(2, 13):
            for g in range(1, n):
                claimed = T.two_element_tile_test(G.cyclic(n), g)
                found = T.search_complement((0, g), n) is not None
                assert claimed == found, (n, g)


class TestTransversalTile:
    def test_dimension_one(self):
        tile = T.transversal_tile(1, [[3]])
        assert tile.elements == ((0,), (1,), (2,))

    def test_two_by_two_diagonal(self):
        tile = T.transversal_tile(2, [[2, 0], [0, 2]])
        assert set(tile.elements) == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_determinant_five(self):
        matrix = [[1, 2], [2, -1]]
        tile = T.transversal_tile(2, matrix)
        assert len(tile.elements) == 5
        centers = tuple(T.lattice_centers(matrix, 6))
        pt = T.PartialTiling(tile, centers, 10)
        report = T.verify_partial_tiling(pt, 4)
        assert report.disjoint and report.covered
        # the L1 unit ball is a transversal of the same lattice
        ball_tile = T.named_fixture("ball", Z2, 1)
        pt2 = T.PartialTiling(ball_tile, centers, 10)
        report2 = T.verify_partial_tiling(pt2, 4)
        assert report2.disjoint and report2.covered

    def test_singular_rejected(self):
        with pytest.raises(InputError):
            T.transversal_tile(2, [[1, 2], [2, 4]])

    def test_transversal_property(self):
        rng = random.Random(13)
        for _ in range(20):
            matrix = [[rng.randrange(-3, 4) for _ in range(2)] for _ in range(2)]
            if T._det(matrix) == 0:
                continue
            tile = T.transversal_tile(2, matrix)
            cols = T._hnf_columns(matrix)
            reps = {T.reduce_mod_lattice(v, cols) for v in tile.elements}
            assert len(reps) == len(tile.elements) == abs(T._det(matrix))


class TestNamedFixtures:
    def test_ball(self):
        assert len(T.named_fixture("ball", F2, 1).elements) == 5

    def test_sphere(self):
        assert len(T.named_fixture("sphere", F2, 2).elements) == 12

    def test_box(self):
        tile = T.named_fixture("box", Z2, 2)
        assert set(tile.elements) == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_punctured_ball(self):
        tile = T.named_fixture("punctured_ball", F2, 1)
        assert () not in tile.elements
        assert len(tile.elements) == 4

    def test_unknown_name(self):
        with pytest.raises(InputError):
            T.named_fixture("torus", F2, 1)

    def test_small_sphere_rejected(self):
        with pytest.raises(InputError):
            T.named_fixture("sphere", F2, 0)

    def test_parse_fixture(self):
        tile = T.parse_fixture("sphere:free:2:2")
        assert tile == T.named_fixture("sphere", F2, 2)
        tile = T.parse_fixture("box:zd:2:2")
        assert tile == T.named_fixture("box", Z2, 2)
        with pytest.raises(InputError):
            T.parse_fixture("sphere:free:2")


class TestRandomConnectedSet:
    def test_minimal(self):
        tile = T.random_connected_set(F2, 2, 0)
        assert () in tile.elements
        assert len(tile.elements) == 2

    def test_connectivity_rechecked(self):
        for seed in range(25):
            tile = T.random_connected_set(F2, 5 + seed % 4, seed)
            assert T.is_connected(tile)
            assert () in tile.elements

    def test_reproducible(self):
        assert (
            T.random_connected_set(F2, 6, 42).elements
            == T.random_connected_set(F2, 6, 42).elements
        )

    def test_size_rule(self):
        with pytest.raises(InputError):
            T.random_connected_set(F2, 1, 0)
