import unittest
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from tentfield.dynamics import (
    DigitWord,
    PeriodicExpansion,
    UpSet,
    eval_g,
    eval_g_digits,
    eval_g_iter,
    expansion_of_fixed_point,
    fixed_point,
    fixed_points,
    increasing_set,
    index_of_fixed_point,
    is_increasing,
    orbit_partition,
    periodic_count,
    periodic_points_of_order,
    successor_indices,
)
from tentfield.errors import ConsistencyError, DomainError, InvalidArgumentError
from tentfield.ffield import count_irreducibles


@st.composite
def maps(draw, max_q: int = 250):
    p = draw(st.sampled_from((2, 3, 5, 7)))
    members = draw(st.sets(st.integers(0, p - 1)))
    n = draw(st.integers(1, 8))
    while p**n > max_q:
        n -= 1
    return p, UpSet.of(p, members), n


def _slope_up_oracle(p: int, I: UpSet, n: int, j: int) -> bool:
    q = p**n
    mid = F(2 * j + 1, 2 * q)
    return eval_g_iter(p, I, mid + F(1, 4 * q), n) > eval_g_iter(p, I, mid, n)


class TestUpSet(unittest.TestCase):
    def test_parse_shorthands(self) -> None:
        self.assertEqual(UpSet.parse(5, "evens").members, (0, 2, 4))
        self.assertEqual(UpSet.parse(5, "empty").members, ())
        self.assertEqual(UpSet.parse(5, "").members, ())
        self.assertEqual(UpSet.parse(3, "full").members, (0, 1, 2))
        self.assertEqual(UpSet.parse(3, "2").members, (2,))
        self.assertEqual(UpSet.parse(7, "4, 0,2").members, (0, 2, 4))

    def test_parse_errors(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            UpSet.parse(3, "two")
        with self.assertRaises(InvalidArgumentError):
            UpSet.parse(3, "0,5")

    def test_labels(self) -> None:
        self.assertEqual(UpSet.evens(3).label, "evens")
        self.assertEqual(UpSet.empty(3).label, "empty")
        self.assertEqual(UpSet.full(3).label, "full")
        self.assertEqual(UpSet.of(3, [2]).label, "{2}")
        self.assertTrue(UpSet.of(2, [0]).is_evens)


class TestDigitWords(unittest.TestCase):
    def test_from_int_most_significant_first(self) -> None:
        w = DigitWord.from_int(3, 5, 2)
        self.assertEqual(w.digits, (1, 2))
        self.assertEqual(w.value, 5)
        self.assertEqual(str(w), "12")
        self.assertEqual(w.complement().digits, (1, 0))

    def test_large_base_is_space_separated(self) -> None:
        self.assertEqual(str(DigitWord(11, (10, 3))), "10 3")

    def test_rejects_overflow_and_bad_digits(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            DigitWord.from_int(2, 4, 2)
        with self.assertRaises(InvalidArgumentError):
            DigitWord(3, (1, 3))

    def test_periodic_expansion_value(self) -> None:
        self.assertEqual(PeriodicExpansion(2, DigitWord(2, (0, 1))).value, F(1, 3))
        self.assertEqual(str(PeriodicExpansion(3, DigitWord(3, (1, 2)))), "0.(12)_3")
        with self.assertRaises(InvalidArgumentError):
            PeriodicExpansion(2, DigitWord(2, ()))


class TestEvalG(unittest.TestCase):
    def test_continuous_map(self) -> None:
        evens = UpSet.evens(2)
        self.assertEqual(eval_g(2, evens, F(1, 4)), F(1, 2))
        self.assertEqual(eval_g(2, evens, F(3, 4)), F(1, 2))
        self.assertEqual(eval_g(2, evens, F(1, 2)), F(1))
        self.assertEqual(eval_g(2, evens, 0), F(0))
        self.assertEqual(eval_g(2, evens, 1), F(0))

    def test_generalized_map(self) -> None:
        I = UpSet.of(3, [2])
        self.assertEqual(eval_g(3, I, F(1, 4)), F(1, 4))
        self.assertEqual(eval_g(3, I, F(5, 6)), F(1, 2))
        self.assertEqual(eval_g(3, I, 1), F(1))

    def test_full_set_is_fractional_part(self) -> None:
        full = UpSet.full(5)
        for x in (F(1, 7), F(3, 11), F(9, 10)):
            y = 5 * x
            self.assertEqual(eval_g(5, full, x), y - (y.numerator // y.denominator))

    def test_domain_errors(self) -> None:
        evens = UpSet.evens(3)
        with self.assertRaises(DomainError):
            eval_g(3, evens, F(3, 2))
        with self.assertRaises(DomainError):
            eval_g(3, evens, F(-1, 5))
        with self.assertRaises(DomainError):
            eval_g(3, evens, 0.5)  # type: ignore[arg-type]

    def test_mismatched_base(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            eval_g(3, UpSet.evens(2), F(1, 3))

    def test_iterate(self) -> None:
        self.assertEqual(eval_g_iter(2, UpSet.evens(2), F(1, 8), 3), F(1))
        with self.assertRaises(InvalidArgumentError):
            eval_g_iter(2, UpSet.evens(2), F(1, 8), 0)


class TestIncreasingSets(unittest.TestCase):
    def test_known_sets(self) -> None:
        I = UpSet.of(3, [2])
        self.assertEqual(increasing_set(3, I, 2), frozenset({1, 2, 4, 5, 8}))
        self.assertEqual(
            increasing_set(3, I, 3),
            frozenset({1, 2, 5, 8, 10, 11, 14, 17, 19, 20, 22, 23, 26}),
        )

    def test_base_level_is_the_set(self) -> None:
        I = UpSet.of(5, [1, 4])
        self.assertEqual(increasing_set(5, I, 1), frozenset({1, 4}))

    def test_continuous_case_is_even_indices(self) -> None:
        for p, n in ((2, 5), (3, 4), (5, 2)):
            self.assertEqual(increasing_set(p, UpSet.evens(p), n), frozenset(range(0, p**n, 2)))

    def test_matches_slope_oracle(self) -> None:
        cases = [
            (2, UpSet.empty(2), 4),
            (3, UpSet.of(3, [2]), 3),
            (3, UpSet.full(3), 2),
            (5, UpSet.of(5, [0, 3]), 2),
        ]
        for p, I, n in cases:
            up = increasing_set(p, I, n)
            for j in range(p**n):
                with self.subTest(p=p, I=I.label, n=n, j=j):
                    self.assertEqual(j in up, _slope_up_oracle(p, I, n, j))
                    self.assertEqual(is_increasing(p, I, n, j), j in up)


class TestFixedPoints(unittest.TestCase):
    def test_g2(self) -> None:
        self.assertEqual(fixed_points(2, UpSet.evens(2), 1), [F(0), F(2, 3)])

    def test_g2_4_table(self) -> None:
        expected = [F(k, 15) if k % 2 == 0 else F(k + 1, 17) for k in range(16)]
        self.assertEqual(fixed_points(2, UpSet.evens(2), 4), expected)
        self.assertEqual(fixed_point(2, UpSet.evens(2), 4, 5), F(6, 17))

    def test_closed_last_branch(self) -> None:
        self.assertEqual(fixed_points(2, UpSet.full(2), 1), [F(0), F(1)])
        self.assertEqual(fixed_points(3, UpSet.of(3, [2]), 1)[-1], F(1))

    def test_sorted_distinct_and_fixed(self) -> None:
        for p, I, n in ((3, UpSet.of(3, [2]), 3), (2, UpSet.empty(2), 5), (5, UpSet.full(5), 2)):
            pts = fixed_points(p, I, n, verify=True)
            self.assertEqual(len(pts), p**n)
            self.assertEqual(pts, sorted(set(pts)))

    @settings(max_examples=40, deadline=None)
    @given(maps())
    def test_every_point_is_fixed(self, case) -> None:
        p, I, n = case
        for x in fixed_points(p, I, n):
            self.assertEqual(eval_g_iter(p, I, x, n), x)

    def test_index_lookup(self) -> None:
        evens = UpSet.evens(2)
        self.assertEqual(index_of_fixed_point(2, evens, 4, F(6, 17)), 5)
        with self.assertRaises(ConsistencyError):
            index_of_fixed_point(2, evens, 4, F(1, 2))

    def test_index_out_of_range(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            fixed_point(2, UpSet.evens(2), 2, 4)


class TestExpansions(unittest.TestCase):
    def test_increasing_index_keeps_word(self) -> None:
        e = expansion_of_fixed_point(2, UpSet.evens(2), 4, 6)
        self.assertEqual(str(e.period), "0110")
        self.assertEqual(e.value, F(2, 5))

    def test_decreasing_index_doubles_word(self) -> None:
        e = expansion_of_fixed_point(2, UpSet.evens(2), 4, 5)
        self.assertEqual(str(e.period), "01011010")
        self.assertEqual(e.value, F(6, 17))

    def test_values_match_fixed_points(self) -> None:
        for p, I, n in ((3, UpSet.of(3, [2]), 2), (2, UpSet.empty(2), 3), (5, UpSet.evens(5), 2)):
            pts = fixed_points(p, I, n)
            for k, x in enumerate(pts):
                self.assertEqual(expansion_of_fixed_point(p, I, n, k).value, x)

    def test_digit_action_matches_map(self) -> None:
        for p, I, n in ((3, UpSet.of(3, [2]), 3), (2, UpSet.evens(2), 4), (3, UpSet.empty(3), 2)):
            for k in range(p**n):
                e = expansion_of_fixed_point(p, I, n, k)
                with self.subTest(p=p, I=I.label, k=k):
                    self.assertEqual(eval_g_digits(p, I, e).value, eval_g(p, I, e.value))


class TestOrbits(unittest.TestCase):
    def test_g2_4_cycles(self) -> None:
        part = orbit_partition(2, UpSet.evens(2), 4)
        self.assertEqual(part.length_counts(), {1: 2, 2: 1, 4: 3})
        self.assertEqual(part.cycles[0], (0,))
        self.assertEqual(sorted(k for c in part.cycles for k in c), list(range(16)))

    def test_cycles_follow_the_map(self) -> None:
        p, I, n = 3, UpSet.of(3, [2]), 3
        pts = fixed_points(p, I, n)
        for cycle in orbit_partition(p, I, n).cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                self.assertEqual(eval_g(p, I, pts[a]), pts[b])

    def test_periodic_points_of_order(self) -> None:
        self.assertEqual(periodic_points_of_order(2, UpSet.evens(2), 2), [F(2, 5), F(4, 5)])

    def test_to_json_obj(self) -> None:
        self.assertEqual(orbit_partition(2, UpSet.evens(2), 1).to_json_obj(), [[0], [1]])


class TestWorkedExamples(unittest.TestCase):
    def setUp(self) -> None:
        self.evens = UpSet.evens(2)

    def test_fixed_points_of_g2_cubed(self) -> None:
        self.assertEqual(
            fixed_points(2, self.evens, 3),
            [F(0), F(2, 9), F(2, 7), F(4, 9), F(4, 7), F(2, 3), F(6, 7), F(8, 9)],
        )

    def test_orbits_of_g2_cubed(self) -> None:
        self.assertEqual(orbit_partition(2, self.evens, 3).cycles, ((0,), (1, 3, 7), (2, 4, 6), (5,)))
        self.assertEqual(eval_g(2, self.evens, F(2, 9)), F(4, 9))
        self.assertEqual(eval_g(2, self.evens, F(2, 7)), F(4, 7))

    def test_expansions_of_g2_cubed(self) -> None:
        self.assertEqual(str(expansion_of_fixed_point(2, self.evens, 3, 1).period), "001110")
        self.assertEqual(str(expansion_of_fixed_point(2, self.evens, 3, 4).period), "100")

    def test_digit_action(self) -> None:
        shifted = eval_g_digits(2, self.evens, PeriodicExpansion(2, DigitWord(2, (0, 0, 1, 1, 1, 0))))
        self.assertEqual(str(shifted.period), "011100")
        flipped = eval_g_digits(2, self.evens, PeriodicExpansion(2, DigitWord(2, (1, 0, 1, 0, 1, 0))))
        self.assertEqual(str(flipped.period), "101010")

    def test_g3_cubed_cycle_lengths(self) -> None:
        self.assertEqual(orbit_partition(3, UpSet.evens(3), 3).length_counts(), {1: 3, 3: 8})


class TestSuccessors(unittest.TestCase):
    @settings(max_examples=60, deadline=None)
    @given(maps(max_q=750))
    def test_matches_exact_map(self, case) -> None:
        p, I, n = case
        points = fixed_points(p, I, n)
        expected = [index_of_fixed_point(p, I, n, eval_g(p, I, x)) for x in points]
        self.assertEqual(successor_indices(p, I, n), expected)

    def test_is_increasing_range(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            is_increasing(3, UpSet.evens(3), 2, 9)
        self.assertTrue(is_increasing(3, UpSet.evens(3), 0, 0))


class TestPeriodicCount(unittest.TestCase):
    def test_known_values(self) -> None:
        self.assertEqual(periodic_count(2, 1), 2)
        self.assertEqual(periodic_count(2, 3), 6)
        self.assertEqual(periodic_count(2, 4), 12)
        self.assertEqual(periodic_count(3, 2), 6)

    def test_matches_irreducible_count(self) -> None:
        for p in (2, 3, 5, 7, 11):
            m = 1
            while p**m <= 10**5:
                with self.subTest(p=p, m=m):
                    self.assertEqual(periodic_count(p, m), m * count_irreducibles(p, m))
                m += 1

    def test_matches_orbit_enumeration(self) -> None:
        family = [UpSet.evens, UpSet.empty, UpSet.full]
        for p in (2, 3, 5, 7):
            m = 1
            while p**m <= 10**5:
                for make in family:
                    I = make(p)
                    with self.subTest(p=p, m=m, I=I.label):
                        brute = len(orbit_partition(p, I, m).points_of_order(m))
                        self.assertEqual(brute, periodic_count(p, m))
                m += 1


if __name__ == "__main__":
    unittest.main()
