import itertools
import time
import unittest
from dataclasses import replace
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from tentfield.bijection import (
    build_bijection,
    multiply_indices,
    pi_digits,
    pi_digits_binary,
    pi_digits_general,
    pi_recursive,
    pi_step,
    pi_table,
    sweep_upsets,
    verify_counting,
    verify_frobenius,
    verify_pi_step,
    verify_products,
    verify_subfield_restriction,
    verify_suite,
)
from tentfield.dynamics import DigitWord, UpSet, eval_g, index_of_fixed_point, successor_indices
from tentfield.errors import InvalidArgumentError
from tentfield.ffield import fe_mul, fe_pow, make_field

PI_2 = {
    1: [0, 1],
    2: [0, 1, 3, 2],
    3: [0, 1, 3, 2, 6, 7, 5, 4],
    4: [0, 1, 3, 2, 6, 7, 5, 4, 12, 13, 15, 14, 10, 11, 9, 8],
}
PI_3 = {
    1: [0, 1, 2],
    2: [0, 1, 2, 5, 4, 3, 6, 7, 8],
    3: [0, 1, 2, 5, 4, 3, 6, 7, 8, 17, 16, 15, 12, 13, 14, 11, 10, 9,
        18, 19, 20, 23, 22, 21, 24, 25, 26],
}
PI_2_EMPTY = {
    1: [0, 1],
    2: [1, 0, 3, 2],
    3: [2, 3, 0, 1, 6, 7, 4, 5],
    4: [5, 4, 7, 6, 1, 0, 3, 2, 13, 12, 15, 14, 9, 8, 11, 10],
}
PI_3_EMPTY = {
    1: [0, 1, 2],
    2: [2, 1, 0, 5, 4, 3, 8, 7, 6],
    3: [6, 7, 8, 3, 4, 5, 0, 1, 2, 15, 16, 17, 12, 13, 14, 9, 10, 11,
        24, 25, 26, 21, 22, 23, 18, 19, 20],
}
PI_3_TWO = {
    2: [2, 1, 0, 5, 4, 3, 6, 7, 8],
    3: [8, 7, 6, 3, 4, 5, 0, 1, 2, 17, 16, 15, 12, 13, 14, 9, 10, 11,
        20, 19, 18, 23, 22, 21, 24, 25, 26],
}

# rows of the p = 2, n = 4 table with modulus x^4 + x + 1
GOLDEN_F16 = [
    (0, "0.0", 0, "0"),
    (1, "0.11764705882352941", 1, "a"),
    (2, "0.13333333333333333", 3, "a^3"),
    (3, "0.23529411764705882", 2, "a^2"),
    (4, "0.26666666666666666", 6, "a^3 + a^2"),
    (5, "0.35294117647058826", 7, "a^3 + a + 1"),
    (6, "0.4", 5, "a^2 + a"),
    (7, "0.47058823529411764", 4, "a + 1"),
    (8, "0.5333333333333333", 12, "a^3 + a^2 + a + 1"),
    (9, "0.5882352941176471", 13, "a^3 + a^2 + 1"),
    (10, "0.6666666666666666", 15, "1"),
    (11, "0.7058823529411765", 14, "a^3 + 1"),
    (12, "0.8", 10, "a^2 + a + 1"),
    (13, "0.8235294117647058", 11, "a^3 + a^2 + a"),
    (14, "0.9333333333333333", 9, "a^3 + a"),
    (15, "0.9411764705882353", 8, "a^2 + 1"),
]


@st.composite
def field_cases(draw, max_q: int = 243):
    p = draw(st.sampled_from((2, 3, 5, 7)))
    members = draw(st.sets(st.integers(0, p - 1)))
    n = draw(st.integers(1, 7))
    while p**n > max_q:
        n -= 1
    return p, UpSet.of(p, members), n


def _family(p: int) -> list[UpSet]:
    return sweep_upsets(p, random_count=10, seed=p)


class TestPermutationGoldens(unittest.TestCase):
    def test_continuous_lists(self) -> None:
        for n, expected in PI_2.items():
            self.assertEqual(list(pi_table(2, n, UpSet.evens(2)).table), expected)
        for n, expected in PI_3.items():
            self.assertEqual(list(pi_table(3, n, UpSet.evens(3)).table), expected)

    def test_empty_set_lists(self) -> None:
        for n, expected in PI_2_EMPTY.items():
            self.assertEqual(list(pi_table(2, n, UpSet.empty(2)).table), expected)
        for n, expected in PI_3_EMPTY.items():
            self.assertEqual(list(pi_table(3, n, UpSet.empty(3)).table), expected)

    def test_branch_two_lists(self) -> None:
        for n, expected in PI_3_TWO.items():
            self.assertEqual(list(pi_table(3, n, UpSet.of(3, [2])).table), expected)

    def test_pointwise_examples(self) -> None:
        self.assertEqual(pi_recursive(2, 3, UpSet.evens(2), 4), 6)
        self.assertEqual(pi_recursive(3, 3, UpSet.evens(3), 9), 17)
        self.assertEqual(pi_recursive(2, 2, UpSet.empty(2), 0), 1)

    def test_out_of_range(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            pi_recursive(2, 3, UpSet.evens(2), 8)
        with self.assertRaises(InvalidArgumentError):
            pi_table(3, 2, UpSet.evens(2))

    def test_inverse(self) -> None:
        perm = pi_table(2, 4, UpSet.evens(2))
        self.assertTrue(perm.is_bijection())
        for k in range(16):
            self.assertEqual(perm.inverse[perm[k]], k)


class TestDigitForms(unittest.TestCase):
    def test_running_parity_examples(self) -> None:
        self.assertEqual(pi_digits(3, 2, DigitWord(3, (1, 2))).value, 3)
        self.assertEqual(pi_digits(3, 2, DigitWord(3, (1, 0))).value, 5)
        self.assertEqual(pi_digits(2, 4, DigitWord(2, (0, 1, 0, 1))).value, 7)
        self.assertEqual(pi_digits(5, 1, DigitWord(5, (3,))).digits, (3,))

    def test_binary_examples(self) -> None:
        self.assertEqual(str(pi_digits_binary(3, DigitWord(2, (1, 0, 0)))), "110")
        self.assertEqual(str(pi_digits_binary(3, DigitWord(2, (1, 1, 1)))), "100")
        self.assertEqual(str(pi_digits_binary(3, DigitWord(2, (0, 0, 0)))), "000")

    def test_word_length_checked(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            pi_digits(3, 3, DigitWord(3, (1, 2)))
        with self.assertRaises(InvalidArgumentError):
            pi_digits_binary(2, DigitWord(3, (1, 2)))

    def test_running_parity_matches_recursion(self) -> None:
        for p in (2, 3, 5, 7):
            n = 1
            while p**n <= 3**9:
                perm = pi_table(p, n, UpSet.evens(p))
                for k in range(p**n):
                    if pi_digits(p, n, DigitWord.from_int(p, k, n)).value != perm[k]:
                        self.fail(f"pi_digits differs at p={p} n={n} k={k}")
                n += 1

    def test_binary_matches_recursion(self) -> None:
        for n in range(1, 17):
            perm = pi_table(2, n, UpSet.evens(2))
            for k in range(2**n):
                if pi_digits_binary(n, DigitWord.from_int(2, k, n)).value != perm[k]:
                    self.fail(f"pi_digits_binary differs at n={n} k={k}")

    def test_general_digit_form_matches_recursion(self) -> None:
        for p in (2, 3, 5):
            for I in _family(p):
                for n in (1, 2, 3):
                    perm = pi_table(p, n, I)
                    for k in range(p**n):
                        with self.subTest(p=p, I=I.label, n=n, k=k):
                            self.assertEqual(pi_digits_general(p, n, I, DigitWord.from_int(p, k, n)).value, perm[k])

    @settings(max_examples=60, deadline=None)
    @given(field_cases(), st.data())
    def test_recursive_agrees_with_table(self, case, data) -> None:
        p, I, n = case
        k = data.draw(st.integers(0, p**n - 1))
        self.assertEqual(pi_recursive(p, n, I, k), pi_table(p, n, I)[k])


class TestPiStep(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertEqual(pi_step(3, 2, UpSet.of(3, [2]), 2, 0), 6)
        self.assertEqual(pi_step(2, 2, UpSet.evens(2), 1, 1), 2)
        for d in range(5):
            self.assertEqual(pi_step(5, 2, UpSet.of(5, [0, 3]), 0, d), d)

    def test_requires_two_levels(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            pi_step(3, 1, UpSet.evens(3), 0, 0)
        with self.assertRaises(InvalidArgumentError):
            pi_step(3, 2, UpSet.evens(3), 3, 0)

    def test_matches_recursion_over_family(self) -> None:
        for p in (2, 3, 5, 7):
            for I in _family(p):
                n = 2
                while p**n <= 10**4:
                    with self.subTest(p=p, I=I.label, n=n):
                        self.assertTrue(verify_pi_step(p, n, I).passed)
                    n += 1


class TestBuildBijection(unittest.TestCase):
    def setUp(self) -> None:
        self.ctx = make_field(2, 4, [1, 1, 0, 0, 1])
        self.table = build_bijection(self.ctx, UpSet.evens(2))

    def test_golden_rows(self) -> None:
        for (k, decimal, pi, image), row in zip(GOLDEN_F16, self.table.rows):
            with self.subTest(k=k):
                self.assertEqual(row.k, k)
                self.assertEqual(repr(float(row.x)), decimal)
                self.assertEqual(row.pi, pi)
                self.assertEqual(self.ctx.format(row.image, "a"), image)

    def test_exact_fixed_points(self) -> None:
        self.assertEqual(self.table.rows[5].x, F(6, 17))
        self.assertEqual(self.table.rows[6].x, F(2, 5))
        self.assertEqual(self.table.zero_index, 0)

    def test_images_enumerate_field(self) -> None:
        images = [row.image for row in self.table.rows]
        self.assertEqual(len(set(images)), 16)
        self.assertEqual(sum(1 for a in images if a.is_zero()), 1)

    def test_zero_row_for_empty_set(self) -> None:
        table = build_bijection(make_field(2, 2), UpSet.empty(2))
        self.assertEqual(table.zero_index, 1)
        self.assertTrue(table.rows[1].image.is_zero())
        self.assertEqual(table.rows[1].x, F(1, 3))

    def test_degree_one_is_power_map(self) -> None:
        ctx = make_field(5, 1)
        table = build_bijection(ctx, UpSet.of(5, [1, 2]))
        self.assertTrue(table.rows[0].image.is_zero())
        self.assertEqual([row.pi for row in table.rows], [0, 1, 2, 3, 4])

    def test_base_mismatch(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            build_bijection(self.ctx, UpSet.evens(3))


class TestFrobenius(unittest.TestCase):
    def test_golden_table_passes(self) -> None:
        report = verify_frobenius(build_bijection(make_field(2, 4, [1, 1, 0, 0, 1]), UpSet.evens(2)))
        self.assertTrue(report.passed)
        self.assertEqual(report.summary(), "16/16 Frobenius checks passed")

    def test_branch_two_cube(self) -> None:
        report = verify_frobenius(build_bijection(make_field(3, 3), UpSet.of(3, [2])))
        self.assertEqual((report.checked, report.passed_count), (27, 27))

    def test_degree_one(self) -> None:
        for p in (2, 3, 7):
            for I in _family(p):
                self.assertTrue(verify_frobenius(build_bijection(make_field(p, 1), I)).passed)

    def test_family_sweep(self) -> None:
        started = time.perf_counter()
        for p in (2, 3, 5, 7):
            ns = [n for n in range(1, 16) if p**n <= 2 * 10**4]
            for n in ns:
                ctx = make_field(p, n)
                for I in _family(p):
                    with self.subTest(p=p, n=n, I=I.label):
                        report = verify_frobenius(build_bijection(ctx, I))
                        self.assertTrue(report.passed)
                        self.assertEqual(report.checked, p**n)
        self.assertLess(time.perf_counter() - started, 60.0)

    def test_matches_rowwise_power(self) -> None:
        cases = (
            (2, 6, UpSet.empty(2)),
            (3, 4, UpSet.of(3, [2])),
            (5, 3, UpSet.of(5, [1, 4])),
            (7, 2, UpSet.full(7)),
        )
        for p, n, I in cases:
            ctx = make_field(p, n)
            table = build_bijection(ctx, I)
            for row in table.rows:
                j = index_of_fixed_point(p, I, n, eval_g(p, I, row.x))
                with self.subTest(p=p, n=n, k=row.k):
                    self.assertEqual(fe_pow(ctx, row.image, p), table.rows[j].image)
            self.assertTrue(verify_frobenius(table).passed)

    def test_reports_swapped_images(self) -> None:
        table = build_bijection(make_field(2, 4, [1, 1, 0, 0, 1]), UpSet.evens(2))
        rows = list(table.rows)
        rows[1], rows[2] = replace(rows[1], image=rows[2].image), replace(rows[2], image=rows[1].image)
        report = verify_frobenius(replace(table, rows=tuple(rows)))
        self.assertFalse(report.passed)
        self.assertEqual(report.checked, 16)
        bad = {v.k for v in report.violations}
        self.assertIn(1, bad)
        self.assertIn(2, bad)
        for v in report.violations:
            self.assertEqual(v.j, successor_indices(2, UpSet.evens(2), 4)[v.k])
            self.assertNotEqual(v.expected, v.actual)

    @settings(max_examples=30, deadline=None)
    @given(field_cases())
    def test_random_cases(self, case) -> None:
        p, I, n = case
        self.assertTrue(verify_frobenius(build_bijection(make_field(p, n), I)).passed)


class TestProducts(unittest.TestCase):
    def setUp(self) -> None:
        self.table = build_bijection(make_field(2, 4, [1, 1, 0, 0, 1]), UpSet.evens(2))

    def test_examples(self) -> None:
        for j in range(1, 16):
            self.assertEqual(multiply_indices(self.table, 10, j), j)
        self.assertEqual(multiply_indices(self.table, 1, 1), 3)
        self.assertEqual(multiply_indices(self.table, 5, 10), 5)

    def test_zero_row_rejected(self) -> None:
        with self.assertRaises(InvalidArgumentError):
            multiply_indices(self.table, 0, 3)
        with self.assertRaises(InvalidArgumentError):
            multiply_indices(self.table, 3, 16)

    def test_exhaustive_f16_and_f27(self) -> None:
        report = verify_products(self.table)
        self.assertTrue(report.passed)
        self.assertEqual(report.checked, 225)
        table27 = build_bijection(make_field(3, 3), UpSet.evens(3))
        report27 = verify_products(table27)
        self.assertTrue(report27.passed)
        self.assertEqual(report27.checked, 676)

    def test_product_matches_field_multiplication(self) -> None:
        table = build_bijection(make_field(3, 2), UpSet.of(3, [2]))
        nonzero = [r.k for r in table.rows if r.k != table.zero_index]
        for i, j in itertools.product(nonzero, repeat=2):
            r = multiply_indices(table, i, j)
            self.assertEqual(table.rows[r].image, fe_mul(table.ctx, table.rows[i].image, table.rows[j].image))

    def test_sampled_products(self) -> None:
        table = build_bijection(make_field(2, 9), UpSet.evens(2))
        report = verify_products(table, samples=200, seed=3)
        self.assertEqual(report.checked, 200)
        self.assertTrue(report.passed)


class TestSuite(unittest.TestCase):
    def test_subfield_restriction(self) -> None:
        table = build_bijection(make_field(2, 4, [1, 1, 0, 0, 1]), UpSet.evens(2))
        report = verify_subfield_restriction(table)
        self.assertTrue(report.passed)
        self.assertEqual(report.checked, 48)

    def test_counting(self) -> None:
        for p, n in ((2, 6), (3, 4), (5, 2)):
            self.assertTrue(verify_counting(p, n, UpSet.evens(p)).passed)

    def test_suite_passes(self) -> None:
        suite = verify_suite(make_field(3, 3), UpSet.of(3, [2]))
        self.assertTrue(suite.passed)
        self.assertEqual(
            [r.name for r in suite.reports], ["Frobenius", "product", "subfield", "pi_step", "counting"]
        )

    def test_sweep_family_is_deterministic(self) -> None:
        a = sweep_upsets(3, random_count=10, seed=7)
        b = sweep_upsets(3, random_count=10, seed=7)
        self.assertEqual(a, b)
        self.assertEqual(len(a), 14)
        self.assertEqual(len(sweep_upsets(2, random_count=10, seed=7)), 13)


if __name__ == "__main__":
    unittest.main()
