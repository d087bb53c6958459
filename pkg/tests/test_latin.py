import itertools

import pytest

from conftest import CYCLIC_LATIN_4, LATIN_LISTING
from xcover import latin
from xcover.errors import MalformedSolution
from xcover.fileio import read_instance, write_instance
from xcover.latin import LatinSpec
from xcover.search import count_solutions, solutions


def brute_force_latin_count(n: int) -> int:
    """Count Latin squares by stacking row permutations that clash with no earlier row."""
    perms = list(itertools.permutations(range(n)))

    def extend(rows):
        if len(rows) == n:
            return 1
        return sum(
            extend(rows + [p]) for p in perms if all(p[j] != r[j] for r in rows for j in range(n))
        )

    return extend([])


@pytest.mark.parametrize("n, shape", [(2, (5, 12)), (3, (17, 27)), (4, (43, 48)), (5, (89, 75)), (6, (161, 108)), (7, (265, 147))])
def test_normalized_shape_table(n, shape):
    inst = latin.build_instance(LatinSpec(n, True))
    assert (inst.n_rows, inst.n_columns) == shape == latin.expected_shape(LatinSpec(n, True))


@pytest.mark.parametrize("n, shape", [(8, (407, 192)), (9, (593, 243))])
def test_shape_formula_for_large_orders(n, shape):
    assert latin.expected_shape(LatinSpec(n, True)) == shape


def test_full_shape():
    inst = latin.build_instance(LatinSpec(4))
    assert (inst.n_rows, inst.n_columns) == (64, 48)


def test_one_by_one():
    inst = latin.build_instance(LatinSpec(1, True))
    assert (inst.n_rows, inst.n_columns) == (1, 3)
    assert count_solutions(inst) == 1


def test_listing_rows_appear_verbatim():
    rows = {" ".join(latin.build_instance(LatinSpec(4, True)).row_labels(r)) for r in range(1, 44)}
    assert set(LATIN_LISTING.splitlines()) <= rows


def test_listing_rows_are_the_cyclic_square():
    inst = read_instance(LATIN_LISTING)
    grid = latin.solution_to_grid(LatinSpec(4), inst.solution(range(1, 17)))
    assert grid == CYCLIC_LATIN_4


def test_n1_grid():
    (sol,) = solutions(latin.build_instance(LatinSpec(1)))
    assert latin.solution_to_grid(LatinSpec(1), sol) == [[1]]


def test_normalized_solutions_are_normalized_and_distinct():
    spec = LatinSpec(4, True)
    grids = [latin.solution_to_grid(spec, s) for s in solutions(latin.build_instance(spec))]
    assert len(grids) == 4
    for g in grids:
        assert g[0] == [1, 2, 3, 4] and [row[0] for row in g] == [1, 2, 3, 4]
        assert latin.is_latin(g)
    assert len({str(g) for g in grids}) == 4
    assert CYCLIC_LATIN_4 in grids


def test_malformed_solution():
    with pytest.raises(MalformedSolution):
        latin.solution_to_grid(LatinSpec(2), [("11", "R1N1", "C1N1")])


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_normalized_counts(n, expected):
    assert count_solutions(latin.build_instance(LatinSpec(n, True))) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_full_count_matches_scaling_and_brute_force(n):
    full = count_solutions(latin.build_instance(LatinSpec(n)))
    norm = count_solutions(latin.build_instance(LatinSpec(n, True)))
    assert full == latin.total_from_normalized(n, norm) == brute_force_latin_count(n)


def test_total_from_normalized_values():
    assert latin.total_from_normalized(4, 4) == 576
    assert latin.total_from_normalized(1, 1) == 1
    assert latin.total_from_normalized(5, 56) == 161_280


def test_full_five_enumeration():
    assert count_solutions(latin.build_instance(LatinSpec(5))) == 161_280


def test_total_beyond_64_bits_is_exact():
    total = latin.total_from_normalized(9, 377_597_570_964_258_816)
    assert total == 5_524_751_496_156_892_842_531_225_600
    assert total > 2**64


def test_large_order_labels_are_delimited():
    inst = latin.build_instance(LatinSpec(10, True))
    assert inst.row_labels(1) == ("r1c1", "R1N1", "C1N1")
    assert read_instance(write_instance(inst)) == inst
