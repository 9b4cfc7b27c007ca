import pytest

from rbred.dp import BLACK_ROOT, RED_ROOT, Objective, build_table, max_height, r_dp, reconstruct, s_dp
from rbred.errors import SizeLimitError
from rbred.oracle import oracle_cells
from rbred.tree import black_height, count_red, validate


@pytest.fixture(scope="module")
def table():
    return build_table(64)


@pytest.fixture(scope="module")
def min_table():
    return build_table(64, Objective.MIN)


def test_base_cells(table):
    assert table.cell(0, 0, BLACK_ROOT) == 0
    assert all(table.cell(0, j, BLACK_ROOT) is None for j in range(1, table.heights))
    assert all(table.cell(0, j, RED_ROOT) is None for j in range(table.heights))


@pytest.mark.parametrize("i, j, k, expected", [(1, 1, 0, 1), (1, 1, 1, 0), (3, 2, 0, 1), (7, 2, 0, 5)])
def test_cell_examples(table, i, j, k, expected):
    assert table.cell(i, j, k) == expected


def test_gamma_examples(table):
    assert table.gamma(7, RED_ROOT) == 5
    assert table.gamma(7, BLACK_ROOT) == 4
    assert table.gamma(0, BLACK_ROOT) == 0
    assert table.gamma(0, RED_ROOT) is None


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (7, 5), (8, 4), (10, 6), (23, 15)])
def test_r_dp(n, expected):
    assert r_dp(n) == expected


@pytest.mark.parametrize("n, expected", [(0, 0), (2, 1), (3, 0), (4, 1)])
def test_s_dp(n, expected):
    assert s_dp(n) == expected


def test_non_monotone():
    assert r_dp(8) == 4 < 5 == r_dp(7)


@pytest.mark.parametrize("n", range(0, 10))
def test_every_cell_matches_oracle(table, min_table, n):
    expected = oracle_cells(n)
    got_max = {(j, k): v for j, k, v in table.defined_cells(n)}
    got_min = {(j, k): v for j, k, v in min_table.defined_cells(n)}
    assert set(got_max) == set(expected) == set(got_min)
    for key, (lo, hi) in expected.items():
        assert (got_min[key], got_max[key]) == (lo, hi)


def test_cells_bounded_by_size(table):
    for i in range(table.n_max + 1):
        for j, k, v in table.defined_cells(i):
            assert 0 <= v <= i
            assert j <= max_height(i)


def test_red_root_adds_exactly_one(table):
    for i in range(1, table.n_max + 1):
        for j in range(table.heights):
            red = table.cell(i, j, RED_ROOT)
            a1 = table.alphas(i, j)[0]
            assert (red is None) == (a1 is None)
            if red is not None:
                assert red == 1 + a1


def _brute_alphas(table, i, j):
    """Per-case optimum by a plain loop over every split."""
    out = []
    for lk, ldj, rk, rdj in [(1, -1, 1, -1), (0, 0, 0, 0), (1, -1, 0, 0), (0, 0, 1, -1)]:
        best = None
        for t in range(i):
            a = table.cell(t, j + ldj, lk) if j + ldj >= 0 else None
            b = table.cell(i - 1 - t, j + rdj, rk) if j + rdj >= 0 else None
            if a is not None and b is not None:
                best = a + b if best is None else max(best, a + b)
        out.append(best)
    return tuple(out)


@pytest.mark.parametrize("i", [1, 2, 5, 12, 31, 64])
def test_alphas_match_plain_loop(table, i):
    for j in range(table.heights):
        assert table.alphas(i, j) == _brute_alphas(table, i, j)


def test_third_and_fourth_cases_coincide(table):
    for i in range(1, table.n_max + 1):
        for j in range(table.heights):
            a = table.alphas(i, j)
            assert a[2] == a[3]
            black = table.cell(i, j, BLACK_ROOT)
            three = [v for v in a[:3] if v is not None]
            assert black == (max(three) if three else None)


@pytest.mark.parametrize("n", [1, 7, 10, 23, 64])
def test_reconstruct_best(table, n):
    t = reconstruct(table, n)
    rep = validate(t)
    assert rep.valid_relaxed and rep.node_count == n
    assert count_red(t) == r_dp(n)
    assert t.inorder_keys().tolist() == list(range(1, n + 1))


def test_reconstruct_single_node(table):
    t = reconstruct(table, 1)
    assert t.size == 1 and count_red(t) == 1


@pytest.mark.parametrize("objective", [Objective.MAX, Objective.MIN])
def test_reconstruct_every_cell(objective):
    tab = build_table(48, objective)
    for i in range(1, tab.n_max + 1):
        for j, k, v in tab.defined_cells(i):
            t = tab.reconstruct(i, j, k)
            assert validate(t).valid_relaxed
            assert black_height(t) == j
            assert count_red(t) == v
            assert len(t) == i
            assert int(not t.red[t.root]) == k


def test_reconstruct_rejects_infeasible(table):
    with pytest.raises(ValueError):
        table.reconstruct(3, 3, RED_ROOT)


def test_larger_table_answers_smaller_sizes():
    small, big = build_table(40), build_table(200)
    for n in range(41):
        assert small.defined_cells(n) == big.defined_cells(n)


def test_size_limits():
    with pytest.raises(SizeLimitError):
        build_table(5000)
    with pytest.raises(SizeLimitError):
        r_dp(100, cap=50)
    with pytest.raises(SizeLimitError):
        build_table(10).cell(11, 1, 1)
