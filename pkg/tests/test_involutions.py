import itertools
import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfposet.involutions import (
    Arc,
    Involution,
    PartialInvolution,
    RankControlMatrix,
    complete,
    enumerate_arcs,
    enumerate_pf,
    involution_number,
    length_pf,
    length_via_arcs,
    length_via_rho_leq,
    maximum_element,
    minimum_element,
    rank_control,
    rho_leq,
    rho_lt,
    standard_form,
)

PI = PartialInvolution((5, 0, 0, 6, 1, 4))
SIGMA = PartialInvolution((0, 0, 4, 3))

RK_PI = [
    (0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 1, 2),
    (1, 1, 1, 1, 2, 3),
    (1, 1, 1, 2, 3, 4),
]
RK_SIGMA = [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 2)]


def telephone(n):
    a = [1, 1]
    for m in range(2, n + 1):
        a.append(a[m - 1] + (m - 1) * a[m - 2])
    return a[n]


def brute_force_pf(n):
    out = []
    for w in itertools.product(range(n + 1), repeat=n):
        if all(j != i and (j == 0 or w[j - 1] == i) for i, j in enumerate(w, start=1)):
            out.append(w)
    return out


def numpy_rank_control(x):
    m = np.array(x.to_matrix(), dtype=float).reshape(x.n, x.n)
    return [
        tuple(int(np.linalg.matrix_rank(m[:i, :j])) for j in range(1, x.n + 1))
        for i in range(1, x.n + 1)
    ]


@st.composite
def pf_elements(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(1, n + 1)))
    k = draw(st.integers(0, n // 2))
    arcs = [tuple(sorted(perm[2 * t: 2 * t + 2])) for t in range(k)]
    return PartialInvolution.from_arcs(n, arcs)


class TestPartialInvolution:
    def test_rejects_fixed_point(self):
        with pytest.raises(ValueError, match="fixed point"):
            PartialInvolution((1, 0))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="not symmetric"):
            PartialInvolution((2, 0))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            PartialInvolution((3, 1))

    def test_parse_forms(self):
        assert PartialInvolution.parse("2,1,0,0") == PartialInvolution((2, 1, 0, 0))
        assert PartialInvolution.parse("[2, 1, 0, 0]") == PartialInvolution((2, 1, 0, 0))
        x = PartialInvolution((4, 3, 2, 1))
        assert PartialInvolution.parse(str(x)) == x
        assert PartialInvolution.parse(json.dumps(x.to_json())) == x

    def test_rank_is_twice_arcs(self):
        assert PI.rank == 4
        assert PI.arcs == (Arc(1, 5), Arc(4, 6))


class TestEnumeration:
    def test_small_cases(self):
        assert [x.w for x in enumerate_pf(2)] == [(0, 0), (2, 1)]
        assert [x.w for x in enumerate_pf(1)] == [(0,)]
        assert [x.w for x in enumerate_pf(0)] == [()]

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26), (6, 76), (7, 232)])
    def test_counts_are_involution_numbers(self, n, count):
        assert telephone(n) == count
        assert len(enumerate_pf(n)) == count
        assert involution_number(n) == count

    @pytest.mark.parametrize("n", range(0, 7))
    def test_matches_brute_force(self, n):
        assert [x.w for x in enumerate_pf(n)] == brute_force_pf(n)

    def test_full_rank_pf4(self):
        assert {x.w for x in enumerate_arcs(4, 2)} == {(2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)}

    def test_arc_counts(self):
        assert [x.w for x in enumerate_arcs(5, 0)] == [(0,) * 5]
        assert len(enumerate_arcs(5, 2)) == comb(5, 4) * 3
        assert enumerate_arcs(3, 2) == []
        assert enumerate_arcs(4, -1) == []

    @pytest.mark.parametrize("n", range(1, 8))
    def test_arcs_partition_pf(self, n):
        by_k = [x for k in range(n // 2 + 1) for x in enumerate_arcs(n, k)]
        assert sorted(x.w for x in by_k) == [x.w for x in enumerate_pf(n)]


class TestCompletion:
    def test_examples(self):
        x = PartialInvolution((3, 0, 1, 0))
        assert complete(x) == Involution((3, 2, 1, 4))
        assert complete(PartialInvolution((2, 1, 4, 3))) == Involution((2, 1, 4, 3))
        assert complete(PartialInvolution((0, 0, 4, 3))) == Involution((1, 2, 4, 3))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_bijection_onto_involutions(self, n):
        images = {complete(x) for x in enumerate_pf(n)}
        assert len(images) == telephone(n)
        all_inv = {p for p in itertools.permutations(range(1, n + 1)) if all(p[p[i] - 1] == i + 1 for i in range(n))} if n <= 7 else None
        if all_inv is not None:
            assert {v.w for v in images} == all_inv

    def test_standard_form(self):
        assert standard_form(Involution((2, 1, 4, 3))) == [(1, 2), (3, 4)]
        assert standard_form(complete(PI)) == [(1, 5), (4, 6)]
        assert standard_form(Involution((1, 2, 3))) == []

    def test_involution_validation(self):
        with pytest.raises(ValueError):
            Involution((2, 3, 1))


class TestRankControl:
    def test_paper_matrices(self):
        assert [list(r) for r in rank_control(PI).rows] == [list(r) for r in RK_PI]
        assert [list(r) for r in rank_control(SIGMA).rows] == [list(r) for r in RK_SIGMA]

    def test_zero_matrix(self):
        assert rank_control(maximum_element(5)).flat() == (0,) * 25

    @pytest.mark.parametrize("n", range(1, 6))
    def test_agrees_with_submatrix_ranks(self, n):
        for x in enumerate_pf(n):
            assert list(rank_control(x).rows) == numpy_rank_control(x)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_injective(self, n):
        elements = enumerate_pf(n)
        assert len({rank_control(x) for x in elements}) == len(elements)

    def test_virtual_border(self):
        rk = rank_control(PI)
        assert rk.r(0, 3) == rk.r(4, 0) == 0
        assert rk.r(6, 6) == 4

    def test_invalid_matrix_detected(self):
        assert not RankControlMatrix(((2, 0), (0, 0))).is_valid()
        assert not RankControlMatrix(((0, 1), (0, 1))).is_valid()

    @settings(max_examples=200, deadline=None)
    @given(pf_elements())
    def test_invariants(self, x):
        rk = rank_control(x)
        assert rk.is_valid()
        diag = [rk.r(i, i) - rk.r(i - 1, i - 1) for i in range(1, x.n + 1)]
        assert set(diag) <= {0, 2}
        assert sum(diag) == x.rank

    def test_json(self):
        assert rank_control(SIGMA).to_json() == [list(r) for r in RK_SIGMA]


class TestLength:
    def test_rho_on_examples(self):
        assert (rho_lt(PI), rho_leq(PI)) == (8, 12)
        assert (rho_lt(SIGMA), rho_leq(SIGMA)) == (5, 8)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_rho_on_zero_matrix(self, n):
        z = maximum_element(n)
        assert rho_lt(z) == comb(n, 2)
        assert rho_leq(z) == comb(n, 2) + n

    def test_length_examples(self):
        assert length_pf(PI) == 8
        assert length_pf(SIGMA) == 5
        assert length_via_arcs(PI) == 8
        assert length_via_arcs(SIGMA) == 5
        assert length_via_rho_leq(PI) == 8

    @pytest.mark.parametrize("n", range(1, 9))
    def test_extremes(self, n):
        assert length_pf(minimum_element(n)) == 0
        assert length_via_arcs(maximum_element(n)) == comb(n, 2)

    def test_extreme_elements(self):
        assert minimum_element(6).w == (2, 1, 4, 3, 6, 5)
        assert minimum_element(5).w == (2, 1, 4, 3, 0)
        assert minimum_element(1) == maximum_element(1) == PartialInvolution((0,))

    @settings(max_examples=300, deadline=None)
    @given(pf_elements())
    def test_three_formulas_agree(self, x):
        assert length_pf(x) == length_via_arcs(x) == length_via_rho_leq(x)
