import math
from fractions import Fraction

import pytest

from oracles import brute_expectation, naive_gaps
from parking.moments import (
    AsymptoticContext,
    asym_mixed_moment,
    asym_refined,
    asym_special_mn,
    exact_coord_gap_moment,
    exact_gap_moments,
    exact_mixed_moment,
    exact_moment_coord,
    exact_stat,
    first_coordinate_law,
    moment_report,
    tree_function_values,
    tree_series,
)
from parking.enumeration import count_pf

HALF = Fraction(1, 2)


def test_small_exact_values():
    assert exact_moment_coord(1, 2, 2) == Fraction(4, 3)
    assert exact_moment_coord(0, 5, 9) == 1
    assert exact_mixed_moment(1, 1, 2, 2) == Fraction(5, 3)
    assert exact_gap_moments(1, None, 1, 2).E_ki == Fraction(3, 2)
    assert exact_coord_gap_moment(1, 1, 2) == 2


def test_first_coordinate_law_sums_to_total():
    for m, n in [(1, 1), (3, 5), (7, 7), (10, 20)]:
        assert sum(first_coordinate_law(m, n)) == count_pf(m, n)


def test_argument_checks():
    with pytest.raises(ValueError):
        exact_moment_coord(1, 0, 3)
    with pytest.raises(ValueError):
        exact_mixed_moment(1, 1, 1, 3)
    with pytest.raises(ValueError):
        exact_gap_moments(2, 1, 2, 6)
    with pytest.raises(ValueError):
        AsymptoticContext(10, Fraction(1, 3))
    with pytest.raises(ValueError):
        AsymptoticContext(10, Fraction(1))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("method", ["exact", "float"])
def test_coordinate_moments_match_brute_force(n, method):
    for m in range(1, n + 1):
        for p in (1, 2, 3):
            assert exact_moment_coord(p, m, n) == brute_expectation(lambda pi: pi[0] ** p, m, n)
        if m >= 2:
            for p, q in [(1, 1), (2, 1), (1, 2), (2, 2)]:
                want = brute_expectation(lambda pi: pi[0] ** p * pi[1] ** q, m, n)
                got = exact_mixed_moment(p, q, m, n, method)
                if method == "exact":
                    assert got == want
                else:
                    assert got == pytest.approx(float(want), rel=1e-12)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("method", ["exact", "float"])
def test_gap_moments_match_brute_force(n, method):
    for m in range(1, n):
        for i in range(1, n - m + 1):
            g = exact_gap_moments(i, None, m, n, method)
            want1 = brute_expectation(lambda pi: naive_gaps(pi, n)[i - 1], m, n)
            want2 = brute_expectation(lambda pi: naive_gaps(pi, n)[i - 1] ** 2, m, n)
            want3 = brute_expectation(lambda pi: pi[0] * naive_gaps(pi, n)[i - 1], m, n)
            got3 = exact_coord_gap_moment(i, m, n, method)
            for got, want in [(g.E_ki, want1), (g.E_ki2, want2), (got3, want3)]:
                if method == "exact":
                    assert got == want
                else:
                    assert got == pytest.approx(float(want), rel=1e-12)
            for j in range(i + 1, n - m + 1):
                want = brute_expectation(lambda pi: naive_gaps(pi, n)[i - 1] * naive_gaps(pi, n)[j - 1], m, n)
                got = exact_gap_moments(i, j, m, n, method).E_kikj
                assert got == want if method == "exact" else got == pytest.approx(float(want), rel=1e-12)


def test_mixed_moment_symmetry():
    for m, n in [(3, 5), (6, 9), (10, 10)]:
        assert exact_mixed_moment(3, 1, m, n) == exact_mixed_moment(1, 3, m, n)


@pytest.mark.parametrize("m, n", [(50, 100), (120, 200), (300, 500)])
def test_float_route_tracks_exact_route(m, n):
    for kind in ["E_pi1pi2", "E_ki", "E_ki2", "E_kikj", "E_pi1ki"]:
        ex = exact_stat(kind, m, n, method="exact")
        fl = exact_stat(kind, m, n, method="float")
        assert fl == pytest.approx(float(ex), rel=1e-9), kind


def test_large_n_uses_float_route():
    val = exact_stat("E_pi1pi2", 500, 1000)
    assert isinstance(val, float)
    assert val == pytest.approx(asym_refined("E_pi1pi2", AsymptoticContext(1000, HALF)), rel=1e-4)


# -- asymptotic reference values ------------------------------------------------


def test_asymptotic_constants_at_half():
    ctx = AsymptoticContext(200, HALF)
    assert asym_refined("Cov_pi1pi2", ctx) == pytest.approx(-1.0)
    assert asym_refined("Var_ki", ctx, i=1) == pytest.approx(4.0)
    assert asym_refined("Cov_kikj", ctx, 1, 2) == asym_refined("Cov_kikj", ctx, 1, 7)
    assert asym_refined("E_ki", ctx, 1) == pytest.approx(2 - 0.5 / (0.25 * 200))


def test_leading_mixed_moment():
    for n in (10**3, 10**5):
        ctx = AsymptoticContext(n, HALF)
        assert asym_mixed_moment([1], ctx) / (n / 2) == pytest.approx(1, abs=2 / n)
    with pytest.raises(ValueError):
        asym_mixed_moment([0], AsymptoticContext(10, HALF))


def test_mixed_moment_ratio_tends_to_one():
    errs = []
    for n in (50, 100, 200):
        ctx = AsymptoticContext(n, HALF)
        for p_list, ex in [([1, 1], exact_mixed_moment(1, 1, n // 2, n)), ([2], exact_moment_coord(2, n // 2, n))]:
            errs.append(abs(asym_mixed_moment(p_list, ctx) / float(ex) - 1))
    assert errs[-1] < errs[0]
    assert errs[-1] < 1e-3


def test_first_coordinate_residual_shrinks_with_n():
    res = {}
    for n in (200, 400):
        ex = float(exact_moment_coord(1, n // 2, n))
        res[n] = abs(ex - asym_refined("E_pi1", AsymptoticContext(n, HALF)))
    assert res[400] * 3 <= res[200]


def test_covariance_near_limit():
    cov = float(exact_stat("Cov_pi1pi2", 100, 200))
    assert cov < 0
    assert abs(cov + 1) <= 0.25


def test_square_case_residual_shrinks():
    r = [abs(float(exact_moment_coord(1, n, n)) - asym_special_mn("E_pi1", n)) for n in (50, 100)]
    assert r[1] < r[0]
    assert asym_special_mn("E_pi1pi2", 10**6) / (10**12 / 4) == pytest.approx(1, rel=1e-2)


def test_moment_report_fields():
    r = moment_report("E_ki", 60, 120)
    assert r.exact == exact_gap_moments(1, None, 60, 120).E_ki
    assert r.rel_err == pytest.approx(abs(float(r.exact) - r.asymptotic) / float(r.exact))
    with pytest.raises(ValueError):
        moment_report("Var_ki", 10, 10)


# -- tree function ----------------------------------------------------------------


def _terms_for(z, tol=1e-14):
    # the series terms decay like (z e)^s times a power of s
    return int(math.log(tol) / math.log(z * math.e)) + 200


@pytest.mark.parametrize("c", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("kind, i", [("F", None), ("dF", None), ("d2F", None), ("F_i", 1), ("F_i", 3),
                                     ("G_i", 2), ("dG_i", 2), ("d2G_i", 1), ("H_i", 1), ("H_i", 4)])
def test_tree_function_closed_forms_match_series(c, kind, i):
    z = c * math.exp(-c)
    closed = tree_function_values(kind, i, c)
    series = tree_series(kind, i, z, _terms_for(z))
    assert abs(series - closed) <= 1e-10 * max(1.0, abs(closed))


def test_tree_function_basics():
    assert tree_function_values("F", None, 0.5) == pytest.approx(math.exp(0.5))
    for c in (0.1, 0.6):
        assert tree_function_values("F_i", 1, c) == tree_function_values("F", None, c)
    with pytest.raises(ValueError):
        tree_function_values("F", None, 1.0)


def test_sixty_terms_suffice_only_for_small_c():
    c = 0.2
    z = c * math.exp(-c)
    assert abs(tree_series("F", None, z, 60) - math.exp(c)) < 1e-12
    c = 0.8
    z = c * math.exp(-c)
    assert abs(tree_series("F", None, z, 60) - math.exp(c)) > 1e-4
