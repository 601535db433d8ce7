from fractions import Fraction

import excess_atlas as ea


def test_counts_match_known_values():
    assert ea.count(5, -1) == 125  # labeled trees on 5 vertices
    assert ea.count(4, 2) == 1  # the complete graph
    assert ea.count(4, 0) == 15
    assert ea.count(4, 0, method="gf") == 15
    assert ea.count(4, 0, method="oracle") == 15
    assert ea.count(3, 5) == 0  # more edges than binom(3,2)


def test_tree_counts():
    counts = ea.tree_counts(6)
    assert counts[1:] == [n ** (n - 1) for n in range(1, 7)]


def test_series_families_are_consistent():
    sg1 = ea.sgpos_counts(8, 1)
    csg1 = ea.connected_counts(8, 1)
    assert sg1 == csg1  # a single component at excess 1
    core2 = ea.core_counts(4, 2)
    assert core2[4] == 1


def test_majorant_weights():
    weights = ea.mgpos_weights(10, 0)
    assert weights[0] == Fraction(1)
    assert all(w == 0 for w in weights[1:])


def test_saddle_point():
    sp = ea.solve_saddle(1.0)
    assert abs(sp["lambda"] - 3.83) < 0.02
    assert sp["lambda_residual"] < 1e-12
    assert max(sp["saddle_residuals"]) < 1e-8


def test_dominant_term():
    # exact pipeline value; the ratio approaches 1 like 1 - 9.07/n
    r = ea.exact_over_dominant(40, 40)
    assert abs(r - 0.7859013) < 1e-4
    assert ea.dominant_log10(1000, 1000) > 1000


def test_s_values():
    assert ea.s_value(1, 0, 12) == 1
    assert ea.s_value(2, 0, 2) == Fraction(7, 3)


def test_wright_polynomial():
    coeffs = ea.wright_coefficients(1)
    assert coeffs[0] == 0
    assert any(c != 0 for c in coeffs)


def test_verify_suite():
    checks = ea.verify("series")
    assert checks and all(ok for _, ok, _ in checks)
