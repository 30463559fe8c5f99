"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import expsum


def test_modular_basics():
    assert expsum.is_odd_prime(97)
    assert not expsum.is_odd_prime(91)
    assert expsum.mod_inverse(2, 5) == 3
    z = expsum.root_of_unity(1, 5)
    assert abs(z - complex(0.30901699437494742, 0.95105651629515357)) < 1e-9
    with pytest.raises(ValueError):
        expsum.mod_inverse(0, 5)


def test_moebius_maps():
    tau = expsum.MoebiusMap.translation(4, 11)
    assert tau.apply(3) == 7
    assert tau.apply(None) is None  # infinity is fixed by translations
    m = expsum.MoebiusMap(2, 3, 1, 5, 13)
    assert m.apply(8) is None  # pole of the map
    assert m.inverse().apply(m.apply(4)) == 4


def test_complete_sums():
    f = expsum.FamilySpec.kloosterman_shift(1)
    assert abs(expsum.complete_sum(f, 1, 5) - 0.1708203932499369) < 1e-9
    bi = expsum.complete_sum(expsum.FamilySpec.birch_shift(), 1, 7)
    assert abs(bi - (-1.0174884768541936)) < 1e-7


def test_tables_and_weil_bound():
    t = expsum.kloosterman_master_table(1009)
    assert len(t) == 1009
    assert t.max_abs_error_estimate < 1e-6
    assert t.sup_norm() <= 2 + 1e-6
    vals = t.values
    assert all(abs(v.imag) < 1e-8 for v in vals[:50])
    # spot-check one entry against the scalar path
    a = 123
    direct = expsum.complete_sum(expsum.FamilySpec.kloosterman_shift(1), a, 1009)
    assert abs(t.real_at(a) - direct) < 1e-8


def test_prefix_and_pv():
    f = expsum.FamilySpec.kloosterman_dilate()
    prof = expsum.prefix_profile(f, 7, 101)
    assert prof.max_abs > 0
    table = expsum.batch_complete_sums(f, 101, member_a=7)
    ratio = expsum.pv_ratio(prof, table)
    assert 0 < ratio <= 1.0


def test_fejer_and_estimator():
    assert expsum.fejer_kernel(64, 0.0) == 64.0
    f = expsum.FamilySpec.kloosterman_dilate()
    table = expsum.batch_complete_sums(f, 1009, member_a=3)
    r = expsum.estimator_lower_bound(table, expsum.default_n_list(1009), expsum.default_alpha_grid())
    prof = expsum.prefix_profile(f, 3, 1009)
    assert r.value <= 2 * prof.max_abs + 10 * (table.sup_norm() + 1)
    b = expsum.odd_harmonic_bound({1: math.sqrt(2), -1: -math.sqrt(2)}, 1)
    assert abs(b - math.sqrt(2) / math.pi) < 1e-12


def test_selberg_machinery():
    assert expsum.choose_L(1, 4) == 47
    sp = expsum.selberg_pair(0.0, 0.25, 47)
    assert 0.08 < sp.alpha_st_integral < 0.10
    assert abs(sp.beta_st_integral - 49 / (2 * 48 * 48)) < 1e-9
    assert sp.even_cheb_tail_max <= 1e-9
    mass = expsum.st_interval_mass(0.0, math.pi / 4)
    assert abs(mass - (0.25 - 1 / (2 * math.pi))) < 1e-12
    assert abs(expsum.st_integrate(lambda th: 1.0) - 1.0) < 1e-8
    d = expsum.delta_details(1, 4, 47)
    assert d.delta == pytest.approx(0.0063565, rel=1e-3)


def test_experiments():
    t = expsum.kloosterman_master_table(1009)
    rep = expsum.detector_search(t, z=1)
    assert rep.count == 11
    assert all(b >= math.sqrt(2) / math.pi - 1e-12 for b in rep.member_harmonic_bound)

    mom = expsum.max_moments(expsum.FamilySpec.kloosterman_dilate(), 101, [1, 2])
    assert not mom.sampled
    roots = [m ** (1 / (2 * k)) for m, k in zip(mom.moments, mom.k_values)]
    assert roots == sorted(roots)

    singles = expsum.equidist_singles(t, [expsum.MoebiusMap.identity(1009)], d_max=4)
    n0 = [v for (_, n, v) in singles if n == 0][0]
    assert abs(n0 - 1008 / math.sqrt(1009)) < 1e-9
