#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "expsum/fejer.hpp"
#include "expsum/incomplete.hpp"

using namespace expsum;

namespace {

// oracle: the kernel from its defining sum
double fejer_kernel_by_sum(std::uint32_t N, double theta) {
    double s = 0.0;
    for (std::int64_t a = -static_cast<std::int64_t>(N); a <= static_cast<std::int64_t>(N); ++a) {
        const double w = 1.0 - std::abs(static_cast<double>(a)) / N;
        s += w * std::cos(2.0 * std::numbers::pi * a * theta);
    }
    return s;
}

// plain composite Simpson on [0,1]
template <typename F>
double simpson01(F&& f, int panels) {
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < panels; ++i) s += 2.0 * (1 + i % 2) * f(static_cast<double>(i) / panels);
    return s / (3.0 * panels);
}

SumTable member_minus_table(std::int64_t a, OddPrime p) {
    return batch_complete_sums(FamilySpec::kloosterman_dilate(), p, a);
}

}  // namespace

TEST_CASE("fejer kernel closed form vs defining sum") {
    for (const std::uint32_t N : {1u, 4u, 7u, 64u}) {
        CHECK(fejer_kernel(N, 0.0) == static_cast<double>(N));  // exact at 0
        for (const double theta : {1.0 / (2.0 * N), 0.1, 0.25, 0.5, 0.9}) {
            CHECK(fejer_kernel(N, theta) == doctest::Approx(fejer_kernel_by_sum(N, theta)).epsilon(1e-10));
        }
    }
}

TEST_CASE("fejer kernel unit mass, nonnegativity, symmetry") {
    for (const std::uint32_t N : {4u, 64u, 1024u}) {
        const double mass = simpson01([&](double t) { return fejer_kernel(N, t); }, 1 << 16);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (int i = 0; i < 10000; ++i) {
        const double t = static_cast<double>(i) / 10000.0;
        const double v = fejer_kernel(32, t);
        CHECK(v >= 0.0);
        CHECK(fejer_kernel(32, 1.0 - t) == doctest::Approx(v).epsilon(1e-9));
    }
}

TEST_CASE("fourier_partial with a pure constant coefficient") {
    const OddPrime p(101);
    std::vector<std::complex<double>> vals(101, {0.0, 0.0});
    vals[0] = {1.7, 0.0};
    const auto table = SumTable::from_values(FamilySpec::laurent({{1, 0}}), p, 0, vals,
                                             TableMethod::direct, 0.0, false);
    for (const double alpha : {0.1, 0.37, 0.8}) {
        CHECK(std::abs(fourier_partial(table, alpha, 50) - alpha * 1.7) < 1e-12);
    }
}

TEST_CASE("fourier_partial reconstructs prefixes at full depth") {
    const OddPrime p(101);
    const auto table = member_minus_table(3, p);
    const auto prof = prefix_profile(FamilySpec::kloosterman_dilate(), 3, p);
    REQUIRE(prof.full_prefix.has_value());
    for (int j = 1; j < 20; ++j) {
        const double alpha = j / 20.0;
        const auto H = static_cast<std::uint32_t>(std::floor(alpha * 101.0));
        const double snapped = static_cast<double>(H) / 101.0;
        if (H == 0) continue;
        const auto approx = fourier_partial(table, snapped, 50);
        const auto truth = (*prof.full_prefix)[H];
        CHECK(std::abs(approx - truth) < 1.5);  // error term at N = (p-1)/2
    }
}

TEST_CASE("fourier_partial error decays with N") {
    const OddPrime p(1009);
    std::mt19937_64 rng(31);
    int improved = 0, total = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = static_cast<std::int64_t>(rng() % 1008 + 1);
        const auto table = member_minus_table(a, p);
        const auto prof = prefix_profile(FamilySpec::kloosterman_dilate(), a, p);
        REQUIRE(prof.full_prefix.has_value());
        double e10 = 0.0, e1000 = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double alpha = static_cast<double>(j) / 21.0;
            const auto H = static_cast<std::uint32_t>(std::floor(alpha * 1009.0));
            const double snapped = static_cast<double>(H) / 1009.0;
            const auto truth = (*prof.full_prefix)[H];
            e10 = std::max(e10, std::abs(fourier_partial(table, snapped, 10) - truth));
            e1000 = std::max(e1000, std::abs(fourier_partial(table, snapped, 1000) - truth));
        }
        ++total;
        if (e1000 < e10) ++improved;
    }
    // 1/N decay: deeper truncation wins for 95% of members
    CHECK(improved >= static_cast<int>(0.95 * total));
}

TEST_CASE("estimator on the zero table") {
    const OddPrime p(101);
    std::vector<std::complex<double>> vals(101, {0.0, 0.0});
    const auto table = SumTable::from_values(FamilySpec::laurent({{1, 0}}), p, 0, vals,
                                             TableMethod::direct, 0.0, false);
    const auto r = estimator_lower_bound(table, default_n_list(p), default_alpha_grid());
    CHECK(r.value == 0.0);
    CHECK(r.best_n == 2);                       // tie-break: smallest N
    CHECK(r.best_alpha == doctest::Approx(1.0 / 64.0));  // then smallest alpha
}

TEST_CASE("estimator single-frequency closed form") {
    const OddPrime p(101);
    const double c = 1.5;
    std::vector<std::complex<double>> vals(101, {0.0, 0.0});
    vals[1] = {c, 0.0};
    vals[100] = {-c, 0.0};  // K(-1) = -c
    const auto table = SumTable::from_values(FamilySpec::laurent({{1, 0}}), p, 0, vals,
                                             TableMethod::direct, 0.0, false);
    const auto r = estimator_lower_bound(table, {2}, {0.25, 0.5});
    // at alpha = 1/2 both harmonics contribute 2c: value = 4c/(4 pi) = c/pi
    CHECK(r.value == doctest::Approx(c / std::numbers::pi).epsilon(1e-12));
    CHECK(r.best_alpha == 0.5);
    CHECK(r.terms_used == 2);
}

TEST_CASE("estimator stays below twice the maximum plus slack") {
    const OddPrime p(1009);
    const auto n_list = default_n_list(p);
    const auto grid = default_alpha_grid();
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 60; ++rep) {
        const auto a = static_cast<std::int64_t>(rng() % 1008 + 1);
        const auto table = member_minus_table(a, p);
        const auto prof = prefix_profile(FamilySpec::kloosterman_dilate(), a, p, 0);
        const auto est = estimator_lower_bound(table, n_list, grid);
        CHECK(est.value <= 2.0 * prof.max_abs + 10.0 * (table.sup_norm() + 1.0));
    }
}

TEST_CASE("odd_harmonic_bound pinned values") {
    const double sq2 = std::numbers::sqrt2;
    std::map<std::int64_t, double> v;

    v = {{1, 0.0}, {-1, 0.0}};
    CHECK(odd_harmonic_bound(v, 1) == 0.0);

    v = {{1, sq2}, {-1, -sq2}};
    CHECK(odd_harmonic_bound(v, 1) == doctest::Approx(sq2 / std::numbers::pi).epsilon(1e-12));  // 0.450158

    v = {{1, sq2}, {-1, -sq2}, {3, sq2}, {-3, -sq2}, {5, sq2}, {-5, -sq2}};
    CHECK(odd_harmonic_bound(v, 5) ==
          doctest::Approx(sq2 / std::numbers::pi * (1.0 + 1.0 / 3.0 + 1.0 / 5.0)).epsilon(1e-12));

    CHECK_THROWS_AS(odd_harmonic_bound(v, 7), domain_error);  // missing +/-7
    CHECK_THROWS_AS(odd_harmonic_bound(v, 4), domain_error);  // even z
}

TEST_CASE("odd_harmonic_bound grows with z when thresholds hold") {
    std::mt19937_64 rng(43);
    std::map<std::int64_t, double> v;
    double prev = 0.0;
    for (std::uint32_t z = 1; z <= 9; z += 2) {
        const double up = std::numbers::sqrt2 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
        v[z] = up;
        v[-static_cast<std::int64_t>(z)] = -up;
        const double b = odd_harmonic_bound(v, z);
        CHECK(b >= prev);
        prev = b;
    }
}
