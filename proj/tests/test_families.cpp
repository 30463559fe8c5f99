#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expsum/dft.hpp"
#include "expsum/families.hpp"

using namespace expsum;

namespace {

// independent oracle: Kl(a,b;p) by direct trigonometric summation
double kl_oracle(std::int64_t a, std::int64_t b, std::uint32_t pv) {
    const OddPrime p(pv);
    double re = 0.0, im = 0.0;
    for (std::uint32_t x = 1; x < pv; ++x) {
        const std::uint32_t xb = mod_inverse(x, p);
        const auto ph = static_cast<double>(p.reduce(a * x + b * static_cast<std::int64_t>(xb)));
        re += std::cos(2.0 * std::numbers::pi * ph / pv);
        im += std::sin(2.0 * std::numbers::pi * ph / pv);
    }
    REQUIRE(std::abs(im) < 1e-9 * std::sqrt(pv));
    return re / std::sqrt(static_cast<double>(pv));
}

double bi_oracle(std::int64_t a, std::int64_t b, std::uint32_t pv) {
    const OddPrime p(pv);
    double re = 0.0, im = 0.0;
    for (std::uint32_t x = 1; x < pv; ++x) {
        const std::uint64_t x3 = (static_cast<std::uint64_t>(x) * x % pv) * x % pv;
        const auto ph = static_cast<double>(p.reduce(a * x + b * static_cast<std::int64_t>(x3)));
        re += std::cos(2.0 * std::numbers::pi * ph / pv);
        im += std::sin(2.0 * std::numbers::pi * ph / pv);
    }
    REQUIRE(std::abs(im) < 1e-9 * std::sqrt(pv));
    return re / std::sqrt(static_cast<double>(pv));
}

}  // namespace

TEST_CASE("phase_value pinned points") {
    const OddPrime p5(5);
    // a=1, x=2, b=1: inverse of 2 mod 5 is 3, phase (2+3)/5 = 1 -> e(1) = 1
    const auto v = phase_value(FamilySpec::kloosterman_shift(1), 1, 2, p5);
    CHECK(std::abs(v - std::complex<double>{1.0, 0.0}) < 1e-12);
    // pole convention at x = 0
    CHECK(phase_value(FamilySpec::kloosterman_shift(1), 1, 0, p5) == std::complex<double>{0.0, 0.0});
    CHECK(phase_value(FamilySpec::kloosterman_dilate(), 3, 0, p5) == std::complex<double>{0.0, 0.0});
    // polynomial families keep t(0) = e(0) = 1
    CHECK(std::abs(phase_value(FamilySpec::birch_shift(), 2, 0, p5) - 1.0) < 1e-15);
}

TEST_CASE("member phase definitions against raw arithmetic") {
    const OddPrime p(101);
    const auto e_of = [&](std::int64_t k) { return root_of_unity(k, p); };
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = static_cast<std::int64_t>(rng() % 100 + 1);
        const auto x = static_cast<std::uint32_t>(rng() % 100 + 1);
        const std::int64_t xb = mod_inverse(x, p);
        const std::int64_t ab = mod_inverse(static_cast<std::uint32_t>(a), p);
        const std::int64_t x3 = (static_cast<std::int64_t>(x) * x % 101) * x % 101;

        CHECK(std::abs(phase_value(FamilySpec::kloosterman_shift(7), a, x, p) - e_of(a * x + 7 * xb)) < 1e-12);
        CHECK(std::abs(phase_value(FamilySpec::kloosterman_dilate(), a, x, p) - e_of(a * xb)) < 1e-12);
        CHECK(std::abs(phase_value(FamilySpec::kloosterman_curve(3), a, x, p) - e_of(a * x + 3 * ab * xb)) <
              1e-12);
        CHECK(std::abs(phase_value(FamilySpec::birch_shift(), a, x, p) - e_of(a * x + x3)) < 1e-12);
        CHECK(std::abs(phase_value(FamilySpec::birch_dilate(), a, x, p) - e_of(ab * ab % 101 * ab % 101 * x3)) <
              1e-12);
        CHECK(std::abs(phase_value(FamilySpec::birch_curve(2), a, x, p) -
                       e_of(a * x + 2 * (a * a % 101) * a % 101 * x3)) < 1e-12);
        // laurent with f(x) = 5 x^{-2} + x^3
        const std::int64_t f = 5 * (xb * xb % 101) % 101 + x3;
        CHECK(std::abs(phase_value(FamilySpec::laurent({{-2, 5}, {3, 1}}), a, x, p) - e_of(a * x + f)) <
              1e-12);
    }
}

TEST_CASE("complete_sum frozen oracle values") {
    // oracle: direct summation (kl_oracle/bi_oracle), frozen values below
    CHECK(complete_sum(FamilySpec::kloosterman_shift(1), 1, OddPrime(5)) ==
          doctest::Approx(0.1708203932499369).epsilon(1e-9));
    CHECK(complete_sum(FamilySpec::birch_shift(), 1, OddPrime(7)) ==
          doctest::Approx(-1.0174884768541936).epsilon(1e-7));
    CHECK(kl_oracle(1, 1, 5) == doctest::Approx(0.1708203932499369).epsilon(1e-12));
    CHECK(bi_oracle(1, 1, 7) == doctest::Approx(-1.0174884768541936).epsilon(1e-12));
}

TEST_CASE("complete_sum equals the direct oracle across members") {
    const std::uint32_t pv = 101;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto a = static_cast<std::int64_t>(rng() % (pv - 1) + 1);
        CHECK(complete_sum(FamilySpec::kloosterman_shift(1), a, OddPrime(pv)) ==
              doctest::Approx(kl_oracle(a, 1, pv)).epsilon(1e-10));
        CHECK(complete_sum(FamilySpec::birch_shift(), a, OddPrime(pv)) ==
              doctest::Approx(bi_oracle(a, 1, pv)).epsilon(1e-10));
    }
}

TEST_CASE("multiplicative collapse Kl(a,b) = Kl(ab,1)") {
    const std::uint32_t pv = 1009;
    const OddPrime p(pv);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const auto a = static_cast<std::int64_t>(rng() % (pv - 1) + 1);
        const auto b = static_cast<std::int64_t>(rng() % (pv - 1) + 1);
        const double lhs = complete_sum(FamilySpec::kloosterman_shift(b), a, p);
        const double rhs = complete_sum(FamilySpec::kloosterman_shift(1), a * b % pv, p);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("Weil bound and realness, exhaustive at p=101") {
    const OddPrime p(101);
    for (std::int64_t a = 1; a < 101; ++a) {
        const auto kl = complete_sum_complex(FamilySpec::kloosterman_shift(1), a, p);
        CHECK(std::abs(kl.imag()) < 1e-9);
        CHECK(std::abs(kl.real()) <= 2.0 + 1e-9);
        const auto bi = complete_sum_complex(FamilySpec::birch_shift(), a, p);
        CHECK(std::abs(bi.imag()) < 1e-9);
        CHECK(std::abs(bi.real()) <= 2.0 + 1.0 / std::sqrt(101.0) + 1e-9);
    }
}

TEST_CASE("raw prime DFT: constant and zero inputs") {
    const OddPrime p(17);
    std::vector<std::complex<double>> ones(17, {1.0, 0.0});
    const auto X = dft_prime_chirp(ones, p);
    CHECK(std::abs(X[0] - std::complex<double>{17.0, 0.0}) < 1e-10);
    for (int y = 1; y < 17; ++y) CHECK(std::abs(X[y]) < 1e-10);  // character orthogonality

    std::vector<std::complex<double>> zero(17, {0.0, 0.0});
    for (const auto& v : dft_prime_chirp(zero, p)) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("chirp DFT matches the direct transform") {
    const OddPrime p(257);
    std::mt19937_64 rng(3);
    std::vector<std::complex<double>> v(257);
    for (auto& z : v) {
        z = {std::uniform_real_distribution<double>(-1, 1)(rng),
             std::uniform_real_distribution<double>(-1, 1)(rng)};
    }
    const auto direct = dft_prime_direct(v, p);
    const auto chirp = dft_prime_chirp(v, p);
    for (int y = 0; y < 257; ++y) CHECK(std::abs(direct[y] - chirp[y]) < 1e-10);
}

TEST_CASE("batch tables agree with complete sums") {
    const OddPrime p(1009);
    const SumTable master = kloosterman_master_table(p);
    CHECK(master.method == TableMethod::chirp_dft);
    CHECK(master.max_abs_error_estimate < 1e-6);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 25; ++i) {
        const auto u = static_cast<std::int64_t>(rng() % 1008 + 1);
        CHECK(master.real_at(static_cast<std::uint32_t>(u)) ==
              doctest::Approx(complete_sum(FamilySpec::kloosterman_shift(1), u, p)).epsilon(1e-8));
    }
    // index 0 holds the degenerate complete sum: Kl(0,1;p) = -1/sqrt(p)
    CHECK(master.real_at(0) == doctest::Approx(-1.0 / std::sqrt(1009.0)).epsilon(1e-8));

    // polynomial kinds: table entries are traces, offset from the x>=1
    // complete sums by exactly 1/sqrt(p)
    const SumTable bmaster = birch_master_table(p);
    for (int i = 0; i < 10; ++i) {
        const auto u = static_cast<std::int64_t>(rng() % 1008 + 1);
        CHECK(bmaster.real_at(static_cast<std::uint32_t>(u)) - 1.0 / p.sqrt() ==
              doctest::Approx(complete_sum(FamilySpec::birch_shift(), u, p)).epsilon(1e-8));
        CHECK(std::abs(bmaster.real_at(static_cast<std::uint32_t>(u))) <= 2.0 + 1e-6);
    }
}

TEST_CASE("forced direct and chirp table methods coincide") {
    const OddPrime p(101);
    const auto f = FamilySpec::kloosterman_dilate();
    const SumTable a = batch_complete_sums(f, p, 1, TableMethod::direct);
    const SumTable b = batch_complete_sums(f, p, 1, TableMethod::chirp_dft);
    CHECK(a.method == TableMethod::direct);
    for (std::uint32_t i = 0; i < 101; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-9);
}

TEST_CASE("member tables are reindexed master tables") {
    const OddPrime p(101);
    const std::int64_t a = 7;
    for (const auto& f : {FamilySpec::kloosterman_shift(3), FamilySpec::kloosterman_dilate(),
                          FamilySpec::kloosterman_curve(2), FamilySpec::birch_shift(),
                          FamilySpec::birch_dilate(), FamilySpec::birch_curve(2),
                          FamilySpec::laurent({{-1, 1}, {2, 4}})}) {
        const SumTable member = batch_complete_sums(f, p, a);
        const SumTable master = batch_complete_sums(f, p, 1);
        for (std::int64_t n = 0; n < 101; ++n) {
            const std::uint32_t idx = fourier_index(f, a, n, p);
            CHECK(std::abs(member.values[static_cast<std::size_t>(n)] - master.values[idx]) < 1e-8);
        }
    }
}

TEST_CASE("member_map matches fourier_index") {
    const OddPrime p(101);
    for (const auto& f : {FamilySpec::kloosterman_shift(3), FamilySpec::kloosterman_dilate(),
                          FamilySpec::kloosterman_curve(2), FamilySpec::birch_dilate()}) {
        for (std::int64_t n : {1, 2, 3, -1, -3, 50}) {
            const MoebiusMap tau = member_map(f, n, p);
            for (std::int64_t a : {1, 2, 7, 100}) {
                CHECK(tau.apply(static_cast<std::uint32_t>(a)) ==
                      ProjPoint::finite(fourier_index(f, a, n, p)));
            }
        }
    }
}

TEST_CASE("shift covariance: member table reads the base table at a+y-1") {
    const OddPrime p(101);
    const auto f = FamilySpec::kloosterman_shift(1);
    const SumTable t5 = batch_complete_sums(f, p, 5);
    const SumTable t1 = batch_complete_sums(f, p, 1);
    for (std::uint32_t y = 0; y < 101; ++y)
        CHECK(std::abs(t5.values[y] - t1.values[(5 + y + 100) % 101]) < 1e-8);
}

TEST_CASE("sign conventions differ by a global sign") {
    const OddPrime p(101);
    const auto base = FamilySpec::kloosterman_dilate();
    const SumTable plus = batch_complete_sums(base.with_sign(SignConvention::plus), p, 1);
    const SumTable minus = batch_complete_sums(base.with_sign(SignConvention::minus), p, 1);
    for (std::uint32_t i = 0; i < 101; ++i) CHECK(std::abs(plus.values[i] + minus.values[i]) < 1e-12);
}

TEST_CASE("laurent reproduces the named kinds") {
    const OddPrime p(101);
    // f = xbar: members e((a x + xbar)/p) = kloosterman_shift(1) members
    const SumTable lau = batch_complete_sums(FamilySpec::laurent({{-1, 1}}), p, 9);
    const SumTable shift = batch_complete_sums(FamilySpec::kloosterman_shift(1), p, 9);
    for (std::uint32_t i = 0; i < 101; ++i) CHECK(std::abs(lau.values[i] - shift.values[i]) < 1e-12);
    CHECK_THROWS_AS(FamilySpec::laurent({{0, 3}}), domain_error);  // no nonzero exponent
}

TEST_CASE("family validation") {
    const OddPrime p(7);
    CHECK_THROWS_AS(batch_complete_sums(FamilySpec::kloosterman_curve(7), p, 1), domain_error);  // m = 0 mod p
    CHECK_THROWS_AS(complete_sum(FamilySpec::kloosterman_dilate(), 7, p), domain_error);          // a = 0 mod p
    CHECK_THROWS_AS(complete_sum(FamilySpec::birch_curve(3), 0, p), domain_error);
}

TEST_CASE("table integrity rejects synthetic violations") {
    const OddPrime p(5);
    std::vector<std::complex<double>> bad(5, {0.0, 0.0});
    bad[2] = {2.5, 0.0};  // above the Kloosterman cap
    CHECK_THROWS_AS(SumTable::from_values(FamilySpec::kloosterman_dilate(), p, 1, bad,
                                          TableMethod::direct, 0.0, true),
                    integrity_error);
    bad[2] = {0.0, 1e-3};  // complex entry in a real family
    CHECK_THROWS_AS(SumTable::from_values(FamilySpec::kloosterman_dilate(), p, 1, bad,
                                          TableMethod::direct, 0.0, true),
                    integrity_error);
}

TEST_CASE("angle_of pinned values and domain") {
    CHECK(angle_of(2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(angle_of(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(angle_of(std::sqrt(2.0)) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(angle_of(-2.0) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(angle_of(2.1), domain_error);
}

TEST_CASE("angle table inverts to the stored values") {
    const OddPrime p(101);
    const SumTable master = kloosterman_master_table(p);
    const AngleTable at = angle_table(master);
    for (std::uint32_t i = 0; i < 101; ++i)
        CHECK(2.0 * std::cos(at.angles[i]) == doctest::Approx(master.real_at(i)).epsilon(1e-6));
}
