#include "expsum/fejer.hpp"

#include <cmath>
#include <numbers>

#include "expsum/errors.hpp"
#include "expsum/numeric.hpp"

namespace expsum {

double fejer_kernel(std::uint32_t N, double theta) {
    if (N < 1) throw domain_error("fejer_kernel needs N >= 1");
    theta -= std::floor(theta);
    const double s = std::sin(std::numbers::pi * theta);
    if (s == 0.0) return static_cast<double>(N);
    const double r = std::sin(std::numbers::pi * static_cast<double>(N) * theta) / s;
    return r * r / static_cast<double>(N);
}

std::complex<double> fourier_partial(const SumTable& table, double alpha, std::uint32_t N) {
    const std::uint32_t p = table.p.value();
    if (N < 1 || N >= p) throw domain_error("fourier_partial needs 1 <= N < p");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("fourier_partial needs alpha in (0,1)");
    ComplexCompensatedSum acc;
    for (std::uint32_t n = 1; n <= N; ++n) {
        const std::complex<double> kp = table.values[n % p];
        const std::complex<double> km = table.values[p - (n % p)];
        const double ang = 2.0 * std::numbers::pi * alpha * static_cast<double>(n);
        const std::complex<double> em(std::cos(ang), -std::sin(ang));  // e(-alpha n)
        acc.add(kp * (1.0 - em) / static_cast<double>(n));
        acc.add(km * (1.0 - std::conj(em)) / -static_cast<double>(n));
    }
    const std::complex<double> i2pi(0.0, 2.0 * std::numbers::pi);
    return -acc.value() / i2pi + alpha * table.values[0];
}

std::vector<double> default_alpha_grid() {
    std::vector<double> g;
    g.reserve(63);
    for (int j = 1; j < 64; ++j) g.push_back(static_cast<double>(j) / 64.0);
    return g;
}

std::vector<std::uint32_t> default_n_list(OddPrime p) {
    std::vector<std::uint32_t> ns;
    for (std::uint32_t n = 2; n <= (p.value() - 1) / 2; n *= 2) ns.push_back(n);
    if (ns.empty()) ns.push_back(2);
    return ns;
}

EstimatorResult estimator_lower_bound(const SumTable& table, const std::vector<std::uint32_t>& n_list,
                                      const std::vector<double>& alpha_grid) {
    if (n_list.empty() || alpha_grid.empty()) throw domain_error("estimator grids must be nonempty");
    const std::uint32_t p = table.p.value();
    EstimatorResult best;
    for (const std::uint32_t N : n_list) {
        if (N < 1 || N > p) throw domain_error("estimator N out of range");
        for (const double alpha : alpha_grid) {
            ComplexCompensatedSum acc;
            for (std::uint32_t n = 1; n < N; ++n) {
                const std::complex<double> kp = table.values[n % p];
                const std::complex<double> km = table.values[p - (n % p)];
                const double ang = 2.0 * std::numbers::pi * alpha * static_cast<double>(n);
                const std::complex<double> em(std::cos(ang), -std::sin(ang));
                acc.add(kp * (1.0 - em) / static_cast<double>(n));
                acc.add(km * (1.0 - std::conj(em)) / -static_cast<double>(n));
            }
            const double value = std::abs(acc.value()) / (4.0 * std::numbers::pi);
            if (value > best.value) {
                best.value = value;
                best.best_alpha = alpha;
                best.best_n = N;
                best.terms_used = 2 * (N - 1);
            }
        }
    }
    if (best.best_n == 0) {  // all-zero table: report the first grid point
        best.best_n = n_list.front();
        best.best_alpha = alpha_grid.front();
        best.terms_used = 2 * (n_list.front() - 1);
    }
    return best;
}

double odd_harmonic_bound(const std::map<std::int64_t, double>& values, std::uint32_t z) {
    if (z % 2 == 0) throw domain_error("odd_harmonic_bound needs odd z");
    CompensatedSum acc;
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(z); n += 2) {
        const auto hi = values.find(n);
        const auto lo = values.find(-n);
        if (hi == values.end() || lo == values.end())
            throw domain_error("odd_harmonic_bound: missing value at n = +/-" + std::to_string(n));
        acc.add(hi->second * 2.0 / static_cast<double>(n));
        acc.add(lo->second * 2.0 / static_cast<double>(-n));
    }
    return std::abs(acc.value()) / (4.0 * std::numbers::pi);
}

}  // namespace expsum
