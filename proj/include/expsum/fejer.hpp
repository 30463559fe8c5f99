#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "expsum/families.hpp"

namespace expsum {

/// Fejer kernel Phi_N(theta) = sum_{|a|<=N} (1-|a|/N) e(a*theta)
/// = (1/N)(sin(pi*N*theta)/sin(pi*theta))^2, theta in [0,1).
/// Nonnegative, unit integral, Phi_N(0) = N.
double fejer_kernel(std::uint32_t N, double theta);

/// Truncated partial-sum expansion read off a member Fourier table
/// (minus convention):
///   -(1/2*pi*i) sum_{1<=|n|<=N} K(n)/n (1 - e(-alpha n)) + alpha K(0),
/// with K(-n) read at index p-n. Approximates S(t, alpha*p) up to
/// O(sqrt(p) log p / N).
std::complex<double> fourier_partial(const SumTable& table, double alpha, std::uint32_t N);

struct EstimatorResult {
    double value = 0.0;
    double best_alpha = 0.0;
    std::uint32_t best_n = 0;
    std::uint32_t terms_used = 0;
};

/// Grid maximum of (1/4pi) |sum_{1<=|n|<N} K(n)/n (1 - e(-alpha n))|,
/// a lower-bound statistic for M(t) up to O(||K||_inf).
/// Deterministic tie-break: smallest N, then smallest alpha.
EstimatorResult estimator_lower_bound(const SumTable& table, const std::vector<std::uint32_t>& n_list,
                                      const std::vector<double>& alpha_grid);

/// Default grids: alpha in {j/64 : 1 <= j < 64}, N the powers of two up to
/// (p-1)/2.
std::vector<double> default_alpha_grid();
std::vector<std::uint32_t> default_n_list(OddPrime p);

/// alpha = 1/2 specialization of the expansion over odd harmonics:
///   (1/4pi) |sum_{odd 1<=|n|<=z} v_n * 2/n|.
/// Keys of `values` must cover every odd |n| <= z.
double odd_harmonic_bound(const std::map<std::int64_t, double>& values, std::uint32_t z);

}  // namespace expsum
