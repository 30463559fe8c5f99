#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "expsum/families.hpp"

namespace expsum {

/// Result of a full prefix scan of one family member:
/// S(t,H) = (1/sqrt p) sum_{0 <= n < H} t(n), M = max_{0<=H<p} |S(t,H)|.
struct PrefixProfile {
    FamilySpec family;
    OddPrime p;
    std::int64_t member_a;
    double max_abs;          // M
    std::uint32_t argmax_h;  // smallest H attaining M
    /// S(t,H) for H = 0..p-1 when retained (small p or on request).
    std::optional<std::vector<std::complex<double>>> full_prefix;
};

/// Single O(p) compensated streaming pass. full prefixes are retained when
/// p <= keep_prefix_limit.
PrefixProfile prefix_profile(const FamilySpec& family, std::int64_t a, OddPrime p,
                             std::uint32_t keep_prefix_limit = 4096);
PrefixProfile prefix_profile(const FamilySpec& family, std::int64_t a, PrimeContextPtr ctx,
                             std::uint32_t keep_prefix_limit = 4096);

/// Prefix scan over explicitly supplied values t(0..p-1). Backs the family
/// version and lets tests drive synthetic inputs.
PrefixProfile prefix_profile_values(std::span<const std::complex<double>> t, OddPrime p,
                                    std::uint32_t keep_prefix_limit = 4096);

/// Unnormalized sum_{N <= x <= N+H} t_a(x). Requires 1 <= N and N+H < p.
std::complex<double> range_sum(const FamilySpec& family, std::int64_t a, OddPrime p, std::uint32_t N,
                               std::uint32_t H);

/// M / (||K||_inf * log(3p)); the sup norm runs over every table index
/// including 0. Zero tables give 0 by convention. Profile and table must
/// belong to the same member.
double pv_ratio(const PrefixProfile& profile, const SumTable& table);

struct ShortSumScan {
    std::uint32_t window;           // H
    double extremum;                // max_N |range_sum(N, H)|
    std::uint32_t argmax_n;
};

/// Sliding-window scan of |sum_{N<=x<=N+H} t_a(x)| over N in [1, p-H-1].
/// The window sum is refreshed from scratch every 4096 steps to stop
/// float drift.
ShortSumScan short_sum_extremum(const FamilySpec& family, std::int64_t a, OddPrime p, std::uint32_t H);

}  // namespace expsum
