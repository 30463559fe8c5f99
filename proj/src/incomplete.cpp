#include "expsum/incomplete.hpp"

#include <cmath>

#include "expsum/errors.hpp"
#include "expsum/numeric.hpp"

namespace expsum {

namespace {

template <typename ValueAt>
PrefixProfile scan(ValueAt&& value_at, const FamilySpec& family, std::int64_t a, OddPrime p,
                   std::uint32_t keep_prefix_limit) {
    const std::uint32_t n = p.value();
    const double inv_sqrt = 1.0 / p.sqrt();
    const bool keep = n <= keep_prefix_limit;

    PrefixProfile out{family, p, a, 0.0, 0, std::nullopt};
    if (keep) {
        out.full_prefix.emplace();
        out.full_prefix->reserve(n);
    }

    ComplexCompensatedSum acc;  // sum of t(0..H-1), unnormalized
    double best = 0.0;          // H = 0 gives S = 0
    std::uint32_t best_h = 0;
    if (keep) out.full_prefix->push_back({0.0, 0.0});
    for (std::uint32_t h = 1; h < n; ++h) {
        acc.add(value_at(h - 1));
        const std::complex<double> s = acc.value() * inv_sqrt;
        const double m = std::abs(s);
        if (m > best) {
            best = m;
            best_h = h;
        }
        if (keep) out.full_prefix->push_back(s);
    }
    out.max_abs = best;
    out.argmax_h = best_h;
    return out;
}

}  // namespace

PrefixProfile prefix_profile_values(std::span<const std::complex<double>> t, OddPrime p,
                                    std::uint32_t keep_prefix_limit) {
    if (t.size() != p.value()) throw domain_error("prefix_profile_values: need one value per residue");
    // synthetic scans carry no family identity; tag with the laurent placeholder
    return scan([&](std::uint32_t x) { return t[x]; },
                FamilySpec::laurent({{1, 0}}), 0, p, keep_prefix_limit);
}

PrefixProfile prefix_profile(const FamilySpec& family, std::int64_t a, PrimeContextPtr ctx,
                             std::uint32_t keep_prefix_limit) {
    const PhaseEvaluator t(family, a, ctx);
    return scan([&](std::uint32_t x) { return t(x); }, family, a, ctx->p, keep_prefix_limit);
}

PrefixProfile prefix_profile(const FamilySpec& family, std::int64_t a, OddPrime p,
                             std::uint32_t keep_prefix_limit) {
    return prefix_profile(family, a, make_prime_context(p), keep_prefix_limit);
}

std::complex<double> range_sum(const FamilySpec& family, std::int64_t a, OddPrime p, std::uint32_t N,
                               std::uint32_t H) {
    if (N < 1 || static_cast<std::uint64_t>(N) + H >= p.value())
        throw domain_error("range_sum requires 1 <= N and N+H < p");
    const PhaseEvaluator t(family, a, p);
    ComplexCompensatedSum acc;
    for (std::uint32_t x = N; x <= N + H; ++x) acc.add(t(x));
    return acc.value();
}

double pv_ratio(const PrefixProfile& profile, const SumTable& table) {
    if (!(profile.family == table.family) || profile.p != table.p || profile.member_a != table.member_a)
        throw domain_error("pv_ratio: profile and table describe different members");
    const double kinf = table.sup_norm();
    if (kinf == 0.0) return 0.0;
    return profile.max_abs / (kinf * std::log(3.0 * static_cast<double>(profile.p.value())));
}

ShortSumScan short_sum_extremum(const FamilySpec& family, std::int64_t a, OddPrime p, std::uint32_t H) {
    const std::uint32_t n = p.value();
    if (H < 1 || H > n - 2) throw domain_error("short_sum_extremum requires 1 <= H <= p-2");
    const PhaseEvaluator t(family, a, p);

    constexpr std::uint32_t refresh_every = 4096;
    std::complex<double> window{0.0, 0.0};
    for (std::uint32_t x = 1; x <= 1 + H; ++x) window += t(x);

    double best = std::abs(window);
    std::uint32_t best_n = 1;
    std::uint32_t since_refresh = 0;
    for (std::uint32_t N = 2; N + H < n; ++N) {
        if (++since_refresh == refresh_every) {
            ComplexCompensatedSum acc;
            for (std::uint32_t x = N; x <= N + H; ++x) acc.add(t(x));
            window = acc.value();
            since_refresh = 0;
        } else {
            window += t(N + H) - t(N - 1);
        }
        const double m = std::abs(window);
        if (m > best) {
            best = m;
            best_n = N;
        }
    }
    return {H, best, best_n};
}

}  // namespace expsum
