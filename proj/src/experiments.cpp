#include "expsum/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "expsum/errors.hpp"
#include "expsum/fejer.hpp"
#include "expsum/numeric.hpp"
#include "expsum/selberg.hpp"

namespace expsum {

namespace {

unsigned effective_workers(WorkerPool pool) {
    if (pool.workers > 0) return pool.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count) across the pool. Chunk boundaries are fixed
/// (independent of worker count); each index is processed exactly once.
template <typename Fn>
void parallel_for(std::size_t count, WorkerPool pool, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(effective_workers(pool), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    constexpr std::size_t chunk = 256;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            for (;;) {
                const std::size_t lo = next.fetch_add(chunk);
                if (lo >= count) return;
                const std::size_t hi = std::min(lo + chunk, count);
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            }
        });
    }
    for (auto& t : threads) t.join();
}

constexpr std::uint32_t exhaustive_limit = 30011;

std::vector<std::uint32_t> pick_parameters(OddPrime p, std::optional<std::uint64_t> seed,
                                           bool& sampled, std::uint64_t& seed_used) {
    const std::uint32_t n = p.value();
    std::vector<std::uint32_t> params;
    if (n <= exhaustive_limit && !seed.has_value()) {
        sampled = false;
        seed_used = 0;
        params.reserve(n - 1);
        for (std::uint32_t a = 1; a < n; ++a) params.push_back(a);
        return params;
    }
    sampled = true;
    seed_used = seed.value_or(0x6ca1ab1eULL);
    std::mt19937_64 rng(seed_used);
    const std::size_t want = std::max<std::size_t>(1000, (n - 1) / 100);
    std::vector<bool> taken(n, false);
    params.reserve(want);
    while (params.size() < want && params.size() < n - 1) {
        // rejection sampling keeps the draw portable across standard libraries
        const std::uint32_t a = static_cast<std::uint32_t>(rng() % (n - 1)) + 1;
        if (!taken[a]) {
            taken[a] = true;
            params.push_back(a);
        }
    }
    std::sort(params.begin(), params.end());
    return params;
}

}  // namespace

SignPattern::SignPattern(std::vector<SignCondition> conds, double thr)
    : conditions(std::move(conds)), threshold(thr) {
    if (conditions.empty()) return;
    for (std::size_t i = 0; i < conditions.size(); ++i)
        for (std::size_t j = i + 1; j < conditions.size(); ++j)
            if (conditions[i].map.equal(conditions[j].map))
                throw domain_error("sign pattern maps must be pairwise distinct projective classes");
}

SignPattern make_detector_pattern(const FamilySpec& family, std::uint32_t z, OddPrime p, double threshold) {
    if (z % 2 == 0 || z == 0) throw domain_error("detector depth z must be odd");
    std::vector<SignCondition> conds;
    for (std::uint32_t n = 1; n <= z; n += 2) {
        conds.push_back({member_map(family, static_cast<std::int64_t>(n), p), SignDirection::ge_plus});
        conds.push_back({member_map(family, -static_cast<std::int64_t>(n), p), SignDirection::le_minus});
    }
    SignPattern pat(std::move(conds), threshold);
    pat.detector_z = z;
    return pat;
}

SignSearchReport sign_pattern_search(const SumTable& table, const SignPattern& pattern, bool member_stats,
                                     WorkerPool pool) {
    const OddPrime p = table.p;
    const std::uint32_t n = p.value();

    auto satisfies = [&](std::uint32_t a) {
        for (const auto& cond : pattern.conditions) {
            const ProjPoint pt = cond.map.apply(a);
            if (pt.is_infinity()) return false;
            const double v = table.values[pt.value()].real();
            if (cond.direction == SignDirection::ge_plus ? v < pattern.threshold
                                                         : v > -pattern.threshold)
                return false;
        }
        return true;
    };

    std::vector<std::uint8_t> hit(n, 0);
    parallel_for(n - 1, pool, [&](std::size_t i) {
        const auto a = static_cast<std::uint32_t>(i + 1);
        hit[a] = satisfies(a) ? 1 : 0;
    });

    SignSearchReport rep(p);
    rep.family = table.family.descriptor();
    rep.threshold = pattern.threshold;
    rep.condition_count = pattern.conditions.size();
    for (std::uint32_t a = 1; a < n; ++a)
        if (hit[a]) rep.members.push_back(a);
    rep.count = rep.members.size();
    rep.density = static_cast<double>(rep.count) / static_cast<double>(n - 1);
    rep.table_sup_norm = table.sup_norm();

    // audit pass: every reported member re-verified entrywise
    for (const std::uint32_t a : rep.members)
        if (!satisfies(a)) throw integrity_error("sign search audit failed at a=" + std::to_string(a));

    // independence heuristic: quadrature mass of {2cos(theta) >= threshold}
    // per condition (the <= -threshold mass is equal by symmetry)
    const double per_condition =
        st_integrate([&](double th) { return 2.0 * std::cos(th) >= pattern.threshold ? 1.0 : 0.0; }, 1e-9);
    rep.predicted_density = std::pow(per_condition, static_cast<double>(pattern.conditions.size()));

    if (member_stats && !rep.members.empty()) {
        const PrimeContextPtr ctx = make_prime_context(p);
        rep.member_max.assign(rep.count, 0.0);
        rep.member_harmonic_bound.assign(rep.count, 0.0);
        parallel_for(rep.count, pool, [&](std::size_t i) {
            const std::uint32_t a = rep.members[i];
            rep.member_max[i] = prefix_profile(table.family, a, ctx, 0).max_abs;
            if (pattern.detector_z) {
                std::map<std::int64_t, double> vals;
                for (std::int64_t m = 1; m <= static_cast<std::int64_t>(*pattern.detector_z); m += 2) {
                    vals[m] = table.values[fourier_index(table.family, a, m, p)].real();
                    vals[-m] = table.values[fourier_index(table.family, a, -m, p)].real();
                }
                rep.member_harmonic_bound[i] = odd_harmonic_bound(vals, *pattern.detector_z);
            }
        });
    }
    return rep;
}

std::vector<double> member_maxima(const FamilySpec& family, OddPrime p, WorkerPool pool) {
    const PrimeContextPtr ctx = make_prime_context(p);
    const std::uint32_t n = p.value();
    std::vector<double> out(n - 1, 0.0);
    parallel_for(n - 1, pool, [&](std::size_t i) {
        out[i] = prefix_profile(family, static_cast<std::int64_t>(i + 1), ctx, 0).max_abs;
    });
    return out;
}

namespace {

std::vector<double> maxima_for(const FamilySpec& family, OddPrime p, const std::vector<std::uint32_t>& params,
                               WorkerPool pool) {
    const PrimeContextPtr ctx = make_prime_context(p);
    std::vector<double> out(params.size(), 0.0);
    parallel_for(params.size(), pool, [&](std::size_t i) {
        out[i] = prefix_profile(family, params[i], ctx, 0).max_abs;
    });
    return out;
}

}  // namespace

MomentReport max_moments(const FamilySpec& family, OddPrime p, const std::vector<std::uint32_t>& k_list,
                         WorkerPool pool, std::optional<std::uint64_t> sample_seed) {
    if (k_list.empty()) throw domain_error("max_moments needs at least one k");
    MomentReport rep(p);
    rep.family = family.descriptor();
    std::vector<std::uint32_t> params = pick_parameters(p, sample_seed, rep.sampled, rep.seed);
    rep.parameters_used = params.size();
    const std::vector<double> maxima = maxima_for(family, p, params, pool);

    const double loglogp = std::log(std::log(static_cast<double>(p.value())));
    for (const std::uint32_t k : k_list) {
        if (k == 0) throw domain_error("moment order k must be >= 1");
        CompensatedSum acc;
        for (const double m : maxima) acc.add(std::pow(m, 2.0 * k));
        rep.k_values.push_back(k);
        rep.moments.push_back(acc.value() / static_cast<double>(maxima.size()));
        rep.logk_curve.push_back(std::pow(std::log(static_cast<double>(k)), 2.0 * k));
        rep.loglogp_curve.push_back(std::pow(loglogp, 2.0 * k));
        const double llk = std::log(std::log(static_cast<double>(k)));
        const double lllk = std::log(llk);
        rep.pk_curve.push_back(std::isfinite(llk) && std::isfinite(lllk)
                                   ? std::exp(4.0 * k * llk + k * lllk)
                                   : std::numeric_limits<double>::quiet_NaN());
    }
    return rep;
}

std::vector<std::pair<double, double>> tail_distribution(const FamilySpec& family, OddPrime p,
                                                         std::vector<double> a_grid, WorkerPool pool,
                                                         std::optional<std::uint64_t> sample_seed) {
    bool sampled = false;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> params = pick_parameters(p, sample_seed, sampled, seed);
    const std::vector<double> maxima = maxima_for(family, p, params, pool);
    std::sort(a_grid.begin(), a_grid.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(a_grid.size());
    for (const double A : a_grid) {
        std::size_t c = 0;
        for (const double m : maxima)
            if (m > A) ++c;
        out.emplace_back(A, static_cast<double>(c) / static_cast<double>(maxima.size()));
    }
    return out;
}

EquidistDiagnostics equidist_matrix(const SumTable& table, const std::vector<MoebiusMap>& maps,
                                    std::uint32_t d_max, WorkerPool pool) {
    (void)pool;  // the accumulations are cheap and order-sensitive; run serial
    if (d_max > 16) throw domain_error("equidist_matrix caps d_max at 16");
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = i + 1; j < maps.size(); ++j)
            if (maps[i].equal(maps[j])) throw domain_error("equidist maps must be pairwise distinct");

    const OddPrime p = table.p;
    const std::uint32_t n = p.value();
    const double inv_sqrt = 1.0 / p.sqrt();

    // clamped table value at tau(a); infinity carries trace value 0
    auto value_at = [&](const MoebiusMap& tau, std::uint32_t a) {
        const ProjPoint pt = tau.apply(a);
        if (pt.is_infinity()) return 0.0;
        return std::clamp(table.values[pt.value()].real(), -2.0, 2.0);
    };

    EquidistDiagnostics out(p);

    // U_0..U_d via the recurrence, accumulated per map in fixed order
    const std::size_t d = d_max;
    for (const auto& tau : maps) {
        std::vector<CompensatedSum> acc(d + 1);
        for (std::uint32_t a = 1; a < n; ++a) {
            const double x = value_at(tau, a);
            double u_prev = 1.0, u_cur = x;
            acc[0].add(u_prev);
            for (std::uint32_t m = 1; m <= d; ++m) {
                acc[m].add(u_cur);
                const double nx = x * u_cur - u_prev;
                u_prev = u_cur;
                u_cur = nx;
            }
        }
        for (std::uint32_t m = 0; m <= d; ++m)
            out.singles.push_back({tau.str(), m, acc[m].value() * inv_sqrt});
    }

    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (std::size_t j = i + 1; j < maps.size(); ++j) {
            std::vector<CompensatedSum> acc(d * d);
            for (std::uint32_t a = 1; a < n; ++a) {
                const double x = value_at(maps[i], a);
                const double y = value_at(maps[j], a);
                std::vector<double> ux(d + 1), uy(d + 1);
                ux[0] = 1.0;
                uy[0] = 1.0;
                if (d >= 1) {
                    ux[1] = x;
                    uy[1] = y;
                }
                for (std::uint32_t m = 2; m <= d; ++m) {
                    ux[m] = x * ux[m - 1] - ux[m - 2];
                    uy[m] = y * uy[m - 1] - uy[m - 2];
                }
                for (std::uint32_t mi = 1; mi <= d; ++mi)
                    for (std::uint32_t nj = 1; nj <= d; ++nj)
                        acc[(mi - 1) * d + (nj - 1)].add(ux[mi] * uy[nj]);
            }
            for (std::uint32_t mi = 1; mi <= d; ++mi)
                for (std::uint32_t nj = 1; nj <= d; ++nj)
                    out.pairs.push_back({maps[i].str(), maps[j].str(), mi, nj,
                                         acc[(mi - 1) * d + (nj - 1)].value() * inv_sqrt});
        }
    }
    return out;
}

double block_moment(const FamilySpec& family, OddPrime p, double alpha, double beta, std::uint32_t k,
                    WorkerPool pool) {
    if (!(0.0 <= alpha && alpha < beta && beta <= 1.0))
        throw domain_error("block_moment needs 0 <= alpha < beta <= 1");
    if (k == 0) throw domain_error("block_moment needs k >= 1");
    const std::uint32_t n = p.value();
    if (n > exhaustive_limit) throw domain_error("block_moment runs exhaustively; p capped at 30011");
    const auto lo = static_cast<std::uint32_t>(std::floor(alpha * n));
    const auto hi = static_cast<std::uint32_t>(std::floor(beta * n));
    const PrimeContextPtr ctx = make_prime_context(p);

    std::vector<double> powers(n - 1, 0.0);
    parallel_for(n - 1, pool, [&](std::size_t i) {
        const PhaseEvaluator t(family, static_cast<std::int64_t>(i + 1), ctx);
        ComplexCompensatedSum acc;
        for (std::uint32_t x = lo + 1; x <= hi; ++x) acc.add(t(x % n));
        const double m = std::abs(acc.value()) / p.sqrt();
        powers[i] = std::pow(m, 2.0 * k);
    });
    CompensatedSum total;
    for (const double v : powers) total.add(v);
    return total.value() / static_cast<double>(n - 1);
}

}  // namespace expsum
