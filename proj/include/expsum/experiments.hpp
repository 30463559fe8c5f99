#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "expsum/families.hpp"
#include "expsum/incomplete.hpp"

namespace expsum {

/// Number of worker threads for the embarrassingly parallel scans.
/// Results are bit-identical for any count: every per-a quantity is computed
/// single-threaded and aggregation always runs in ascending-a order.
struct WorkerPool {
    unsigned workers = 0;  // 0 = hardware concurrency
};

enum class SignDirection { ge_plus, le_minus };

struct SignCondition {
    MoebiusMap map;
    SignDirection direction;
};

/// Simultaneous sign/size conditions on master-table values at Moebius images
/// of the parameter. Maps must be pairwise distinct projective classes.
struct SignPattern {
    SignPattern(std::vector<SignCondition> conditions, double threshold = std::numbers::sqrt2);
    std::vector<SignCondition> conditions;
    double threshold;
    /// z when the pattern is the +/- odd-dilation detector of that depth
    std::optional<std::uint32_t> detector_z;
};

/// The depth-z detector: for odd 1 <= n <= z demand value >= +threshold at
/// tau_n(a) and <= -threshold at tau_{-n}(a), with tau_n = member_map(F, n).
SignPattern make_detector_pattern(const FamilySpec& family, std::uint32_t z, OddPrime p,
                                  double threshold = std::numbers::sqrt2);

struct SignSearchReport {
    explicit SignSearchReport(OddPrime prime) : p(prime) {}
    OddPrime p;
    std::string family;
    double threshold = 0.0;
    std::size_t condition_count = 0;
    std::vector<std::uint32_t> members;
    std::size_t count = 0;
    double density = 0.0;
    double predicted_density = 0.0;  // independence heuristic, quadrature mass per condition
    /// per-member statistics (prefix maximum; detector harmonic bound when
    /// the pattern carries a detector depth)
    std::vector<double> member_max;
    std::vector<double> member_harmonic_bound;
    double table_sup_norm = 0.0;
};

/// Exhaustive scan over a in F_p^x. A parameter is a member iff every
/// condition holds at the transformed point; points at infinity fail.
/// Membership is re-verified entrywise on the assembled report.
SignSearchReport sign_pattern_search(const SumTable& table, const SignPattern& pattern,
                                     bool member_stats = true, WorkerPool pool = {});

struct MomentReport {
    explicit MomentReport(OddPrime prime) : p(prime) {}
    OddPrime p;
    std::string family;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::size_t parameters_used = 0;
    std::vector<std::uint32_t> k_values;
    std::vector<double> moments;          // (1/#a) sum_a M(t_a)^{2k}
    std::vector<double> logk_curve;       // (log k)^{2k}
    std::vector<double> loglogp_curve;    // (log log p)^{2k}
    std::vector<double> pk_curve;         // exp(4k loglog k + k logloglog k)
};

/// Empirical moments of {M(t_a)}. Exhaustive for p <= 30011, otherwise a
/// seeded sample of at least 1000 parameters (flagged in the report).
MomentReport max_moments(const FamilySpec& family, OddPrime p, const std::vector<std::uint32_t>& k_list,
                         WorkerPool pool = {}, std::optional<std::uint64_t> sample_seed = std::nullopt);

/// Empirical tail fractions (1/#a) |{a : M(t_a) > A}| per grid point.
std::vector<std::pair<double, double>> tail_distribution(const FamilySpec& family, OddPrime p,
                                                         std::vector<double> a_grid, WorkerPool pool = {},
                                                         std::optional<std::uint64_t> sample_seed = std::nullopt);

/// All M(t_a) for a = 1..p-1 in ascending order (the shared scan behind
/// moments and tails).
std::vector<double> member_maxima(const FamilySpec& family, OddPrime p, WorkerPool pool = {});

struct EquidistSingle {
    std::string map;
    std::uint32_t n;
    double value;  // (1/sqrt p) sum_a U_n(K(tau a))
};
struct EquidistPair {
    std::string map_i, map_j;
    std::uint32_t m, n;
    double value;  // (1/sqrt p) sum_a U_m(K(tau_i a)) U_n(K(tau_j a))
};
struct EquidistDiagnostics {
    explicit EquidistDiagnostics(OddPrime prime) : p(prime) {}
    OddPrime p;
    std::vector<EquidistSingle> singles;  // n = 0..d_max per map
    std::vector<EquidistPair> pairs;      // m,n = 1..d_max per unordered map pair
};

/// Square-root-cancellation diagnostics. Table values are clamped to [-2,2]
/// before the U_n evaluation; points at infinity contribute U_n(0) per the
/// trace-value-0 convention.
EquidistDiagnostics equidist_matrix(const SumTable& table, const std::vector<MoebiusMap>& maps,
                                    std::uint32_t d_max, WorkerPool pool = {});

/// (1/(p-1)) sum_a |(1/sqrt p) sum_{alpha p < x <= beta p} t_a(x)|^{2k}.
double block_moment(const FamilySpec& family, OddPrime p, double alpha, double beta, std::uint32_t k,
                    WorkerPool pool = {});

}  // namespace expsum
