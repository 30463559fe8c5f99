#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

/// One-parameter families of phase functions t_a : F_p -> C studied here.
///
/// member t_a(x) per kind (xbar = inverse of x mod p):
///   kloosterman_shift(b) : e((a*x + b*xbar)/p)
///   kloosterman_dilate   : e(a*xbar/p)
///   kloosterman_curve(m) : e((a*x + m*abar*xbar)/p)      -- pairs (a, m/a), product m
///   birch_shift          : e((a*x + x^3)/p)
///   birch_dilate         : e(abar^3 * x^3/p)
///   birch_curve(m)       : e((a*x + m*a^3*x^3)/p)        -- second param m*a^3
///   laurent(f)           : e((a*x + f(x))/p), f a Laurent polynomial
///
/// Each kind is indexed so that the Fourier coefficients of every member are
/// values of the single a=1 member table ("master table") at a Moebius image
/// of a; see fourier_index / member_map.
enum class FamilyKind {
    kloosterman_shift,
    kloosterman_dilate,
    kloosterman_curve,
    birch_shift,
    birch_dilate,
    birch_curve,
    laurent,
};

/// Sign of the stored normalized transform. `minus` is the default and is the
/// convention the partial-sum expansion and estimator consume; `plus` stores
/// the raw complete sums (what the sign/equidistribution experiments read).
enum class SignConvention { plus, minus };

struct LaurentTerm {
    std::int32_t exponent;      // nonzero, or 0 for the constant term
    std::int64_t coefficient;   // reduced mod p at evaluation time
};

class FamilySpec {
  public:
    static FamilySpec kloosterman_shift(std::int64_t b = 1);
    static FamilySpec kloosterman_dilate();
    static FamilySpec kloosterman_curve(std::int64_t m);
    static FamilySpec birch_shift();
    static FamilySpec birch_dilate();
    static FamilySpec birch_curve(std::int64_t m);
    static FamilySpec laurent(std::vector<LaurentTerm> terms);

    FamilyKind kind() const noexcept { return kind_; }
    std::int64_t param() const noexcept { return param_; }  // b or m
    const std::vector<LaurentTerm>& terms() const noexcept { return terms_; }
    SignConvention sign() const noexcept { return sign_; }
    FamilySpec with_sign(SignConvention s) const;

    bool is_kloosterman() const noexcept;
    bool is_birch() const noexcept;
    /// Kloosterman and Birch tables are real with entries capped by the Weil
    /// bound; laurent tables are generally complex.
    bool real_valued() const noexcept { return kind_ != FamilyKind::laurent; }
    /// true when members contain xbar (t_a(0) := 0); polynomial kinds keep
    /// t_a(0) = e(f_a(0)/p).
    bool has_pole_at_zero() const noexcept;

    /// Cap on |complete normalized sum| for this kind. Kloosterman: 2 exactly.
    /// Birch: 2 + 1/sqrt(p) (the full-F_p sum obeys the Weil 2, and the sums
    /// here run over x >= 1, which shifts by one unit term). Laurent: crude
    /// degree-based cap.
    double weil_cap(OddPrime p) const;

    /// Parameter validity: curve kinds need m != 0 mod p, dilate/curve kinds
    /// need a != 0 mod p. Throws domain_error.
    void validate(OddPrime p) const;
    void validate_member(std::int64_t a, OddPrime p) const;

    std::string name() const;        // stable kind name, e.g. "kloosterman-dilate"
    std::string descriptor() const;  // name plus parameters, for reports

    /// Stable numeric id for the cache format. Laurent families have no fixed
    /// parameter encoding and are not cacheable.
    std::uint32_t cache_id() const;
    bool cacheable() const noexcept { return kind_ != FamilyKind::laurent; }

    friend bool operator==(const FamilySpec& x, const FamilySpec& y);

  private:
    FamilySpec() = default;
    FamilyKind kind_ = FamilyKind::kloosterman_shift;
    std::int64_t param_ = 1;
    std::vector<LaurentTerm> terms_;
    SignConvention sign_ = SignConvention::minus;
};

/// Shared per-prime lookup tables (roots of unity, inverses, cubes).
/// Immutable after construction; safe to share across threads.
struct PrimeContext {
    explicit PrimeContext(OddPrime p);
    OddPrime p;
    std::vector<std::complex<double>> roots;   // e(j/p)
    std::vector<std::uint32_t> inverses;       // x^{-1} mod p, [0] = 0
    std::vector<std::uint32_t> cubes;          // x^3 mod p
};

using PrimeContextPtr = std::shared_ptr<const PrimeContext>;
PrimeContextPtr make_prime_context(OddPrime p);

/// Evaluates one family member t_a(x) in O(1) per point after O(p) setup.
class PhaseEvaluator {
  public:
    PhaseEvaluator(const FamilySpec& family, std::int64_t a, PrimeContextPtr ctx);
    PhaseEvaluator(const FamilySpec& family, std::int64_t a, OddPrime p);

    std::complex<double> operator()(std::uint32_t x) const;
    OddPrime prime() const noexcept { return ctx_->p; }

  private:
    std::uint32_t phase_index(std::uint32_t x) const;  // f_a(x) mod p for x != 0
    FamilySpec family_;
    PrimeContextPtr ctx_;
    std::uint32_t a_ = 0;
    std::uint32_t coeff_ = 0;  // kind-specific precomputed coefficient
    std::vector<std::pair<std::int32_t, std::uint32_t>> laurent_;  // (exponent, reduced coeff)
};

/// t_a(x) for a single point (pole convention at x = 0).
std::complex<double> phase_value(const FamilySpec& family, std::int64_t a, std::uint32_t x, OddPrime p);

/// Normalized complete sum (1/sqrt p) * sum_{x=1}^{p-1} t_a(x).
/// Checks |Im| <= 1e-9 and the kind's Weil cap (+1e-9 slack); violations
/// raise integrity_error. Returns the real part.
double complete_sum(const FamilySpec& family, std::int64_t a, OddPrime p);

/// The same sum without the realness reduction (used by laurent families and
/// as the building block of the checked version).
std::complex<double> complete_sum_complex(const FamilySpec& family, std::int64_t a, OddPrime p);

enum class TableMethod : std::uint8_t { direct = 0, chirp_dft = 1 };

/// The full normalized Fourier-coefficient table of one family member:
///   values[n] = sign * (1/sqrt p) * sum_{x=0}^{p-1} t_a(x) e(n*x/p),
/// with t_a(0) following the pole convention. For xbar kinds t_a(0) = 0 and
/// the entries are the complete sums over F_p^x; for polynomial kinds the
/// x = 0 term shifts every entry by sign/sqrt(p), which makes them the trace
/// values obeying the plain Weil cap 2. The a = 1 member of the dilate kinds
/// is the master table {Kl(n,1;p)}_n resp. {Bi(n,1;p) + 1/sqrt p}_n (plus
/// convention).
struct SumTable {
    SumTable(FamilySpec family, OddPrime p, std::int64_t member_a,
             std::vector<std::complex<double>> values, TableMethod method, double max_abs_error_estimate);

    FamilySpec family;
    OddPrime p;
    std::int64_t member_a;
    std::vector<std::complex<double>> values;
    TableMethod method;
    double max_abs_error_estimate;

    double real_at(std::uint32_t idx) const { return values.at(idx).real(); }
    /// sup norm over all indices including 0
    double sup_norm() const;

    /// Re-checks realness and the Weil cap; throws integrity_error.
    void check_integrity() const;

    /// Assemble a table from externally supplied values (tests, cache loads).
    static SumTable from_values(FamilySpec family, OddPrime p, std::int64_t member_a,
                                std::vector<std::complex<double>> values, TableMethod method,
                                double max_abs_error_estimate, bool check = true);
};

/// Builds the member table by a single length-p transform of x -> t_a(x)
/// (x = 0 dropped: the entries are complete sums over F_p^x). The accuracy
/// estimate compares 16 seeded random entries against direct summation and
/// aborts above 1e-5.
SumTable batch_complete_sums(const FamilySpec& family, OddPrime p, std::int64_t member_a = 1,
                             std::optional<TableMethod> force_method = std::nullopt);

/// Master tables used by the experiments: plus-convention a=1 dilate tables,
/// values[u] = Kl(u,1;p) resp. Bi(u,1;p) + 1/sqrt(p).
SumTable kloosterman_master_table(OddPrime p);
SumTable birch_master_table(OddPrime p);

/// Index map: member coefficients as master-table reads,
///   values_a[n] = values_1[fourier_index(F, a, n)].
std::uint32_t fourier_index(const FamilySpec& family, std::int64_t a, std::int64_t n, OddPrime p);

/// The same map as an element of PGL_2 acting on a (defined for n such that
/// the map is nondegenerate; dilate kinds need n != 0 mod p).
MoebiusMap member_map(const FamilySpec& family, std::int64_t n, OddPrime p);

/// arccos(clamp(v/2)) in [0, pi]; |v| > 2 + 1e-6 is a domain error.
double angle_of(double v);

struct AngleTable {
    FamilySpec family;
    OddPrime p;
    std::vector<double> angles;
};

AngleTable angle_table(const SumTable& table);

}  // namespace expsum
