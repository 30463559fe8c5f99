#include "expsum/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "expsum/dft.hpp"
#include "expsum/errors.hpp"
#include "expsum/numeric.hpp"

namespace expsum {

FamilySpec FamilySpec::kloosterman_shift(std::int64_t b) {
    FamilySpec f;
    f.kind_ = FamilyKind::kloosterman_shift;
    f.param_ = b;
    return f;
}
FamilySpec FamilySpec::kloosterman_dilate() {
    FamilySpec f;
    f.kind_ = FamilyKind::kloosterman_dilate;
    f.param_ = 0;
    return f;
}
FamilySpec FamilySpec::kloosterman_curve(std::int64_t m) {
    FamilySpec f;
    f.kind_ = FamilyKind::kloosterman_curve;
    f.param_ = m;
    return f;
}
FamilySpec FamilySpec::birch_shift() {
    FamilySpec f;
    f.kind_ = FamilyKind::birch_shift;
    f.param_ = 0;
    return f;
}
FamilySpec FamilySpec::birch_dilate() {
    FamilySpec f;
    f.kind_ = FamilyKind::birch_dilate;
    f.param_ = 0;
    return f;
}
FamilySpec FamilySpec::birch_curve(std::int64_t m) {
    FamilySpec f;
    f.kind_ = FamilyKind::birch_curve;
    f.param_ = m;
    return f;
}
FamilySpec FamilySpec::laurent(std::vector<LaurentTerm> terms) {
    bool has_nonzero = false;
    for (const auto& t : terms) has_nonzero = has_nonzero || t.exponent != 0;
    if (terms.empty() || !has_nonzero)
        throw domain_error("laurent family needs at least one term with nonzero exponent");
    FamilySpec f;
    f.kind_ = FamilyKind::laurent;
    f.param_ = 0;
    f.terms_ = std::move(terms);
    return f;
}

FamilySpec FamilySpec::with_sign(SignConvention s) const {
    FamilySpec f = *this;
    f.sign_ = s;
    return f;
}

bool FamilySpec::is_kloosterman() const noexcept {
    return kind_ == FamilyKind::kloosterman_shift || kind_ == FamilyKind::kloosterman_dilate ||
           kind_ == FamilyKind::kloosterman_curve;
}
bool FamilySpec::is_birch() const noexcept {
    return kind_ == FamilyKind::birch_shift || kind_ == FamilyKind::birch_dilate ||
           kind_ == FamilyKind::birch_curve;
}
bool FamilySpec::has_pole_at_zero() const noexcept {
    if (is_kloosterman()) return true;
    if (kind_ == FamilyKind::laurent) {
        for (const auto& t : terms_)
            if (t.exponent < 0) return true;
        return false;
    }
    return false;
}

double FamilySpec::weil_cap(OddPrime p) const {
    if (is_kloosterman()) return 2.0;
    if (is_birch()) return 2.0 + 1.0 / p.sqrt();
    // Laurent: d+ + d- critical-point count, plus the x=0 boundary unit.
    std::int64_t dpos = 1, dneg = 0;
    for (const auto& t : terms_) {
        dpos = std::max<std::int64_t>(dpos, t.exponent);
        dneg = std::max<std::int64_t>(dneg, -static_cast<std::int64_t>(t.exponent));
    }
    return static_cast<double>(dpos + dneg) + 1.0 / p.sqrt();
}

void FamilySpec::validate(OddPrime p) const {
    if (kind_ == FamilyKind::kloosterman_curve || kind_ == FamilyKind::birch_curve) {
        if (p.reduce(param_) == 0)
            throw domain_error("curve family parameter m must be nonzero mod p");
    }
    if (kind_ == FamilyKind::laurent) {
        bool has_nonzero = false;
        for (const auto& t : terms_) has_nonzero = has_nonzero || t.exponent != 0;
        if (!has_nonzero) throw domain_error("laurent family needs a nonzero exponent");
    }
}

void FamilySpec::validate_member(std::int64_t a, OddPrime p) const {
    validate(p);
    switch (kind_) {
        case FamilyKind::kloosterman_dilate:
        case FamilyKind::kloosterman_curve:
        case FamilyKind::birch_dilate:
        case FamilyKind::birch_curve:
            if (p.reduce(a) == 0) throw domain_error("family parameter a must be nonzero mod p");
            break;
        default:
            break;
    }
}

std::string FamilySpec::name() const {
    switch (kind_) {
        case FamilyKind::kloosterman_shift: return "kloosterman-shift";
        case FamilyKind::kloosterman_dilate: return "kloosterman-dilate";
        case FamilyKind::kloosterman_curve: return "kloosterman-curve";
        case FamilyKind::birch_shift: return "birch-shift";
        case FamilyKind::birch_dilate: return "birch-dilate";
        case FamilyKind::birch_curve: return "birch-curve";
        case FamilyKind::laurent: return "laurent";
    }
    return "?";
}

std::string FamilySpec::descriptor() const {
    std::ostringstream os;
    os << name();
    if (kind_ == FamilyKind::kloosterman_shift) os << "(b=" << param_ << ")";
    if (kind_ == FamilyKind::kloosterman_curve || kind_ == FamilyKind::birch_curve)
        os << "(m=" << param_ << ")";
    if (kind_ == FamilyKind::laurent) {
        os << "(";
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) os << ",";
            os << terms_[i].coefficient << "x^" << terms_[i].exponent;
        }
        os << ")";
    }
    os << (sign_ == SignConvention::minus ? "[-]" : "[+]");
    return os.str();
}

std::uint32_t FamilySpec::cache_id() const { return static_cast<std::uint32_t>(kind_); }

bool operator==(const FamilySpec& x, const FamilySpec& y) {
    if (x.kind_ != y.kind_ || x.param_ != y.param_ || x.sign_ != y.sign_) return false;
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i)
        if (x.terms_[i].exponent != y.terms_[i].exponent || x.terms_[i].coefficient != y.terms_[i].coefficient)
            return false;
    return true;
}

PrimeContext::PrimeContext(OddPrime prime) : p(prime) {
    const std::uint32_t n = p.value();
    roots.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        roots[j] = {std::cos(angle), std::sin(angle)};
    }
    inverses = inverse_table(p);
    cubes.resize(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        cubes[x] = p.mul(p.mul(x, x), x);
    }
}

PrimeContextPtr make_prime_context(OddPrime p) { return std::make_shared<const PrimeContext>(p); }

PhaseEvaluator::PhaseEvaluator(const FamilySpec& family, std::int64_t a, PrimeContextPtr ctx)
    : family_(family), ctx_(std::move(ctx)) {
    const OddPrime p = ctx_->p;
    family_.validate_member(a, p);
    a_ = p.reduce(a);
    switch (family_.kind()) {
        case FamilyKind::kloosterman_shift:
            coeff_ = p.reduce(family_.param());  // b
            break;
        case FamilyKind::kloosterman_dilate:
            coeff_ = a_;
            break;
        case FamilyKind::kloosterman_curve:
            coeff_ = p.mul(p.reduce(family_.param()), mod_inverse(a_, p));  // m * abar
            break;
        case FamilyKind::birch_shift:
            coeff_ = 1;
            break;
        case FamilyKind::birch_dilate: {
            const std::uint32_t abar = mod_inverse(a_, p);
            coeff_ = p.mul(p.mul(abar, abar), abar);  // abar^3
            break;
        }
        case FamilyKind::birch_curve: {
            const std::uint32_t m = p.reduce(family_.param());
            coeff_ = p.mul(m, p.mul(p.mul(a_, a_), a_));  // m * a^3
            break;
        }
        case FamilyKind::laurent:
            for (const auto& t : family_.terms()) laurent_.emplace_back(t.exponent, p.reduce(t.coefficient));
            break;
    }
}

PhaseEvaluator::PhaseEvaluator(const FamilySpec& family, std::int64_t a, OddPrime p)
    : PhaseEvaluator(family, a, make_prime_context(p)) {}

std::uint32_t PhaseEvaluator::phase_index(std::uint32_t x) const {
    const OddPrime& p = ctx_->p;
    switch (family_.kind()) {
        case FamilyKind::kloosterman_shift:
            return p.add(p.mul(a_, x), p.mul(coeff_, ctx_->inverses[x]));
        case FamilyKind::kloosterman_dilate:
            return p.mul(coeff_, ctx_->inverses[x]);
        case FamilyKind::kloosterman_curve:
            return p.add(p.mul(a_, x), p.mul(coeff_, ctx_->inverses[x]));
        case FamilyKind::birch_shift:
            return p.add(p.mul(a_, x), ctx_->cubes[x]);
        case FamilyKind::birch_dilate:
            return p.mul(coeff_, ctx_->cubes[x]);
        case FamilyKind::birch_curve:
            return p.add(p.mul(a_, x), p.mul(coeff_, ctx_->cubes[x]));
        case FamilyKind::laurent: {
            std::uint32_t s = p.mul(a_, x);
            for (const auto& [e, c] : laurent_) {
                std::uint32_t xe;
                if (e >= 0) {
                    xe = p.pow(x, static_cast<std::uint64_t>(e));
                } else {
                    xe = p.pow(ctx_->inverses[x], static_cast<std::uint64_t>(-static_cast<std::int64_t>(e)));
                }
                s = p.add(s, p.mul(c, xe));
            }
            return s;
        }
    }
    return 0;
}

std::complex<double> PhaseEvaluator::operator()(std::uint32_t x) const {
    const OddPrime& p = ctx_->p;
    x %= p.value();
    if (x == 0) {
        if (family_.has_pole_at_zero()) return {0.0, 0.0};
        // polynomial phase at 0: only the constant laurent term survives
        std::uint32_t c0 = 0;
        if (family_.kind() == FamilyKind::laurent) {
            for (const auto& [e, c] : laurent_)
                if (e == 0) c0 = p.add(c0, c);
        }
        return ctx_->roots[c0];
    }
    return ctx_->roots[phase_index(x)];
}

std::complex<double> phase_value(const FamilySpec& family, std::int64_t a, std::uint32_t x, OddPrime p) {
    return PhaseEvaluator(family, a, p)(x);
}

std::complex<double> complete_sum_complex(const FamilySpec& family, std::int64_t a, OddPrime p) {
    const PhaseEvaluator t(family, a, p);
    ComplexCompensatedSum acc;
    for (std::uint32_t x = 1; x < p.value(); ++x) acc.add(t(x));
    return acc.value() / p.sqrt();
}

double complete_sum(const FamilySpec& family, std::int64_t a, OddPrime p) {
    const std::complex<double> s = complete_sum_complex(family, a, p);
    if (std::abs(s.imag()) > 1e-9)
        throw integrity_error("complete sum has imaginary part " + std::to_string(s.imag()) + " for " +
                              family.descriptor());
    const double cap = family.weil_cap(p) + 1e-9;
    if (std::abs(s.real()) > cap)
        throw integrity_error("complete sum " + std::to_string(s.real()) + " exceeds the Weil cap " +
                              std::to_string(cap));
    return s.real();
}

SumTable::SumTable(FamilySpec fam, OddPrime prime, std::int64_t a, std::vector<std::complex<double>> vals,
                   TableMethod meth, double err)
    : family(std::move(fam)), p(prime), member_a(a), values(std::move(vals)), method(meth),
      max_abs_error_estimate(err) {}

double SumTable::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

void SumTable::check_integrity() const {
    if (values.size() != p.value()) throw integrity_error("table length does not match p");
    if (family.real_valued()) {
        // table entries carry the x = 0 term, so both sum kinds obey the
        // plain Weil 2 here
        const double cap = 2.0 + 1e-6;
        for (std::uint32_t i = 0; i < values.size(); ++i) {
            if (std::abs(values[i].imag()) > 1e-8)
                throw integrity_error("table entry " + std::to_string(i) + " has imaginary part " +
                                      std::to_string(values[i].imag()));
            if (std::abs(values[i].real()) > cap)
                throw integrity_error("table entry " + std::to_string(i) + " = " +
                                      std::to_string(values[i].real()) + " exceeds the Weil cap " +
                                      std::to_string(cap));
        }
    }
}

SumTable SumTable::from_values(FamilySpec family, OddPrime p, std::int64_t member_a,
                               std::vector<std::complex<double>> values, TableMethod method,
                               double max_abs_error_estimate, bool check) {
    SumTable t(std::move(family), p, member_a, std::move(values), method, max_abs_error_estimate);
    if (check) t.check_integrity();
    return t;
}

SumTable batch_complete_sums(const FamilySpec& family, OddPrime p, std::int64_t member_a,
                             std::optional<TableMethod> force_method) {
    family.validate_member(member_a, p);
    const std::uint32_t n = p.value();
    const PhaseEvaluator t(family, member_a, p);
    std::vector<std::complex<double>> gen(n);
    // x = 0 enters with the pole convention: 0 for xbar kinds, e(f(0)/p) for
    // polynomial kinds. With it the polynomial-family entries are the trace
    // values, capped by 2 exactly (the x>=1 sums alone can reach 2+1/sqrt p).
    for (std::uint32_t x = 0; x < n; ++x) gen[x] = t(x);

    const TableMethod method =
        force_method.value_or(n <= 512 ? TableMethod::direct : TableMethod::chirp_dft);
    std::vector<std::complex<double>> X = method == TableMethod::direct ? dft_prime_direct(gen, p)
                                                                        : dft_prime_chirp(gen, p);
    const double scale = (family.sign() == SignConvention::minus ? -1.0 : 1.0) / p.sqrt();
    for (auto& v : X) v *= scale;

    // accuracy estimate: 16 seeded random entries against direct summation
    std::mt19937_64 rng(0x5eed0000ull ^ (static_cast<std::uint64_t>(family.cache_id()) << 32) ^ n);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const std::uint32_t y = static_cast<std::uint32_t>(rng() % n);
        const std::complex<double> ref = dft_prime_entry(gen, p, y) * scale;
        worst = std::max(worst, std::abs(ref - X[y]));
    }
    if (worst > 1e-5)
        throw integrity_error("table accuracy estimate " + std::to_string(worst) + " exceeds 1e-5 at p=" +
                              std::to_string(n));

    SumTable table(family, p, member_a, std::move(X), method, worst);
    table.check_integrity();
    return table;
}

SumTable kloosterman_master_table(OddPrime p) {
    return batch_complete_sums(FamilySpec::kloosterman_dilate().with_sign(SignConvention::plus), p, 1);
}

SumTable birch_master_table(OddPrime p) {
    return batch_complete_sums(FamilySpec::birch_dilate().with_sign(SignConvention::plus), p, 1);
}

std::uint32_t fourier_index(const FamilySpec& family, std::int64_t a, std::int64_t n, OddPrime p) {
    family.validate_member(a, p);
    const std::uint32_t ar = p.reduce(a);
    const std::uint32_t nr = p.reduce(n);
    switch (family.kind()) {
        case FamilyKind::kloosterman_shift:
        case FamilyKind::birch_shift:
        case FamilyKind::laurent:
            return p.reduce(static_cast<std::int64_t>(ar) + nr - 1);
        case FamilyKind::kloosterman_dilate:
        case FamilyKind::birch_dilate:
            return p.mul(ar, nr);
        case FamilyKind::kloosterman_curve:
        case FamilyKind::birch_curve:
            return p.mul(nr, mod_inverse(ar, p));
    }
    return 0;
}

MoebiusMap member_map(const FamilySpec& family, std::int64_t n, OddPrime p) {
    const std::uint32_t nr = p.reduce(n);
    switch (family.kind()) {
        case FamilyKind::kloosterman_shift:
        case FamilyKind::birch_shift:
        case FamilyKind::laurent:
            return MoebiusMap::translation(static_cast<std::int64_t>(nr) - 1, p);
        case FamilyKind::kloosterman_dilate:
        case FamilyKind::birch_dilate:
            if (nr == 0) throw domain_error("dilation map needs n != 0 mod p");
            return MoebiusMap::dilation(nr, p);
        case FamilyKind::kloosterman_curve:
        case FamilyKind::birch_curve:
            if (nr == 0) throw domain_error("curve map needs n != 0 mod p");
            return MoebiusMap(0, nr, 1, 0, p);  // a -> n/a
    }
    throw domain_error("unsupported family kind");
}

double angle_of(double v) {
    if (std::abs(v) > 2.0 + 1e-6) throw domain_error("angle_of argument " + std::to_string(v) + " exceeds 2");
    return std::acos(std::clamp(v / 2.0, -1.0, 1.0));
}

AngleTable angle_table(const SumTable& table) {
    if (!table.family.real_valued()) throw domain_error("angle table needs a real-valued family");
    AngleTable out{table.family, table.p, {}};
    out.angles.reserve(table.values.size());
    for (const auto& v : table.values) out.angles.push_back(angle_of(std::clamp(v.real(), -2.0, 2.0)));
    return out;
}

}  // namespace expsum
