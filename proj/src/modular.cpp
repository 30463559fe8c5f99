#include "expsum/modular.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace expsum {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) noexcept {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_odd_prime(std::uint64_t n) noexcept {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t q : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    // Exact for all n < 3.3e24 (covers the full 64-bit range).
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

OddPrime::OddPrime(std::uint64_t p) {
    if (p < 3 || p >= (1ull << 31))
        throw domain_error("modulus must satisfy 3 <= p < 2^31, got " + std::to_string(p));
    if (!is_odd_prime(p)) throw domain_error("modulus " + std::to_string(p) + " is not an odd prime");
    p_ = static_cast<std::uint32_t>(p);
    sqrt_p_ = std::sqrt(static_cast<double>(p_));
}

std::uint32_t mod_inverse(std::uint32_t x, OddPrime p) {
    const std::uint32_t m = p.value();
    x %= m;
    if (x == 0) throw domain_error("0 has no inverse mod " + std::to_string(m));
    // extended Euclid on (x, m); coefficients fit in int64
    std::int64_t r0 = x, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    std::int64_t inv = s0 % static_cast<std::int64_t>(m);
    if (inv < 0) inv += m;
    return static_cast<std::uint32_t>(inv);
}

std::complex<double> root_of_unity(std::int64_t k, OddPrime p) noexcept {
    const std::uint32_t r = p.reduce(k);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p.value());
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::uint32_t> inverse_table(OddPrime p) {
    const std::uint32_t m = p.value();
    std::vector<std::uint32_t> inv(m, 0);
    inv[1] = 1;
    for (std::uint32_t i = 2; i < m; ++i) {
        // inv[i] = -(m/i) * inv[m % i] mod m
        const std::uint64_t t = static_cast<std::uint64_t>(m / i) * inv[m % i] % m;
        inv[i] = static_cast<std::uint32_t>(m - t);
    }
    return inv;
}

std::uint32_t ProjPoint::value() const {
    if (inf_) throw domain_error("point at infinity has no residue value");
    return v_;
}

MoebiusMap::MoebiusMap(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, OddPrime p)
    : p_(p), a_(p.reduce(a)), b_(p.reduce(b)), c_(p.reduce(c)), d_(p.reduce(d)) {
    const std::uint32_t det = p_.sub(p_.mul(a_, d_), p_.mul(b_, c_));
    if (det == 0) throw domain_error("Moebius map has zero determinant mod " + std::to_string(p.value()));
}

ProjPoint MoebiusMap::apply(ProjPoint x) const {
    if (x.is_infinity()) {
        if (c_ == 0) return ProjPoint::infinity();
        return ProjPoint::finite(p_.mul(a_, mod_inverse(c_, p_)));
    }
    const std::uint32_t v = x.value() % p_.value();
    const std::uint32_t num = p_.add(p_.mul(a_, v), b_);
    const std::uint32_t den = p_.add(p_.mul(c_, v), d_);
    if (den == 0) return ProjPoint::infinity();
    return ProjPoint::finite(p_.mul(num, mod_inverse(den, p_)));
}

MoebiusMap MoebiusMap::inverse() const {
    // adjugate [[d,-b],[-c,a]]; the overall scalar is irrelevant projectively
    return MoebiusMap(d_, p_.sub(0, b_), p_.sub(0, c_), a_, p_);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& rhs) const {
    if (p_ != rhs.p_) throw domain_error("composing Moebius maps over different primes");
    const auto& q = p_;
    return MoebiusMap(q.add(q.mul(a_, rhs.a_), q.mul(b_, rhs.c_)), q.add(q.mul(a_, rhs.b_), q.mul(b_, rhs.d_)),
                      q.add(q.mul(c_, rhs.a_), q.mul(d_, rhs.c_)), q.add(q.mul(c_, rhs.b_), q.mul(d_, rhs.d_)),
                      q);
}

bool MoebiusMap::equal(const MoebiusMap& rhs) const {
    if (p_ != rhs.p_) return false;
    // [[a,b],[c,d]] ~ [[a',b'],[c',d']]  iff all 2x2 cross products vanish
    const auto& q = p_;
    const std::uint32_t e[4] = {a_, b_, c_, d_};
    const std::uint32_t f[4] = {rhs.a_, rhs.b_, rhs.c_, rhs.d_};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (q.mul(e[i], f[j]) != q.mul(e[j], f[i])) return false;
    return true;
}

std::string MoebiusMap::str() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]] mod " << p_.value();
    return os.str();
}

}  // namespace expsum
