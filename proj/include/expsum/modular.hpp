#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "expsum/errors.hpp"

namespace expsum {

/// Deterministic primality test for the full 64-bit range
/// (Miller-Rabin with the 12-witness set that is exact below 3.3e24).
bool is_odd_prime(std::uint64_t n) noexcept;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// An odd prime modulus, capped below 2^31 so dense length-p tables of
/// complex doubles stay within desk-scale memory.
class OddPrime {
  public:
    explicit OddPrime(std::uint64_t p);

    std::uint32_t value() const noexcept { return p_; }
    double sqrt() const noexcept { return sqrt_p_; }

    std::uint32_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<std::uint32_t>(s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
    }
    std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const noexcept {
        return static_cast<std::uint32_t>(pow_mod(base, exp, p_));
    }

    friend bool operator==(OddPrime a, OddPrime b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(OddPrime a, OddPrime b) noexcept { return a.p_ != b.p_; }

  private:
    std::uint32_t p_;
    double sqrt_p_;
};

/// Inverse of x modulo p via extended Euclid. Rejects x == 0 mod p.
std::uint32_t mod_inverse(std::uint32_t x, OddPrime p);

/// e(k/p) = exp(2*pi*i*k/p); k is reduced mod p first so the angle stays small.
std::complex<double> root_of_unity(std::int64_t k, OddPrime p) noexcept;

/// Full inverse table: r[x] = x^{-1} mod p for 1 <= x < p, r[0] = 0.
/// O(p) via the standard p%i recursion.
std::vector<std::uint32_t> inverse_table(OddPrime p);

/// Point of the projective line P^1(F_p): a residue or the point at infinity.
/// Infinity is a distinguished state, never a residue value.
class ProjPoint {
  public:
    static ProjPoint finite(std::uint32_t v) noexcept { return ProjPoint(v, false); }
    static ProjPoint infinity() noexcept { return ProjPoint(0, true); }

    bool is_infinity() const noexcept { return inf_; }
    std::uint32_t value() const;  // throws domain_error on infinity

    friend bool operator==(ProjPoint a, ProjPoint b) noexcept {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }

  private:
    ProjPoint(std::uint32_t v, bool inf) noexcept : v_(v), inf_(inf) {}
    std::uint32_t v_;
    bool inf_;
};

/// Element of PGL_2(F_p) as a 2x2 matrix class [[a,b],[c,d]], det != 0 mod p.
/// Two maps compare equal iff they agree up to a common nonzero scalar.
class MoebiusMap {
  public:
    MoebiusMap(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, OddPrime p);

    static MoebiusMap identity(OddPrime p) { return MoebiusMap(1, 0, 0, 1, p); }
    static MoebiusMap translation(std::int64_t y, OddPrime p) { return MoebiusMap(1, y, 0, 1, p); }
    static MoebiusMap dilation(std::int64_t y, OddPrime p) { return MoebiusMap(y, 0, 0, 1, p); }

    std::uint32_t a() const noexcept { return a_; }
    std::uint32_t b() const noexcept { return b_; }
    std::uint32_t c() const noexcept { return c_; }
    std::uint32_t d() const noexcept { return d_; }
    OddPrime prime() const noexcept { return p_; }

    ProjPoint apply(ProjPoint x) const;
    ProjPoint apply(std::uint32_t x) const { return apply(ProjPoint::finite(x)); }

    MoebiusMap inverse() const;
    MoebiusMap compose(const MoebiusMap& rhs) const;  // (*this) after rhs

    /// Projective-class equality.
    bool equal(const MoebiusMap& rhs) const;

    std::string str() const;

  private:
    OddPrime p_;
    std::uint32_t a_, b_, c_, d_;
};

inline ProjPoint moebius_apply(const MoebiusMap& tau, ProjPoint x) { return tau.apply(x); }
inline ProjPoint moebius_apply(const MoebiusMap& tau, std::uint32_t x) { return tau.apply(x); }

}  // namespace expsum
