#include "expsum/dft.hpp"

#include <cmath>
#include <numbers>

#include "expsum/errors.hpp"
#include "expsum/numeric.hpp"

namespace expsum {

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// e(num/den) with num already reduced into [0, den)
inline std::complex<double> unit(std::uint64_t num, std::uint64_t den) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& v, int sign) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw domain_error("fft_pow2 length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    // twiddles from std::polar per index; no recurrences, keeps error ~eps*log n
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        std::vector<std::complex<double>> w(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            w[k] = {std::cos(angle), std::sin(angle)};
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> u = v[i + k];
                const std::complex<double> t = v[i + k + half] * w[k];
                v[i + k] = u + t;
                v[i + k + half] = u - t;
            }
        }
    }
}

std::vector<std::complex<double>> dft_prime_direct(std::span<const std::complex<double>> v, OddPrime p) {
    const std::uint32_t n = p.value();
    if (v.size() != n) throw domain_error("dft_prime_direct: input length must equal p");
    std::vector<std::complex<double>> out(n);
    // roots table e(j/p), exact index arithmetic
    std::vector<std::complex<double>> roots(n);
    for (std::uint32_t j = 0; j < n; ++j) roots[j] = unit(j, n);
    for (std::uint32_t y = 0; y < n; ++y) {
        ComplexCompensatedSum acc;
        std::uint64_t idx = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            acc.add(v[x] * roots[idx]);
            idx += y;
            if (idx >= n) idx -= n;
        }
        out[y] = acc.value();
    }
    return out;
}

std::complex<double> dft_prime_entry(std::span<const std::complex<double>> v, OddPrime p, std::uint32_t y) {
    const std::uint32_t n = p.value();
    if (v.size() != n) throw domain_error("dft_prime_entry: input length must equal p");
    ComplexCompensatedSum acc;
    std::uint64_t idx = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        acc.add(v[x] * unit(static_cast<std::uint64_t>(idx), n));
        idx += y;
        if (idx >= n) idx -= n;
    }
    return acc.value();
}

std::vector<std::complex<double>> dft_prime_chirp(std::span<const std::complex<double>> v, OddPrime p) {
    const std::uint64_t n = p.value();
    if (v.size() != n) throw domain_error("dft_prime_chirp: input length must equal p");
    // xy = (x^2 + y^2 - (x-y)^2)/2, so with u(t) = e(t^2/(2p)):
    //   X[y] = u(y) * sum_x (v[x] u(x)) * conj(u(x-y))
    const std::uint64_t two_p = 2 * n;
    const std::size_t m = next_pow2(2 * n - 1);
    if (m > (std::size_t(1) << 28))
        throw domain_error("dft_prime_chirp: p exceeds the convolution memory budget");

    std::vector<std::complex<double>> chirp(n);  // u(t) = e(t^2 mod 2p / 2p)
    for (std::uint64_t t = 0; t < n; ++t) chirp[t] = unit((t * t) % two_p, two_p);

    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    std::vector<std::complex<double>> b(m, {0.0, 0.0});
    for (std::uint64_t x = 0; x < n; ++x) a[x] = v[x] * chirp[x];
    b[0] = std::conj(chirp[0]);
    for (std::uint64_t t = 1; t < n; ++t) {
        const std::complex<double> c = std::conj(chirp[t]);
        b[t] = c;
        b[m - t] = c;
    }
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    std::vector<std::complex<double>> out(n);
    for (std::uint64_t y = 0; y < n; ++y) out[y] = a[y] * inv_m * chirp[y];
    return out;
}

}  // namespace expsum
