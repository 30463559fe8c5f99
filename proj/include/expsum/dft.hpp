#pragma once

#include <complex>
#include <span>
#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

/// In-place radix-2 FFT, length must be a power of two.
/// sign = -1 gives the engineering-forward transform e^{-2*pi*i*jk/N};
/// sign = +1 the conjugate one. No normalization.
void fft_pow2(std::vector<std::complex<double>>& v, int sign);

/// X[y] = sum_{x=0}^{p-1} v[x] * e(x*y/p), evaluated by direct summation.
/// O(p^2); the oracle path and the small-p fallback.
std::vector<std::complex<double>> dft_prime_direct(std::span<const std::complex<double>> v, OddPrime p);

/// Same transform via the chirp (Bluestein) reduction to a power-of-two
/// convolution. Chirp phases use x^2 mod 2p computed in exact integer
/// arithmetic, so accuracy does not degrade with p.
std::vector<std::complex<double>> dft_prime_chirp(std::span<const std::complex<double>> v, OddPrime p);

/// Single output entry by direct summation: sum_x v[x] e(x*y/p).
std::complex<double> dft_prime_entry(std::span<const std::complex<double>> v, OddPrime p, std::uint32_t y);

}  // namespace expsum
