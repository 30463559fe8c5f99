#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

/// Chebyshev polynomials of the second kind in the 2cos(theta) variable:
/// U_0 = 1, U_1(x) = x, U_{n+1} = x U_n - U_{n-1}, so that
/// U_n(2cos theta) = sin((n+1)theta)/sin(theta). Domain |x| <= 2.
double cheb_u(std::uint32_t n, double x);

/// Integral of f against the Sato-Tate measure (2/pi) sin^2(theta) dtheta
/// on [0, pi], adaptive Simpson to absolute tolerance tol.
double st_integrate(const std::function<double(double)>& f, double tol = 1e-9);

/// Sato-Tate mass of the angle interval [lo, hi], in closed form.
double st_interval_mass(double lo, double hi);

/// Real trigonometric polynomial sum_{|l|<=L} c_l e(l x) on [0,1),
/// stored as c_0 plus the l >= 1 coefficients (c_{-l} = conj(c_l)).
struct TrigPoly {
    double c0 = 0.0;
    std::vector<std::complex<double>> c;  // c[l-1] holds the coefficient of e(l x)

    std::uint32_t degree() const { return static_cast<std::uint32_t>(c.size()); }
    double eval(double x) const;
    /// Parseval: integral of the square over [0,1).
    double l2_norm_sq() const;
    /// Integral against the Sato-Tate measure of x -> poly(theta/pi).
    double st_integral() const;
    /// Chebyshev-U coefficients of theta -> poly(theta/pi) in L^2(mu_ST),
    /// n = 0..n_max, via the exact Fourier-Chebyshev coupling integrals.
    std::vector<double> cheb_coeffs(std::uint32_t n_max) const;
    /// Same for the even (cosine) part alone. The even part is a polynomial
    /// in cos(2 theta), so these terminate at twice the trig degree; the sine
    /// part has a slowly decaying tail instead.
    std::vector<double> cheb_coeffs_even(std::uint32_t n_max) const;
};

struct ChebCoeffs {
    std::vector<double> y;  // y[0..s]
    std::uint32_t degree = 0;
};

/// Two-sided Selberg approximation to the indicator of [u,v] in degree L:
/// alpha is the Vaaler interval polynomial, beta the pair of endpoint Fejer
/// kernels scaled by 1/(2L+2), with |chi_{[u,v]} - alpha| <= beta pointwise
/// and 0 <= alpha <= 1.
struct SelbergPair {
    double u = 0.0, v = 0.0;
    std::uint32_t L = 0;
    TrigPoly alpha;
    TrigPoly beta;
    ChebCoeffs alpha_cheb;  // through degree 2L
    ChebCoeffs beta_cheb;
    double beta_st_integral = 0.0;   // measured integral against mu_ST
    bool beta_integral_flagged = false;  // set when it exceeds 2/(L+1)
    /// max |U-coefficient| over 2L < n <= 2L+16 for the full polynomials.
    /// Only the cosine content terminates at 2L; an interval pair that is
    /// not symmetric under x -> -x keeps a sine component whose expansion
    /// decays like 1/L^2 instead of vanishing. Recorded, not asserted.
    double cheb_tail_max = 0.0;
    /// the same tail for the even parts; zero up to roundoff by construction
    double even_cheb_tail_max = 0.0;
};

/// Builds the pair and verifies the construction on a 10^4-point grid
/// (boundedness; |chi - alpha| <= beta away from 1e-3 endpoint
/// neighborhoods; even-part Chebyshev degree cap 2L). Violations abort with
/// integrity_error.
SelbergPair selberg_pair(double u, double v, std::uint32_t L);

/// Smallest L with L = -1 mod 2*gamma, 2L+2 >= 6z/(1/2-1/gamma)^2 and
/// L >= 47.
std::uint32_t choose_L(std::uint32_t z, std::uint32_t gamma);

struct DeltaReport {
    double delta = 0.0;
    double required = 0.0;       // (1/2)(1/2 - 1/gamma)^{z+1}
    double i_plus = 0.0, i_minus = 0.0;
    double j_plus = 0.0, j_minus = 0.0;  // measured beta integrals
    std::uint32_t L = 0;
};

/// Constant Chebyshev term of the detector product minus its correction:
///   Delta = I+^{(z+1)/2} I-^{(z+1)/2}
///         - ((z+1)/2) [J+ I+^{(z-1)/2} I-^{(z+1)/2} + J- I+^{(z+1)/2} I-^{(z-1)/2}],
/// with I/J the measured Sato-Tate integrals of alpha/beta for the intervals
/// [0, 1/2-1/gamma] and [1/2+1/gamma, 1].
DeltaReport delta_details(std::uint32_t z, std::uint32_t gamma, std::uint32_t L);

/// delta_details plus the guarantee check Delta >= (1/2)(1/2-1/gamma)^{z+1};
/// violation raises integrity_error.
double delta_constant(std::uint32_t z, std::uint32_t gamma, std::uint32_t L);

}  // namespace expsum
